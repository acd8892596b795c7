#!/usr/bin/env python3
"""Regenerate fixtures/*.expected.json from the current CLI output.

Run only after the analyzer output has been independently validated: the
sidecars are the regression reference the test suite compares against.

Usage: python3 scripts/freeze_fixtures.py [--cli build/axialcurv]
"""

import argparse
import json
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def freeze(cli: str, germ_path: pathlib.Path) -> dict:
    out = subprocess.run(
        [cli, "analyze", str(germ_path)], capture_output=True, text=True, check=True
    )
    r = json.loads(out.stdout)
    return {
        "orbit": r["orbit"]["name"],
        "locus": r["locus"]["shape"],
        "locus_detail": r["locus"].get("detail", ""),
        "frame_case": r["frame"]["case"],
        "frame_unique": r["frame"]["unique"],
        "frame_vectors": r["frame"]["vectors"],
        "axial": [
            {"v": d["v"], "values": d["values"], "types": d["types"]}
            for d in r["axial"]
        ],
        "axial_total": r["axial_total"],
        "umbilic": r["umbilic"],
        "extended_vector": r["extended_vector"],
        "checks": {c["name"]: c["status"] for c in r["checks"]},
        "warnings": r["warnings"],
    }


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", default=str(ROOT / "build" / "axialcurv"))
    args = ap.parse_args()

    fixtures = sorted((ROOT / "fixtures").glob("*.json"))
    for path in fixtures:
        if path.name.endswith(".expected.json"):
            continue
        expected = freeze(args.cli, path)
        sidecar = path.with_name(path.stem + ".expected.json")
        sidecar.write_text(json.dumps(expected, indent=1) + "\n")
        print(f"wrote {sidecar.relative_to(ROOT)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

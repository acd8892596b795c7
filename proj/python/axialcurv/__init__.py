"""Second-order geometry of corank-1 singular manifolds.

String-based facade over the C++ core: germ documents go in as JSON text,
reports come back as JSON or CSV text.
"""

from ._core import (
    CorankError,
    NotGermError,
    SchemaError,
    UnsupportedError,
    __version__,
    analyze_json,
    analyze_pretty,
    locus_csv,
    verify_json,
)

import json as _json


def analyze(germ: dict, tol: float = -1.0) -> dict:
    """Run the full pipeline on a germ document and return the report dict."""
    return _json.loads(analyze_json(_json.dumps(germ), tol))


def verify(germ: dict, tol: float = -1.0) -> list:
    """Run the identity checks on a germ document and return them as a list."""
    return _json.loads(verify_json(_json.dumps(germ), tol))


__all__ = [
    "CorankError",
    "NotGermError",
    "SchemaError",
    "UnsupportedError",
    "__version__",
    "analyze",
    "analyze_json",
    "analyze_pretty",
    "locus_csv",
    "verify",
    "verify_json",
]

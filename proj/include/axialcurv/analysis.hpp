// axialcurv — full-pipeline orchestration and report serialization.
#pragma once

#include "axialcurv/verify.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace axialcurv {

struct AnalyzeOptions {
    GridSpec grid;
    OracleOptions oracle;
    double tol = default_tolerance();
    bool run_checks = true;
};

/// Everything the pipeline derives from one germ. Geometric data live in the
/// normalized Monge coordinates; the lemma reduction (when it applies) is
/// carried alongside for the structural cross-checks.
struct Analysis {
    PolyMapGerm germ;
    double tol = default_tolerance(); ///< tolerance the run used
    MongeJet monge;
    TransformRecord record;
    std::optional<LemmaReduction> reduction; ///< n = 3 with ||a_002|| > tol
    OrbitResult orbit;
    LocusShape shape;
    AffineSpan span;
    AxialSpace ax;
    AdaptedFrame frame;
    std::optional<ExtendedVector> extended;
    AxialReport axial;
    std::optional<double> umbilic; ///< nullopt when undefined
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
};

/// Run normalization, classification, locus analysis, frame construction,
/// axial curvatures (closed form + oracle) and the identity checks.
Analysis analyze(const PolyMapGerm& f, const AnalyzeOptions& opts = {});

/// Lossless report document (stable key order).
nlohmann::ordered_json analysis_to_json(const Analysis& a);

/// Human-readable multi-line summary.
std::string analysis_pretty(const Analysis& a);

} // namespace axialcurv

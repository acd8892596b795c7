// Python bindings: string-in/string-out wrappers over the analysis pipeline.
#include "axialcurv/analysis.hpp"

#include <pybind11/pybind11.h>

namespace py = pybind11;
using namespace axialcurv;

namespace {

AnalyzeOptions options_for(double tol) {
    AnalyzeOptions opts;
    if (tol > 0) opts.tol = tol;
    return opts;
}

std::string analyze_json(const std::string& germ_json, double tol) {
    const PolyMapGerm f = parse_germ(nlohmann::json::parse(germ_json));
    return analysis_to_json(analyze(f, options_for(tol))).dump(2);
}

std::string analyze_pretty(const std::string& germ_json, double tol) {
    const PolyMapGerm f = parse_germ(nlohmann::json::parse(germ_json));
    return analysis_pretty(analyze(f, options_for(tol)));
}

std::string locus_csv(const std::string& germ_json, int theta_count, int gamma_count,
                      double gamma_min, double gamma_max, double tol) {
    const PolyMapGerm f = parse_germ(nlohmann::json::parse(germ_json));
    const double use_tol = tol > 0 ? tol : default_tolerance();
    const MongeJet m = monge_normalize(jet2(f), use_tol).jet;
    GridSpec grid;
    grid.theta_count = theta_count;
    grid.gamma_count = gamma_count;
    grid.gamma_min = gamma_min;
    grid.gamma_max = gamma_max;
    return locus_to_csv(m, sample_locus(m, grid));
}

std::string verify_json(const std::string& germ_json, double tol) {
    const PolyMapGerm f = parse_germ(nlohmann::json::parse(germ_json));
    const double use_tol = tol > 0 ? tol : default_tolerance();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckResult& c : run_all_checks(f, use_tol)) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = c.status;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["tol"] = c.tol;
        cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    return arr.dump(2);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "axialcurv: second-order geometry of corank-1 singular manifolds";
    m.attr("__version__") = "1.0.0";

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<NotGermError>(m, "NotGermError", PyExc_ValueError);
    py::register_exception<CorankError>(m, "CorankError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);

    m.def("analyze_json", &analyze_json, py::arg("germ_json"), py::arg("tol") = -1.0,
          "Full analysis report (JSON string) for a germ document (JSON string).");
    m.def("analyze_pretty", &analyze_pretty, py::arg("germ_json"), py::arg("tol") = -1.0,
          "Human-readable analysis summary for a germ document.");
    m.def("locus_csv", &locus_csv, py::arg("germ_json"), py::arg("theta_count") = 360,
          py::arg("gamma_count") = 201, py::arg("gamma_min") = -10.0,
          py::arg("gamma_max") = 10.0, py::arg("tol") = -1.0,
          "Curvature-locus point cloud as CSV text.");
    m.def("verify_json", &verify_json, py::arg("germ_json"), py::arg("tol") = -1.0,
          "Identity-check results (JSON array string) for a germ document.");
}

#include "axialcurv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace axialcurv {

namespace {

nlohmann::ordered_json vec_json(const Vec& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

nlohmann::ordered_json mat_json(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::ordered_json cols_json(const Mat& m) {
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) cols.push_back(vec_json(m.col(j)));
    return cols;
}

} // namespace

Analysis analyze(const PolyMapGerm& f, const AnalyzeOptions& opts) {
    Analysis a;
    a.germ = f;
    a.tol = opts.tol;

    NormalizeResult nr = monge_normalize(jet2(f), opts.tol);
    a.monge = std::move(nr.jet);
    a.record = std::move(nr.record);
    const MongeJet& m = a.monge;
    const double scale = std::max(m.scale(), 1.0);

    if (m.n == 3 && m.coeff_vec(m.n - 1, m.n - 1).norm() > opts.tol * scale)
        a.reduction = reduce_lemma_change(m, opts.tol);

    a.orbit = classify_orbit(m, opts.tol);
    a.shape = locus_shape(m, a.orbit, opts.tol);
    a.span = affine_span(m, opts.tol);
    a.ax = axial_space(m, a.span, opts.tol);
    a.frame = adapted_frame(m, a.orbit, a.span, a.ax, opts.tol);
    a.extended = extended_vector(m, a.span, a.ax, opts.tol);
    a.axial = axial_report(m, a.frame, opts.tol, opts.oracle);
    if (umbilic_defined(m, a.span)) a.umbilic = umbilic_curvature(m, a.span);
    if (opts.run_checks) a.checks = run_all_checks(f, opts.tol);

    a.warnings = a.orbit.warnings;
    for (const std::string& flag : a.axial.flags) a.warnings.push_back(flag);
    if (a.orbit.orbit == Orbit::XZ_YZ) {
        // The regular slice keeps its principal curvatures, but along v_a^1
        // they differ from the axial curvature of the full singular manifold.
        const Vec pk = principal_curvatures(regular_slice(m), a.frame.v.col(0));
        bool coincide = !a.axial.directions.empty();
        if (coincide) {
            for (const CriticalValue& cv : a.axial.directions[0].values) {
                bool hit = false;
                for (int i = 0; i < pk.size(); ++i)
                    if (close(cv.value, pk(i), 1e-8)) hit = true;
                coincide = coincide && hit;
            }
            coincide = coincide &&
                       a.axial.directions[0].values.size() == static_cast<size_t>(pk.size());
        }
        if (!coincide)
            a.warnings.push_back(
                "regular-slice principal curvatures along v_a^1 do not coincide with "
                "kappa_a1");
    }
    return a;
}

nlohmann::ordered_json analysis_to_json(const Analysis& a) {
    nlohmann::ordered_json j;
    j["input"] = germ_to_json(a.germ);
    j["tolerance"] = a.tol;

    nlohmann::ordered_json monge;
    monge["n"] = a.monge.n;
    monge["k"] = a.monge.k;
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const Mat& blk : a.monge.a) blocks.push_back(mat_json(blk));
    monge["a"] = blocks;
    monge["scale"] = a.monge.scale();
    if (a.reduction) {
        nlohmann::ordered_json red = nlohmann::ordered_json::array();
        for (const Mat& blk : a.reduction->jet.a) red.push_back(mat_json(blk));
        monge["reduced"] = red;
    }
    j["monge"] = monge;

    nlohmann::ordered_json orbit;
    orbit["name"] = orbit_name(a.orbit.orbit);
    orbit["rank_A"] = a.orbit.rank_A;
    orbit["a002_norm"] = a.orbit.a002_norm;
    orbit["minors"] = a.orbit.minors;
    orbit["near_degenerate"] = a.orbit.near_degenerate;
    j["orbit"] = orbit;

    nlohmann::ordered_json locus;
    locus["shape"] = a.shape.tag;
    locus["degenerate"] = a.shape.degenerate;
    locus["detail"] = a.shape.detail;
    nlohmann::ordered_json aff;
    aff["dim"] = a.span.dim;
    aff["base"] = vec_json(a.span.base);
    aff["dirs"] = cols_json(a.span.dirs);
    locus["aff"] = aff;
    nlohmann::ordered_json ax;
    ax["l"] = a.ax.l;
    ax["extended"] = a.ax.extended;
    ax["base"] = vec_json(a.ax.base);
    ax["dirs"] = cols_json(a.ax.dirs);
    locus["ax"] = ax;
    if (a.monge.n == 3) {
        nlohmann::ordered_json bd = nlohmann::ordered_json::array();
        for (int i = 0; i < a.frame.l; ++i)
            bd.push_back(boundedness_name(
                boundedness_diagnostic(a.monge, a.frame.v.col(i))));
        locus["boundedness"] = bd;
    }
    j["locus"] = locus;

    nlohmann::ordered_json frame;
    frame["vectors"] = cols_json(a.frame.v);
    frame["case"] = a.frame.case_tag;
    frame["unique"] = a.frame.unique;
    if (!a.frame.notes.empty()) frame["notes"] = a.frame.notes;
    j["frame"] = frame;

    if (a.extended) {
        nlohmann::ordered_json ext;
        ext["v"] = vec_json(a.extended->v);
        ext["kappa"] = a.extended->kappa;
        j["extended_vector"] = ext;
    } else {
        j["extended_vector"] = nullptr;
    }

    nlohmann::ordered_json axial = nlohmann::ordered_json::array();
    for (const DirectionalReport& dr : a.axial.directions) {
        nlohmann::ordered_json d;
        d["i"] = dr.i;
        d["v"] = vec_json(dr.v);
        nlohmann::ordered_json values = nlohmann::ordered_json::array();
        nlohmann::ordered_json types = nlohmann::ordered_json::array();
        nlohmann::ordered_json params = nlohmann::ordered_json::array();
        for (const CriticalValue& cv : dr.values) {
            values.push_back(cv.value);
            types.push_back(cv.type);
            nlohmann::ordered_json prm;
            prm["theta"] = cv.theta;
            prm["gamma"] = cv.gamma;
            params.push_back(prm);
        }
        d["values"] = values;
        d["types"] = types;
        d["params"] = params;
        d["method"] = dr.method;
        d["agree"] = dr.agree;
        if (!dr.note.empty()) d["note"] = dr.note;
        axial.push_back(d);
    }
    j["axial"] = axial;
    j["axial_total"] = a.axial.total_count;

    if (a.umbilic) j["umbilic"] = *a.umbilic;
    else j["umbilic"] = nullptr;

    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckResult& c : a.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = c.status;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["tol"] = c.tol;
        cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["warnings"] = a.warnings;
    return j;
}

std::string analysis_pretty(const Analysis& a) {
    std::ostringstream os;
    os.precision(12);
    os << "germ:        n = " << a.monge.n << ", k = " << a.monge.k << " (R^"
       << a.monge.n + a.monge.k << ")\n";
    os << "orbit:       " << orbit_name(a.orbit.orbit)
       << (a.orbit.near_degenerate ? "  [near-degenerate]" : "") << "\n";
    os << "locus:       " << a.shape.tag;
    if (!a.shape.detail.empty()) os << " (" << a.shape.detail << ")";
    os << "\n";
    os << "aff dim:     " << a.span.dim << "   ax l: " << a.ax.l
       << (a.ax.extended ? " (extended)" : "") << "\n";
    os << "frame:       case " << a.frame.case_tag
       << (a.frame.unique ? "" : "  [not unique]") << "\n";
    for (int i = 0; i < a.frame.l; ++i) {
        os << "  v_a^" << i + 1 << " = [";
        for (int r = 0; r < a.frame.v.rows(); ++r)
            os << (r ? ", " : "") << a.frame.v(r, i);
        os << "]\n";
    }
    for (const DirectionalReport& dr : a.axial.directions) {
        os << "kappa_a" << dr.i << ":    {";
        for (size_t t = 0; t < dr.values.size(); ++t)
            os << (t ? ", " : "") << dr.values[t].value;
        os << "}  [" << dr.method << (dr.agree ? "" : ", DISAGREE") << "]";
        if (!dr.note.empty()) os << "  " << dr.note;
        os << "\n";
    }
    if (a.extended)
        os << "v_a^" << a.frame.l + 1 << ":       kappa = " << a.extended->kappa << "\n";
    os << "umbilic:     ";
    if (a.umbilic) os << *a.umbilic << "\n";
    else os << "undefined\n";
    if (!a.checks.empty()) {
        os << "checks:\n";
        for (const CheckResult& c : a.checks)
            os << "  " << c.name << ": " << c.status
               << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    }
    for (const std::string& w : a.warnings) os << "warning:     " << w << "\n";
    return os.str();
}

} // namespace axialcurv

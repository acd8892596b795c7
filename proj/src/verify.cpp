#include "axialcurv/verify.hpp"

#include "axialcurv/classify.hpp"
#include "axialcurv/locus.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace axialcurv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCheckTol = 1e-8;

struct Pipeline {
    OrbitResult orbit;
    AffineSpan span;
    AxialSpace ax;
    AdaptedFrame frame;
};

Pipeline run_pipeline(const MongeJet& m, double tol) {
    Pipeline p;
    p.orbit = classify_orbit(m, tol);
    p.span = affine_span(m, tol);
    p.ax = axial_space(m, p.span, tol);
    p.frame = adapted_frame(m, p.orbit, p.span, p.ax, tol);
    return p;
}

CheckResult not_applicable(const std::string& name, const std::string& reason) {
    CheckResult r;
    r.name = name;
    r.status = "not-applicable";
    r.detail = reason;
    return r;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

/// True when the first n-1 components of f are exactly the source
/// coordinates (up to 1e-10): the Monge-aligned inputs the curve identities
/// are stated for.
bool aligned_monge_input(const Jet2& j, double scale) {
    const double cut = 1e-10 * std::max(1.0, scale);
    Mat expected = Mat::Zero(j.L.rows(), j.L.cols());
    const int n = static_cast<int>(j.L.cols());
    for (int i = 0; i + 1 < n; ++i) expected(i, i) = 1.0;
    if ((j.L - expected).cwiseAbs().maxCoeff() > cut) return false;
    for (int i = 0; i + 1 < n; ++i)
        if (j.H[i].cwiseAbs().maxCoeff() > cut) return false;
    return true;
}

std::vector<CriticalValue> closed_values(const MongeJet& m, const Vec& v, double tol) {
    return axial_closed(normal_curvature_form(m, v), std::max(m.scale(), 1.0), tol);
}

double max_abs_value(const std::vector<CriticalValue>& vals) {
    double out = 0.0;
    for (const CriticalValue& v : vals) out = std::max(out, std::abs(v.value));
    return out;
}

/// Signed value of largest magnitude (0 for an empty list).
double dominant_value(const std::vector<CriticalValue>& vals) {
    double out = 0.0;
    for (const CriticalValue& v : vals)
        if (std::abs(v.value) > std::abs(out)) out = v.value;
    return out;
}

double angle_dist_mod_pi(double a, double b) {
    double d = std::fmod(std::abs(a - b), std::numbers::pi);
    return std::min(d, std::numbers::pi - d);
}

} // namespace

// -------------------------------------------------------- curve identity

CheckResult check_curve_identity(const PolyMapGerm& f, double tol) {
    const std::string name = "curve-identity";
    const Jet2 j = jet2(f);
    NormalizeResult nr = monge_normalize(j, tol);
    const MongeJet& m = nr.jet;
    const double scale = std::max(m.scale(), 1.0);
    const double cut = tol * scale;

    if (!aligned_monge_input(j, scale))
        return not_applicable(name, "input is not in aligned Monge form");

    Pipeline p = run_pipeline(m, tol);
    double k1 = 0.0, k2 = 0.0;
    if (m.n == 2) {
        if (p.orbit.orbit != Orbit::HalfLine)
            return not_applicable(name, "locus is not a half-line (orbit " +
                                            orbit_name(p.orbit.orbit) + ")");
        if (m.coeff_vec(0, 1).norm() > cut)
            return not_applicable(name, "mixed coefficient a_11 does not vanish");
        const auto v1 = closed_values(m, p.frame.v.col(0), tol);
        const auto v2 = closed_values(m, p.frame.v.col(1), tol);
        if (v1.empty() || v2.empty())
            return not_applicable(name, "an axial direction has no critical value");
        k1 = v1.front().value;
        k2 = v2.front().value;
    } else if (m.n == 3 && m.k == 1) {
        if (p.orbit.orbit != Orbit::Z2_0)
            return not_applicable(name, "orbit " + orbit_name(p.orbit.orbit) +
                                            " is outside the frontal case");
        if (m.coeff_vec(0, 1).norm() > cut || m.coeff_vec(0, 2).norm() > cut ||
            m.coeff_vec(1, 2).norm() > cut)
            return not_applicable(name, "cross couplings do not vanish");
        // Pair the two directions at the common critical angle theta = 0.
        for (int i = 0; i < 2; ++i) {
            const auto vals = closed_values(m, p.frame.v.col(i), tol);
            if (vals.empty())
                return not_applicable(name, "an axial direction has no critical value");
            const CriticalValue* best = &vals.front();
            for (const CriticalValue& cv : vals)
                if (angle_dist_mod_pi(cv.theta, 0.0) < angle_dist_mod_pi(best->theta, 0.0))
                    best = &cv;
            (i == 0 ? k1 : k2) = best->value;
        }
    } else {
        return not_applicable(name, "stated for surfaces and frontal 3-manifolds in R^4");
    }

    const double kappa = curve_curvature(f, 0, tol);
    CheckResult r;
    r.name = name;
    r.tol = kCheckTol;
    r.lhs = {kappa * kappa};
    r.rhs = {k1 * k1 + k2 * k2};
    r.status = close(r.lhs[0], r.rhs[0], r.tol) ? "pass" : "fail";
    r.detail = "kappa^2 = " + fmt(r.lhs[0]) + " vs kappa_a1^2 + kappa_a2^2 = " +
               fmt(r.rhs[0]);
    return r;
}

// ------------------------------------------------------------------ gauss

CheckResult check_gauss(const MongeJet& m, double tol) {
    const std::string name = "gauss-curvature";
    if (m.n != 3 || m.k != 1)
        return not_applicable(name, "stated for 3-manifolds in R^4");
    const double scale = std::max(m.scale(), 1.0);
    const double cut = tol * scale;
    Pipeline p = run_pipeline(m, tol);
    if (p.orbit.orbit != Orbit::Z2_0 && p.orbit.orbit != Orbit::Zero)
        return not_applicable(name, "orbit " + orbit_name(p.orbit.orbit) +
                                        " is outside the corollary");
    if (m.coeff_vec(0, 2).norm() > cut || m.coeff_vec(1, 2).norm() > cut)
        return not_applicable(name, "cross couplings do not vanish");

    // Independent side: Gaussian curvature of the regular slice as the
    // det-sum over the canonical normal frame.
    const RegularSliceJet slice = regular_slice(m);
    const double K = slice.II[0].determinant() + slice.II[1].determinant();

    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto vals = closed_values(m, p.frame.v.col(i), tol);
        if (vals.empty())
            return not_applicable(name, "an axial direction has no critical value");
        const double prod = vals.size() == 1 ? vals[0].value * vals[0].value
                                             : vals[0].value * vals[1].value;
        sum += prod;
    }

    CheckResult r;
    r.name = name;
    r.tol = kCheckTol;
    r.lhs = {K};
    r.rhs = {sum};
    r.status = close(K, sum, r.tol) ? "pass" : "fail";
    r.detail = "slice det-sum " + fmt(K) + " vs axial product sum " + fmt(sum);
    return r;
}

// ----------------------------------------------------- height singularity

CheckResult check_height_singularity(const MongeJet& m, double tol) {
    const std::string name = "height-singularity";
    if (m.n != 2)
        return not_applicable(name, "stated for singular surfaces");
    Pipeline p = run_pipeline(m, tol);
    if (p.orbit.orbit != Orbit::NondegParabola && p.orbit.orbit != Orbit::HalfLine)
        return not_applicable(name, "locus is neither a parabola nor a half-line");

    const Vec v1 = p.frame.v.col(0);
    Mat hess = Mat::Zero(2, 2);
    for (int l = 0; l <= m.k; ++l) hess += v1(l) * m.a[l];
    const double denom = v1.dot(m.coeff_vec(1, 1)); // ||a_02|| > 0 here
    const double lhs = hess.determinant() / denom;

    const auto vals = closed_values(m, v1, tol);
    if (vals.empty())
        return not_applicable(name, "primary direction has no critical value");
    const double k1 = vals.front().value;

    const double cut = kCheckTol * std::max(1.0, m.scale());
    auto classify3 = [&](double x) { return x > cut ? 1 : (x < -cut ? -1 : 0); };
    const int cls_h = classify3(lhs);
    const int cls_k = classify3(k1);
    static const char* names3[] = {"A1-", "A>=2", "A1+"};

    CheckResult r;
    r.name = name;
    r.tol = cut;
    r.lhs = {lhs};
    r.rhs = {k1};
    r.status = cls_h == cls_k ? "pass" : "fail";
    r.detail = std::string("height type ") + names3[cls_h + 1] + ", kappa_a1 = " + fmt(k1);
    return r;
}

// ------------------------------------------------------- umbilic relation

CheckResult check_umbilic_relation(const MongeJet& m, double tol) {
    const std::string name = "umbilic-relation";
    Pipeline p = run_pipeline(m, tol);
    if (!umbilic_defined(m, p.span))
        return not_applicable(name, "kappa_u undefined: Aff_p affinely spans N_pM");

    const double ku = umbilic_curvature(m, p.span);
    const double scale = std::max(m.scale(), 1.0);
    const double zero_cut = kCheckTol * scale;
    const int l = p.frame.l;

    double expected = 0.0;
    bool zeros_ok = true;
    std::string branch;
    std::vector<int> zero_idx;

    if (m.n >= m.k + 1) {
        const int r_codim = (m.k + 1) - p.span.dim;
        int designated;
        if (p.span.dim == 0) {
            // Point locus: the frame points v2 at the locus.
            designated = 2;
            for (int j = 1; j <= l; ++j)
                if (j != 2) zero_idx.push_back(j);
            branch = "point locus, kappa_u = |kappa_a2|";
        } else {
            designated = l - r_codim + 1;
            for (int j = designated + 1; j <= l; ++j) zero_idx.push_back(j);
            branch = "codimension " + std::to_string(r_codim) + ", kappa_u = |kappa_a" +
                     std::to_string(designated) + "|";
        }
        expected = dominant_value(closed_values(m, p.frame.v.col(designated - 1), tol));
        for (int j : zero_idx)
            if (max_abs_value(closed_values(m, p.frame.v.col(j - 1), tol)) > zero_cut)
                zeros_ok = false;
    } else {
        if (p.span.dim == l) {
            const auto ext = extended_vector(m, p.span, p.ax, tol);
            if (!ext)
                return not_applicable(name, "extended axial vector unavailable");
            expected = ext->kappa;
            branch = "dim Aff = l, kappa_u = |kappa_{v_a^{l+1}}|";
        } else {
            expected = dominant_value(closed_values(m, p.frame.v.col(1), tol));
            if (p.span.dim == 0 &&
                max_abs_value(closed_values(m, p.frame.v.col(0), tol)) > zero_cut)
                zeros_ok = false;
            branch = "dim Aff < l, kappa_u = |kappa_a2|";
        }
    }

    CheckResult r;
    r.name = name;
    r.tol = kCheckTol;
    r.lhs = {ku};
    r.rhs = {std::abs(expected)};
    r.status = (close(ku, std::abs(expected), r.tol) && zeros_ok) ? "pass" : "fail";
    r.detail = branch + (zeros_ok ? "" : "; trailing axial values do not vanish");
    return r;
}

// ------------------------------------------------------- section relation

namespace {

/// Critical value of the section's normal curvature along a fixed ambient
/// normal direction v, or nullopt when the restricted parabola degenerates.
std::optional<double> section_value(const MongeJet& m, double gamma, const Vec& v,
                                    double tol) {
    const MongeJet sec = section_jet(m, gamma);
    const auto vals =
        axial_closed(normal_curvature_form(sec, v), std::max(m.scale(), 1.0), tol);
    if (vals.empty()) return std::nullopt;
    return vals.front().value;
}

} // namespace

CheckResult check_section_relation(const MongeJet& m, double tol) {
    const std::string name = "section-relation";
    if (m.n != 3 || m.k != 2)
        return not_applicable(name, "stated for 3-manifolds in R^5");
    Pipeline p = run_pipeline(m, tol);
    const double scale = std::max(m.scale(), 1.0);
    const double cut = tol * scale;

    const int grid = 720;
    std::ostringstream detail;
    bool all_ok = true;
    int checked = 0;

    for (int i = 0; i < p.frame.l; ++i) {
        const Vec v = p.frame.v.col(i);
        const NormalCurvatureForm form = normal_curvature_form(m, v);
        if (std::abs(form.a002v) <= cut && form.b().norm() > cut) {
            detail << "i=" << (i + 1) << ": skipped (sections have no critical value); ";
            continue;
        }

        // Sweep h(gamma), excluding gamma = pi/2 and 3pi/2.
        std::vector<double> gs, hs;
        for (int jdx = 0; jdx < grid; ++jdx) {
            if (jdx == grid / 4 || jdx == 3 * grid / 4) continue;
            const double g = kTwoPi * jdx / grid;
            const auto h = section_value(m, g, v, tol);
            if (!h) continue;
            gs.push_back(g);
            hs.push_back(*h);
        }
        if (gs.size() < static_cast<size_t>(grid) / 2) {
            detail << "i=" << (i + 1) << ": skipped (sweep mostly undefined); ";
            continue;
        }

        std::vector<double> extrema;
        const double hmin = *std::min_element(hs.begin(), hs.end());
        const double hmax = *std::max_element(hs.begin(), hs.end());
        if (hmax - hmin <= 1e-10 * scale) {
            extrema.push_back(hs.front());
        } else {
            const size_t N = gs.size();
            for (size_t t = 0; t < N; ++t) {
                const double prev = hs[(t + N - 1) % N], cur = hs[t], next = hs[(t + 1) % N];
                const bool is_max = cur >= prev && cur >= next && (cur > prev || cur > next);
                const bool is_min = cur <= prev && cur <= next && (cur < prev || cur < next);
                if (!is_max && !is_min) continue;
                // Ternary search on the bracketing cell.
                double a = gs[(t + N - 1) % N], b = gs[(t + 1) % N];
                if (b < a) b += kTwoPi;
                const double sign = is_max ? 1.0 : -1.0;
                for (int it = 0; it < 120 && b - a > 1e-12; ++it) {
                    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
                    const auto h1 = section_value(m, m1, v, tol);
                    const auto h2 = section_value(m, m2, v, tol);
                    if (!h1 || !h2) break;
                    if (sign * *h1 < sign * *h2) a = m1;
                    else b = m2;
                }
                const auto hb = section_value(m, 0.5 * (a + b), v, tol);
                if (hb) extrema.push_back(*hb);
            }
            std::sort(extrema.begin(), extrema.end());
            extrema.erase(std::unique(extrema.begin(), extrema.end(),
                                      [](double x, double y) { return close(x, y, 1e-8); }),
                          extrema.end());
        }

        std::vector<double> parent;
        for (const CriticalValue& cv : closed_values(m, v, tol)) parent.push_back(cv.value);

        auto contained = [](const std::vector<double>& a, const std::vector<double>& b) {
            std::vector<bool> used(b.size(), false);
            for (double x : a) {
                bool hit = false;
                for (size_t t = 0; t < b.size(); ++t)
                    if (!used[t] && close(x, b[t], 1e-6)) {
                        used[t] = hit = true;
                        break;
                    }
                if (!hit) return false;
            }
            return true;
        };
        const bool ok = contained(extrema, parent) && contained(parent, extrema);
        all_ok = all_ok && ok;
        ++checked;
        detail << "i=" << (i + 1) << ": " << extrema.size() << " sweep extrema vs "
               << parent.size() << " axial values " << (ok ? "match" : "MISMATCH") << "; ";
    }

    if (checked == 0) return not_applicable(name, detail.str());
    CheckResult r;
    r.name = name;
    r.tol = 1e-6;
    r.status = all_ok ? "pass" : "fail";
    r.detail = detail.str();
    return r;
}

// ----------------------------------------------------- curve corollaries

CheckResult check_curve_corollaries(const PolyMapGerm& f, double tol) {
    const std::string name = "curve-corollaries";
    if (f.n != 3 || f.k != 1)
        return not_applicable(name, "stated for 3-manifolds in R^4");
    const Jet2 j = jet2(f);
    NormalizeResult nr = monge_normalize(j, tol);
    const MongeJet& m = nr.jet;
    const double scale = std::max(m.scale(), 1.0);
    const double cut = tol * scale;

    if (!aligned_monge_input(j, scale))
        return not_applicable(name, "input is not in aligned Monge form");
    Pipeline p = run_pipeline(m, tol);
    if (p.orbit.orbit != Orbit::XZ_Z2 && p.orbit.orbit != Orbit::XZ_0)
        return not_applicable(name, "orbit " + orbit_name(p.orbit.orbit) +
                                        " is outside the corollary");
    if (std::abs(m.a[1](1, 1)) > cut)
        return not_applicable(name, "a^2_020 does not vanish");
    if (std::abs(m.a[0](1, 2)) > cut)
        return not_applicable(name, "a^1_011 does not vanish");

    int named;
    if (p.orbit.orbit == Orbit::XZ_Z2) {
        if (std::abs(m.a[0](2, 2)) > cut)
            return not_applicable(name, "a_002 is not aligned with the second normal");
        named = 1; // kappa_a2
    } else {
        if (std::abs(m.a[1](0, 2)) > cut || std::abs(m.a[1](1, 2)) > cut)
            return not_applicable(name, "couplings are not confined to the first normal");
        named = 0; // kappa_a1
    }

    const auto vals = closed_values(m, p.frame.v.col(named), tol);
    if (vals.size() != 1)
        return not_applicable(name, "named direction does not carry a single value");

    const double kappa = curve_curvature(f, 1, tol);
    CheckResult r;
    r.name = name;
    r.tol = kCheckTol;
    r.lhs = {kappa};
    r.rhs = {std::abs(vals.front().value)};
    r.status = close(r.lhs[0], r.rhs[0], r.tol) ? "pass" : "fail";
    r.detail = std::string("curve f(0,y,0) vs |kappa_a") + std::to_string(named + 1) +
               "| in orbit " + orbit_name(p.orbit.orbit);
    return r;
}

// ----------------------------------------------------- segment corollary

CheckResult check_segment_corollary(const MongeJet& m, double tol) {
    const std::string name = "segment-corollary";
    if (m.n != 3 || m.k != 1)
        return not_applicable(name, "stated for 3-manifolds in R^4");
    const double scale = std::max(m.scale(), 1.0);
    if (m.coeff_vec(0, 2).norm() > tol * scale || m.coeff_vec(1, 2).norm() > tol * scale)
        return not_applicable(name, "cross couplings do not vanish");

    const RegularSliceJet slice = regular_slice(m);
    const Mat comm = slice.II[0] * slice.II[1] - slice.II[1] * slice.II[0];
    if (comm.norm() > 1e-10 * std::max(1.0, scale * scale))
        return not_applicable(name, "slice shape operators do not commute (||[A,B]|| = " +
                                        fmt(comm.norm()) + ")");

    Pipeline p = run_pipeline(m, tol);

    // Independent endpoints: evaluate both forms on a common eigenbasis.
    Mat basis = Mat::Identity(2, 2);
    for (const Mat& II : slice.II) {
        Eigen::SelfAdjointEigenSolver<Mat> es(II);
        if (es.eigenvalues()(1) - es.eigenvalues()(0) > 1e-9 * scale) {
            basis = es.eigenvectors();
            break;
        }
    }
    std::vector<Vec> slice_pts;
    for (int c = 0; c < 2; ++c) {
        const Vec u = basis.col(c);
        Vec pt(2);
        pt << u.dot(slice.II[0] * u), u.dot(slice.II[1] * u);
        // Express in the adapted frame.
        Vec q(2);
        q << pt.dot(p.frame.v.col(0)), pt.dot(p.frame.v.col(1));
        slice_pts.push_back(q);
    }

    // Axial endpoints, paired at the critical angles.
    const auto v1vals = closed_values(m, p.frame.v.col(0), tol);
    const auto v2vals = closed_values(m, p.frame.v.col(1), tol);
    if (v1vals.empty() || v2vals.empty())
        return not_applicable(name, "an axial direction has no critical value");
    std::vector<Vec> axial_pts;
    if (v1vals.size() == 2 && v2vals.size() == 2) {
        for (const CriticalValue& a : v1vals) {
            const CriticalValue* match = nullptr;
            for (const CriticalValue& b : v2vals)
                if (angle_dist_mod_pi(a.theta, b.theta) < 1e-6) match = &b;
            if (!match) {
                CheckResult r;
                r.name = name;
                r.status = "fail";
                r.detail = "critical angles of the two directions do not pair";
                return r;
            }
            axial_pts.push_back((Vec(2) << a.value, match->value).finished());
        }
    } else {
        // A merged (scalar) direction pairs with every angle of the other.
        const auto& many = v1vals.size() >= v2vals.size() ? v1vals : v2vals;
        const bool first_is_many = v1vals.size() >= v2vals.size();
        const double solo =
            (first_is_many ? v2vals : v1vals).front().value;
        for (const CriticalValue& a : many) {
            Vec pt(2);
            if (first_is_many) pt << a.value, solo;
            else pt << solo, a.value;
            axial_pts.push_back(pt);
        }
        if (axial_pts.size() == 1) axial_pts.push_back(axial_pts.front());
    }
    if (slice_pts.size() == 2 && axial_pts.size() == 1)
        axial_pts.push_back(axial_pts.front());

    // Unordered 2-point match.
    auto pt_close = [&](const Vec& a, const Vec& b) {
        return close(a(0), b(0), kCheckTol) && close(a(1), b(1), kCheckTol);
    };
    const bool direct = pt_close(slice_pts[0], axial_pts[0]) &&
                        pt_close(slice_pts[1], axial_pts[1]);
    const bool swapped = pt_close(slice_pts[0], axial_pts[1]) &&
                         pt_close(slice_pts[1], axial_pts[0]);

    CheckResult r;
    r.name = name;
    r.tol = kCheckTol;
    r.lhs = {slice_pts[0](0), slice_pts[0](1), slice_pts[1](0), slice_pts[1](1)};
    r.rhs = {axial_pts[0](0), axial_pts[0](1), axial_pts[1](0), axial_pts[1](1)};
    r.status = (direct || swapped) ? "pass" : "fail";
    r.detail = "segment endpoints in the adapted frame";
    return r;
}

// ------------------------------------------------------------------- all

std::vector<CheckResult> run_all_checks(const PolyMapGerm& f, double tol) {
    std::vector<CheckResult> out;
    auto guard = [&](const std::string& name, auto&& fn) {
        try {
            out.push_back(fn());
        } catch (const Error& e) {
            out.push_back(not_applicable(name, std::string("skipped: ") + e.what()));
        }
    };
    guard("curve-identity", [&] { return check_curve_identity(f, tol); });
    const MongeJet m = monge_normalize(jet2(f), tol).jet;
    guard("gauss-curvature", [&] { return check_gauss(m, tol); });
    guard("height-singularity", [&] { return check_height_singularity(m, tol); });
    guard("umbilic-relation", [&] { return check_umbilic_relation(m, tol); });
    guard("section-relation", [&] { return check_section_relation(m, tol); });
    guard("curve-corollaries", [&] { return check_curve_corollaries(f, tol); });
    guard("segment-corollary", [&] { return check_segment_corollary(m, tol); });
    return out;
}

} // namespace axialcurv

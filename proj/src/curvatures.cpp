#include "axialcurv/curvatures.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace axialcurv {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

// ------------------------------------------------------- NormalCurvatureForm

double NormalCurvatureForm::A(double theta) const {
    if (n == 2) return a200v;
    const double c = std::cos(theta), s = std::sin(theta);
    return a200v * c * c + 2.0 * a110v * c * s + a020v * s * s;
}

double NormalCurvatureForm::B(double theta) const {
    if (n == 2) return 2.0 * a110v;
    return 2.0 * (a101v * std::cos(theta) + a011v * std::sin(theta));
}

double NormalCurvatureForm::eval(const TangentParam& t) const {
    return A(t.theta) + B(t.theta) * t.gamma + a002v * t.gamma * t.gamma;
}

Mat NormalCurvatureForm::MA() const {
    Mat M(2, 2);
    M << a200v, a110v, a110v, a020v;
    return M;
}

Vec NormalCurvatureForm::b() const { return (Vec(2) << a101v, a011v).finished(); }

NormalCurvatureForm normal_curvature_form(const MongeJet& m, const Vec& v) {
    NormalCurvatureForm f;
    f.n = m.n;
    if (m.n == 2) {
        f.a200v = v.dot(m.coeff_vec(0, 0));
        f.a110v = v.dot(m.coeff_vec(0, 1));
        f.a002v = v.dot(m.coeff_vec(1, 1));
        return f;
    }
    if (m.n != 3) throw UnsupportedError("normal curvature forms cover n = 2 and n = 3");
    f.a200v = v.dot(m.coeff_vec(0, 0));
    f.a110v = v.dot(m.coeff_vec(0, 1));
    f.a020v = v.dot(m.coeff_vec(1, 1));
    f.a101v = v.dot(m.coeff_vec(0, 2));
    f.a011v = v.dot(m.coeff_vec(1, 2));
    f.a002v = v.dot(m.coeff_vec(2, 2));
    return f;
}

// ------------------------------------------------------------- closed values

namespace {

double wrap_angle(double theta) {
    theta = std::fmod(theta, kTwoPi);
    return theta < 0 ? theta + kTwoPi : theta;
}

void sort_values(std::vector<CriticalValue>& vals) {
    std::sort(vals.begin(), vals.end(), [](const CriticalValue& a, const CriticalValue& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.theta < b.theta;
    });
}

/// Merge entries whose values agree at `tol` (relative above 1, absolute
/// below); the representative keeps the smallest theta of its group.
std::vector<CriticalValue> dedupe_values(std::vector<CriticalValue> vals, double tol) {
    sort_values(vals);
    std::vector<CriticalValue> out;
    for (const CriticalValue& v : vals) {
        if (!out.empty() && close(out.back().value, v.value, tol)) {
            if (v.type != out.back().type) out.back().type = "degenerate";
            continue;
        }
        out.push_back(v);
    }
    return out;
}

/// Eigen-decomposition of a symmetric 2x2 quadratic form: pairs
/// (eigenvalue, angle of eigenvector), ascending.
std::vector<std::pair<double, double>> eig2(const Mat& M) {
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < 2; ++i) {
        const Vec u = es.eigenvectors().col(i);
        out.emplace_back(es.eigenvalues()(i), wrap_angle(std::atan2(u(1), u(0))));
    }
    return out;
}

} // namespace

std::vector<CriticalValue> axial_closed(const NormalCurvatureForm& form, double scale,
                                        double tol) {
    std::vector<CriticalValue> vals;
    const double cut = tol * std::max(scale, 1.0);

    if (form.n == 2) {
        const double l = form.a200v, mcoef = form.a110v, ncoef = form.a002v;
        if (std::abs(ncoef) > cut) {
            CriticalValue cv;
            cv.gamma = -mcoef / ncoef;
            cv.value = l - mcoef * mcoef / ncoef;
            cv.type = ncoef > 0 ? "min" : "max";
            vals.push_back(cv);
        } else if (std::abs(mcoef) > cut) {
            // Linear nonconstant: no critical point on the line.
        } else {
            vals.push_back({l, 0.0, 0.0, "degenerate"});
        }
        return vals;
    }

    const double C = form.a002v;
    const Vec b = form.b();
    if (std::abs(C) > cut) {
        // Substitute the gamma-critical line gamma = -B/(2C): the theta part
        // becomes the quadratic form of MA - b b^T / C.
        const Mat M = form.MA() - b * b.transpose() / C;
        for (auto [lambda, theta] : eig2(M)) {
            CriticalValue cv;
            cv.value = lambda;
            cv.theta = theta;
            cv.gamma = -form.B(theta) / (2.0 * C);
            cv.type = "saddle";
            vals.push_back(cv);
        }
        // Local types: with C > 0 the smaller theta-eigenvalue is the
        // minimum, the larger a saddle; mirrored for C < 0.
        sort_values(vals);
        if (C > 0) vals.front().type = "min";
        else vals.back().type = "max";
    } else if (b.norm() > cut) {
        CriticalValue cv;
        cv.theta = wrap_angle(std::atan2(-b(0), b(1)));
        cv.value = form.A(cv.theta);
        const double c = std::cos(cv.theta), s = std::sin(cv.theta);
        const double Ap = 2.0 * (-(form.a200v * c + form.a110v * s) * s +
                                 (form.a110v * c + form.a020v * s) * c);
        const double Bp = 2.0 * (-form.a101v * s + form.a011v * c);
        cv.gamma = -Ap / Bp;
        cv.type = "saddle";
        vals.push_back(cv);
    } else {
        for (auto [lambda, theta] : eig2(form.MA()))
            vals.push_back({lambda, theta, 0.0, "min"});
        sort_values(vals);
        vals.front().type = "min";
        vals.back().type = "max";
        if (close(vals.front().value, vals.back().value, 1e-12))
            for (auto& v : vals) v.type = "degenerate";
    }
    return dedupe_values(std::move(vals), 1e-9);
}

// -------------------------------------------------------------------- oracle

namespace {

/// Roots of a smooth 2pi-periodic derivative on a dense grid with bisection
/// refinement. The derivative must have simple roots (single-harmonic
/// functions of 2theta qualify). Returns sorted thetas in [0, 2pi).
std::vector<double> periodic_roots(const std::function<double(double)>& deriv, int grid,
                                   double refine_tol, double flat_cut) {
    std::vector<double> roots;
    std::vector<double> val(grid);
    double max_abs = 0.0;
    for (int i = 0; i < grid; ++i) {
        val[i] = deriv(kTwoPi * i / grid);
        max_abs = std::max(max_abs, std::abs(val[i]));
    }
    if (max_abs <= flat_cut) return roots; // flat: caller handles the circle

    for (int i = 0; i < grid; ++i) {
        const double t0 = kTwoPi * i / grid;
        const double t1 = kTwoPi * (i + 1) / grid;
        const double f0 = val[i];
        const double f1 = val[(i + 1) % grid];
        if (f0 == 0.0) {
            roots.push_back(t0);
            continue;
        }
        if (f0 * f1 < 0.0) {
            double a = t0, b = t1, fa = f0;
            while (b - a > refine_tol) {
                const double mid = 0.5 * (a + b);
                const double fm = deriv(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
    }
    return roots;
}

} // namespace

std::vector<CriticalValue> axial_oracle(const NormalCurvatureForm& form, double scale,
                                        double tol, const OracleOptions& opts) {
    for (double c : {form.a200v, form.a110v, form.a020v, form.a101v, form.a011v, form.a002v})
        if (!std::isfinite(c))
            throw NoCriticalValueError("non-finite coefficient in the curvature form");

    const double cut = tol * std::max(scale, 1.0);
    std::vector<CriticalValue> vals;

    if (form.n == 2) {
        const double l = form.a200v, mcoef = form.a110v, ncoef = form.a002v;
        if (std::abs(ncoef) > cut) {
            // Bisect K'(y) = 2m + 2ny on a bracket that surely straddles it.
            const double R = 1.0 + 2.0 * std::abs(mcoef) / std::abs(ncoef);
            double a = -R, b = R;
            auto deriv = [&](double y) { return 2.0 * mcoef + 2.0 * ncoef * y; };
            double fa = deriv(a);
            while (b - a > opts.refine_tol) {
                const double mid = 0.5 * (a + b);
                const double fm = deriv(mid);
                if (fa * fm <= 0.0) b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            const double y = 0.5 * (a + b);
            CriticalValue cv;
            cv.gamma = y;
            cv.value = l + 2.0 * mcoef * y + ncoef * y * y;
            cv.type = ncoef > 0 ? "min" : "max";
            vals.push_back(cv);
        } else if (std::abs(mcoef) > cut) {
            // Linear: no critical point.
        } else {
            vals.push_back({l, 0.0, 0.0, "degenerate"});
        }
        return dedupe_values(std::move(vals), opts.dedupe_tol);
    }

    const double C = form.a002v;
    const Vec b = form.b();
    const double flat_cut = 1e-13 * std::max(scale, 1.0);

    auto Aval = [&](double t) { return form.A(t); };
    auto Aprime = [&](double t) {
        const double c = std::cos(t), s = std::sin(t);
        return 2.0 * (-(form.a200v * c + form.a110v * s) * s +
                      (form.a110v * c + form.a020v * s) * c);
    };
    auto Bval = [&](double t) { return form.B(t); };
    auto Bprime = [&](double t) {
        return 2.0 * (-form.a101v * std::sin(t) + form.a011v * std::cos(t));
    };

    if (std::abs(C) > cut) {
        auto g = [&](double t) {
            const double Bt = Bval(t);
            return Aval(t) - Bt * Bt / (4.0 * C);
        };
        auto gprime = [&](double t) { return Aprime(t) - Bval(t) * Bprime(t) / (2.0 * C); };
        auto gsecond = [&](double t) {
            const double c = std::cos(t), s = std::sin(t);
            const double App =
                2.0 * ((form.a200v * s * s - 2.0 * form.a110v * c * s + form.a020v * c * c) -
                       Aval(t));
            const double Bt = Bval(t), Bp = Bprime(t);
            return App - (Bp * Bp - Bt * Bt) / (2.0 * C);
        };
        const std::vector<double> roots =
            periodic_roots(gprime, opts.theta_grid, opts.refine_tol, flat_cut);
        if (roots.empty()) {
            // g is constant on the circle: one critical value.
            CriticalValue cv;
            cv.value = g(0.0);
            cv.gamma = -Bval(0.0) / (2.0 * C);
            cv.type = "degenerate";
            vals.push_back(cv);
        }
        for (double t : roots) {
            CriticalValue cv;
            cv.theta = t;
            cv.value = g(t);
            cv.gamma = -Bval(t) / (2.0 * C);
            const double curth = gsecond(t);
            if (std::abs(curth) <= flat_cut) cv.type = "degenerate";
            else if (C > 0) cv.type = curth > 0 ? "min" : "saddle";
            else cv.type = curth < 0 ? "max" : "saddle";
            vals.push_back(cv);
        }
    } else if (b.norm() > cut) {
        // Unbounded both ways: critical lines live over the roots of B.
        const std::vector<double> roots =
            periodic_roots(Bval, opts.theta_grid, opts.refine_tol, flat_cut);
        for (double t : roots) {
            const double Bp = Bprime(t);
            if (std::abs(Bp) <= flat_cut) continue;
            CriticalValue cv;
            cv.theta = t;
            cv.value = Aval(t);
            cv.gamma = -Aprime(t) / Bp;
            cv.type = "saddle";
            vals.push_back(cv);
        }
    } else {
        const std::vector<double> roots =
            periodic_roots(Aprime, opts.theta_grid, opts.refine_tol, flat_cut);
        if (roots.empty()) {
            vals.push_back({Aval(0.0), 0.0, 0.0, "degenerate"});
        }
        for (double t : roots) {
            const double c = std::cos(t), s = std::sin(t);
            const double App =
                2.0 * ((form.a200v * s * s - 2.0 * form.a110v * c * s + form.a020v * c * c) -
                       Aval(t));
            CriticalValue cv;
            cv.theta = t;
            cv.value = Aval(t);
            cv.type = std::abs(App) <= flat_cut ? "degenerate" : (App > 0 ? "min" : "max");
            vals.push_back(cv);
        }
    }
    return dedupe_values(std::move(vals), opts.dedupe_tol);
}

std::vector<CriticalValue> axial_oracle(const MongeJet& m, const Vec& v, double tol,
                                        const OracleOptions& opts) {
    return axial_oracle(normal_curvature_form(m, v), std::max(m.scale(), 1.0), tol, opts);
}

// --------------------------------------------------------------------- slice

RegularSliceJet regular_slice(const MongeJet& m) {
    RegularSliceJet s;
    s.n = m.n;
    s.k = m.k;
    s.II.reserve(m.k + 1);
    for (const Mat& a : m.a) s.II.push_back(a.topLeftCorner(m.n - 1, m.n - 1));
    return s;
}

Mat slice_shape_operator(const RegularSliceJet& slice, const Vec& v) {
    Mat A = Mat::Zero(slice.n - 1, slice.n - 1);
    for (int l = 0; l <= slice.k; ++l) A += v(l) * slice.II[l];
    return A;
}

Vec principal_curvatures(const RegularSliceJet& slice, const Vec& v) {
    Eigen::SelfAdjointEigenSolver<Mat> es(slice_shape_operator(slice, v));
    return es.eigenvalues();
}

double curve_curvature(const PolyMapGerm& f, int axis, double tol) {
    if (axis < 0 || axis >= f.n) throw DimensionError("curve axis out of range");
    const Jet2 j = jet2(f);
    const Vec d1 = j.L.col(axis);
    Vec d2(f.n + f.k);
    for (int m = 0; m < f.n + f.k; ++m) d2(m) = j.H[m](axis, axis);
    const double speed = d1.norm();
    if (speed <= tol) throw SingularCurveError("coordinate curve is singular at the origin");
    const double g11 = speed * speed, g22 = d2.squaredNorm(), g12 = d1.dot(d2);
    const double num2 = std::max(g11 * g22 - g12 * g12, 0.0);
    return std::sqrt(num2) / (speed * speed * speed);
}

MongeJet section_jet(const MongeJet& m, double gamma) {
    if (m.n != 3) throw DimensionError("normal sections require n = 3");
    const double c = std::cos(gamma), s = std::sin(gamma);
    MongeJet out;
    out.n = 2;
    out.k = m.k;
    out.a.reserve(m.k + 1);
    for (const Mat& a : m.a) {
        Vec u(3), e3(3);
        u << c, s, 0.0;
        e3 << 0.0, 0.0, 1.0;
        Mat block(2, 2);
        block << u.dot(a * u), u.dot(a * e3), u.dot(a * e3), e3.dot(a * e3);
        out.a.push_back(block);
    }
    return out;
}

// -------------------------------------------------------------------- report

namespace {

/// Every lhs value must match a distinct rhs value at tol.
bool multiset_contained(const std::vector<CriticalValue>& lhs,
                        const std::vector<CriticalValue>& rhs, double tol) {
    std::vector<bool> used(rhs.size(), false);
    for (const CriticalValue& a : lhs) {
        bool found = false;
        for (size_t i = 0; i < rhs.size(); ++i) {
            if (!used[i] && close(a.value, rhs[i].value, tol)) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace

AxialReport axial_report(const MongeJet& m, const AdaptedFrame& frame, double tol,
                         const OracleOptions& opts) {
    AxialReport rep;
    const double scale = std::max(m.scale(), 1.0);

    for (int i = 0; i < frame.l; ++i) {
        DirectionalReport dr;
        dr.i = i + 1;
        dr.v = frame.v.col(i);
        const NormalCurvatureForm form = normal_curvature_form(m, dr.v);

        // Case witnesses within (tol, 10 tol]: the closed formulas assume
        // exact stratum membership, so report from the oracle alone.
        bool borderline = false;
        auto band = [&](double q) {
            const double rel = std::abs(q) / scale;
            return rel > tol && rel <= 10.0 * tol;
        };
        if (form.n == 2) {
            borderline = band(form.a002v) || band(form.a110v);
        } else {
            borderline = band(form.a002v) || band(form.b().norm());
        }

        const std::vector<CriticalValue> oracle = axial_oracle(form, scale, tol, opts);
        if (borderline) {
            dr.method = "oracle";
            dr.values = oracle;
            dr.note = "case witness near a stratum boundary; closed form skipped";
        } else {
            const std::vector<CriticalValue> closed = axial_closed(form, scale, tol);
            dr.agree = multiset_contained(closed, oracle, opts.dedupe_tol) &&
                       multiset_contained(oracle, closed, opts.dedupe_tol);
            if (dr.agree) {
                dr.method = "both";
                dr.values = closed;
            } else {
                dr.method = "oracle";
                dr.values = oracle;
                dr.note = "closed form and oracle disagree; oracle values reported";
            }
            // The trigonometric proposition's equal-diagonal case conflicts
            // with the eigenvalue route; flag when it fires on the primary.
            if (form.n == 3 && i == 0 && std::abs(form.a002v) > 10.0 * tol * scale) {
                const Mat M = form.MA() - form.b() * form.b().transpose() / form.a002v;
                const FormulaM3Result fm =
                    formula_m3_case_split(M(0, 0), M(0, 1), M(1, 1), scale, tol);
                if (fm.case2) rep.flags.push_back("formula-M3-case2");
            }
        }
        rep.total_count += static_cast<int>(dr.values.size());
        rep.directions.push_back(std::move(dr));
    }
    return rep;
}

FormulaM3Result formula_m3_case_split(double abar200, double abar110, double abar020,
                                      double scale, double tol) {
    FormulaM3Result r;
    const double cut = tol * std::max(scale, 1.0);
    if (std::abs(abar020 - abar200) > cut) {
        const double theta0 = 0.5 * std::atan(2.0 * abar110 / (abar200 - abar020));
        auto val = [&](double t) {
            return abar020 + (abar200 - abar020) * std::cos(t) * std::cos(t) +
                   abar110 * std::sin(2.0 * t);
        };
        r.values = {val(theta0), val(theta0 + std::numbers::pi / 2.0)};
        std::sort(r.values.begin(), r.values.end());
        return r;
    }
    if (std::abs(abar110) > cut) {
        // The proposition's equal-diagonal case: it prescribes the single
        // value abar200 - |abar110| for both curvatures.
        r.case2 = true;
        r.values = {abar200 - std::abs(abar110), abar200 - std::abs(abar110)};
        return r;
    }
    r.values = {abar200, abar200};
    return r;
}

} // namespace axialcurv

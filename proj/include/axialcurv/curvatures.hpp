// axialcurv — normal curvature functions, closed-form axial curvatures, the
// brute-force critical-value oracle, and regular-slice principal curvatures.
#pragma once

#include "axialcurv/frames.hpp"

#include <optional>
#include <string>
#include <vector>

namespace axialcurv {

/// Coefficients of K_v on the pseudo-unit cylinder for a unit normal v.
/// n = 2: K_v(y) = l + 2 m y + n y^2.
/// n = 3: K_v(theta, gamma) = A(theta) + B(theta) gamma + C gamma^2 with
///   A(theta) = a200v cos^2 + 2 a110v cos sin + a020v sin^2,
///   B(theta) = 2 a101v cos + 2 a011v sin, C = a002v.
struct NormalCurvatureForm {
    int n = 0;
    double a200v = 0, a110v = 0, a020v = 0; ///< l, m (cross), and n=2's constant slot reuse
    double a101v = 0, a011v = 0;            ///< gamma-linear couplings (n=3)
    double a002v = 0;                       ///< gamma^2 coefficient (C; n=2's "n")

    /// Evaluate K_v at a tangent parameter.
    double eval(const TangentParam& t) const;
    /// theta-only part A(theta) (n=3) or the constant l (n=2).
    double A(double theta) const;
    /// gamma-linear coefficient B(theta); 2*m for n=2.
    double B(double theta) const;
    /// 2x2 matrix of A's quadratic form [[a200v, a110v], [a110v, a020v]].
    Mat MA() const;
    /// Coupling vector b = (a101v, a011v).
    Vec b() const;
};

/// Exact coefficients of K_v = <II(u,u), v> from the MongeJet entries.
NormalCurvatureForm normal_curvature_form(const MongeJet& m, const Vec& v);

/// One critical value of K_v with its parameter and local type.
struct CriticalValue {
    double value = 0.0;
    double theta = 0.0; ///< unused for n = 2
    double gamma = 0.0; ///< the y parameter for n = 2
    std::string type;   ///< "min", "max", "saddle", "degenerate"
};

/// Closed-form critical values of K_v, sorted ascending.
///
/// n = 2: vertex of the parabola when n-coeff != 0; empty when the function
/// is linear nonconstant; the constant otherwise. n = 3: |C| > tol ->
/// eigenvalues of MA - b b^T / C (the reduced theta-form); C ~ 0, b != 0 ->
/// the single saddle value A(theta0) at the root of B; C ~ 0, b ~ 0 ->
/// eigenvalues of MA.
std::vector<CriticalValue> axial_closed(const NormalCurvatureForm& form, double scale,
                                        double tol = default_tolerance());

/// Oracle controls.
struct OracleOptions {
    int theta_grid = 4096;     ///< dense grid for the theta search
    double refine_tol = 1e-12; ///< bisection window on theta
    double dedupe_tol = 1e-8;  ///< relative value dedupe
};

/// Brute-force critical values of K_v on the cylinder, independent of every
/// closed formula: grid + bisection on the reduced function's derivative.
/// Returns sorted values (possibly empty); throws NoCriticalValueError only
/// for non-finite coefficients.
std::vector<CriticalValue> axial_oracle(const NormalCurvatureForm& form, double scale,
                                        double tol = default_tolerance(),
                                        const OracleOptions& opts = {});
std::vector<CriticalValue> axial_oracle(const MongeJet& m, const Vec& v,
                                        double tol = default_tolerance(),
                                        const OracleOptions& opts = {});

/// 2-jet of the regular (n-1)-manifold f(x_1, ..., x_{n-1}, 0): leading
/// (n-1) x (n-1) blocks of the second-form matrices.
struct RegularSliceJet {
    int n = 0, k = 0;        ///< parent dimensions
    std::vector<Mat> II;     ///< k+1 blocks, (n-1) x (n-1)
};
RegularSliceJet regular_slice(const MongeJet& m);

/// Shape-operator matrix A_v = sum_l v_l II[l] of the slice.
Mat slice_shape_operator(const RegularSliceJet& slice, const Vec& v);

/// nu-principal curvatures: eigenvalues of A_v, sorted ascending.
Vec principal_curvatures(const RegularSliceJet& slice, const Vec& v);

/// Curvature at 0 of the coordinate-axis curve t -> f(t e_axis), from exact
/// polynomial derivatives. @throws SingularCurveError when gamma'(0) = 0.
double curve_curvature(const PolyMapGerm& f, int axis,
                       double tol = default_tolerance());

/// Normal section of a 3-manifold along the tangent direction
/// u(gamma) = (cos gamma, sin gamma, 0): the singular surface
/// (t, z) -> f(t cos gamma, t sin gamma, z), as a Monge jet with n = 2 and
/// the same k. @throws DimensionError if m.n != 3.
MongeJet section_jet(const MongeJet& m, double gamma);

/// Report for one axial direction.
struct DirectionalReport {
    int i = 0;                         ///< axial index, 1-based
    Vec v;                             ///< the frame vector used
    std::vector<CriticalValue> values; ///< sorted ascending
    std::string method;                ///< "closed_form", "oracle", "both"
    bool agree = true;                 ///< closed vs oracle at dedupe tolerance
    std::string note;
};

struct AxialReport {
    std::vector<DirectionalReport> directions;
    int total_count = 0;
    std::vector<std::string> flags; ///< e.g. the formula-M3 case-2 discrepancy
};

/// Axial curvatures along every adapted-frame direction: closed form and
/// oracle, cross-checked. Near a case boundary (|C| within 10x tolerance of
/// 0 but not at it) the direction is reported from the oracle alone. Works
/// directly on the normalized Monge jet: critical values only depend on the
/// degenerate metric the normalization fixes.
AxialReport axial_report(const MongeJet& m, const AdaptedFrame& frame,
                         double tol = default_tolerance(),
                         const OracleOptions& opts = {});

/// Trigonometric case split of the primary-curvature proposition, retained
/// as a cross-check path. Returns the two values it prescribes and whether
/// the equal-diagonal case fired (where the proposition's single value
/// abar200 - |abar110| disagrees with the eigenvalue pair).
struct FormulaM3Result {
    std::vector<double> values;
    bool case2 = false;
};
FormulaM3Result formula_m3_case_split(double abar200, double abar110, double abar020,
                                      double scale, double tol = default_tolerance());

} // namespace axialcurv

// axialcurv — executable checks of the closed-form identities relating
// axial, umbilic, sectional and classical curvatures.
#pragma once

#include "axialcurv/curvatures.hpp"

#include <string>
#include <vector>

namespace axialcurv {

/// Outcome of one identity check.
struct CheckResult {
    std::string name;
    std::string status; ///< "pass", "fail", "not-applicable"
    std::vector<double> lhs;
    std::vector<double> rhs;
    double tol = 0.0;
    std::string detail; ///< witnesses: parameters, frames, reasons

    bool applicable() const { return status != "not-applicable"; }
    bool passed() const { return status == "pass"; }
};

/// kappa^2 = kappa_a1^2 + kappa_a2^2 for the curve f(t, 0, ...):
/// surfaces with half-line locus and vanishing a_11, and the frontal
/// 3-manifold variant (orbit Z2_0 with all cross couplings zero, values
/// paired at the critical angle theta = 0).
CheckResult check_curve_identity(const PolyMapGerm& f, double tol = default_tolerance());

/// Gaussian curvature of the regular slice equals
/// kappa_a1^1 kappa_a1^2 + kappa_a2^1 kappa_a2^2 (n=3, k=1, orbit Z2_0 or
/// ZERO); the left side is computed independently as the det-sum over an
/// orthonormal normal frame of the slice.
CheckResult check_gauss(const MongeJet& m, double tol = default_tolerance());

/// Height-function singularity type along v_a^1: sign of the Hessian
/// determinant of h_{v_a^1} circle f classifies A1+/A1-/A>=2 and must agree
/// with sign(kappa_a1) (n=2, parabola or half-line locus).
CheckResult check_height_singularity(const MongeJet& m, double tol = default_tolerance());

/// kappa_u = d(p, Aff_p) equals the designated |kappa_{a_{l-r+1}}| (when
/// n >= k+1, Aff_p of codimension r) or |kappa_{v_a^{l+1}}| (when n < k+1
/// and dim Aff_p = l); also asserts the trailing axial values vanish.
CheckResult check_umbilic_relation(const MongeJet& m, double tol = default_tolerance());

/// For 3-manifolds in R^5: critical values over gamma of the normal
/// sections' i-ary axial curvatures equal the 3-manifold's i-ary axial
/// values (multiset at 1e-6).
CheckResult check_section_relation(const MongeJet& m, double tol = default_tolerance());

/// The curvature of the curve f(0, y, 0) equals |kappa_a2| (orbit XZ_Z2)
/// or |kappa_a1| (orbit XZ_0) for aligned Monge-form inputs (n=3, k=1,
/// a^2_020 = 0 and vanishing couplings that would tilt the curve).
CheckResult check_curve_corollaries(const PolyMapGerm& f, double tol = default_tolerance());

/// When the slice shape operators commute (vanishing normal curvature), the
/// slice curvature ellipse is a segment with endpoints
/// (kappa_a1^i, kappa_a2^i) in the adapted frame (n=3, k=1).
CheckResult check_segment_corollary(const MongeJet& m, double tol = default_tolerance());

/// Run every check that applies to the germ.
std::vector<CheckResult> run_all_checks(const PolyMapGerm& f, double tol = default_tolerance());

} // namespace axialcurv

// axialcurv — adapted axial frames {v_a^1, ..., v_a^l} and the extended
// vector v_a^{l+1}.
#pragma once

#include "axialcurv/classify.hpp"
#include "axialcurv/locus.hpp"

#include <optional>
#include <string>

namespace axialcurv {

/// Orthonormal axial frame in the normal space R^{k+1}.
struct AdaptedFrame {
    int l = 0;
    Mat v;                ///< (k+1) x l, column i-1 = v_a^i
    std::string case_tag; ///< which construction rule fired
    bool unique = true;   ///< false when the rule leaves a free choice
    std::string notes;
};

/// v_a^1 = II(u_inf, u_inf)/||II(u_inf, u_inf)||, or nullopt when the norm is
/// within tolerance of zero.
std::optional<Vec> primary_axial_vector(const MongeJet& m,
                                        double tol = default_tolerance());

/// Surface rules: (a) a_02 != 0: primary vector plus the positively oriented
/// completion inside Ax_p; (b) line locus: v1 = line direction; (c) point
/// locus y != p: v2 = y/||y||; (d) y = p: canonical frame, not unique.
AdaptedFrame adapted_frame_n2(const MongeJet& m, const AffineSpan& span,
                              const AxialSpace& ax, double tol = default_tolerance());

/// 3-manifold rules in R^4, items (i)-(iv) of the k=1 frame list.
AdaptedFrame adapted_frame_n3k1(const MongeJet& m, const OrbitResult& orbit,
                                const AffineSpan& span, const AxialSpace& ax,
                                double tol = default_tolerance());

/// 3-manifold rules in R^5, items (i)-(vi) of the k=2 frame list.
AdaptedFrame adapted_frame_n3k2(const MongeJet& m, const OrbitResult& orbit,
                                const AffineSpan& span, const AxialSpace& ax,
                                double tol = default_tolerance());

/// Dispatch on (n, k).
/// @throws UnsupportedError outside n=2 / (n=3, k in {1,2}).
AdaptedFrame adapted_frame(const MongeJet& m, const OrbitResult& orbit,
                           const AffineSpan& span, const AxialSpace& ax,
                           double tol = default_tolerance());

/// v_a^{l+1} together with the constant value of the locus projection onto
/// it. Defined when n < k+1 and dim Aff_p = l; nullopt otherwise.
struct ExtendedVector {
    Vec v;
    double kappa = 0.0;
};
std::optional<ExtendedVector> extended_vector(const MongeJet& m, const AffineSpan& span,
                                              const AxialSpace& ax,
                                              double tol = default_tolerance());

} // namespace axialcurv

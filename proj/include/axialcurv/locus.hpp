// axialcurv — curvature locus sampling, affine span, axial space,
// boundedness diagnostics and the umbilic curvature.
#pragma once

#include "axialcurv/jetcore.hpp"

#include <string>
#include <vector>

namespace axialcurv {

/// Tangent parameter on the pseudo-unit cylinder.
/// n = 2: u = (1, gamma) (theta unused); n = 3: u = (cos theta, sin theta,
/// gamma). infinite selects the null direction u_inf, which has no locus
/// point (use MongeJet::null_image).
struct TangentParam {
    double theta = 0.0;
    double gamma = 0.0;
    bool infinite = false;
};

/// Sampling grid: theta_count angles over [0, 2pi), gamma_count values over
/// [gamma_min, gamma_max]. For n = 2 only the gamma axis is used.
struct GridSpec {
    int theta_count = 360;
    int gamma_count = 201;
    double gamma_min = -10.0;
    double gamma_max = 10.0;
};

struct CurvatureLocusSample {
    std::vector<Vec> points;          ///< II(u, u) in R^{k+1}
    std::vector<TangentParam> params; ///< matching parameters
    GridSpec grid;
};

/// Locus point II(u(t), u(t)).
/// @throws InfiniteParamError for the null direction.
Vec locus_param(const MongeJet& m, const TangentParam& t);

/// Dense locus evaluation, row-major over (theta, gamma) in grid order.
/// @throws UnsupportedError unless n is 2 or 3.
CurvatureLocusSample sample_locus(const MongeJet& m, const GridSpec& grid = {});

/// CSV with header "theta,gamma,c1,...,c{k+1}" (n = 3) or "y,c1,..." (n = 2),
/// 17 significant digits per value.
std::string locus_to_csv(const MongeJet& m, const CurvatureLocusSample& sample);

/// Minimal affine space containing the curvature locus, computed from the
/// algebraic generating set of the direction space (not from samples).
struct AffineSpan {
    Vec base;       ///< II(u0, u0) for u0 = (1, 0, ..., 0)
    Mat dirs;       ///< (k+1) x dim, orthonormal columns
    int dim = 0;
    double tol = 0.0;
};
AffineSpan affine_span(const MongeJet& m, double tol = default_tolerance());

/// Axial space Ax_p: equal to Aff_p when dim Aff_p = l = min(n, k+1);
/// otherwise an l-dimensional vector space containing Aff_p and the origin,
/// extended first through the closest point of Aff_p to the origin, then by
/// canonical Gram-Schmidt completion against standard basis vectors.
struct AxialSpace {
    Vec base;            ///< Aff_p base when not extended, origin otherwise
    Mat dirs;            ///< (k+1) x l, orthonormal columns (ordered basis)
    int l = 0;
    bool extended = false;
};
AxialSpace axial_space(const MongeJet& m, const AffineSpan& span,
                       double tol = default_tolerance());

/// Behavior of K_v(theta, gamma) = <v, II(u,u)> as gamma -> +-inf.
enum class Boundedness { BoundedBoth, UnboundedAbove, UnboundedBelow, UnboundedBoth };
std::string boundedness_name(Boundedness b);

/// Algebraic unboundedness test for the height K_v along v (n = 3 only):
/// C = <v, a_002> decides the gamma^2 growth, B(theta) the linear term.
/// @throws DimensionError if m.n != 3.
Boundedness boundedness_diagnostic(const MongeJet& m, const Vec& v,
                                   double tol = default_tolerance());

/// The umbilic curvature kappa_u = d(p, Aff_p) is defined when the normal
/// space is larger than the source (k + 1 > n) or the locus is degenerate
/// (dim Aff_p < k + 1).
bool umbilic_defined(const MongeJet& m, const AffineSpan& span);

/// Distance from the origin to Aff_p.
/// @throws UndefinedError when not defined (see umbilic_defined).
double umbilic_curvature(const MongeJet& m, const AffineSpan& span);

} // namespace axialcurv

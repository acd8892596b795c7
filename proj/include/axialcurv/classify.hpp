#pragma once

#include "axialcurv/jetcore.hpp"

#include <string>
#include <vector>

namespace axialcurv {

/// A^2-orbit of the 2-jet of a corank-1 map germ, for surfaces (n = 2) and
/// 3-manifolds (n = 3).
enum class Orbit {
    // n = 2 curvature-locus shapes (any k >= 1).
    NondegParabola, ///< (x, xy, y^2): nondegenerate parabola locus
    HalfLine,       ///< (x, y^2): half-line locus
    Line,           ///< (x, xy): line locus
    Point,          ///< (x, 0): point locus
    // n = 3, k = 1 (maps R^3 -> R^4).
    XZ_Z2, ///< (x, y, xz, z^2)
    XZ_YZ, ///< (x, y, xz, yz)
    Z2_0,  ///< (x, y, z^2, 0)
    XZ_0,  ///< (x, y, xz, 0)
    // n = 3, k = 2 (maps R^3 -> R^5).
    XZ_YZ_Z2, ///< (x, y, xz, yz, z^2)
    Z2_YZ_0,  ///< (x, y, z^2, yz, 0)
    XZ_YZ_0,  ///< (x, y, xz, yz, 0)
    Z2_0_0,   ///< (x, y, z^2, 0, 0)
    XZ_0_0,   ///< (x, y, xz, 0, 0)
    // Shared: all degenerate-direction pairings vanish.
    Zero,
};

/// Stable display name, e.g. "XZ_Z2"; Orbit::Zero prints as "ZERO".
std::string orbit_name(Orbit o);

/// Classification outcome with the invariants that decided it.
struct OrbitResult {
    Orbit orbit;
    int rank_A = 0;          ///< rank of the degenerate-pairing matrix A (n = 3)
    double a002_norm = 0.0;  ///< norm of the coefficient vector of z^2
    double scale = 0.0;      ///< max |coefficient| of the jet, used to scale tolerances
    std::vector<double> minors; ///< 2x2 minors of A (k = 1 witness quantities)
    bool near_degenerate = false; ///< some decisive quantity within 10x tolerance
    std::vector<std::string> warnings;
};

/// The (k+1) x 3 matrix with columns a_101, a_011, a_002 (n = 3).
/// @throws DimensionError if m.n != 3.
Mat matrix_A(const MongeJet& m);

/// Classify the 2-jet's A^2-orbit.
/// @throws UnsupportedError for source dimensions other than 2 and 3, or for
///         n = 3 with k outside {1, 2}.
OrbitResult classify_orbit(const MongeJet& m, double tol = default_tolerance());

/// Geometric shape of the curvature locus implied by the orbit.
/// Tags: n=2 {Parabola, HalfLine, Line, Point}; n=3,k=1 {PlanarRegion,
/// Plane, HalfStrip, Strip, RegularSurfaceLocus(Ellipse|Segment|Point)};
/// n=3,k=2 {ParaboloidRegion, ParabolicSlab, PlaneSlab, HalfStrip,
/// NonplanarHalfStrip, Strip, NonplanarStrip, RegularSurfaceLocus(...)}.
struct LocusShape {
    std::string tag;
    bool degenerate = false; ///< e.g. a half-strip collapsed to a half-line
    std::string detail;
};

/// Shape of the curvature locus for the given (already classified) jet.
LocusShape locus_shape(const MongeJet& m, const OrbitResult& orbit,
                       double tol = default_tolerance());

} // namespace axialcurv

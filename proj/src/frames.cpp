#include "axialcurv/frames.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace axialcurv {

namespace {

/// Flip so the first component of magnitude above 1e-12 is positive.
Vec canonical_sign(Vec v) {
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0) v = -v;
            break;
        }
    }
    return v;
}

Vec rot90(const Vec& v) { return (Vec(2) << -v(1), v(0)).finished(); }

Vec cross3(const Vec& a, const Vec& b) {
    Vec c(3);
    c << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0);
    return c;
}

/// First canonical unit vector orthogonal to the orthonormal columns given.
Vec canonical_completion(const Mat& dirs) {
    const int N = static_cast<int>(dirs.rows());
    for (int c = 0; c < N; ++c) {
        Vec e = Vec::Unit(N, c);
        e -= dirs * (dirs.transpose() * e);
        if (e.norm() > 0.5) return Vec(e.normalized());
    }
    throw Error("no canonical completion found");
}

/// Positively oriented completion of a unit v1 inside the axial plane:
/// ambient rotation by +pi/2 when Ax_p = N_pM, coordinate rotation in the
/// ordered Ax_p basis otherwise.
Vec oriented_completion2(const Vec& v1, const AxialSpace& ax, int k) {
    if (k + 1 == 2) return rot90(v1);
    const Vec c = ax.dirs.transpose() * v1;
    return ax.dirs * rot90(c);
}

/// Inverse: the v1 whose oriented completion is the given v2.
Vec oriented_precursor2(const Vec& v2, const AxialSpace& ax, int k) {
    if (k + 1 == 2) return (Vec(2) << v2(1), -v2(0)).finished();
    const Vec c = ax.dirs.transpose() * v2;
    return ax.dirs * (Vec(2) << c(1), -c(0)).finished();
}

/// Dominant left singular direction of the (k+1) x 2 matrix [u w].
Vec dominant_direction(const Vec& u, const Vec& w) {
    Mat M(u.size(), 2);
    M.col(0) = u;
    M.col(1) = w;
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU);
    return canonical_sign(svd.matrixU().col(0));
}

struct EllipseAxes {
    Vec major, minor; ///< unnormalized half-axis vectors
    double len_major = 0.0, len_minor = 0.0;
    bool circle = false;
};

/// Half axes of eta(theta) = E + F cos2theta + G sin2theta via the SVD of
/// [F G]: singular values are the half-axis lengths.
EllipseAxes ellipse_axes(const Vec& F, const Vec& G, double tol) {
    Mat M(F.size(), 2);
    M.col(0) = F;
    M.col(1) = G;
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU);
    EllipseAxes ax;
    ax.len_major = svd.singularValues()(0);
    ax.len_minor = svd.singularValues()(1);
    ax.major = canonical_sign(svd.matrixU().col(0));
    ax.minor = canonical_sign(svd.matrixU().col(1));
    ax.circle = ax.len_major > 0 && (ax.len_major - ax.len_minor) <= tol * ax.len_major;
    return ax;
}

AdaptedFrame make_frame(std::vector<Vec> cols, std::string tag, bool unique,
                        std::string notes = {}) {
    AdaptedFrame f;
    f.l = static_cast<int>(cols.size());
    f.v = Mat(cols.empty() ? 0 : cols[0].size(), f.l);
    for (int c = 0; c < f.l; ++c)
        f.v.col(c) = cols[c].unaryExpr([](double x) { return x == 0.0 ? 0.0 : x; });
    f.case_tag = std::move(tag);
    f.unique = unique;
    f.notes = std::move(notes);
    return f;
}

} // namespace

std::optional<Vec> primary_axial_vector(const MongeJet& m, double tol) {
    const Vec nu = m.null_image();
    const double scale = std::max(m.scale(), 1.0);
    if (nu.norm() <= tol * scale) return std::nullopt;
    return Vec(nu.normalized());
}

AdaptedFrame adapted_frame_n2(const MongeJet& m, const AffineSpan& span,
                              const AxialSpace& ax, double tol) {
    if (m.n != 2) throw UnsupportedError("adapted_frame_n2 requires n = 2");
    const double scale = std::max(m.scale(), 1.0);
    const Vec a20 = m.coeff_vec(0, 0), a11 = m.coeff_vec(0, 1);
    (void)span;

    if (auto v1 = primary_axial_vector(m, tol)) {
        const Vec v2 = oriented_completion2(*v1, ax, m.k);
        return make_frame({*v1, v2}, "surface-(a)", true);
    }
    if (a11.norm() > tol * scale) {
        const Vec v1 = canonical_sign(Vec(a11.normalized()));
        const Vec v2 = oriented_completion2(v1, ax, m.k);
        return make_frame({v1, v2}, "surface-(b)", true,
                          "line direction sign fixed canonically");
    }
    if (a20.norm() > tol * scale) {
        const Vec v2 = a20.normalized();
        const Vec v1 = oriented_precursor2(v2, ax, m.k);
        return make_frame({v1, v2}, "surface-(c)", true,
                          "orientation of v1 fixed by convention in Ax_p");
    }
    return make_frame({Vec(ax.dirs.col(0)), Vec(ax.dirs.col(1))}, "surface-(d)", false,
                      "locus is the origin; any orthonormal frame is adapted");
}

AdaptedFrame adapted_frame_n3k1(const MongeJet& m, const OrbitResult& orbit,
                                const AffineSpan& span, const AxialSpace& ax,
                                double tol) {
    if (m.n != 3 || m.k != 1)
        throw UnsupportedError("adapted_frame_n3k1 requires n = 3, k = 1");
    const double scale = std::max(m.scale(), 1.0);
    (void)span;
    (void)ax; // Ax_p = N_pM = R^2 here; orientation is ambient.

    if (auto v1 = primary_axial_vector(m, tol))
        return make_frame({*v1, rot90(*v1)}, "3manifoldR4-(i)", true);

    switch (orbit.orbit) {
        case Orbit::XZ_YZ:
            return make_frame({Vec(Vec::Unit(2, 0)), Vec(Vec::Unit(2, 1))},
                              "3manifoldR4-(ii)", false,
                              "plane locus; any orthonormal frame is adapted");
        case Orbit::XZ_0: {
            const Vec v1 = dominant_direction(m.coeff_vec(0, 2), m.coeff_vec(1, 2));
            return make_frame({v1, rot90(v1)}, "3manifoldR4-(iii)", true,
                              "strip direction sign fixed canonically");
        }
        case Orbit::Zero: {
            const Vec F = 0.5 * (m.coeff_vec(0, 0) - m.coeff_vec(1, 1));
            const Vec G = m.coeff_vec(0, 1);
            const EllipseAxes e = ellipse_axes(F, G, tol);
            if (e.len_minor > tol * scale) {
                // Nondegenerate ellipse: semi-major then oriented completion.
                return make_frame({e.major, rot90(e.major)}, "3manifoldR4-(iv)-ellipse",
                                  !e.circle,
                                  e.circle ? "circle locus: axes chosen canonically" : "");
            }
            if (e.len_major > tol * scale) {
                return make_frame({e.major, rot90(e.major)}, "3manifoldR4-(iv)-segment",
                                  true, "segment direction sign fixed canonically");
            }
            const Vec y = 0.5 * (m.coeff_vec(0, 0) + m.coeff_vec(1, 1));
            if (y.norm() > tol * scale) {
                const Vec v2 = y.normalized();
                return make_frame({(Vec(2) << v2(1), -v2(0)).finished(), v2},
                                  "3manifoldR4-(iv)-point", true);
            }
            return make_frame({Vec(Vec::Unit(2, 0)), Vec(Vec::Unit(2, 1))},
                              "3manifoldR4-(iv)-origin", false,
                              "locus is the origin; any orthonormal frame is adapted");
        }
        default:
            throw UnsupportedError("orbit tag outside the n=3, k=1 family");
    }
}

AdaptedFrame adapted_frame_n3k2(const MongeJet& m, const OrbitResult& orbit,
                                const AffineSpan& span, const AxialSpace& ax,
                                double tol) {
    if (m.n != 3 || m.k != 2)
        throw UnsupportedError("adapted_frame_n3k2 requires n = 3, k = 2");
    const double scale = std::max(m.scale(), 1.0);
    (void)span;
    (void)ax; // Ax_p = N_pM = R^3 here.

    const Vec F = 0.5 * (m.coeff_vec(0, 0) - m.coeff_vec(1, 1));
    const Vec G = m.coeff_vec(0, 1);
    const Vec E = 0.5 * (m.coeff_vec(0, 0) + m.coeff_vec(1, 1));

    // Shared plane rule for the half-strip/strip orbits: given the axis v1,
    // pick v2 inside the plane of the locus, v3 perpendicular to it.
    auto plane_frame = [&](const Vec& v1, const char* tag) {
        Vec Fp = F - v1.dot(F) * v1;
        Vec Gp = G - v1.dot(G) * v1;
        Mat P(3, 2);
        P.col(0) = Fp;
        P.col(1) = Gp;
        Eigen::JacobiSVD<Mat> svd(P, Eigen::ComputeFullU);
        const double s0 = svd.singularValues()(0);
        const double s1 = svd.singularValues()(1);
        if (s1 > tol * scale) {
            const Vec v2 = canonical_sign(svd.matrixU().col(0));
            return make_frame({v1, v2, cross3(v1, v2)}, std::string(tag) + "-nonplanar",
                              false,
                              "locus is a translational surface, not planar; "
                              "completion chosen canonically");
        }
        if (s0 > tol * scale) {
            const Vec v2 = canonical_sign(svd.matrixU().col(0));
            return make_frame({v1, v2, cross3(v1, v2)}, std::string(tag) + "-plane", true);
        }
        // Degenerate to a line along v1: use the plane through the locus
        // and the origin when that plane is determined.
        Vec c = E - v1.dot(E) * v1;
        if (c.norm() > tol * scale) {
            const Vec v2 = c.normalized();
            return make_frame({v1, v2, cross3(v1, v2)}, std::string(tag) + "-degenerate",
                              true, "plane chosen through the locus line and the origin");
        }
        Mat d1(3, 1);
        d1.col(0) = v1;
        const Vec v2 = canonical_completion(d1);
        return make_frame({v1, v2, cross3(v1, v2)}, std::string(tag) + "-degenerate",
                          false, "locus line passes through the origin; plane free");
    };

    switch (orbit.orbit) {
        case Orbit::XZ_YZ_Z2: {
            const Vec v1 = *primary_axial_vector(m, tol);
            Mat d1(3, 1);
            d1.col(0) = v1;
            const Vec v2 = canonical_completion(d1);
            return make_frame({v1, v2, cross3(v1, v2)}, "3manifoldR5-(i)", false,
                              "any orthonormal basis of the transverse plane completes");
        }
        case Orbit::Z2_YZ_0: {
            const Vec v1 = *primary_axial_vector(m, tol);
            Vec c1 = m.coeff_vec(0, 2), c2 = m.coeff_vec(1, 2);
            c1 -= v1.dot(c1) * v1;
            c2 -= v1.dot(c2) * v1;
            const Vec v2 = dominant_direction(c1, c2);
            return make_frame({v1, v2, cross3(v1, v2)}, "3manifoldR5-(ii)", true,
                              "v2 is the doubly unbounded direction, v3 the bounded one");
        }
        case Orbit::XZ_YZ_0: {
            std::vector<Vec> basis;
            Vec g1 = m.coeff_vec(0, 2), g2 = m.coeff_vec(1, 2);
            auto push = [&](Vec g) {
                for (const Vec& b : basis) g -= b.dot(g) * b;
                if (g.norm() > tol * scale) basis.push_back(g.normalized());
            };
            push(g1);
            push(g2);
            const Vec v1 = basis[0];
            const Vec v2 = basis[1];
            return make_frame({v1, v2, cross3(v1, v2)}, "3manifoldR5-(iii)", false,
                              "any orthonormal frame of the unbounded plane works");
        }
        case Orbit::Z2_0_0:
            return plane_frame(*primary_axial_vector(m, tol), "3manifoldR5-(iv)");
        case Orbit::XZ_0_0:
            return plane_frame(dominant_direction(m.coeff_vec(0, 2), m.coeff_vec(1, 2)),
                               "3manifoldR5-(v)");
        case Orbit::Zero: {
            const EllipseAxes e = ellipse_axes(F, G, tol);
            if (e.len_minor > tol * scale) {
                const Vec v1 = e.major;
                const Vec v2 = e.minor;
                return make_frame({v1, v2, cross3(v1, v2)}, "3manifoldR5-(vi)-ellipse",
                                  !e.circle,
                                  e.circle ? "circle locus: axes chosen canonically" : "");
            }
            if (e.len_major > tol * scale) return plane_frame(e.major, "3manifoldR5-(vi)-segment");
            if (E.norm() > tol * scale) {
                const Vec v2 = E.normalized();
                Mat d(3, 1);
                d.col(0) = v2;
                const Vec v1 = canonical_completion(d);
                return make_frame({v1, v2, cross3(v1, v2)}, "3manifoldR5-(vi)-point", false,
                                  "v1 is any direction perpendicular to the locus point");
            }
            return make_frame({Vec(Vec::Unit(3, 0)), Vec(Vec::Unit(3, 1)), Vec(Vec::Unit(3, 2))},
                              "3manifoldR5-(vi)-origin", false,
                              "locus is the origin; any orthonormal frame is adapted");
        }
        default:
            throw UnsupportedError("orbit tag outside the n=3, k=2 family");
    }
}

AdaptedFrame adapted_frame(const MongeJet& m, const OrbitResult& orbit,
                           const AffineSpan& span, const AxialSpace& ax, double tol) {
    if (m.n == 2) return adapted_frame_n2(m, span, ax, tol);
    if (m.n == 3 && m.k == 1) return adapted_frame_n3k1(m, orbit, span, ax, tol);
    if (m.n == 3 && m.k == 2) return adapted_frame_n3k2(m, orbit, span, ax, tol);
    throw UnsupportedError("adapted frames cover n=2 and n=3 with k in {1,2}");
}

std::optional<ExtendedVector> extended_vector(const MongeJet& m, const AffineSpan& span,
                                              const AxialSpace& ax, double tol) {
    const int l = std::min(m.n, m.k + 1);
    if (m.n >= m.k + 1 || span.dim != l) return std::nullopt;
    const double scale = std::max(m.scale(), 1.0);

    Vec closest = span.base;
    for (int c = 0; c < span.dim; ++c)
        closest -= span.dirs.col(c).dot(span.base) * span.dirs.col(c);

    ExtendedVector ext;
    if (closest.norm() > tol * scale) {
        ext.v = closest.normalized();
        ext.kappa = ext.v.dot(span.base);
    } else {
        ext.v = canonical_completion(ax.dirs);
        ext.kappa = 0.0;
    }
    return ext;
}

} // namespace axialcurv

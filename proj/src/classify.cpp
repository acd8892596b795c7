#include "axialcurv/classify.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace axialcurv {

std::string orbit_name(Orbit o) {
    switch (o) {
        case Orbit::NondegParabola: return "NondegParabola";
        case Orbit::HalfLine: return "HalfLine";
        case Orbit::Line: return "Line";
        case Orbit::Point: return "Point";
        case Orbit::XZ_Z2: return "XZ_Z2";
        case Orbit::XZ_YZ: return "XZ_YZ";
        case Orbit::Z2_0: return "Z2_0";
        case Orbit::XZ_0: return "XZ_0";
        case Orbit::XZ_YZ_Z2: return "XZ_YZ_Z2";
        case Orbit::Z2_YZ_0: return "Z2_YZ_0";
        case Orbit::XZ_YZ_0: return "XZ_YZ_0";
        case Orbit::Z2_0_0: return "Z2_0_0";
        case Orbit::XZ_0_0: return "XZ_0_0";
        case Orbit::Zero: return "ZERO";
    }
    return "ZERO";
}

Mat matrix_A(const MongeJet& m) {
    if (m.n != 3) throw DimensionError("matrix_A requires source dimension 3");
    Mat A(m.k + 1, 3);
    A.col(0) = m.coeff_vec(0, 2);
    A.col(1) = m.coeff_vec(1, 2);
    A.col(2) = m.coeff_vec(2, 2);
    return A;
}

namespace {

/// Relative rank of a small matrix: singular values above tol * sigma_max.
/// Flags values within the [tol/10, 10 tol] band around the cut.
int relative_rank(const Mat& M, double tol, bool& near) {
    Eigen::JacobiSVD<Mat> svd(M);
    const Vec sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        const double rel = sv(i) / smax;
        if (rel > tol) ++rank;
        if (rel > tol / 10.0 && rel <= 10.0 * tol) near = true;
    }
    return rank;
}

/// Near-boundary witness for a scalar vanishing test at tol * scale.
bool near_band(double value, double scale, double tol) {
    const double rel = std::abs(value) / std::max(scale, 1e-300);
    return rel > tol / 10.0 && rel <= 10.0 * tol;
}

} // namespace

OrbitResult classify_orbit(const MongeJet& m, double tol) {
    OrbitResult r{};
    r.scale = std::max(m.scale(), 1.0);

    if (m.n == 2) {
        const Vec a20 = m.coeff_vec(0, 0), a11 = m.coeff_vec(0, 1), a02 = m.coeff_vec(1, 1);
        r.a002_norm = a02.norm();
        if (near_band(a02.norm(), r.scale, tol) || near_band(a11.norm(), r.scale, tol))
            r.near_degenerate = true;
        if (a02.norm() > tol * r.scale) {
            // Parallelism of a_02 and a_11 through the second singular value
            // (generalizes the cross product to any k).
            Mat P(2, m.k + 1);
            P.row(0) = a02.transpose();
            P.row(1) = a11.transpose();
            bool near = false;
            const int rank = relative_rank(P, tol, near);
            if (near) r.near_degenerate = true;
            r.orbit = (rank == 2) ? Orbit::NondegParabola : Orbit::HalfLine;
        } else if (a11.norm() > tol * r.scale) {
            r.orbit = Orbit::Line;
        } else {
            r.orbit = Orbit::Point;
        }
        (void)a20;
        return r;
    }

    if (m.n != 3 || (m.k != 1 && m.k != 2))
        throw UnsupportedError("classification covers n=2 (any k) and n=3 with k in {1,2}");

    const Mat A = matrix_A(m);
    bool near = false;
    r.rank_A = relative_rank(A / r.scale, tol, near);
    r.a002_norm = A.col(2).norm();
    const bool has_z2 = r.a002_norm > tol * r.scale;
    if (near || near_band(r.a002_norm, r.scale, tol)) r.near_degenerate = true;

    if (m.k == 1) {
        // 2x2 minors of the 2x3 matrix A: witnesses alpha, beta, gamma.
        auto minor = [&A](int c1, int c2) {
            return A(0, c1) * A(1, c2) - A(0, c2) * A(1, c1);
        };
        r.minors = {minor(0, 1), minor(0, 2), minor(1, 2)};
        switch (r.rank_A) {
            case 2: r.orbit = has_z2 ? Orbit::XZ_Z2 : Orbit::XZ_YZ; break;
            case 1: r.orbit = has_z2 ? Orbit::Z2_0 : Orbit::XZ_0; break;
            default: r.orbit = Orbit::Zero; break;
        }
    } else {
        switch (r.rank_A) {
            case 3: r.orbit = Orbit::XZ_YZ_Z2; break;
            case 2: r.orbit = has_z2 ? Orbit::Z2_YZ_0 : Orbit::XZ_YZ_0; break;
            case 1: r.orbit = has_z2 ? Orbit::Z2_0_0 : Orbit::XZ_0_0; break;
            default: r.orbit = Orbit::Zero; break;
        }
        if (r.orbit != Orbit::Zero)
            r.warnings.push_back("k=2 orbit table inferred from rank(A) and ||a_002|| "
                                 "witnesses; cross-checked against locus diagnostics");
    }
    return r;
}

namespace {

/// Slice curvature-ellipse data: eta(theta) = E + F cos2theta + G sin2theta.
struct EllipseData {
    Vec E, F, G;
};

EllipseData slice_ellipse(const MongeJet& m) {
    EllipseData e;
    const Vec a200 = m.coeff_vec(0, 0), a020 = m.coeff_vec(1, 1), a110 = m.coeff_vec(0, 1);
    e.E = 0.5 * (a200 + a020);
    e.F = 0.5 * (a200 - a020);
    e.G = a110;
    return e;
}

/// Rank of span{F, G}: 2 ellipse, 1 segment, 0 point.
int ellipse_rank(const EllipseData& e, double scale, double tol) {
    Mat FG(e.F.size(), 2);
    FG.col(0) = e.F;
    FG.col(1) = e.G;
    bool near = false;
    return relative_rank(FG / scale, tol, near);
}

LocusShape regular_surface_shape(const MongeJet& m, double scale, double tol) {
    LocusShape s;
    const EllipseData e = slice_ellipse(m);
    switch (ellipse_rank(e, scale, tol)) {
        case 2: s.tag = "RegularSurfaceLocus(Ellipse)"; break;
        case 1:
            s.tag = "RegularSurfaceLocus(Segment)";
            s.degenerate = true;
            break;
        default:
            s.tag = "RegularSurfaceLocus(Point)";
            s.degenerate = true;
            s.detail = e.E.norm() <= tol * scale ? "point at the origin" : "point off the origin";
            break;
    }
    return s;
}

/// Dimension of the projection of span{F, G} orthogonal to the unit axis v1.
int projected_span_dim(const EllipseData& e, const Vec& v1, double scale, double tol) {
    Mat FG(e.F.size(), 2);
    FG.col(0) = e.F - v1.dot(e.F) * v1;
    FG.col(1) = e.G - v1.dot(e.G) * v1;
    bool near = false;
    return relative_rank(FG / scale, tol, near);
}

} // namespace

LocusShape locus_shape(const MongeJet& m, const OrbitResult& orbit, double tol) {
    LocusShape s;
    const double scale = std::max(orbit.scale, 1.0);

    if (m.n == 2) {
        switch (orbit.orbit) {
            case Orbit::NondegParabola: s.tag = "Parabola"; break;
            case Orbit::HalfLine: s.tag = "HalfLine"; s.degenerate = true; break;
            case Orbit::Line: s.tag = "Line"; s.degenerate = true; break;
            case Orbit::Point: {
                s.tag = "Point";
                s.degenerate = true;
                const double y = m.coeff_vec(0, 0).norm();
                s.detail = y <= tol * scale ? "point at the origin" : "point off the origin";
                break;
            }
            default:
                throw UnsupportedError("n=2 locus shape with a non-surface orbit tag");
        }
        return s;
    }
    if (m.n != 3 || (m.k != 1 && m.k != 2))
        throw UnsupportedError("locus shapes cover n=2 and n=3 with k in {1,2}");

    const EllipseData e = slice_ellipse(m);

    if (m.k == 1) {
        switch (orbit.orbit) {
            case Orbit::XZ_Z2: s.tag = "PlanarRegion"; break;
            case Orbit::XZ_YZ: s.tag = "Plane"; break;
            case Orbit::Z2_0: {
                s.tag = "HalfStrip";
                const Vec v1 = m.coeff_vec(2, 2).normalized();
                const Vec v2 = (Vec(2) << -v1(1), v1(0)).finished();
                if (std::abs(v2.dot(e.F)) <= tol * scale && std::abs(v2.dot(e.G)) <= tol * scale) {
                    s.degenerate = true;
                    s.detail = "degenerates to a half-line";
                }
                break;
            }
            case Orbit::XZ_0: {
                s.tag = "Strip";
                // Strip direction: the common direction of a_101, a_011.
                Mat C(2, 2);
                C.col(0) = m.coeff_vec(0, 2);
                C.col(1) = m.coeff_vec(1, 2);
                Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullU);
                const Vec d = svd.matrixU().col(0);
                const Vec dp = (Vec(2) << -d(1), d(0)).finished();
                if (std::abs(dp.dot(e.F)) <= tol * scale && std::abs(dp.dot(e.G)) <= tol * scale) {
                    s.degenerate = true;
                    s.detail = "degenerates to a line";
                }
                break;
            }
            default: return regular_surface_shape(m, scale, tol);
        }
        return s;
    }

    switch (orbit.orbit) {
        case Orbit::XZ_YZ_Z2:
            s.tag = "ParaboloidRegion";
            s.detail = "bounded below along v1, unbounded in the transverse plane";
            break;
        case Orbit::Z2_YZ_0:
            s.tag = "ParabolicSlab";
            s.detail = "bounded below along v1, unbounded both ways along v2, bounded along v3";
            break;
        case Orbit::XZ_YZ_0:
            s.tag = "PlaneSlab";
            s.detail = "unbounded in the {v1, v2} plane, bounded along v3";
            break;
        case Orbit::Z2_0_0: {
            const Vec v1 = m.coeff_vec(2, 2).normalized();
            const int dim = projected_span_dim(e, v1, scale, tol);
            if (dim == 2) {
                s.tag = "NonplanarHalfStrip";
                s.detail = "translational surface along v1, not contained in a plane";
            } else {
                s.tag = "HalfStrip";
                s.detail = "contained in a plane";
                if (dim == 0) {
                    s.degenerate = true;
                    s.detail = "degenerates to a half-line";
                }
            }
            break;
        }
        case Orbit::XZ_0_0: {
            Mat C(3, 2);
            C.col(0) = m.coeff_vec(0, 2);
            C.col(1) = m.coeff_vec(1, 2);
            Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullU);
            const Vec v1 = svd.matrixU().col(0);
            const int dim = projected_span_dim(e, v1, scale, tol);
            if (dim == 2) {
                s.tag = "NonplanarStrip";
                s.detail = "translational surface along the strip direction, not planar";
            } else {
                s.tag = "Strip";
                s.detail = "contained in a plane";
                if (dim == 0) {
                    s.degenerate = true;
                    s.detail = "degenerates to a line";
                }
            }
            break;
        }
        default: return regular_surface_shape(m, scale, tol);
    }
    return s;
}

} // namespace axialcurv

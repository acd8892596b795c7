#include "axialcurv/locus.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <numbers>

namespace axialcurv {

namespace {

Vec tangent_vector(const MongeJet& m, const TangentParam& t) {
    Vec u(m.n);
    if (m.n == 2) {
        u << 1.0, t.gamma;
    } else {
        u << std::cos(t.theta), std::sin(t.theta), t.gamma;
    }
    return u;
}

} // namespace

Vec locus_param(const MongeJet& m, const TangentParam& t) {
    if (t.infinite)
        throw InfiniteParamError("u_inf has no locus point; use null_image()");
    const Vec u = tangent_vector(m, t);
    Vec p(m.k + 1);
    for (int l = 0; l <= m.k; ++l) p(l) = u.dot(m.a[l] * u);
    return p;
}

CurvatureLocusSample sample_locus(const MongeJet& m, const GridSpec& grid) {
    if (m.n != 2 && m.n != 3)
        throw UnsupportedError("locus sampling covers n = 2 and n = 3");
    CurvatureLocusSample s;
    s.grid = grid;
    const int gc = std::max(grid.gamma_count, 1);
    const double step = gc > 1 ? (grid.gamma_max - grid.gamma_min) / (gc - 1) : 0.0;

    if (m.n == 2) {
        s.points.reserve(gc);
        s.params.reserve(gc);
        for (int j = 0; j < gc; ++j) {
            TangentParam t;
            t.gamma = grid.gamma_min + step * j;
            s.params.push_back(t);
            s.points.push_back(locus_param(m, t));
        }
        return s;
    }

    const int tc = std::max(grid.theta_count, 1);
    s.points.reserve(static_cast<size_t>(tc) * gc);
    s.params.reserve(static_cast<size_t>(tc) * gc);
    for (int i = 0; i < tc; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / tc;
        for (int j = 0; j < gc; ++j) {
            TangentParam t;
            t.theta = theta;
            t.gamma = grid.gamma_min + step * j;
            s.params.push_back(t);
            s.points.push_back(locus_param(m, t));
        }
    }
    return s;
}

std::string locus_to_csv(const MongeJet& m, const CurvatureLocusSample& sample) {
    std::string out;
    out.reserve(sample.points.size() * 24 * (m.k + 2));
    if (m.n == 2) {
        out += "y";
    } else {
        out += "theta,gamma";
    }
    for (int l = 0; l <= m.k; ++l) out += ",c" + std::to_string(l + 1);
    out += "\n";

    char buf[32];
    auto append = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
    };
    for (size_t i = 0; i < sample.points.size(); ++i) {
        const TangentParam& t = sample.params[i];
        if (m.n == 3) {
            append(t.theta);
            out += ',';
        }
        append(t.gamma);
        for (int l = 0; l <= m.k; ++l) {
            out += ',';
            append(sample.points[i](l));
        }
        out += '\n';
    }
    return out;
}

namespace {

/// Gram-Schmidt append with an absolute threshold on the residual norm.
bool gs_append(std::vector<Vec>& basis, Vec v, double threshold) {
    for (const Vec& b : basis) v -= b.dot(v) * b;
    const double norm = v.norm();
    if (norm <= threshold) return false;
    basis.push_back(v / norm);
    return true;
}

Mat to_matrix(const std::vector<Vec>& basis, int rows) {
    Mat d(rows, static_cast<int>(basis.size()));
    for (int c = 0; c < d.cols(); ++c) d.col(c) = basis[c];
    return d;
}

} // namespace

AffineSpan affine_span(const MongeJet& m, double tol) {
    AffineSpan span;
    span.tol = tol;
    span.base = m.coeff_vec(0, 0);
    const double scale = std::max(m.scale(), 1.0);

    // Generators of the direction space read off the locus parametrisation:
    // eta(t) - base is a combination of these with freely varying weights.
    std::vector<Vec> gens;
    if (m.n == 2) {
        gens = {m.coeff_vec(0, 1), m.coeff_vec(1, 1)};
    } else if (m.n == 3) {
        gens = {m.coeff_vec(0, 0) - m.coeff_vec(1, 1), m.coeff_vec(0, 1),
                m.coeff_vec(0, 2), m.coeff_vec(1, 2), m.coeff_vec(2, 2)};
    } else {
        throw UnsupportedError("affine span covers n = 2 and n = 3");
    }

    std::vector<Vec> basis;
    for (Vec& g : gens) gs_append(basis, std::move(g), tol * scale);
    span.dim = static_cast<int>(basis.size());
    span.dirs = to_matrix(basis, m.k + 1);
    return span;
}

AxialSpace axial_space(const MongeJet& m, const AffineSpan& span, double tol) {
    AxialSpace ax;
    ax.l = std::min(m.n, m.k + 1);
    const double scale = std::max(m.scale(), 1.0);

    if (span.dim >= ax.l) {
        ax.base = span.base;
        ax.dirs = span.dirs.leftCols(ax.l);
        ax.extended = false;
        return ax;
    }

    // Extend through p: first toward the closest point of Aff_p when that
    // is not the origin, then by canonical completion in index order.
    ax.extended = true;
    ax.base = Vec::Zero(m.k + 1);
    std::vector<Vec> basis;
    for (int c = 0; c < span.dim; ++c) basis.push_back(span.dirs.col(c));
    Vec closest = span.base;
    for (int c = 0; c < span.dim; ++c)
        closest -= span.dirs.col(c).dot(span.base) * span.dirs.col(c);
    if (closest.norm() > tol * scale) gs_append(basis, closest, tol * scale);
    for (int c = 0; c <= m.k && static_cast<int>(basis.size()) < ax.l; ++c)
        gs_append(basis, Vec(Vec::Unit(m.k + 1, c)), 0.5);
    ax.dirs = to_matrix(basis, m.k + 1);
    return ax;
}

std::string boundedness_name(Boundedness b) {
    switch (b) {
        case Boundedness::BoundedBoth: return "BoundedBoth";
        case Boundedness::UnboundedAbove: return "UnboundedAbove";
        case Boundedness::UnboundedBelow: return "UnboundedBelow";
        case Boundedness::UnboundedBoth: return "UnboundedBoth";
    }
    return "BoundedBoth";
}

Boundedness boundedness_diagnostic(const MongeJet& m, const Vec& v, double tol) {
    if (m.n != 3) throw DimensionError("boundedness diagnostic requires n = 3");
    const double scale = std::max(m.scale(), 1.0);
    const double C = v.dot(m.coeff_vec(2, 2));
    if (C > tol * scale) return Boundedness::UnboundedAbove;
    if (C < -tol * scale) return Boundedness::UnboundedBelow;
    const double b1 = v.dot(m.coeff_vec(0, 2));
    const double b2 = v.dot(m.coeff_vec(1, 2));
    if (std::hypot(b1, b2) > tol * scale) return Boundedness::UnboundedBoth;
    return Boundedness::BoundedBoth;
}

bool umbilic_defined(const MongeJet& m, const AffineSpan& span) {
    return m.k + 1 > m.n || span.dim < m.k + 1;
}

double umbilic_curvature(const MongeJet& m, const AffineSpan& span) {
    if (!umbilic_defined(m, span))
        throw UndefinedError("umbilic curvature needs a degenerate locus or k+1 > n");
    Vec closest = span.base;
    for (int c = 0; c < span.dim; ++c)
        closest -= span.dirs.col(c).dot(span.base) * span.dirs.col(c);
    return closest.norm();
}

} // namespace axialcurv

#include "axialcurv/jetcore.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace axialcurv {

double default_tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("AXIALCURV_TOL")) {
            try {
                double v = std::stod(env);
                if (v > 0 && std::isfinite(v)) return v;
            } catch (const std::exception&) {
                // fall through to the default
            }
        }
        return 1e-8;
    }();
    return tol;
}

bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ----------------------------------------------------------------- polynomials

double Poly::coefficient(const std::vector<int>& e) const {
    double c = 0.0;
    for (const Term& t : terms)
        if (t.exp == e) c += t.coeff;
    return c;
}

double Poly::eval(const Vec& x) const {
    double v = 0.0;
    for (const Term& t : terms) {
        double m = t.coeff;
        for (size_t i = 0; i < t.exp.size(); ++i)
            for (int p = 0; p < t.exp[i]; ++p) m *= x(static_cast<Eigen::Index>(i));
        v += m;
    }
    return v;
}

// --------------------------------------------------------------------- parsing

namespace {

double parse_coeff(const nlohmann::json& c) {
    if (c.is_number()) return c.get<double>();
    if (c.is_string()) {
        const std::string s = c.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                size_t pos = 0;
                double v = std::stod(s, &pos);
                if (pos != s.size()) throw SchemaError("coeff string is not a number: " + s);
                return v;
            }
            size_t p1 = 0, p2 = 0;
            const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
            const long long p = std::stoll(num, &p1);
            const long long q = std::stoll(den, &p2);
            if (p1 != num.size() || p2 != den.size())
                throw SchemaError("malformed rational coeff: " + s);
            if (q == 0) throw SchemaError("rational coeff with zero denominator: " + s);
            return static_cast<double>(static_cast<long double>(p) / static_cast<long double>(q));
        } catch (const std::invalid_argument&) {
            throw SchemaError("malformed coeff string: " + s);
        } catch (const std::out_of_range&) {
            throw SchemaError("coeff out of range: " + s);
        }
    }
    throw SchemaError("coeff must be a number or a \"p/q\" string");
}

} // namespace

PolyMapGerm parse_germ(const nlohmann::json& doc) {
    if (!doc.is_object()) throw SchemaError("germ document must be a JSON object");
    for (const char* key : {"n", "k", "components"})
        if (!doc.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
    if (!doc["n"].is_number_integer() || !doc["k"].is_number_integer())
        throw SchemaError("\"n\" and \"k\" must be integers");

    PolyMapGerm f;
    f.n = doc["n"].get<int>();
    f.k = doc["k"].get<int>();
    if (f.n < 2) throw SchemaError("source dimension n must be at least 2");
    if (f.k < 1) throw SchemaError("codimension offset k must be at least 1");

    const auto& comps = doc["components"];
    if (!comps.is_array() || static_cast<int>(comps.size()) != f.n + f.k)
        throw SchemaError("\"components\" must be an array of n + k term lists");

    for (const auto& comp : comps) {
        if (!comp.is_array()) throw SchemaError("each component must be an array of terms");
        Poly p;
        for (const auto& term : comp) {
            if (!term.is_object() || !term.contains("exp") || !term.contains("coeff"))
                throw SchemaError("each term needs \"exp\" and \"coeff\"");
            const auto& ej = term["exp"];
            if (!ej.is_array() || static_cast<int>(ej.size()) != f.n)
                throw SchemaError("\"exp\" must list one exponent per source variable");
            Term t;
            t.exp.reserve(f.n);
            int degree = 0;
            for (const auto& e : ej) {
                if (!e.is_number_integer() || e.get<int>() < 0)
                    throw SchemaError("exponents must be nonnegative integers");
                t.exp.push_back(e.get<int>());
                degree += t.exp.back();
            }
            t.coeff = parse_coeff(term["coeff"]);
            if (degree == 0 && t.coeff != 0.0)
                throw NotGermError("nonzero constant term: the map is not a germ at the origin");
            p.terms.push_back(std::move(t));
        }
        f.components.push_back(std::move(p));
    }
    return f;
}

PolyMapGerm parse_germ_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open germ file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse_germ(doc);
}

nlohmann::ordered_json germ_to_json(const PolyMapGerm& f) {
    nlohmann::ordered_json doc;
    doc["n"] = f.n;
    doc["k"] = f.k;
    auto comps = nlohmann::ordered_json::array();
    for (const Poly& p : f.components) {
        auto terms = nlohmann::ordered_json::array();
        for (const Term& t : p.terms)
            terms.push_back({{"exp", t.exp}, {"coeff", t.coeff}});
        comps.push_back(std::move(terms));
    }
    doc["components"] = std::move(comps);
    return doc;
}

// ---------------------------------------------------------------------- 2-jets

Jet2 jet2(const PolyMapGerm& f) {
    Jet2 j;
    j.n = f.n;
    j.k = f.k;
    j.L = Mat::Zero(f.n + f.k, f.n);
    j.H.assign(f.n + f.k, Mat::Zero(f.n, f.n));
    for (int m = 0; m < f.n + f.k; ++m) {
        for (const Term& t : f.components[m].terms) {
            const int degree = std::accumulate(t.exp.begin(), t.exp.end(), 0);
            if (degree == 1) {
                for (int i = 0; i < f.n; ++i)
                    if (t.exp[i] == 1) j.L(m, i) += t.coeff;
            } else if (degree == 2) {
                int i = -1, jj = -1;
                for (int c = 0; c < f.n; ++c) {
                    if (t.exp[c] == 2) i = jj = c;
                    else if (t.exp[c] == 1) (i < 0 ? i : jj) = c;
                }
                if (i == jj) {
                    j.H[m](i, i) += 2.0 * t.coeff;
                } else {
                    j.H[m](i, jj) += t.coeff;
                    j.H[m](jj, i) += t.coeff;
                }
            }
        }
    }
    return j;
}

// -------------------------------------------------------------------- MongeJet

Vec MongeJet::coeff_vec(int i, int j) const {
    Vec v(k + 1);
    for (int l = 0; l <= k; ++l) v(l) = a[l](i, j);
    return v;
}

Vec MongeJet::null_image() const { return coeff_vec(n - 1, n - 1); }

double MongeJet::scale() const {
    double s = 0.0;
    for (const Mat& m : a) s = std::max(s, m.cwiseAbs().maxCoeff());
    return s;
}

// ------------------------------------------------------------ TransformRecord

bool TransformRecord::is_identity(double tol) const {
    const auto eye_t = Mat::Identity(target_rotation.rows(), target_rotation.cols());
    const auto eye_s = Mat::Identity(source_linear.rows(), source_linear.cols());
    if ((target_rotation - eye_t).cwiseAbs().maxCoeff() > tol) return false;
    if ((source_linear - eye_s).cwiseAbs().maxCoeff() > tol) return false;
    for (const Mat& q : source_quadratic)
        if (q.size() > 0 && q.cwiseAbs().maxCoeff() > tol) return false;
    return true;
}

Jet2 TransformRecord::apply(const Jet2& jet) const {
    const int n = jet.n, k = jet.k;
    const Mat& R = target_rotation;
    const Mat& S = source_linear;
    const Mat LS = jet.L * S;

    Jet2 out;
    out.n = n;
    out.k = k;
    out.L = R * LS;
    out.H.assign(n + k, Mat::Zero(n, n));
    // Hessian of f_m(S(x + q(x))): S^T H_m S - sum_c (LS)(m,c) Q_c, rotated.
    std::vector<Mat> pulled(n + k);
    for (int m = 0; m < n + k; ++m) {
        pulled[m] = S.transpose() * jet.H[m] * S;
        for (int c = 0; c < n; ++c) {
            if (source_quadratic[c].size() == 0) continue;
            pulled[m] -= LS(m, c) * source_quadratic[c];
        }
    }
    for (int m = 0; m < n + k; ++m)
        for (int t = 0; t < n + k; ++t)
            if (R(m, t) != 0.0) out.H[m] += R(m, t) * pulled[t];
    return out;
}

// ------------------------------------------------------------- Monge normalize

namespace {

/// Gram–Schmidt push of `col` against the orthonormal columns of `basis`.
/// Appends the normalized residual if its norm exceeds `threshold`.
bool gs_append(std::vector<Vec>& basis, Vec col, double threshold) {
    for (const Vec& b : basis) col -= b.dot(col) * b;
    const double norm = col.norm();
    if (norm <= threshold) return false;
    basis.push_back(col / norm);
    return true;
}

} // namespace

NormalizeResult monge_normalize(const Jet2& jet, double tol) {
    const int n = jet.n, k = jet.k, N = n + k;

    Eigen::JacobiSVD<Mat> svd(jet.L, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * smax) ++rank;
    if (smax == 0.0 || rank != n - 1)
        throw CorankError("differential has corank " + std::to_string(n - rank) +
                          ", expected corank 1");

    // Image basis: deterministic Gram–Schmidt over the columns of L, so a map
    // already in Monge form normalizes with the identity rotation.
    std::vector<Vec> image;
    for (int c = 0; c < n && static_cast<int>(image.size()) < n - 1; ++c)
        gs_append(image, jet.L.col(c), tol * smax);
    if (static_cast<int>(image.size()) != n - 1) {
        image.clear();
        for (int c = 0; c < n - 1; ++c) image.push_back(svd.matrixU().col(c));
    }

    std::vector<Vec> basis = image;
    for (int c = 0; c < N && static_cast<int>(basis.size()) < N; ++c)
        gs_append(basis, Vec(Mat::Identity(N, N).col(c)), 0.5);
    if (static_cast<int>(basis.size()) != N)
        throw CorankError("failed to complete an orthonormal target basis");

    Mat W(N, N);
    for (int c = 0; c < N; ++c) W.col(c) = basis[c];
    if (W.determinant() < 0) W.col(N - 1) *= -1.0; // flip the last normal axis
    const Mat R = W.transpose();

    // Source change: [s_1 .. s_{n-1}] the minimal-norm preimages of e_j under
    // the top block T, plus the sign-canonicalized kernel direction.
    const Mat Lr = R * jet.L;
    const Mat T = Lr.topRows(n - 1);
    const Mat pinv = T.transpose() * (T * T.transpose()).inverse();

    Vec kernel = svd.matrixV().col(n - 1);
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(kernel(i)) > std::abs(kernel(imax))) imax = i;
    if (kernel(imax) < 0) kernel *= -1.0;

    Mat S(n, n);
    S.leftCols(n - 1) = pinv;
    S.col(n - 1) = kernel;

    // Rotated-and-substituted Hessians, then the quadratic shear that empties
    // the first n-1 components at order two.
    std::vector<Mat> Hs(N);
    for (int m = 0; m < N; ++m) {
        Mat acc = Mat::Zero(n, n);
        for (int t = 0; t < N; ++t)
            if (R(m, t) != 0.0) acc += R(m, t) * jet.H[t];
        Hs[m] = S.transpose() * acc * S;
    }

    TransformRecord rec;
    rec.target_rotation = R;
    rec.source_linear = S;
    rec.source_quadratic.assign(n, Mat());
    for (int j = 0; j < n - 1; ++j) rec.source_quadratic[j] = Hs[j];

    MongeJet m;
    m.n = n;
    m.k = k;
    m.a.reserve(k + 1);
    for (int l = 0; l <= k; ++l) {
        Mat sym = Hs[n - 1 + l];
        m.a.push_back(0.5 * (sym + sym.transpose()));
    }
    return {std::move(m), std::move(rec)};
}

Jet2 to_jet2(const MongeJet& m) {
    Jet2 j;
    j.n = m.n;
    j.k = m.k;
    j.L = Mat::Zero(m.n + m.k, m.n);
    j.L.topLeftCorner(m.n - 1, m.n - 1).setIdentity();
    j.H.assign(m.n + m.k, Mat::Zero(m.n, m.n));
    for (int l = 0; l <= m.k; ++l) j.H[m.n - 1 + l] = m.a[l];
    return j;
}

FundamentalForms fundamental_forms(const MongeJet& m) {
    FundamentalForms ff;
    ff.gram = Mat::Zero(m.n, m.n);
    ff.gram.topLeftCorner(m.n - 1, m.n - 1).setIdentity();
    ff.II = m.a;
    return ff;
}

// --------------------------------------------------------------- Lemma change

LemmaClosedForm lemma_change_formulas(const MongeJet& m) {
    if (m.n != 3) throw DimensionError("lemma_change_formulas requires n = 3");
    const Vec s = m.coeff_vec(2, 2);
    const double ns = s.norm();
    if (ns == 0.0) throw DegenerateError("a_002 vanishes; no reduced form");
    const double ns2 = ns * ns;
    const Vec a200 = m.coeff_vec(0, 0), a110 = m.coeff_vec(0, 1), a020 = m.coeff_vec(1, 1);
    const Vec a101 = m.coeff_vec(0, 2), a011 = m.coeff_vec(1, 2);
    LemmaClosedForm cf;
    cf.a200 = (s.dot(a200) - s.dot(a101) * s.dot(a101) / ns2) / ns;
    cf.a110 = (s.dot(a110) - s.dot(a101) * s.dot(a011) / ns2) / ns;
    cf.a020 = (s.dot(a020) - s.dot(a011) * s.dot(a011) / ns2) / ns;
    return cf;
}

LemmaReduction reduce_lemma_change(const MongeJet& m, double tol) {
    if (m.n != 3) throw DimensionError("reduce_lemma_change requires n = 3");
    const int k = m.k, N = m.n + m.k;
    const Vec s = m.coeff_vec(2, 2);
    const double scale = std::max(m.scale(), 1.0);
    if (s.norm() <= tol * scale)
        throw DegenerateError("||a_002|| below tolerance; reduction undefined");

    // Normal-space rotation sending a_002 to the positive last axis.
    const Vec w = s / s.norm();
    std::vector<Vec> basis;
    for (int c = 0; c < k + 1 && static_cast<int>(basis.size()) < k; ++c) {
        Vec e = Vec::Zero(k + 1);
        e(c) = 1.0;
        e -= w.dot(e) * w;
        gs_append(basis, e, 0.5);
    }
    basis.push_back(w);
    Mat B(k + 1, k + 1);
    for (int c = 0; c <= k; ++c) B.col(c) = basis[c];
    if (B.determinant() < 0) B.col(0) *= -1.0;
    const Mat Rn = B.transpose();

    std::vector<Mat> rotated(k + 1, Mat::Zero(3, 3));
    for (int l = 0; l <= k; ++l)
        for (int t = 0; t <= k; ++t)
            if (Rn(l, t) != 0.0) rotated[l] += Rn(l, t) * m.a[t];

    // Shear z -> z + alpha x + beta y and rescale so the last z^2 entry is 1.
    const double F = rotated[k](2, 2);
    const double alpha = -rotated[k](0, 2) / F;
    const double beta = -rotated[k](1, 2) / F;
    Mat Sr = Mat::Identity(3, 3);
    Sr(2, 0) = alpha;
    Sr(2, 1) = beta;
    Sr(2, 2) = 1.0 / std::sqrt(F);

    MongeJet out;
    out.n = 3;
    out.k = k;
    out.a.reserve(k + 1);
    for (int l = 0; l <= k; ++l) {
        Mat sym = Sr.transpose() * rotated[l] * Sr;
        out.a.push_back(0.5 * (sym + sym.transpose()));
    }

    TransformRecord rec;
    rec.target_rotation = Mat::Identity(N, N);
    rec.target_rotation.bottomRightCorner(k + 1, k + 1) = Rn;
    rec.source_linear = Sr;
    rec.source_quadratic.assign(3, Mat());
    return {std::move(out), std::move(rec)};
}

} // namespace axialcurv

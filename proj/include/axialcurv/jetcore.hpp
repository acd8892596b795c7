// axialcurv — polynomial map germs, 2-jets, Monge normalization and the
// normal-form reduction that moves the whole z^2 coupling into the last
// normal component.
#pragma once

#include "axialcurv/types.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

namespace axialcurv {

/// One monomial: coeff * prod_i x_i^exp[i].
struct Term {
    std::vector<int> exp;
    double coeff = 0.0;
};

/// Sparse polynomial in n variables.
struct Poly {
    std::vector<Term> terms;

    /// Coefficient of the exact exponent vector (0 when absent).
    double coefficient(const std::vector<int>& e) const;
    /// Total-degree filtered evaluation helpers used by curve extraction.
    double eval(const Vec& x) const;
};

/// Polynomial map germ f : (R^n, 0) -> (R^{n+k}, 0).
struct PolyMapGerm {
    int n = 0; ///< source dimension
    int k = 0; ///< codimension offset; target dimension is n + k
    std::vector<Poly> components; ///< size n + k

    int target_dim() const { return n + k; }
};

/// Parse a germ from its JSON document.
///
/// Schema: {"n": int, "k": int, "components": [[{"exp": [int; n],
/// "coeff": number | "p/q"}, ...], ...]} with n+k component term lists.
/// Throws SchemaError on malformed input and NotGermError when a component
/// carries a nonzero constant term.
PolyMapGerm parse_germ(const nlohmann::json& doc);
PolyMapGerm parse_germ_file(const std::string& path);

/// Serialize back to the schema (used by fixtures and the report echo).
nlohmann::ordered_json germ_to_json(const PolyMapGerm& f);

/// Exact 2-jet of a polynomial germ: linear part L ((n+k) x n) and the
/// Hessians H[m] (n x n, symmetric) of every component. Read off the stored
/// coefficients — no numerical differentiation.
struct Jet2 {
    int n = 0, k = 0;
    Mat L;
    std::vector<Mat> H;
};
Jet2 jet2(const PolyMapGerm& f);

/// Monge-form 2-jet data at a corank-1 point.
///
/// The germ is (x_1, ..., x_{n-1}, f_1, ..., f_{k+1}) with every f_l starting
/// at order two. a[l] (0-based l = 0..k) is the Hessian of f_l, so the 2-jet
/// of f_l equals (1/2) x^T a[l] x; in index notation the classical
/// coefficient a^l_{110} is a[l](0,1), a^l_{002} is a[l](n-1, n-1), etc.
struct MongeJet {
    int n = 0, k = 0;
    std::vector<Mat> a; ///< k+1 symmetric n x n matrices

    /// Vector (a[0](i,j), ..., a[k](i,j)) in the normal space R^{k+1}.
    Vec coeff_vec(int i, int j) const;
    /// II(u_inf, u_inf): the coefficient vector of the null direction,
    /// i.e. coeff_vec(n-1, n-1).
    Vec null_image() const;
    /// Largest |entry| across the tensor (scale witness for tolerances).
    double scale() const;
};

/// Record of the changes applied to reach Monge (or reduced) form:
///   g(x) = target_rotation * f( source_linear * (x + q(x)) )
/// with q_j(x) = -(1/2) x^T source_quadratic[j] x (zero beyond the first
/// n-1 slots and in purely linear reductions).
struct TransformRecord {
    Mat target_rotation; ///< (n+k) x (n+k), orthogonal, det +1
    Mat source_linear;   ///< n x n, invertible
    std::vector<Mat> source_quadratic; ///< size n, each n x n symmetric

    bool is_identity(double tol) const;
    /// Push a 2-jet through the recorded composition (replay path for tests).
    Jet2 apply(const Jet2& jet) const;
};

struct NormalizeResult {
    MongeJet jet;
    TransformRecord record;
};

/// Normalize a corank-1 2-jet to Monge form.
///
/// Target rotation (QR-style image alignment, det +1 by flipping the last
/// normal axis if needed), source linear change mapping the differential to
/// [I_{n-1}; 0], then the quadratic source shear that empties the first n-1
/// components at order two. Deterministic; acts as the identity on input
/// that is already in Monge form. Throws CorankError unless rank(L) = n-1
/// under the relative singular-value tolerance.
NormalizeResult monge_normalize(const Jet2& jet, double tol = default_tolerance());

/// Embed a MongeJet back into a Jet2 (for idempotence and replay tests).
Jet2 to_jet2(const MongeJet& m);

/// First fundamental form (pseudo-metric: identity on the first n-1
/// directions, null on the last) and second fundamental form matrices,
/// which in Monge form are the a[l] themselves.
struct FundamentalForms {
    Mat gram;            ///< n x n
    std::vector<Mat> II; ///< k+1 matrices, n x n
};
FundamentalForms fundamental_forms(const MongeJet& m);

/// Closed-form coefficients of the reduced last component (see
/// reduce_lemma_change): abar_200, abar_110, abar_020 computed directly from
/// inner products with a_002 — the independent arm of the dual-path test.
struct LemmaClosedForm {
    double a200 = 0, a110 = 0, a020 = 0;
};
LemmaClosedForm lemma_change_formulas(const MongeJet& m);

struct LemmaReduction {
    MongeJet jet;
    TransformRecord record;
};

/// Rotate the normal space so the z^2 coefficient vector lands on the last
/// axis, shear z to delete the xz/yz couplings of the last component, and
/// rescale z so its z^2 coefficient becomes exactly 1. n = 3 only; throws
/// DegenerateError when ||a_002|| <= tol * scale. After reduction
/// a[l](2,2) = 0 for l < k and a[k](2,2) = 1; when the coupling matrix has
/// rank one, a[l](0,2) = a[l](1,2) = 0 for l < k as well.
LemmaReduction reduce_lemma_change(const MongeJet& m, double tol = default_tolerance());

} // namespace axialcurv

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saito/linalg.hpp"
#include "saito/polyring.hpp"

namespace saito {

// x-exponent vector of length N.
using XExp = std::vector<int>;

// A polynomial regrouped by its x-monomials; each coefficient is a polynomial
// in (s, z) with shape (0, ns). Iteration goes from the grlex-largest x-monomial.
using Grouped = std::map<XExp, MPoly, GrlexGreater>;

Grouped group_by_x(const MPoly& g);
// Adds c to the coefficient of m, erasing it on cancellation.
void grouped_add(Grouped& g, const XExp& m, const MPoly& c);
MPoly ungroup(const Grouped& g, Shape shape);

// Element of the rewriting basis of the Jacobian ideal, with
// poly = sum_k cofactors[k] * df/dx_k.
struct IdealElement {
    MPoly poly;
    std::vector<MPoly> cofactors;
    XExp lead;
    Rational lead_coeff;
    std::vector<std::pair<XExp, Rational>> terms;  // poly's terms, leading first
};

struct JacobianData {
    MPoly f;
    WeightSystem W;  // s-weights filled in by build
    Names names;     // x names from the input, s1..s_mu
    int N = 0;
    int mu = 0;
    std::vector<MPoly> df;  // partial derivatives
    std::vector<IdealElement> ideal_basis;
    std::vector<XExp> staircase;      // standard monomials in default basis order
    std::vector<MPoly> milnor_basis;  // phi_1 .. phi_mu, shape (N, 0)
    std::vector<Rational> basis_weights;
    QMatrix staircase_to_basis;  // identity unless a custom basis was supplied
    MPoly hess;
    QVector hess_class;
    int top_index = 0;
    Rational d;  // sum (1 - 2 q_k)
    QMatrix gram;

    Shape x_shape() const { return Shape{N, 0}; }
    Shape xs_shape() const { return Shape{N, mu}; }
};

// Builds the Jacobian data. basis, when given, lists monomials (as polynomials
// of shape (N, 0)) replacing the staircase basis; its first entry must be 1.
JacobianData build_jacobian(const MPoly& f, const std::vector<Rational>& q,
                            const std::vector<std::string>& x_names,
                            const std::optional<std::vector<MPoly>>& basis = std::nullopt);

struct NormalForm {
    std::vector<MPoly> coeffs;     // per basis index, polynomials of shape (0, ns)
    std::vector<MPoly> cofactors;  // h_k with g = sum coeffs*phi + sum h_k df_k
};

// Reduction of a polynomial in x (coefficients may involve s and z linearly).
NormalForm normal_form(const JacobianData& J, const MPoly& g);

// Lower-level form: reduces grouped input, returns coordinates and grouped cofactors.
struct GroupedReduction {
    std::vector<MPoly> coeffs;
    std::vector<Grouped> cofactors;
};
GroupedReduction reduce_grouped(const JacobianData& J, Grouped work, bool want_cofactors, Shape coeff_shape);

// Class of an x-only polynomial as a rational coordinate vector.
QVector class_of(const JacobianData& J, const MPoly& g);
MPoly representative(const JacobianData& J, const QVector& c);
QVector multiply_classes(const JacobianData& J, const QVector& a, const QVector& b);

Rational residue_pairing(const JacobianData& J, const QVector& a, const QVector& b);
QMatrix gram_matrix(const JacobianData& J);

struct DecompKey {
    std::vector<int> p;
    int alpha = 0;
    bool operator<(const DecompKey& o) const {
        if (p != o.p) return p < o.p;
        return alpha < o.alpha;
    }
    bool operator==(const DecompKey& o) const { return p == o.p && alpha == o.alpha; }
};

// Coefficients are polynomials of shape (0, ns); constants in the central-fiber case.
using Decomposition = std::map<DecompKey, MPoly>;

Decomposition regseq_decompose(const JacobianData& J, const MPoly& g);
// sum coeff * prod (dF/dx_k)^{p_k} * phi_alpha, with the given partials (df or dF).
MPoly recompose(const JacobianData& J, const Decomposition& D, const std::vector<MPoly>& partial_derivs);

std::string to_string(const Decomposition& D, const JacobianData& J);

// C[x]/(gens) for arbitrary x-polynomials of shape (N, 0), via a grlex Groebner basis.
struct QuotientAlgebra {
    int N = 0;
    std::vector<IdealElement> basis;
    std::vector<XExp> standard;  // standard monomials, the coordinate basis
    int dimension() const { return static_cast<int>(standard.size()); }
    // Coordinates of the normal form of g in the standard monomial basis.
    QVector coordinates(const MPoly& g) const;
};

// nullopt when the quotient is infinite-dimensional. Expects exactly N generators.
std::optional<QuotientAlgebra> quotient_algebra(const std::vector<MPoly>& gens, int N);

}  // namespace saito

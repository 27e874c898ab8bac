#pragma once

#include <string>
#include <vector>

#include "saito/primform.hpp"

namespace saito {

// Series in mu variables (s or t) are MPolys of shape (0, mu) without z.
using SeriesVector = std::vector<MPoly>;
using SeriesMatrix = std::vector<std::vector<MPoly>>;

// Psi[alpha][beta] = coefficient of e_beta in z^0 of e^{(F-f)/z}(phi_alpha zeta + z d zeta/ds_alpha),
// i.e. d t^beta / d s_alpha, through s-degree P. zeta must be known to order P + 1.
SeriesMatrix period_map(const GoodBasis& GB, const PrimitiveFormSeries& zeta, int P);

// Whether d Psi_alpha / d s_gamma is symmetric in (alpha, gamma) through degree P - 1.
bool period_map_integrable(const SeriesMatrix& psi, int P);

struct FlatCoordinates {
    SeriesVector t_of_s;  // through degree P + 1
    SeriesVector s_of_t;  // through degree P + 1
};

// Integrates Psi along rays; throws std::logic_error when Psi is not integrable.
FlatCoordinates flat_coordinates(const SeriesMatrix& psi, int P);

// G(s(t)) truncated at total degree bound.
MPoly compose(const MPoly& G, const SeriesVector& subs, int bound);

using StructureConstants = std::vector<std::vector<std::vector<MPoly>>>;

struct FrobeniusData {
    const GoodBasis* GB = nullptr;
    PrimitiveFormSeries zeta;
    int order = 0;  // s-order P; the potential is known through degree P + 3
    Rational d;
    SeriesMatrix psi;
    FlatCoordinates flat;
    StructureConstants c;  // c[i][j][k](t) through degree P
    MPoly potential;
    std::vector<Rational> E_weights;
    QMatrix eta;
};

StructureConstants structure_constants(const GoodBasis& GB, const SeriesMatrix& psi, const FlatCoordinates& flat, int P);

// F with third derivatives c, no terms below degree 3. Throws std::logic_error
// when the c are not the third derivatives of a single function.
MPoly potential_from(const StructureConstants& c, int P);

FrobeniusData frobenius_data(const GoodBasis& GB, int P, ZetaProjection projection = ZetaProjection::Positive);

MPoly third_derivative(const MPoly& F, int i, int j, int k);

struct WdvvReport {
    bool ok = true;
    int verified_degree = 0;
    std::vector<int> failing;  // first failing (i, j, k, n) when !ok
};

// Associativity of the product from F, compared through t-degree P.
WdvvReport wdvv_check(const MPoly& F, const QMatrix& eta, int P);

// E F - (3 - d) F has only terms of degree <= 2.
bool euler_check(const MPoly& F, const std::vector<Rational>& weights, const Rational& d);

struct BOperators {
    QMatrix B0;    // column j = coordinates of E o d/dt_j
    QMatrix Binf;  // diag((2 - d)/2 - wt)
    // Whether the potential is known in full, so B0 is exact at any point.
    bool complete = false;
};

BOperators b_operators(const FrobeniusData& FD, const std::vector<Rational>& t0);

std::string to_string_t(const MPoly& p);

}  // namespace saito

#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "saito/frobenius.hpp"

using namespace saito;
using namespace saito::testing;

namespace {

MPoly tpoly(int mu, const std::string& text) {
    Names n;
    for (int i = 0; i < mu; ++i) n.s.push_back("t" + std::to_string(i + 1));
    return parse_poly(text, n);
}

MPoly trunc(const MPoly& p, int bound) { return truncate(p, STruncation::bound(bound)); }

const FrobeniusData& e7_data() {
    static const GoodBasis GB = monomial_good_basis(e7());
    static const FrobeniusData FD = frobenius_data(GB, 3);
    return FD;
}

const FrobeniusData& a2_data() {
    static const GoodBasis GB = monomial_good_basis(a2());
    static const FrobeniusData FD = frobenius_data(GB, 3);
    return FD;
}

}  // namespace

TEST_CASE("A2 Frobenius structure") {
    const auto& FD = a2_data();
    Shape sh{0, 2};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(FD.psi[a][b] == MPoly::constant(sh, a == b ? 1 : 0));
    for (int a = 0; a < 2; ++a) {
        CHECK(FD.flat.t_of_s[a] == MPoly::s(sh, a));
        CHECK(FD.flat.s_of_t[a] == MPoly::s(sh, a));
    }
    CHECK(FD.c[1][1][1] == tpoly(2, "-t2"));
    CHECK(FD.c[0][0][1] == MPoly::constant(sh, 1));
    CHECK(FD.potential == tpoly(2, "(1/2)*t1^2*t2 - (1/24)*t2^4"));
    CHECK(to_string_t(FD.potential) == "-(1/24)*t2^4 + (1/2)*t1^2*t2");
    CHECK(wdvv_check(FD.potential, FD.eta, 3).ok);
    CHECK(euler_check(FD.potential, FD.E_weights, FD.d));
}

TEST_CASE("A1 potential is the cubic term") {
    auto GB = monomial_good_basis(a1());
    auto FD = frobenius_data(GB, 2);
    CHECK(FD.potential == tpoly(1, "(1/12)*t1^3"));
    CHECK(third_derivative(FD.potential, 0, 0, 0) == MPoly::constant(Shape{0, 1}, GB.eta(0, 0)));
}

TEST_CASE("E7 period map and flat coordinates") {
    const auto& FD = e7_data();
    const int P = 3;
    Shape sh{0, 7};
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) CHECK(FD.psi[a][b].eval_s(std::vector<Rational>(7, 0)).constant_term() == (a == b ? 1 : 0));
    CHECK(period_map_integrable(FD.psi, P));
    for (int a = 0; a < 7; ++a) {
        for (int b = 0; b < 7; ++b) CHECK(trunc(FD.flat.t_of_s[b].d_ds(a), P) == FD.psi[a][b]);
        CHECK(trunc(FD.flat.t_of_s[a], 1) == MPoly::s(sh, a));
        CHECK(compose(FD.flat.t_of_s[a], FD.flat.s_of_t, P + 1) == MPoly::s(sh, a));
        CHECK(compose(FD.flat.s_of_t[a], FD.flat.t_of_s, P + 1) == MPoly::s(sh, a));
    }
    // Flat coordinates are the z^{-1} part of J.
    auto Jf = j_function(*FD.GB, standard_unfolding(e7()), FD.zeta);
    std::vector<MPoly> t(7, MPoly(sh));
    for (const auto& comp : Jf.components) {
        auto m1 = comp.z_part(-1);
        for (int b = 0; b < 7; ++b) t[b] += m1[b];
    }
    for (int b = 0; b < 7; ++b) CHECK(trunc(t[b], P + 1) == FD.flat.t_of_s[b]);
    // The flat coordinates are not the unfolding parameters.
    bool nonlinear = false;
    for (int b = 0; b < 7; ++b) nonlinear = nonlinear || FD.flat.t_of_s[b] != MPoly::s(sh, b);
    CHECK(nonlinear);
}

TEST_CASE("E7 structure constants and potential") {
    const auto& FD = e7_data();
    const auto& J = e7();
    const int P = 3;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            CHECK(FD.c[0][i][j] == MPoly::constant(Shape{0, 7}, FD.eta(i, j)));
            CHECK(third_derivative(FD.potential, 0, i, j) == MPoly::constant(Shape{0, 7}, J.gram(i, j)));
            for (int k = 0; k < 7; ++k) {
                CHECK(FD.c[i][j][k] == FD.c[j][i][k]);
                CHECK(FD.c[i][j][k] == FD.c[i][k][j]);
            }
        }
    // Cubic part: (1/3!) sum eta(phi_a phi_b, phi_c) t_a t_b t_c.
    Shape sh{0, 7};
    MPoly cubic(sh);
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c) {
                Rational v = residue_pairing(J, multiply_classes(J, unit(7, a), unit(7, b)), unit(7, c));
                if (v != 0) cubic += MPoly::s(sh, a) * MPoly::s(sh, b) * MPoly::s(sh, c) * (v / 6);
            }
    CHECK(FD.potential.filter([](const Exponents& e) { return total_degree(e) == 3; }) == cubic);
    auto rep = wdvv_check(FD.potential, FD.eta, P);
    CHECK(rep.ok);
    CHECK(rep.verified_degree == P);
    CHECK(euler_check(FD.potential, FD.E_weights, FD.d));
    CHECK(FD.d == Rational(8, 9));
}

TEST_CASE("WDVV fault injection") {
    const auto& FD = e7_data();
    MPoly bad = FD.potential + tpoly(7, "t2^5");
    CHECK_FALSE(wdvv_check(bad, FD.eta, 3).ok);
    CHECK_FALSE(euler_check(bad, FD.E_weights, FD.d));
    // Associativity is automatic for two parameters.
    const auto& A = a2_data();
    CHECK(wdvv_check(A.potential + tpoly(2, "t2^5"), A.eta, 3).ok);
}

TEST_CASE("B operators") {
    const auto& FD = a2_data();
    auto B = b_operators(FD, {Rational(0), Rational(1)});
    QMatrix Binf(2, 2);
    Binf(0, 0) = Rational(-1, 6);
    Binf(1, 1) = Rational(1, 6);
    CHECK(B.Binf == Binf);
    QMatrix B0(2, 2);
    B0(1, 0) = Rational(2, 3);
    B0(0, 1) = Rational(-2, 3);
    CHECK(B.B0 == B0);
    CHECK(B.complete);
    for (const FrobeniusData* D : {&a2_data(), &e7_data()}) {
        int mu = static_cast<int>(D->E_weights.size());
        std::vector<Rational> t0(mu);
        for (int i = 0; i < mu; ++i) t0[i] = frac(i + 1, 3);
        auto Bt = b_operators(*D, t0);
        CHECK((Bt.Binf.transpose() * D->eta + D->eta * Bt.Binf).is_zero());
        CHECK(Bt.B0.transpose() * D->eta == D->eta * Bt.B0);
        CHECK(b_operators(*D, std::vector<Rational>(mu, 0)).B0.is_zero());
    }
    CHECK_FALSE(b_operators(e7_data(), std::vector<Rational>(7, 0)).complete);
}

#include <doctest.h>

#include "fixtures.hpp"
#include "saito/errors.hpp"
#include "saito/primform.hpp"

using namespace saito;
using namespace saito::testing;

namespace {

bool all_zero_after_first(const PrimitiveFormSeries& z) {
    for (int p = 1; p <= z.order(); ++p)
        if (!z.components[p].is_zero()) return false;
    return true;
}

LatticeElement nonnegative_part(const LatticeElement& e) {
    int zi = e.ns();
    return e.filter([zi](const Exponents& x) { return x[zi] >= 0; });
}

}  // namespace

TEST_CASE("base case") {
    for (const JacobianData* J : {&e7(), &a2(), &a1()}) {
        auto GB = monomial_good_basis(*J);
        auto z = primitive_form(GB, 0);
        REQUIRE(z.order() == 0);
        CHECK(z.components[0] == LatticeElement::unit(J->mu, J->mu, 0));
        CHECK(oracle_primitive_form(GB, standard_unfolding(*J), 0).components[0] == z.components[0]);
    }
}

TEST_CASE("A2 primitive form has no corrections") {
    const auto& J = a2();
    auto GB = monomial_good_basis(J);
    auto z = primitive_form(GB, 5);
    CHECK(all_zero_after_first(z));
    auto o = oracle_primitive_form(GB, standard_unfolding(J), 5);
    CHECK(o.components == z.components);
    auto Jf = j_function(GB, standard_unfolding(J), z);
    CHECK(Jf.components[0] == LatticeElement::unit(2, 2, 0));
    LatticeElement j1 = LatticeElement::zero(2, 2);
    j1.coeffs[0] = MPoly::s(Shape{0, 2}, 0).mul_z(-1);
    j1.coeffs[1] = MPoly::s(Shape{0, 2}, 1).mul_z(-1);
    CHECK(Jf.components[1] == j1);
    for (const auto& c : Jf.components) CHECK(c.pi_positive().is_zero());
}

TEST_CASE("E7 recursion agrees with the oracle to order 3") {
    const auto& J = e7();
    auto GB = monomial_good_basis(J);
    auto F = standard_unfolding(J);
    auto z = primitive_form(GB, F, 3);
    auto o = oracle_primitive_form(GB, F, 3);
    REQUIRE(o.order() == 3);
    for (int p = 0; p <= 3; ++p) CHECK(z.components[p] == o.components[p]);
    CHECK(z.components == primitive_form(GB, F, 3, ZetaProjection::NonNegative).components);
    auto Jf = j_function(GB, F, z);
    CHECK(Jf.components[0] == LatticeElement::unit(7, 7, 0));
    for (int p = 1; p <= 3; ++p) {
        CHECK(Jf.components[p].pi_positive().is_zero());
        CHECK(nonnegative_part(Jf.components[p]).is_zero());
        CHECK(!Jf.components[p].is_zero());
    }
}

TEST_CASE("D4 and A3 recursion agree with the oracle") {
    for (const JacobianData* J : {&d4(), &a3()}) {
        auto GB = monomial_good_basis(*J);
        auto F = standard_unfolding(*J);
        CHECK(primitive_form(GB, F, 3).components == oracle_primitive_form(GB, F, 3).components);
    }
}

TEST_CASE("zero-weight parameter separates the two projections") {
    // The top parameter has weight 0, so J_(p) can carry z^0 terms:
    // [(x1^2 x2^2)^2] = (z^2/16)[1].
    const auto& J = x9();
    CHECK(J.W.s[J.top_index] == 0);
    auto GB = monomial_good_basis(J);
    auto F = standard_unfolding(J);
    auto pos = primitive_form(GB, F, 2);
    CHECK(all_zero_after_first(pos));
    auto Jpos = j_function(GB, F, pos);
    for (const auto& c : Jpos.components) CHECK(c.pi_positive().is_zero());
    MPoly expect = MPoly::s(Shape{0, 9}, J.top_index, 2) * Rational(1, 32);
    CHECK(Jpos.components[2].z_part(0)[0] == expect);

    auto nonneg = primitive_form(GB, F, 2, ZetaProjection::NonNegative);
    auto o = oracle_primitive_form(GB, F, 2);
    CHECK(nonneg.components == o.components);
    CHECK(nonneg.components[2].coeffs[0] == -expect);
    auto Jn = j_function(GB, F, nonneg);
    for (int p = 1; p <= 2; ++p) CHECK(nonnegative_part(Jn.components[p]).is_zero());
}

TEST_CASE("homogeneity of the components") {
    const auto& J = p8();
    auto GB = monomial_good_basis(J);
    auto z = primitive_form(GB, 3, ZetaProjection::NonNegative);
    for (const auto& c : z.components)
        if (!c.is_zero()) CHECK(lattice_weight(J, c) == Rational(0));
}

TEST_CASE("good basis with z-corrections") {
    const auto& J = p8();
    auto om = J.milnor_basis;
    om[J.top_index] += MPoly::z(J.x_shape()) * Rational(1, 5);
    auto GB = custom_good_basis(J, om);
    auto F = standard_unfolding(J);
    auto nonneg = primitive_form(GB, F, 2, ZetaProjection::NonNegative);
    CHECK(nonneg.components == oracle_primitive_form(GB, F, 2).components);
    auto Jn = j_function(GB, F, nonneg);
    for (int p = 1; p <= 2; ++p) CHECK(nonnegative_part(Jn.components[p]).is_zero());
    // The shift changes the answer.
    CHECK(nonneg.components != primitive_form(monomial_good_basis(J), F, 2, ZetaProjection::NonNegative).components);
}

TEST_CASE("errors") {
    const auto& J = e7();
    auto GB = monomial_good_basis(J);
    MPoly F = standard_unfolding(J) + xspoly(J, "s1*x1^2");
    CHECK_THROWS_AS(primitive_form(GB, F, 2), PreconditionError);
    auto z = primitive_form(GB, 3);
    CHECK_THROWS_AS(j_function(GB, standard_unfolding(J), z, -1), TruncationExhausted);
}

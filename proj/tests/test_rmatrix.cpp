#include <doctest.h>

#include "fixtures.hpp"
#include "saito/errors.hpp"
#include "saito/rmatrix.hpp"

using namespace saito;
using namespace saito::testing;

namespace {

QMatrix mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    QMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

MPoly spoly(const std::string& text) {
    Names n;
    n.s = {"s1", "s2"};
    return parse_poly(text, n);
}

const FrobeniusData& a2_frobenius() {
    static const GoodBasis GB = monomial_good_basis(a2());
    static const FrobeniusData FD = frobenius_data(GB, 3);
    return FD;
}

std::string kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const PreconditionError& e) {
        return e.kind();
    }
    return "";
}

const std::vector<Rational> a2_point{0, 1};

}  // namespace

TEST_CASE("semisimplicity gate") {
    const auto& J = a2();
    auto SP = check_semisimple(J, a2_point);
    CHECK(SP.quotient.dimension() == 2);
    // F = s1 + (2/3) s2 x in C[x]/(x^2 + s2).
    CHECK(SP.mult_F == mat2(0, Rational(-2, 3), Rational(2, 3), 0));
    // 4 s2^3 + 9 s1^2 = 0 at the origin and at (18, -9).
    CHECK(kind_of([&] { check_semisimple(J, {0, 0}); }) == "not semisimple at s0");
    CHECK(kind_of([&] { check_semisimple(J, {18, -9}); }) == "not semisimple at s0");
    CHECK_NOTHROW(check_semisimple(J, {1, 1}));
    CHECK_NOTHROW(check_semisimple(a1(), {3}));
    // The Milnor algebra of x^2 at s = 0 is C with F = 0.
    CHECK(kind_of([&] { check_semisimple(a1(), {0}); }) == "not semisimple at s0");
    // Moving the E7 unit only shifts all critical values together.
    CHECK(kind_of([&] { check_semisimple(e7(), {1, 0, 0, 0, 0, 0, 0}); }) == "not semisimple at s0");
}

TEST_CASE("A-series at a point") {
    auto SP = check_semisimple(a2(), a2_point);
    auto A = a_series(SP, 3);
    // Displayed series at (0, 1): -(3/2)x, -(3/2), (3/4)x.
    CHECK(A.A[0] == QVector{0, Rational(-3, 2)});
    CHECK(A.A[1] == QVector{Rational(-3, 2), 0});
    CHECK(A.A[2] == QVector{0, Rational(3, 4)});
    for (const auto& r : a_series_residual(SP, A)) CHECK(r == QVector{0, 0});
}

TEST_CASE("symbolic A-series of A2") {
    auto S = symbolic_a_series(a2(), 2);
    // delta = det of multiplication by F = (4 s2^3 + 9 s1^2) / 9.
    CHECK(S.delta == spoly("s1^2 + (4/9)*s2^3"));
    REQUIRE(S.exponents == std::vector<int>{1, 2, 3});
    // A_k = P_k / (4 s2^3 + 9 s1^2)^{k+1} with P_k the displayed numerators.
    std::vector<std::vector<MPoly>> P = {
        {spoly("9*s1"), spoly("-6*s2")},
        {spoly("27*s1^2 - 24*s2^3"), spoly("-54*s1*s2")},
        {spoly("9*(9*s1^3 - 32*s1*s2^3)"), spoly("6*s2*(8*s2^3 - 63*s1^2)")},
    };
    Rational nine = 9;
    for (int k = 0; k <= 2; ++k)
        for (int b = 0; b < 2; ++b) CHECK(S.numerators[k][b] * rational_pow(nine, k + 1) == P[k][b]);

    // The numeric series agrees with the symbolic one away from the discriminant.
    std::vector<Rational> s0{Rational(1, 2), 2};
    auto A = a_series(check_semisimple(a2(), s0), 2);
    Rational dv = S.delta.eval_s(s0).constant_term();
    for (int k = 0; k <= 2; ++k)
        for (int b = 0; b < 2; ++b)
            CHECK(A.A[k][b] == S.numerators[k][b].eval_s(s0).constant_term() / rational_pow(dv, S.exponents[k]));
}

TEST_CASE("B operators of the recursion") {
    auto SP = check_semisimple(a2(), a2_point);
    auto B = b_series(SP, a_series(SP, 1), 3);
    // B_1 = -A_0, so B_1(1) = (3/2)x and B_1(x) = -(3/2).
    CHECK(B.B[1] == mat2(0, Rational(-3, 2), Rational(3, 2), 0));
    // B_2(1) = 0; B_2(x) = -wt(x) A_0 B_1(x) = (1/3)(9/4)x^2 = -(3/4)x.
    CHECK(B.B[2] == mat2(0, 0, 0, Rational(-3, 4)));
}

TEST_CASE("dense oracle for A2 at (0, 1)") {
    const auto& FD = a2_frobenius();
    auto frame = point_frame(FD, a2_point);
    CHECK(frame.exact);
    CHECK(frame.T == QMatrix::identity(2));
    CHECK(frame.B0 == mat2(0, Rational(-2, 3), Rational(2, 3), 0));
    auto R = r_matrix_dense(frame.B0, frame.Binf, 3);
    CHECK(R.R[0] == QMatrix::identity(2));
    CHECK(R.R[1] == mat2(0, Rational(7, 48), Rational(5, 48), 0));
    CHECK(R.R[2] == mat2(Rational(455, 4608), 0, 0, Rational(-385, 4608)));
    CHECK(R.R[3] == mat2(0, Rational(-95095, 663552), Rational(-85085, 663552), 0));

    auto sc = scaled_point(a2(), a2_point);
    CHECK(sc.log2_lambda == 3);
    CHECK(sc.point == std::vector<Rational>{0, 4});
    auto scaled_frame = point_frame(FD, sc.point);
    auto Rs = r_matrix_dense(scaled_frame.B0, scaled_frame.Binf, 3);
    auto v = verify_r(R, Rs, frame, a2().basis_weights, sc.log2_lambda);
    CHECK(v.r0_identity);
    CHECK(v.dubrovin.ok);
    CHECK(v.symplectic.ok);
    CHECK(v.homogeneity.ok);
}

TEST_CASE("R-matrix from the recursion") {
    const auto& J = a2();
    auto GB = monomial_good_basis(J);
    auto SP = check_semisimple(J, a2_point);
    auto R = r_matrix(GB, SP, 3);
    CHECK(R.R[0] == QMatrix::identity(2));
    // R_1 is multiplication by A_0 = -(3/2)x.
    CHECK(R.R[1] == mat2(0, Rational(3, 2), Rational(-3, 2), 0));
    auto frame = point_frame(a2_frobenius(), a2_point);
    // Multiplication by A_0 commutes with B_0 = multiplication by F, while
    // Binf R_0 is non-zero: the order-0 Dubrovin equation cannot hold.
    CHECK(R.R[1] * frame.B0 == frame.B0 * R.R[1]);
    auto d = dubrovin_check(R, frame.B0, frame.Binf);
    CHECK_FALSE(d.ok);
    CHECK(d.first_failure == 0);
    CHECK(d.residuals[0] == frame.Binf * Rational(-1));
    CHECK(R.R != r_matrix_dense(frame.B0, frame.Binf, 3).R);

    // Weight homogeneity does hold.
    auto sc = scaled_point(J, a2_point);
    auto Rs = r_matrix(GB, check_semisimple(J, sc.point), 3);
    CHECK(homogeneity_check(R, Rs, J.basis_weights, sc.log2_lambda).ok);
}

TEST_CASE("A1 R-matrix") {
    const auto& J = a1();
    auto GB = monomial_good_basis(J);
    auto FD = frobenius_data(GB, 2);
    std::vector<Rational> s0{3};
    auto frame = point_frame(FD, s0);
    auto R = r_matrix_dense(frame.B0, frame.Binf, 4);
    for (int k = 1; k <= 4; ++k) CHECK(R.R[k].is_zero());
    auto sc = scaled_point(J, s0);
    auto v = verify_r(R, r_matrix_dense(point_frame(FD, sc.point).B0, point_frame(FD, sc.point).Binf, 4), frame,
                      J.basis_weights, sc.log2_lambda);
    CHECK(v.ok());
    // The recursion gives 1 + z/s1.
    auto Rp = r_matrix(GB, check_semisimple(J, s0), 4);
    CHECK(Rp.R[1](0, 0) == Rational(1, 3));
    for (int k = 2; k <= 4; ++k) CHECK(Rp.R[k].is_zero());
    CHECK_FALSE(symplectic_check(Rp, frame.eta).ok);
}

TEST_CASE("symplectic fault injection") {
    auto frame = point_frame(a2_frobenius(), a2_point);
    auto R = r_matrix_dense(frame.B0, frame.Binf, 3);
    REQUIRE(symplectic_check(R, frame.eta).ok);
    R.R[1](0, 0) += 1;
    auto c = symplectic_check(R, frame.eta);
    CHECK_FALSE(c.ok);
    CHECK(c.first_failure == 1);
}

TEST_CASE("E7 A-series") {
    const auto& J = e7();
    std::vector<Rational> s0{0, 1, 0, 1, 0, 0, 0};
    auto SP = check_semisimple(J, s0);
    auto A = a_series(SP, 2);
    for (const auto& r : a_series_residual(SP, A)) CHECK(r == QVector(7, 0));
    auto GB = monomial_good_basis(J);
    auto R = r_matrix(GB, SP, 2);
    CHECK(R.R[0] == QMatrix::identity(7));
}

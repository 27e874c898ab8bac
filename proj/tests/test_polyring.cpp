#include <doctest.h>

#include "saito/errors.hpp"
#include "saito/polyring.hpp"
#include "test_util.hpp"

using namespace saito;

namespace {

Names e7_names() {
    Names n;
    n.x = {"x1", "x2"};
    n.s = default_s_names(7);
    return n;
}

Rational q(long a, long b = 1) { return Rational(a, b); }

}  // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-2")) == "-2");
    CHECK(to_string(parse_rational(" 4/2 ")) == "2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("a/2"));
    CHECK_THROWS(parse_rational("1/-2"));
}

TEST_CASE("parse_poly examples") {
    Names n = e7_names();
    MPoly f = parse_poly("x1^3 + x1*x2^3", n);
    CHECK(f.size() == 2);
    CHECK(f == MPoly::x(n.shape(), 0, 3) + MPoly::x(n.shape(), 0) * MPoly::x(n.shape(), 1, 3));
    CHECK(parse_poly("0", n).is_zero());

    Names a2;
    a2.x = {"x1"};
    a2.s = {"s1", "s2"};
    MPoly F = parse_poly("(1/3)*x1^3 + s2*x1 + s1", a2);
    CHECK(F.size() == 3);
    CHECK(F.coefficient({3, 0, 0, 0}) == q(1, 3));
    CHECK(F.coefficient({1, 0, 1, 0}) == 1);
    CHECK(F.coefficient({0, 1, 0, 0}) == 1);

    CHECK(parse_poly("z^-2*x1", n).min_z() == -2);
    CHECK(parse_poly("2/3*x1 - -x2", n) == MPoly::x(n.shape(), 0) * q(2, 3) + MPoly::x(n.shape(), 1));
    CHECK(parse_poly("(x1+x2)^2", n) == parse_poly("x1^2 + 2*x1*x2 + x2^2", n));
}

TEST_CASE("parse_poly errors") {
    Names n = e7_names();
    CHECK_THROWS_AS(parse_poly("x1 +", n), ParseError);
    CHECK_THROWS_AS(parse_poly("y^2", n), ParseError);
    CHECK_THROWS_AS(parse_poly("x1^-1", n), ParseError);
    CHECK_THROWS_AS(parse_poly("x1/x2", n), ParseError);
    CHECK_THROWS_AS(parse_poly("(x1", n), ParseError);
    try {
        parse_poly("x1 + $", n);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("printing is canonical and round-trips") {
    Names n = e7_names();
    CHECK(to_string(parse_poly("(2/9)*z + x1^3", n), n) == "x1^3 + (2/9)*z");
    CHECK(to_string(parse_poly("-x1 + 3*x2^2 - 1/2", n), n) == "3*x2^2 - x1 - 1/2");
    CHECK(to_string(MPoly(n.shape()), n) == "0");

    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        MPoly p = testing::random_poly(rng, n.shape(), 6, 5, -2, 2);
        CHECK(parse_poly(to_string(p, n), n) == p);
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(11);
    Shape sh{2, 2};
    for (int i = 0; i < 100; ++i) {
        MPoly a = testing::random_poly(rng, sh, 4, 3, -1, 2);
        MPoly b = testing::random_poly(rng, sh, 4, 3, -1, 2);
        MPoly c = testing::random_poly(rng, sh, 4, 3, -1, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
        CHECK(a * MPoly::constant(sh, 1) == a);
    }
}

TEST_CASE("weights") {
    Names n = e7_names();
    WeightSystem W;
    W.q = {q(1, 3), q(2, 9)};
    W.s.assign(7, 0);
    CHECK(*wt(parse_poly("x1^3 + x1*x2^3", n), W) == 1);
    CHECK(*wt(hessian(parse_poly("x1^3 + x1*x2^3", n)), W) == q(8, 9));
    CHECK(*wt(parse_poly("z*x1", n), W) == q(4, 3));
    CHECK(!wt(parse_poly("x1 + x2", n), W));
    CHECK_THROWS(wt(MPoly(n.shape()), W));

    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
        MPoly a = testing::random_homogeneous(rng, n.shape(), W, q(2, 3), 4);
        MPoly b = testing::random_homogeneous(rng, n.shape(), W, q(4, 9), 4);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(*wt(a * b, W) == *wt(a, W) + *wt(b, W));
    }
}

TEST_CASE("partials and hessian") {
    Names n;
    n.x = {"x1", "x2"};
    auto d = partials(parse_poly("x1^3 + x1*x2^3", n));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == parse_poly("3*x1^2 + x2^3", n));
    CHECK(d[1] == parse_poly("3*x1*x2^2", n));
    for (const auto& p : partials(parse_poly("5", n))) CHECK(p.is_zero());
    CHECK(hessian(parse_poly("x1^3 + x1*x2^3", n)) == parse_poly("36*x1^2*x2 - 9*x2^4", n));

    Names one;
    one.x = {"x1"};
    CHECK(partials(parse_poly("(1/3)*x1^3", one))[0] == parse_poly("x1^2", one));
    CHECK(hessian(parse_poly("(1/3)*x1^3", one)) == parse_poly("2*x1", one));
    CHECK(hessian(parse_poly("x1^2", one)) == parse_poly("2", one));

    Names three;
    three.x = {"x", "y", "w"};
    WeightSystem W;
    W.q = {q(1, 3), q(1, 3), q(1, 2)};
    MPoly f = parse_poly("x^2*y + y^3 + w^2", three);
    CHECK(*wt(hessian(f), W) == (1 - 2 * W.q[0]) + (1 - 2 * W.q[1]) + (1 - 2 * W.q[2]));
}

TEST_CASE("truncate") {
    Names n;
    n.x = {"x"};
    n.s = {"s1", "s6"};
    bool cut = false;
    CHECK(truncate(parse_poly("s1^2 + s1 + 1", n), STruncation::bound(1), &cut) == parse_poly("s1 + 1", n));
    CHECK(cut);
    MPoly p = parse_poly("s1^2*x + z", n);
    CHECK(truncate(p, STruncation::unbounded()) == p);
    CHECK(truncate(parse_poly("s6^3*z*x", n), STruncation::bound(2)).is_zero());
    MPoly t = truncate(p, STruncation::bound(1));
    CHECK(truncate(t, STruncation::bound(1)) == t);
}

#pragma once

#include <string>
#include <vector>

#include "saito/jacobian.hpp"

namespace saito::testing {

inline JacobianData make_jacobian(const std::vector<std::string>& vars, const std::vector<std::string>& weights,
                                  const std::string& f) {
    Names n;
    n.x = vars;
    std::vector<Rational> q;
    for (const auto& w : weights) q.push_back(parse_rational(w));
    return build_jacobian(parse_poly(f, n), q, vars);
}

inline const JacobianData& e7() {
    static const JacobianData J = make_jacobian({"x1", "x2"}, {"1/3", "2/9"}, "x1^3 + x1*x2^3");
    return J;
}

inline const JacobianData& a2() {
    static const JacobianData J = make_jacobian({"x1"}, {"1/3"}, "(1/3)*x1^3");
    return J;
}

inline const JacobianData& a1() {
    static const JacobianData J = make_jacobian({"x1"}, {"1/2"}, "x1^2");
    return J;
}

inline const JacobianData& a3() {
    static const JacobianData J = make_jacobian({"x"}, {"1/4"}, "(1/4)*x^4");
    return J;
}

inline const JacobianData& d4() {
    static const JacobianData J = make_jacobian({"x", "y"}, {"1/3", "1/3"}, "x^2*y - (1/3)*y^3");
    return J;
}

// Fermat cubic in three variables: d = 1, top class x1*x2*x3 of weight 1.
inline const JacobianData& p8() {
    static const JacobianData J = make_jacobian({"x1", "x2", "x3"}, {"1/3", "1/3", "1/3"}, "x1^3 + x2^3 + x3^3");
    return J;
}

// Fermat quartic in two variables: d = 1, top class x1^2*x2^2 of weight 1.
inline const JacobianData& x9() {
    static const JacobianData J = make_jacobian({"x1", "x2"}, {"1/4", "1/4"}, "x1^4 + x2^4");
    return J;
}

// Fermat quartic in three variables: d = 3/2.
inline const JacobianData& fermat4() {
    static const JacobianData J = make_jacobian({"x1", "x2", "x3"}, {"1/4", "1/4", "1/4"}, "x1^4 + x2^4 + x3^4");
    return J;
}

// x-only polynomial in the Jacobian's variables.
inline MPoly xpoly(const JacobianData& J, const std::string& text) {
    Names n;
    n.x = J.names.x;
    return parse_poly(text, n);
}

// Polynomial in x, s and z.
inline MPoly xspoly(const JacobianData& J, const std::string& text) { return parse_poly(text, J.names).widen(J.xs_shape()); }

inline QVector unit(int mu, int a, Rational c = 1) {
    QVector v(mu);
    v[a] = c;
    return v;
}

}  // namespace saito::testing

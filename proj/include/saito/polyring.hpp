#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saito/rational.hpp"

namespace saito {

// Exponent vector laid out as [x_1..x_nx, s_1..s_ns, z]. x and s entries are
// non-negative, the z entry may be negative.
using Exponents = std::vector<int>;

struct Shape {
    int nx = 0;
    int ns = 0;
    int size() const { return nx + ns + 1; }
    int z_index() const { return nx + ns; }
    bool operator==(const Shape& o) const { return nx == o.nx && ns == o.ns; }
    bool operator!=(const Shape& o) const { return !(*this == o); }
};

// Graded lexicographic order, largest first, so that iteration over a term
// map walks from the leading term downwards.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

class MPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexGreater>;

    MPoly() = default;
    explicit MPoly(Shape shape) : shape_(shape) {}

    static MPoly constant(Shape shape, const Rational& c);
    static MPoly x(Shape shape, int k, int power = 1);
    static MPoly s(Shape shape, int a, int power = 1);
    static MPoly z(Shape shape, int power = 1);
    static MPoly monomial(Shape shape, const Exponents& e, const Rational& c);

    Shape shape() const { return shape_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Adds c to the coefficient of e, dropping the entry if it cancels.
    void add_term(const Exponents& e, const Rational& c);
    Rational coefficient(const Exponents& e) const;
    Rational constant_term() const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Rational& c);
    MPoly operator-() const;

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
    friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }

    bool operator==(const MPoly& o) const { return shape_ == o.shape_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly pow(unsigned n) const;
    MPoly d_dx(int k) const;
    MPoly d_ds(int a) const;
    MPoly mul_z(int m) const;
    // Terms with z-exponent m, returned with z-exponent 0.
    MPoly z_coefficient(int m) const;
    MPoly filter(const std::function<bool(const Exponents&)>& keep) const;

    bool depends_on_x() const;
    bool depends_on_s() const;
    bool depends_on_z() const;
    // Largest total s-degree, -1 for the zero polynomial.
    int s_degree() const;
    std::optional<int> min_z() const;
    std::optional<int> max_z() const;

    // Substitutes numeric values for all s-variables; result has ns = 0.
    MPoly eval_s(const std::vector<Rational>& values) const;
    // Re-embeds into a shape with at least as many variables of each kind.
    MPoly widen(Shape target) const;
    // Drops the x-slots (all x-exponents must be 0).
    MPoly drop_x() const;

private:
    Shape shape_;
    TermMap terms_;
};

struct Names {
    std::vector<std::string> x;
    std::vector<std::string> s;
    std::string z = "z";
    Shape shape() const { return Shape{static_cast<int>(x.size()), static_cast<int>(s.size())}; }
};

// Default s-variable names s1..sn.
std::vector<std::string> default_s_names(int n);

MPoly parse_poly(std::string_view text, const Names& names);
std::string to_string(const MPoly& p, const Names& names);

struct WeightSystem {
    std::vector<Rational> q;
    std::vector<Rational> s;
    Rational z = 1;
    Rational weight_of(const Exponents& e, Shape shape) const;
};

// Common weight of all terms, or nullopt when p is not weight-homogeneous.
// Throws std::invalid_argument for the zero polynomial.
std::optional<Rational> wt(const MPoly& p, const WeightSystem& W);

struct STruncation {
    std::optional<int> max_total_s_degree;
    static STruncation unbounded() { return {}; }
    static STruncation bound(int d) { return STruncation{d}; }
    bool keeps(int s_deg) const { return !max_total_s_degree || s_deg <= *max_total_s_degree; }
};

int s_degree_of(const Exponents& e, Shape shape);

// Removes terms above the bound; sets *truncated when anything was dropped.
MPoly truncate(const MPoly& p, const STruncation& T, bool* truncated = nullptr);

std::vector<MPoly> partials(const MPoly& f);
MPoly hessian(const MPoly& f);
// Determinant of a square matrix of polynomials by cofactor expansion.
MPoly determinant(const std::vector<std::vector<MPoly>>& m, Shape shape);

// a / b when b divides a exactly, by leading-term division; nullopt otherwise.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

}  // namespace saito

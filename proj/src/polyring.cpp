#include "saito/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "saito/errors.hpp"

namespace saito {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

namespace {

void require_same_shape(Shape a, Shape b) {
    if (a != b) throw std::invalid_argument("polynomial shape mismatch");
}

}  // namespace

MPoly MPoly::constant(Shape shape, const Rational& c) {
    MPoly p(shape);
    p.add_term(Exponents(shape.size(), 0), c);
    return p;
}

MPoly MPoly::x(Shape shape, int k, int power) {
    Exponents e(shape.size(), 0);
    e.at(k) = power;
    return monomial(shape, e, 1);
}

MPoly MPoly::s(Shape shape, int a, int power) {
    Exponents e(shape.size(), 0);
    e.at(shape.nx + a) = power;
    return monomial(shape, e, 1);
}

MPoly MPoly::z(Shape shape, int power) {
    Exponents e(shape.size(), 0);
    e[shape.z_index()] = power;
    return monomial(shape, e, 1);
}

MPoly MPoly::monomial(Shape shape, const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != shape.size()) throw std::invalid_argument("exponent length mismatch");
    MPoly p(shape);
    p.add_term(e, c);
    return p;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational MPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MPoly::constant_term() const { return coefficient(Exponents(shape_.size(), 0)); }

MPoly& MPoly::operator+=(const MPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) shape_ = o.shape_;
    require_same_shape(shape_, o.shape_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) shape_ = o.shape_;
    require_same_shape(shape_, o.shape_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly(a.is_zero() ? a.shape_ : b.shape_);
    require_same_shape(a.shape_, b.shape_);
    MPoly r(a.shape_);
    Exponents e(a.shape_.size());
    Rational c;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            c = ca * cb;
            r.add_term(e, c);
        }
    }
    return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

MPoly MPoly::pow(unsigned n) const {
    MPoly r = constant(shape_, 1), b = *this;
    while (n > 0) {
        if (n & 1u) r *= b;
        n >>= 1u;
        if (n > 0) b *= b;
    }
    return r;
}

MPoly MPoly::d_dx(int k) const {
    if (k < 0 || k >= shape_.nx) throw std::out_of_range("x index out of range");
    MPoly r(shape_);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        Exponents d = e;
        --d[k];
        r.add_term(d, c * e[k]);
    }
    return r;
}

MPoly MPoly::d_ds(int a) const {
    if (a < 0 || a >= shape_.ns) throw std::out_of_range("s index out of range");
    int i = shape_.nx + a;
    MPoly r(shape_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        --d[i];
        r.add_term(d, c * e[i]);
    }
    return r;
}

MPoly MPoly::mul_z(int m) const {
    if (m == 0) return *this;
    MPoly r(shape_);
    int zi = shape_.z_index();
    for (const auto& [e, c] : terms_) {
        Exponents d = e;
        d[zi] += m;
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

MPoly MPoly::z_coefficient(int m) const {
    MPoly r(shape_);
    int zi = shape_.z_index();
    for (const auto& [e, c] : terms_) {
        if (e[zi] != m) continue;
        Exponents d = e;
        d[zi] = 0;
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

MPoly MPoly::filter(const std::function<bool(const Exponents&)>& keep) const {
    MPoly r(shape_);
    for (const auto& [e, c] : terms_)
        if (keep(e)) r.terms_.emplace_hint(r.terms_.end(), e, c);
    return r;
}

bool MPoly::depends_on_x() const {
    for (const auto& [e, c] : terms_)
        for (int k = 0; k < shape_.nx; ++k)
            if (e[k] != 0) return true;
    return false;
}

bool MPoly::depends_on_s() const {
    for (const auto& [e, c] : terms_)
        if (s_degree_of(e, shape_) != 0) return true;
    return false;
}

bool MPoly::depends_on_z() const {
    for (const auto& [e, c] : terms_)
        if (e[shape_.z_index()] != 0) return true;
    return false;
}

int MPoly::s_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, s_degree_of(e, shape_));
    return d;
}

std::optional<int> MPoly::min_z() const {
    std::optional<int> m;
    for (const auto& [e, c] : terms_) {
        int v = e[shape_.z_index()];
        if (!m || v < *m) m = v;
    }
    return m;
}

std::optional<int> MPoly::max_z() const {
    std::optional<int> m;
    for (const auto& [e, c] : terms_) {
        int v = e[shape_.z_index()];
        if (!m || v > *m) m = v;
    }
    return m;
}

MPoly MPoly::eval_s(const std::vector<Rational>& values) const {
    if (static_cast<int>(values.size()) != shape_.ns) throw std::invalid_argument("point has wrong length");
    Shape out{shape_.nx, 0};
    MPoly r(out);
    Exponents d(out.size());
    for (const auto& [e, c] : terms_) {
        Rational v = c;
        for (int a = 0; a < shape_.ns && v != 0; ++a) {
            int p = e[shape_.nx + a];
            if (p) v *= rational_pow(values[a], p);
        }
        for (int k = 0; k < shape_.nx; ++k) d[k] = e[k];
        d[out.z_index()] = e[shape_.z_index()];
        r.add_term(d, v);
    }
    return r;
}

MPoly MPoly::widen(Shape target) const {
    if (target.nx < shape_.nx || target.ns < shape_.ns) throw std::invalid_argument("cannot narrow shape");
    MPoly r(target);
    for (const auto& [e, c] : terms_) {
        Exponents d(target.size(), 0);
        for (int k = 0; k < shape_.nx; ++k) d[k] = e[k];
        for (int a = 0; a < shape_.ns; ++a) d[target.nx + a] = e[shape_.nx + a];
        d[target.z_index()] = e[shape_.z_index()];
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

MPoly MPoly::drop_x() const {
    Shape out{0, shape_.ns};
    MPoly r(out);
    for (const auto& [e, c] : terms_) {
        for (int k = 0; k < shape_.nx; ++k)
            if (e[k] != 0) throw std::invalid_argument("drop_x on x-dependent polynomial");
        r.terms_.emplace(Exponents(e.begin() + shape_.nx, e.end()), c);
    }
    return r;
}

std::vector<std::string> default_s_names(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("s" + std::to_string(i));
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    Parser(std::string_view text, const Names& names) : text_(text), names_(names), shape_(names.shape()) {}

    MPoly parse() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        MPoly r = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return r;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MPoly expr() {
        MPoly r(shape_);
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        MPoly t = term();
        r = neg ? -t : t;
        for (;;) {
            if (accept('+'))
                r += term();
            else if (accept('-'))
                r -= term();
            else
                break;
        }
        return r;
    }

    MPoly term() {
        MPoly r = unary();
        for (;;) {
            if (accept('*')) {
                r = r * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                MPoly d = unary();
                if (d.size() != 1 || d.terms().begin()->first != Exponents(shape_.size(), 0))
                    throw ParseError("division by a non-constant", at);
                r *= 1 / d.terms().begin()->second;
            } else {
                break;
            }
        }
        return r;
    }

    MPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MPoly power() {
        MPoly base = primary();
        if (!accept('^')) return base;
        skip_ws();
        std::size_t at = pos_;
        bool neg = false;
        if (accept('-')) neg = true;
        skip_ws();
        long n = integer();
        if (!neg) return base.pow(static_cast<unsigned>(n));
        if (base.size() != 1) throw ParseError("negative exponent needs a z-monomial base", at);
        const auto& [e, c] = *base.terms().begin();
        for (int i = 0; i < shape_.z_index(); ++i)
            if (e[i] != 0) throw ParseError("negative exponent allowed only on z", at);
        Exponents d = e;
        d[shape_.z_index()] = -e[shape_.z_index()] * static_cast<int>(n);
        return MPoly::monomial(shape_, d, rational_pow(c, -n));
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", start);
        if (pos_ - start > 9) throw ParseError("exponent too large", start);
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    MPoly primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly r = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            mpz_class n(std::string(text_.substr(start, pos_ - start)));
            return MPoly::constant(shape_, Rational(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string id(text_.substr(start, pos_ - start));
            for (int k = 0; k < shape_.nx; ++k)
                if (names_.x[k] == id) return MPoly::x(shape_, k);
            for (int a = 0; a < shape_.ns; ++a)
                if (names_.s[a] == id) return MPoly::s(shape_, a);
            if (id == names_.z) return MPoly::z(shape_);
            throw ParseError("unknown variable '" + id + "'", start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view text_;
    const Names& names_;
    Shape shape_;
    std::size_t pos_ = 0;
};

std::string monomial_string(const Exponents& e, const Names& names, Shape shape) {
    std::string out;
    auto emit = [&](const std::string& name, int p) {
        if (p == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (p != 1) out += "^" + std::to_string(p);
    };
    for (int k = 0; k < shape.nx; ++k) emit(names.x.at(k), e[k]);
    for (int a = 0; a < shape.ns; ++a) emit(names.s.at(a), e[shape.nx + a]);
    emit(names.z, e[shape.z_index()]);
    return out;
}

}  // namespace

MPoly parse_poly(std::string_view text, const Names& names) { return Parser(text, names).parse(); }

std::string to_string(const MPoly& p, const Names& names) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        std::string mono = monomial_string(e, names, p.shape());
        Rational a = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (mono.empty()) {
            out << to_string(a);
        } else if (a == 1) {
            out << mono;
        } else if (is_integer(a)) {
            out << to_string(a) << "*" << mono;
        } else {
            out << "(" << to_string(a) << ")*" << mono;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Weights and truncation

Rational WeightSystem::weight_of(const Exponents& e, Shape shape) const {
    Rational w = 0;
    for (int k = 0; k < shape.nx; ++k)
        if (e[k]) w += q.at(k) * e[k];
    for (int a = 0; a < shape.ns; ++a)
        if (e[shape.nx + a]) w += s.at(a) * e[shape.nx + a];
    w += z * e[shape.z_index()];
    return w;
}

std::optional<Rational> wt(const MPoly& p, const WeightSystem& W) {
    if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no weight");
    std::optional<Rational> w;
    for (const auto& [e, c] : p.terms()) {
        Rational v = W.weight_of(e, p.shape());
        if (!w)
            w = v;
        else if (*w != v)
            return std::nullopt;
    }
    return w;
}

int s_degree_of(const Exponents& e, Shape shape) {
    int d = 0;
    for (int a = 0; a < shape.ns; ++a) d += e[shape.nx + a];
    return d;
}

MPoly truncate(const MPoly& p, const STruncation& T, bool* truncated) {
    if (!T.max_total_s_degree) return p;
    Shape sh = p.shape();
    MPoly r = p.filter([&](const Exponents& e) { return T.keeps(s_degree_of(e, sh)); });
    if (truncated && r.size() != p.size()) *truncated = true;
    return r;
}

std::vector<MPoly> partials(const MPoly& f) {
    if (f.depends_on_s() || f.depends_on_z()) throw std::invalid_argument("partials: f must depend on x only");
    std::vector<MPoly> out;
    for (int k = 0; k < f.shape().nx; ++k) out.push_back(f.d_dx(k));
    return out;
}

MPoly determinant(const std::vector<std::vector<MPoly>>& m, Shape shape) {
    std::size_t n = m.size();
    if (n == 0) return MPoly::constant(shape, 1);
    if (n == 1) return m[0][0];
    MPoly r(shape);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<MPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<MPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        MPoly t = m[0][j] * determinant(minor, shape);
        if (j % 2)
            r -= t;
        else
            r += t;
    }
    return r;
}

MPoly hessian(const MPoly& f) {
    auto d = partials(f);
    std::size_t n = d.size();
    std::vector<std::vector<MPoly>> h(n, std::vector<MPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i][j] = d[i].d_dx(static_cast<int>(j));
    return determinant(h, f.shape());
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    if (a.shape() != b.shape()) throw std::invalid_argument("division of polynomials of different shapes");
    const auto& [lb, cb] = *b.terms().begin();
    MPoly q(a.shape()), r = a;
    while (!r.is_zero()) {
        const auto& [lr, cr] = *r.terms().begin();
        Exponents e(lr.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = lr[i] - lb[i];
            if (e[i] < 0 && static_cast<int>(i) != a.shape().z_index()) return std::nullopt;
        }
        MPoly t = MPoly::monomial(a.shape(), e, cr / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

}  // namespace saito

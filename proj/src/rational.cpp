#include "saito/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace saito {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool valid_integer(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out(s.substr(b, e - b));
    if (!out.empty() && out[0] == '+') out.erase(0, 1);
    return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string t = strip(text);
    auto slash = t.find('/');
    std::string num = slash == std::string::npos ? t : strip(t.substr(0, slash));
    std::string den = slash == std::string::npos ? "1" : strip(t.substr(slash + 1));
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long floor_to_long(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!r.fits_slong_p()) throw std::overflow_error("rational floor out of range");
    return r.get_si();
}

long ceil_to_long(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!r.fits_slong_p()) throw std::overflow_error("rational ceil out of range");
    return r.get_si();
}

Rational rational_pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        Rational inv = 1 / base;
        return rational_pow(inv, -exponent);
    }
    Rational r = 1, b = base;
    while (exponent > 0) {
        if (exponent & 1) r *= b;
        b *= b;
        exponent >>= 1;
    }
    return r;
}

Rational frac(long a, long b) {
    if (b == 0) throw std::domain_error("zero denominator");
    Rational q(a, b);
    q.canonicalize();
    return q;
}

}  // namespace saito

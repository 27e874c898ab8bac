#include "saito/brieskorn.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "saito/errors.hpp"

namespace saito {

namespace {

constexpr int kMaxRounds = 1000000;

XExp add(const XExp& a, const XExp& b) {
    XExp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Grouped truncate_grouped(Grouped g, const STruncation& T, bool* truncated) {
    if (!T.max_total_s_degree) return g;
    for (auto it = g.begin(); it != g.end();) {
        it->second = truncate(it->second, T, truncated);
        it = it->second.is_zero() ? g.erase(it) : std::next(it);
    }
    return g;
}

// g with its s-slots widened to ns (x count unchanged).
MPoly widen_s(const MPoly& g, int ns) {
    if (g.shape().ns == ns) return g;
    if (g.shape().ns > ns) {
        if (g.depends_on_s()) throw std::invalid_argument("polynomial has more s-variables than the unfolding");
        MPoly r(Shape{g.shape().nx, ns});
        for (const auto& [e, c] : g.terms()) {
            Exponents d(r.shape().size(), 0);
            for (int k = 0; k < g.shape().nx; ++k) d[k] = e[k];
            d[r.shape().z_index()] = e[g.shape().z_index()];
            r.add_term(d, c);
        }
        return r;
    }
    return g.widen(Shape{g.shape().nx, ns});
}

std::vector<MPoly> coeffs_at_z(const std::vector<MPoly>& cs, int m) {
    std::vector<MPoly> out;
    for (const auto& c : cs) out.push_back(c.z_coefficient(m));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// LatticeElement

LatticeElement LatticeElement::zero(int mu, int ns) {
    LatticeElement e;
    e.coeffs.assign(mu, MPoly(Shape{0, ns}));
    return e;
}

LatticeElement LatticeElement::unit(int mu, int ns, int alpha) {
    LatticeElement e = zero(mu, ns);
    e.coeffs.at(alpha) = MPoly::constant(Shape{0, ns}, 1);
    return e;
}

bool LatticeElement::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

LatticeElement& LatticeElement::operator+=(const LatticeElement& o) {
    if (o.mu() != mu()) throw std::invalid_argument("lattice elements of different rank");
    for (int a = 0; a < mu(); ++a) coeffs[a] += o.coeffs[a];
    truncated = truncated || o.truncated;
    z_floor = std::min(z_floor, o.z_floor);
    return *this;
}

LatticeElement& LatticeElement::operator-=(const LatticeElement& o) {
    if (o.mu() != mu()) throw std::invalid_argument("lattice elements of different rank");
    for (int a = 0; a < mu(); ++a) coeffs[a] -= o.coeffs[a];
    truncated = truncated || o.truncated;
    z_floor = std::min(z_floor, o.z_floor);
    return *this;
}

LatticeElement LatticeElement::operator*(const Rational& c) const {
    LatticeElement r = *this;
    for (auto& v : r.coeffs) v *= c;
    return r;
}

LatticeElement LatticeElement::mul_z(int m) const {
    LatticeElement r = *this;
    for (auto& v : r.coeffs) v = v.mul_z(m);
    r.z_floor += m;
    return r;
}

LatticeElement LatticeElement::filter(const std::function<bool(const Exponents&)>& keep) const {
    LatticeElement r = *this;
    for (auto& v : r.coeffs) v = v.filter(keep);
    return r;
}

LatticeElement LatticeElement::pi_positive() const {
    LatticeElement r = filter([](const Exponents& e) { return e.back() > 0; });
    r.z_floor = std::max(z_floor, 1);
    return r;
}

LatticeElement LatticeElement::pi_nonpositive() const {
    return filter([](const Exponents& e) { return e.back() <= 0; });
}

std::vector<MPoly> LatticeElement::z_part(int m) const { return coeffs_at_z(coeffs, m); }

std::optional<int> LatticeElement::min_z() const {
    std::optional<int> m;
    for (const auto& c : coeffs)
        if (auto v = c.min_z(); v && (!m || *v < *m)) m = v;
    return m;
}

std::optional<int> LatticeElement::max_z() const {
    std::optional<int> m;
    for (const auto& c : coeffs)
        if (auto v = c.max_z(); v && (!m || *v > *m)) m = v;
    return m;
}

LatticeElement LatticeElement::eval_s(const std::vector<Rational>& point) const {
    LatticeElement r = *this;
    for (auto& v : r.coeffs) v = v.eval_s(point);
    return r;
}

LatticeElement LatticeElement::widen_s(int ns) const {
    LatticeElement r = *this;
    for (auto& v : r.coeffs) v = saito::widen_s(v, ns);
    return r;
}

std::string to_string(const LatticeElement& e, const JacobianData& J) {
    Names cn;
    cn.s = J.names.s;
    Names xn;
    xn.x = J.names.x;
    std::ostringstream out;
    bool first = true;
    for (int a = 0; a < e.mu(); ++a) {
        if (e.coeffs[a].is_zero()) continue;
        std::string c = to_string(e.coeffs[a], cn);
        std::string basis = "[" + to_string(J.milnor_basis[a], xn) + "]";
        bool neg = false;
        if (e.coeffs[a].size() == 1 && c[0] == '-') {
            neg = true;
            c.erase(0, 1);
        }
        if (e.coeffs[a].size() > 1) c = "(" + c + ")";
        std::string term = c == "1" ? basis : c + "*" + basis;
        if (first)
            out << (neg ? "-" : "") << term;
        else
            out << (neg ? " - " : " + ") << term;
        first = false;
    }
    if (first) out << "0";
    if (e.truncated) out << " + O(s^" << (*e.s_truncation.max_total_s_degree + 1) << ")";
    return out.str();
}

MPoly lattice_representative(const JacobianData& J, const LatticeElement& e) {
    Shape sh{J.N, e.ns()};
    MPoly r(sh);
    for (int a = 0; a < e.mu(); ++a)
        if (!e.coeffs[a].is_zero()) r += e.coeffs[a].widen(sh) * J.milnor_basis[a].widen(sh);
    return r;
}

// ---------------------------------------------------------------------------
// Rewriting reduction

Reducer::Reducer(const JacobianData& J, RewriteOptions opts) : J_(&J), opts_(std::move(opts)) {
    if (opts_.deformation) {
        for (int k = 0; k < J.N; ++k) ddef_.push_back(group_by_x(opts_.deformation->d_dx(k)));
    }
}

LatticeElement Reducer::reduce(const MPoly& g_in) const {
    const JacobianData& J = *J_;
    if (g_in.shape().nx != J.N) throw std::invalid_argument("lattice reduction: wrong number of x-variables");
    MPoly g = opts_.deformation ? widen_s(g_in, opts_.deformation->shape().ns) : g_in;
    Shape cs{0, g.shape().ns};
    LatticeElement out = LatticeElement::zero(J.mu, cs.ns);
    out.s_truncation = opts_.truncation;
    out.z_floor = std::min(0, g.min_z().value_or(0));
    bool cut = false;
    Grouped work = truncate_grouped(group_by_x(g), opts_.truncation, &cut);
    int rounds = 0;
    while (!work.empty()) {
        if (++rounds > kMaxRounds) throw std::logic_error("lattice reduction did not terminate");
        auto red = reduce_grouped(J, std::move(work), true, cs);
        for (int a = 0; a < J.mu; ++a) out.coeffs[a] += red.coeffs[a];
        Grouped next;
        for (int k = 0; k < J.N; ++k) {
            const Grouped& h = red.cofactors[k];
            if (h.empty()) continue;
            if (opts_.z_branch) {
                for (const auto& [m, c] : h) {
                    if (m[k] == 0) continue;
                    XExp d = m;
                    --d[k];
                    grouped_add(next, d, c.mul_z(1) * Rational(-m[k]));
                }
            }
            if (opts_.deformation) {
                for (const auto& [m1, c1] : ddef_[k])
                    for (const auto& [m2, c2] : h) {
                        MPoly t = truncate(c1 * c2, opts_.truncation, &cut);
                        grouped_add(next, add(m1, m2), -t);
                    }
            }
        }
        work = std::move(next);
    }
    out.truncated = cut;
    return out;
}

MPoly unfolding_deformation(const JacobianData& J) {
    Shape sh = J.xs_shape();
    MPoly r(sh);
    for (int a = 0; a < J.mu; ++a) r += MPoly::s(sh, a) * J.milnor_basis[a].widen(sh);
    return r;
}

MPoly point_deformation(const JacobianData& J, const std::vector<Rational>& s0) {
    if (static_cast<int>(s0.size()) != J.mu) throw std::invalid_argument("point has the wrong number of coordinates");
    MPoly r(J.x_shape());
    for (int a = 0; a < J.mu; ++a) {
        if (s0[a] == 0) continue;
        if (J.W.s[a] <= 0)
            throw PreconditionError("unbounded reduction",
                                    "point moves along " + J.names.s[a] + " whose weight is not positive");
        r += J.milnor_basis[a] * s0[a];
    }
    return r;
}

LatticeElement lattice_reduce(const JacobianData& J, const MPoly& g) {
    return Reducer(J, RewriteOptions{true, std::nullopt, STruncation::unbounded()}).reduce(g);
}

namespace {

void require_cap(const JacobianData& J, const STruncation& T) {
    if (T.max_total_s_degree) return;
    for (const auto& w : J.W.s)
        if (w <= 0) throw TruncationExhausted("an s-degree cap is required when some s-weight is not positive");
}

LatticeElement finish(LatticeElement e, TruncationPolicy policy) {
    if (e.truncated && policy == TruncationPolicy::Throw)
        throw TruncationExhausted("nonzero terms beyond s-degree " + std::to_string(*e.s_truncation.max_total_s_degree));
    return e;
}

}  // namespace

LatticeElement lattice_reduce_unfolding(const JacobianData& J, const MPoly& g, const STruncation& T,
                                        TruncationPolicy policy) {
    require_cap(J, T);
    Reducer r(J, RewriteOptions{true, unfolding_deformation(J), T});
    return finish(r.reduce(g), policy);
}

LatticeElement quotient_normal_form(const JacobianData& J, const MPoly& g, const STruncation& T,
                                    TruncationPolicy policy) {
    require_cap(J, T);
    Reducer r(J, RewriteOptions{false, unfolding_deformation(J), T});
    return finish(r.reduce(g), policy);
}

LatticeElement lattice_reduce_at_point(const JacobianData& J, const std::vector<Rational>& s0, const MPoly& g) {
    Reducer r(J, RewriteOptions{true, point_deformation(J, s0), STruncation::unbounded()});
    return r.reduce(widen_s(g, 0));
}

QVector quotient_class_at_point(const JacobianData& J, const std::vector<Rational>& s0, const MPoly& g) {
    if (g.depends_on_z()) throw std::invalid_argument("quotient class of a z-dependent polynomial");
    Reducer r(J, RewriteOptions{false, point_deformation(J, s0), STruncation::unbounded()});
    auto e = r.reduce(widen_s(g, 0));
    QVector v(J.mu);
    for (int a = 0; a < J.mu; ++a) v[a] = e.coeffs[a].constant_term();
    return v;
}

// ---------------------------------------------------------------------------
// Trivialization

Shape Trivialization::shape() const { return Shape{J->N, mode == TrivializationMode::Unfolding ? J->mu : 0}; }

std::vector<MPoly> Trivialization::partial_derivatives() const {
    Shape sh = shape();
    std::vector<MPoly> out;
    MPoly def = mode == TrivializationMode::Unfolding ? unfolding_deformation(*J) : MPoly(sh);
    for (int k = 0; k < J->N; ++k) out.push_back(J->df[k].widen(sh) + (def.is_zero() ? MPoly(sh) : def.d_dx(k)));
    return out;
}

Decomposition trivialization_decompose(const Trivialization& T, const MPoly& g_in) {
    if (T.mode == TrivializationMode::CentralFiber) return regseq_decompose(*T.J, g_in);
    const JacobianData& J = *T.J;
    if (g_in.depends_on_z()) throw std::invalid_argument("decomposition of a z-dependent polynomial");
    require_cap(J, T.truncation);
    MPoly g = widen_s(g_in, J.mu);
    Shape cs{0, J.mu};
    std::vector<Grouped> ddef;
    MPoly def = unfolding_deformation(J);
    for (int k = 0; k < J.N; ++k) ddef.push_back(group_by_x(def.d_dx(k)));

    Decomposition D;
    bool cut = false;
    std::map<std::vector<int>, Grouped> level;
    if (!g.is_zero()) level[std::vector<int>(J.N, 0)] = truncate_grouped(group_by_x(g), T.truncation, &cut);
    while (!level.empty()) {
        std::map<std::vector<int>, Grouped> next;
        for (auto& [p, start] : level) {
            // Quotient normal form by dF/dx with accumulated cofactors.
            std::vector<Grouped> H(J.N);
            Grouped work = std::move(start);
            int rounds = 0;
            while (!work.empty()) {
                if (++rounds > kMaxRounds) throw std::logic_error("decomposition did not terminate");
                auto red = reduce_grouped(J, std::move(work), true, cs);
                for (int a = 0; a < J.mu; ++a) {
                    if (red.coeffs[a].is_zero()) continue;
                    auto it = D.try_emplace(DecompKey{p, a}, MPoly(cs)).first;
                    it->second += red.coeffs[a];
                    if (it->second.is_zero()) D.erase(it);
                }
                Grouped nw;
                for (int k = 0; k < J.N; ++k) {
                    for (const auto& [m, c] : red.cofactors[k]) grouped_add(H[k], m, c);
                    for (const auto& [m1, c1] : ddef[k])
                        for (const auto& [m2, c2] : red.cofactors[k])
                            grouped_add(nw, add(m1, m2), -truncate(c1 * c2, T.truncation, &cut));
                }
                work = std::move(nw);
            }
            for (int k = 0; k < J.N; ++k) {
                if (H[k].empty()) continue;
                auto q = p;
                ++q[k];
                Grouped& dst = next[q];
                for (const auto& [m, c] : H[k]) grouped_add(dst, m, c);
            }
        }
        for (auto it = next.begin(); it != next.end();) it = it->second.empty() ? next.erase(it) : std::next(it);
        level = std::move(next);
    }
    return D;
}

MPoly phi_top_apply(const Trivialization& T, const MPoly& g) {
    if (g.depends_on_z()) throw std::invalid_argument("phi_top_apply: z-free input required");
    bool unf = T.mode == TrivializationMode::Unfolding;
    return phi_top_apply(T, trivialization_decompose(T, g), unf ? T.shape() : g.shape());
}

MPoly phi_top_apply(const Trivialization& T, const Decomposition& D, Shape sh) {
    const JacobianData& J = *T.J;
    bool unf = T.mode == TrivializationMode::Unfolding;
    std::vector<MPoly> dF;
    for (const auto& d : T.partial_derivatives()) dF.push_back(widen_s(d, sh.ns));
    STruncation trunc = unf ? T.truncation : STruncation::unbounded();

    std::map<DecompKey, MPoly> memo;
    std::function<const MPoly&(const DecompKey&)> value = [&](const DecompKey& key) -> const MPoly& {
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        MPoly v(sh);
        int k = 0;
        while (k < J.N && key.p[k] == 0) ++k;
        if (k == J.N) {
            v = J.milnor_basis[key.alpha].widen(sh);
        } else {
            DecompKey prev = key;
            --prev.p[k];
            const MPoly& u = value(prev);
            v = truncate(dF[k] * u, trunc) + u.d_dx(k).mul_z(1);
        }
        return memo.emplace(key, std::move(v)).first->second;
    };
    MPoly out(sh);
    for (const auto& [key, c] : D) out += truncate(c.widen(sh) * value(key), trunc);
    return out;
}

MPoly phi_top_inverse_series(const Trivialization& T, const MPoly& g) {
    bool unf = T.mode == TrivializationMode::Unfolding;
    MPoly term = unf ? truncate(widen_s(g, T.J->mu), T.truncation) : g;
    MPoly acc(term.shape());
    int rounds = 0;
    while (!term.is_zero()) {
        if (++rounds > 10000) throw std::logic_error("inverse series did not terminate");
        acc += term;
        MPoly next(term.shape());
        for (int j = *term.min_z(); j <= *term.max_z(); ++j) {
            MPoly u = term.z_coefficient(j);
            if (u.is_zero()) continue;
            next -= (phi_top_apply(T, u) - u).mul_z(j);
        }
        term = std::move(next);
    }
    return acc;
}

LatticeElement lattice_reduce_by_series(const Trivialization& T, const MPoly& g) {
    const JacobianData& J = *T.J;
    bool unf = T.mode == TrivializationMode::Unfolding;
    MPoly u = phi_top_inverse_series(T, g);
    RewriteOptions opts{false, std::nullopt, STruncation::unbounded()};
    if (unf) {
        opts.deformation = unfolding_deformation(J);
        opts.truncation = T.truncation;
    }
    Reducer classwise(J, opts);
    LatticeElement out = LatticeElement::zero(J.mu, u.shape().ns);
    out.s_truncation = opts.truncation;
    if (u.is_zero()) return out;
    for (int j = *u.min_z(); j <= *u.max_z(); ++j) {
        MPoly c = u.z_coefficient(j);
        if (c.is_zero()) continue;
        out += classwise.reduce(c).mul_z(j);
    }
    out.z_floor = std::min(0, *u.min_z());
    return out;
}

bool trivialization_identity_check(const Trivialization& T, const MPoly& g, int k) {
    bool unf = T.mode == TrivializationMode::Unfolding;
    STruncation trunc = unf ? T.truncation : STruncation::unbounded();
    Shape sh = unf ? T.shape() : g.shape();
    MPoly gw = widen_s(g, sh.ns);
    MPoly dFk = widen_s(T.partial_derivatives().at(k), sh.ns);
    MPoly lhs = phi_top_apply(T, truncate(dFk * gw, trunc));
    MPoly pg = phi_top_apply(T, gw);
    MPoly rhs = truncate(dFk * pg, trunc) + pg.d_dx(k).mul_z(1);
    return truncate(lhs, trunc) == truncate(rhs, trunc);
}

std::optional<Rational> lattice_weight(const JacobianData& J, const LatticeElement& e) {
    std::optional<Rational> w;
    for (int a = 0; a < e.mu(); ++a) {
        Shape sh = e.coeffs[a].shape();
        for (const auto& [ex, c] : e.coeffs[a].terms()) {
            Rational v = J.basis_weights[a] + ex[sh.z_index()];
            for (int b = 0; b < sh.ns; ++b) v += J.W.s.at(b) * ex[b];
            if (!w)
                w = v;
            else if (*w != v)
                return std::nullopt;
        }
    }
    return w;
}

GradingVerdict k_pairing_grading_check(const JacobianData& J, const LatticeElement& a, const LatticeElement& b, int p) {
    if (a.is_zero() || b.is_zero()) return GradingVerdict::ForcedZero;
    auto wa = lattice_weight(J, a), wb = lattice_weight(J, b);
    if (!wa || !wb) throw std::invalid_argument("grading check needs weight-homogeneous elements");
    return *wa + *wb == Rational(p) + J.d ? GradingVerdict::Vacuous : GradingVerdict::ForcedZero;
}

}  // namespace saito

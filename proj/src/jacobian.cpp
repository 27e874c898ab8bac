#include "saito/jacobian.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "saito/errors.hpp"

namespace saito {

namespace {

XExp x_part(const Exponents& e, int N) { return XExp(e.begin(), e.begin() + N); }

Exponents pad_x(const XExp& x, Shape shape) {
    Exponents e(shape.size(), 0);
    std::copy(x.begin(), x.end(), e.begin());
    return e;
}

bool divides(const XExp& a, const XExp& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

XExp sub(const XExp& a, const XExp& b) {
    XExp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

XExp add(const XExp& a, const XExp& b) {
    XExp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

MPoly restrict_to_x(const MPoly& f, int N) {
    Shape sh{N, 0};
    MPoly r(sh);
    for (const auto& [e, c] : f.terms()) r.add_term(pad_x(x_part(e, N), sh), c);
    return r;
}

// Full reduction used while building the ideal basis.
struct Tracked {
    MPoly poly;
    std::vector<MPoly> cof;
};

int first_divisor(const std::vector<IdealElement>& basis, const XExp& m) {
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (divides(basis[j].lead, m)) return static_cast<int>(j);
    return -1;
}

Tracked reduce_tracked(Tracked t, const std::vector<IdealElement>& basis, int N) {
    Shape sh{N, 0};
    MPoly rem(sh);
    while (!t.poly.is_zero()) {
        auto it = t.poly.terms().begin();
        XExp m = x_part(it->first, N);
        Rational c = it->second;
        int j = first_divisor(basis, m);
        if (j < 0) {
            rem.add_term(it->first, c);
            t.poly.add_term(it->first, -c);
            continue;
        }
        MPoly factor = MPoly::monomial(sh, pad_x(sub(m, basis[j].lead), sh), c / basis[j].lead_coeff);
        t.poly -= factor * basis[j].poly;
        for (int k = 0; k < N; ++k) t.cof[k] -= factor * basis[j].cofactors[k];
    }
    t.poly = rem;
    return t;
}

IdealElement make_element(MPoly poly, std::vector<MPoly> cof, int N) {
    IdealElement e;
    e.poly = std::move(poly);
    e.cofactors = std::move(cof);
    auto lt = e.poly.terms().begin();
    e.lead = x_part(lt->first, N);
    e.lead_coeff = lt->second;
    for (const auto& [ex, c] : e.poly.terms()) e.terms.emplace_back(x_part(ex, N), c);
    return e;
}

std::vector<IdealElement> buchberger(const std::vector<MPoly>& df, int N) {
    Shape sh{N, 0};
    std::vector<IdealElement> basis;
    auto add_element = [&](Tracked t) {
        t = reduce_tracked(std::move(t), basis, N);
        if (t.poly.is_zero()) return false;
        basis.push_back(make_element(std::move(t.poly), std::move(t.cof), N));
        return true;
    };
    for (int k = 0; k < N; ++k) {
        Tracked t{df[k], std::vector<MPoly>(N, MPoly(sh))};
        t.cof[k] = MPoly::constant(sh, 1);
        add_element(std::move(t));
    }
    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        const IdealElement& a = basis[i];
        const IdealElement& b = basis[j];
        XExp l(N);
        bool coprime = true;
        for (int k = 0; k < N; ++k) {
            l[k] = std::max(a.lead[k], b.lead[k]);
            if (a.lead[k] > 0 && b.lead[k] > 0) coprime = false;
        }
        if (coprime) continue;
        MPoly fa = MPoly::monomial(sh, pad_x(sub(l, a.lead), sh), 1 / a.lead_coeff);
        MPoly fb = MPoly::monomial(sh, pad_x(sub(l, b.lead), sh), 1 / b.lead_coeff);
        Tracked t{fa * a.poly - fb * b.poly, std::vector<MPoly>(N, MPoly(sh))};
        for (int k = 0; k < N; ++k) t.cof[k] = fa * a.cofactors[k] - fb * b.cofactors[k];
        std::size_t before = basis.size();
        if (add_element(std::move(t)))
            for (std::size_t m = 0; m < before; ++m) pairs.emplace_back(m, before);
    }
    // Drop elements whose leading monomial is divisible by an earlier one;
    // the first-divisor rule never selects them.
    std::vector<IdealElement> minimal;
    for (auto& e : basis) {
        bool redundant = false;
        for (const auto& m : minimal)
            if (divides(m.lead, e.lead)) redundant = true;
        if (!redundant) minimal.push_back(std::move(e));
    }
    return minimal;
}

bool reverse_lex_less(const XExp& a, const XExp& b) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace

void grouped_add(Grouped& g, const XExp& m, const MPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = g.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) g.erase(it);
    }
}

Grouped group_by_x(const MPoly& g) {
    Shape sh = g.shape();
    Shape cs{0, sh.ns};
    Grouped out;
    for (const auto& [e, c] : g.terms()) {
        XExp x = x_part(e, sh.nx);
        Exponents rest(e.begin() + sh.nx, e.end());
        auto it = out.try_emplace(std::move(x), MPoly(cs)).first;
        it->second.add_term(rest, c);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

MPoly ungroup(const Grouped& g, Shape shape) {
    MPoly r(shape);
    for (const auto& [x, coeff] : g) {
        for (const auto& [e, c] : coeff.terms()) {
            Exponents full(shape.size(), 0);
            std::copy(x.begin(), x.end(), full.begin());
            std::copy(e.begin(), e.end(), full.begin() + shape.nx);
            r.add_term(full, c);
        }
    }
    return r;
}

GroupedReduction reduce_grouped(const JacobianData& J, Grouped work, bool want_cofactors, Shape coeff_shape) {
    const auto& basis = J.ideal_basis;
    std::vector<Grouped> quot(basis.size());
    std::vector<MPoly> stair_coeffs(J.mu, MPoly(coeff_shape));
    while (!work.empty()) {
        auto it = work.begin();
        XExp m = it->first;
        MPoly c = std::move(it->second);
        work.erase(it);
        int j = first_divisor(basis, m);
        if (j < 0) {
            auto pos = std::find(J.staircase.begin(), J.staircase.end(), m);
            if (pos == J.staircase.end()) throw std::logic_error("normal form left a non-standard monomial");
            stair_coeffs[pos - J.staircase.begin()] += c;
            continue;
        }
        const IdealElement& el = basis[j];
        XExp shift = sub(m, el.lead);
        c *= 1 / el.lead_coeff;
        for (std::size_t t = 1; t < el.terms.size(); ++t) grouped_add(work, add(el.terms[t].first, shift), c * (-el.terms[t].second));
        if (want_cofactors) grouped_add(quot[j], shift, c);
    }
    GroupedReduction out;
    out.coeffs.assign(J.mu, MPoly(coeff_shape));
    for (int a = 0; a < J.mu; ++a)
        for (int i = 0; i < J.mu; ++i) {
            const Rational& t = J.staircase_to_basis(a, i);
            if (t != 0 && !stair_coeffs[i].is_zero()) out.coeffs[a] += stair_coeffs[i] * t;
        }
    if (want_cofactors) {
        out.cofactors.assign(J.N, Grouped{});
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (quot[j].empty()) continue;
            for (int k = 0; k < J.N; ++k) {
                for (const auto& [e, r] : basis[j].cofactors[k].terms()) {
                    XExp v = x_part(e, J.N);
                    for (const auto& [u, cp] : quot[j]) grouped_add(out.cofactors[k], add(u, v), cp * r);
                }
            }
        }
    }
    return out;
}

NormalForm normal_form(const JacobianData& J, const MPoly& g) {
    Shape sh = g.shape();
    if (sh.nx != J.N) throw std::invalid_argument("normal_form: wrong number of x-variables");
    auto red = reduce_grouped(J, group_by_x(g), true, Shape{0, sh.ns});
    NormalForm nf;
    nf.coeffs = std::move(red.coeffs);
    for (auto& h : red.cofactors) nf.cofactors.push_back(ungroup(h, sh));
    return nf;
}

QVector class_of(const JacobianData& J, const MPoly& g) {
    if (g.depends_on_s() || g.depends_on_z()) throw std::invalid_argument("class_of: x-only input required");
    auto red = reduce_grouped(J, group_by_x(g), false, Shape{0, g.shape().ns});
    QVector v(J.mu);
    for (int a = 0; a < J.mu; ++a) v[a] = red.coeffs[a].constant_term();
    return v;
}

MPoly representative(const JacobianData& J, const QVector& c) {
    MPoly r(J.x_shape());
    for (int a = 0; a < J.mu; ++a)
        if (c.at(a) != 0) r += J.milnor_basis[a] * c[a];
    return r;
}

QVector multiply_classes(const JacobianData& J, const QVector& a, const QVector& b) {
    return class_of(J, representative(J, a) * representative(J, b));
}

Rational residue_pairing(const JacobianData& J, const QVector& a, const QVector& b) {
    QVector ab = multiply_classes(J, a, b);
    return Rational(J.mu) * ab[J.top_index] / J.hess_class[J.top_index];
}

QMatrix gram_matrix(const JacobianData& J) {
    QMatrix G(J.mu, J.mu);
    for (int a = 0; a < J.mu; ++a)
        for (int b = a; b < J.mu; ++b) {
            QVector ea(J.mu), eb(J.mu);
            ea[a] = 1;
            eb[b] = 1;
            G(a, b) = G(b, a) = residue_pairing(J, ea, eb);
        }
    if (determinant(G) == 0) throw std::logic_error("degenerate pairing");
    return G;
}

JacobianData build_jacobian(const MPoly& f_in, const std::vector<Rational>& q, const std::vector<std::string>& x_names,
                            const std::optional<std::vector<MPoly>>& basis) {
    JacobianData J;
    J.N = static_cast<int>(x_names.size());
    if (J.N == 0) throw std::invalid_argument("no variables declared");
    if (static_cast<int>(q.size()) != J.N) throw std::invalid_argument("weights and variables differ in length");
    if (f_in.shape().nx != J.N) throw std::invalid_argument("f has the wrong number of x-variables");
    if (f_in.depends_on_s() || f_in.depends_on_z()) throw PreconditionError("not quasihomogeneous", "f must depend on x only");
    for (const auto& w : q)
        if (w <= 0 || w > Rational(1, 2)) throw PreconditionError("weights out of range", "each weight must lie in (0, 1/2]");
    J.f = restrict_to_x(f_in, J.N);
    J.W.q = q;
    J.names.x = x_names;
    if (J.f.is_zero()) throw PreconditionError("not quasihomogeneous", "f is zero");
    for (const auto& [e, c] : J.f.terms()) {
        Rational w = J.W.weight_of(e, J.f.shape());
        if (w != 1)
            throw PreconditionError("not quasihomogeneous", "term of weight " + to_string(w) + " (expected 1)");
    }
    J.df = partials(J.f);
    J.ideal_basis = buchberger(J.df, J.N);

    // The quotient is finite iff every variable has a pure power among the leading monomials.
    std::vector<int> bound(J.N, -1);
    for (const auto& el : J.ideal_basis) {
        int nonzero = 0, idx = -1;
        for (int k = 0; k < J.N; ++k)
            if (el.lead[k] > 0) {
                ++nonzero;
                idx = k;
            }
        if (nonzero == 1 && (bound[idx] < 0 || el.lead[idx] < bound[idx])) bound[idx] = el.lead[idx];
        if (nonzero == 0) throw PreconditionError("non-isolated singularity", "Jacobian ideal is the unit ideal");
    }
    for (int k = 0; k < J.N; ++k)
        if (bound[k] < 0) throw PreconditionError("non-isolated singularity", "the Jacobian quotient is infinite-dimensional");

    XExp cur(J.N, 0);
    for (;;) {
        bool standard = true;
        for (const auto& el : J.ideal_basis)
            if (divides(el.lead, cur)) standard = false;
        if (standard) J.staircase.push_back(cur);
        int k = 0;
        while (k < J.N) {
            if (++cur[k] < bound[k]) break;
            cur[k] = 0;
            ++k;
        }
        if (k == J.N) break;
    }
    std::sort(J.staircase.begin(), J.staircase.end(), reverse_lex_less);
    J.mu = static_cast<int>(J.staircase.size());
    J.staircase_to_basis = QMatrix::identity(J.mu);
    Shape xs = J.x_shape();
    for (const auto& m : J.staircase) J.milnor_basis.push_back(MPoly::monomial(xs, pad_x(m, xs), 1));

    if (basis) {
        if (static_cast<int>(basis->size()) != J.mu)
            throw std::invalid_argument("basis has " + std::to_string(basis->size()) + " entries, Milnor number is " +
                                        std::to_string(J.mu));
        std::vector<MPoly> user;
        for (const auto& b : *basis) {
            if (b.shape().nx != J.N || b.size() != 1 || b.depends_on_s() || b.depends_on_z() ||
                b.terms().begin()->second != 1)
                throw std::invalid_argument("basis entries must be monic x-monomials");
            user.push_back(restrict_to_x(b, J.N));
        }
        if (user[0] != MPoly::constant(xs, 1)) throw std::invalid_argument("the first basis element must be 1");
        QMatrix T(J.mu, J.mu);
        for (int a = 0; a < J.mu; ++a) T.set_column(a, class_of(J, user[a]));
        auto Ti = inverse(T);
        if (!Ti) throw std::invalid_argument("basis does not span the Jacobian algebra");
        J.staircase_to_basis = *Ti;
        J.milnor_basis = user;
    }

    for (const auto& phi : J.milnor_basis) J.basis_weights.push_back(*wt(phi, J.W));
    J.d = 0;
    for (const auto& w : q) J.d += 1 - 2 * w;
    J.hess = hessian(J.f);
    J.hess_class = class_of(J, J.hess);
    int top = -1;
    for (int a = 0; a < J.mu; ++a)
        if (J.basis_weights[a] == J.d) {
            if (top >= 0) throw std::logic_error("more than one basis element of top weight");
            top = a;
        }
    if (top < 0) throw std::logic_error("no basis element of top weight");
    for (int a = 0; a < J.mu; ++a)
        if ((a == top) != (J.hess_class[a] != 0)) throw std::logic_error("Hessian class not supported on the top direction");
    J.top_index = top;
    for (const auto& w : J.basis_weights) J.W.s.push_back(1 - w);
    J.names.s = default_s_names(J.mu);
    J.gram = gram_matrix(J);
    return J;
}

Decomposition regseq_decompose(const JacobianData& J, const MPoly& g) {
    if (g.depends_on_z()) throw std::invalid_argument("regseq_decompose: z-free input required");
    Shape sh = g.shape();
    Shape cs{0, sh.ns};
    Decomposition D;
    std::map<std::vector<int>, Grouped> level;
    if (!g.is_zero()) level[std::vector<int>(J.N, 0)] = group_by_x(g);
    while (!level.empty()) {
        std::map<std::vector<int>, Grouped> next;
        for (auto& [p, work] : level) {
            auto red = reduce_grouped(J, std::move(work), true, cs);
            for (int a = 0; a < J.mu; ++a) {
                if (red.coeffs[a].is_zero()) continue;
                auto it = D.try_emplace(DecompKey{p, a}, MPoly(cs)).first;
                it->second += red.coeffs[a];
                if (it->second.is_zero()) D.erase(it);
            }
            for (int k = 0; k < J.N; ++k) {
                if (red.cofactors[k].empty()) continue;
                auto q = p;
                ++q[k];
                Grouped& dst = next[q];
                for (auto& [m, c] : red.cofactors[k]) grouped_add(dst, m, c);
            }
        }
        for (auto it = next.begin(); it != next.end();) it = it->second.empty() ? next.erase(it) : std::next(it);
        level = std::move(next);
    }
    return D;
}

MPoly recompose(const JacobianData& J, const Decomposition& D, const std::vector<MPoly>& partial_derivs) {
    if (static_cast<int>(partial_derivs.size()) != J.N) throw std::invalid_argument("recompose: wrong partials");
    Shape sh = partial_derivs[0].shape();
    for (const auto& [key, c] : D) {
        if (c.shape().ns > sh.ns) sh.ns = c.shape().ns;
    }
    std::vector<std::vector<MPoly>> powers(J.N);
    auto power = [&](int k, int n) -> const MPoly& {
        auto& v = powers[k];
        if (v.empty()) v.push_back(MPoly::constant(sh, 1));
        while (static_cast<int>(v.size()) <= n) v.push_back(v.back() * partial_derivs[k].widen(sh));
        return v[n];
    };
    MPoly r(sh);
    for (const auto& [key, c] : D) {
        MPoly t = c.widen(sh) * J.milnor_basis[key.alpha].widen(sh);
        for (int k = 0; k < J.N; ++k)
            if (key.p[k]) t *= power(k, key.p[k]);
        r += t;
    }
    return r;
}

std::string to_string(const Decomposition& D, const JacobianData& J) {
    std::ostringstream out;
    bool first = true;
    Names cn;
    cn.s = J.names.s;
    for (const auto& [key, c] : D) {
        if (!first) out << " + ";
        first = false;
        out << "(" << to_string(c, cn) << ")";
        for (int k = 0; k < J.N; ++k)
            if (key.p[k]) out << "*(df/d" << J.names.x[k] << ")" << (key.p[k] > 1 ? "^" + std::to_string(key.p[k]) : "");
        out << "*phi" << key.alpha + 1;
    }
    if (first) out << "0";
    return out.str();
}

std::optional<QuotientAlgebra> quotient_algebra(const std::vector<MPoly>& gens, int N) {
    if (static_cast<int>(gens.size()) != N) throw std::invalid_argument("expected one generator per variable");
    QuotientAlgebra Q;
    Q.N = N;
    std::vector<MPoly> g;
    for (const auto& p : gens) {
        if (p.depends_on_s() || p.depends_on_z()) throw std::invalid_argument("generators must depend on x only");
        g.push_back(restrict_to_x(p, N));
    }
    Q.basis = buchberger(g, N);
    std::vector<int> bound(N, -1);
    for (const auto& el : Q.basis) {
        int nonzero = 0, idx = -1;
        for (int k = 0; k < N; ++k)
            if (el.lead[k] > 0) {
                ++nonzero;
                idx = k;
            }
        if (nonzero == 0) return Q;  // unit ideal
        if (nonzero == 1 && (bound[idx] < 0 || el.lead[idx] < bound[idx])) bound[idx] = el.lead[idx];
    }
    for (int k = 0; k < N; ++k)
        if (bound[k] < 0) return std::nullopt;
    XExp cur(N, 0);
    for (;;) {
        bool standard = true;
        for (const auto& el : Q.basis)
            if (divides(el.lead, cur)) standard = false;
        if (standard) Q.standard.push_back(cur);
        int k = 0;
        while (k < N) {
            if (++cur[k] < bound[k]) break;
            cur[k] = 0;
            ++k;
        }
        if (k == N) break;
    }
    return Q;
}

QVector QuotientAlgebra::coordinates(const MPoly& g) const {
    if (g.depends_on_s() || g.depends_on_z()) throw std::invalid_argument("quotient coordinates need an x-polynomial");
    Shape sh{N, 0};
    Tracked t{restrict_to_x(g, N), std::vector<MPoly>(N, MPoly(sh))};
    t = reduce_tracked(std::move(t), basis, N);
    QVector v(standard.size());
    for (const auto& [e, c] : t.poly.terms()) {
        auto it = std::find(standard.begin(), standard.end(), x_part(e, N));
        if (it == standard.end()) throw std::logic_error("normal form left a non-standard monomial");
        v[it - standard.begin()] = c;
    }
    return v;
}

}  // namespace saito

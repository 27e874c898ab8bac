#include "saito/frobenius.hpp"

#include <array>
#include <map>
#include <stdexcept>

#include "saito/errors.hpp"

namespace saito {

namespace {

Rational factorial(int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

int degree_of(const Exponents& e) {
    int d = 0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) d += e[i];
    return d;
}

// a * b keeping total degree <= bound (series in shape (0, n)).
MPoly mul_trunc(const MPoly& a, const MPoly& b, int bound) {
    MPoly r(a.shape());
    for (const auto& [ea, ca] : a.terms()) {
        int da = degree_of(ea);
        if (da > bound) continue;
        for (const auto& [eb, cb] : b.terms()) {
            if (da + degree_of(eb) > bound) continue;
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MPoly trunc(const MPoly& p, int bound) {
    return p.filter([bound](const Exponents& e) { return degree_of(e) <= bound; });
}

MPoly homogeneous_part(const MPoly& p, int n) {
    return p.filter([n](const Exponents& e) { return degree_of(e) == n; });
}

// Caches monomials in the substituted series.
class Composer {
public:
    Composer(const SeriesVector& subs, int bound) : subs_(subs), bound_(bound) {}

    MPoly operator()(const MPoly& G) {
        Shape sh = subs_.empty() ? Shape{0, 0} : subs_[0].shape();
        MPoly out(sh);
        for (const auto& [e, c] : G.terms()) {
            if (degree_of(e) > bound_) continue;
            out += value(e) * c;
        }
        return out;
    }

private:
    const MPoly& value(const Exponents& e) {
        auto it = cache_.find(e);
        if (it != cache_.end()) return it->second;
        Shape sh = subs_[0].shape();
        MPoly v(sh);
        std::size_t k = 0;
        while (k + 1 < e.size() && e[k] == 0) ++k;
        if (k + 1 == e.size()) {
            v = MPoly::constant(sh, 1);
        } else {
            Exponents prev = e;
            --prev[k];
            v = mul_trunc(value(prev), subs_[k], bound_);
        }
        return cache_.emplace(e, std::move(v)).first->second;
    }

    const SeriesVector& subs_;
    int bound_;
    std::map<Exponents, MPoly> cache_;
};

QMatrix inverse_or_throw(const QMatrix& m) {
    auto inv = inverse(m);
    if (!inv) throw std::logic_error("degenerate pairing");
    return *inv;
}

}  // namespace

MPoly compose(const MPoly& G, const SeriesVector& subs, int bound) {
    Composer c(subs, bound);
    return c(G);
}

SeriesMatrix period_map(const GoodBasis& GB, const PrimitiveFormSeries& zeta, int P) {
    const JacobianData& J = *GB.J;
    if (zeta.order() < P + 1) throw std::invalid_argument("period map needs the primitive form to order P + 1");
    const int mu = J.mu;
    Shape xs = J.xs_shape();
    LatticeElement total = LatticeElement::zero(mu, mu);
    for (int q = 0; q <= P + 1; ++q) total += zeta.components[q];
    MPoly rep = lattice_representative(J, apply(GB.M, total));
    MPoly dF = unfolding_deformation(J);
    std::vector<MPoly> powers{MPoly::constant(xs, 1)};
    for (int a = 1; a <= P + 1; ++a) powers.push_back(truncate(powers.back() * dF, STruncation::bound(P + 1)));

    SeriesMatrix psi(mu, SeriesVector(mu));
    for (int alpha = 0; alpha < mu; ++alpha) {
        MPoly G = J.milnor_basis[alpha].widen(xs) * rep + rep.d_ds(alpha).mul_z(1);
        MPoly S(xs);
        for (int a = 0; a <= P + 1; ++a)
            S += truncate(powers[a] * G, STruncation::bound(P)).mul_z(-a) * (Rational(1) / factorial(a));
        auto z0 = phi_omega_inverse(GB, S).z_part(0);
        for (int beta = 0; beta < mu; ++beta) psi[alpha][beta] = trunc(z0[beta], P);
    }
    return psi;
}

bool period_map_integrable(const SeriesMatrix& psi, int P) {
    int mu = static_cast<int>(psi.size());
    for (int a = 0; a < mu; ++a)
        for (int g = a + 1; g < mu; ++g)
            for (int b = 0; b < mu; ++b)
                if (trunc(psi[a][b].d_ds(g), P - 1) != trunc(psi[g][b].d_ds(a), P - 1)) return false;
    return true;
}

FlatCoordinates flat_coordinates(const SeriesMatrix& psi, int P) {
    if (!period_map_integrable(psi, P)) throw std::logic_error("period map is not integrable");
    int mu = static_cast<int>(psi.size());
    Shape sh{0, mu};
    FlatCoordinates out;
    for (int b = 0; b < mu; ++b) {
        MPoly t(sh);
        for (int n = 1; n <= P + 1; ++n)
            for (int a = 0; a < mu; ++a)
                t += MPoly::s(sh, a) * homogeneous_part(psi[a][b], n - 1) * Rational(1, n);
        out.t_of_s.push_back(std::move(t));
    }
    // s = t - h(s) with h(s) = t(s) - s, iterated to a fixed point.
    SeriesVector h;
    for (int b = 0; b < mu; ++b) h.push_back(out.t_of_s[b] - MPoly::s(sh, b));
    SeriesVector s;
    for (int b = 0; b < mu; ++b) s.push_back(MPoly::s(sh, b));
    for (int it = 0; it <= P + 1; ++it) {
        Composer comp(s, P + 1);
        SeriesVector next;
        for (int b = 0; b < mu; ++b) next.push_back(MPoly::s(sh, b) - comp(h[b]));
        s = std::move(next);
    }
    out.s_of_t = std::move(s);
    return out;
}

StructureConstants structure_constants(const GoodBasis& GB, const SeriesMatrix& psi, const FlatCoordinates& flat,
                                       int P) {
    const JacobianData& J = *GB.J;
    const int mu = J.mu;
    Shape sh{0, mu};
    const QMatrix& eta = GB.eta;

    // Y[a][b][k](s) = eta(Psi(phi_a phi_b), e_k) with the product taken in Jac(F).
    std::vector<std::vector<SeriesVector>> Y(mu, std::vector<SeriesVector>(mu));
    Composer to_t(flat.s_of_t, P);
    for (int a = 0; a < mu; ++a)
        for (int b = a; b < mu; ++b) {
            MPoly prod = (J.milnor_basis[a] * J.milnor_basis[b]).widen(J.xs_shape());
            auto C = quotient_normal_form(J, prod, STruncation::bound(P), TruncationPolicy::Report);
            SeriesVector X(mu, MPoly(sh));
            for (int g = 0; g < mu; ++g) {
                if (C.coeffs[g].is_zero()) continue;
                for (int l = 0; l < mu; ++l) X[l] += mul_trunc(C.coeffs[g], psi[g][l], P);
            }
            SeriesVector row(mu, MPoly(sh));
            for (int k = 0; k < mu; ++k) {
                for (int l = 0; l < mu; ++l)
                    if (eta(l, k) != 0) row[k] += X[l] * eta(l, k);
                row[k] = to_t(row[k]);
            }
            Y[a][b] = row;
            Y[b][a] = std::move(row);
        }
    // S[i][a] = d s_a / d t_i
    SeriesMatrix S(mu, SeriesVector(mu));
    for (int i = 0; i < mu; ++i)
        for (int a = 0; a < mu; ++a) S[i][a] = trunc(flat.s_of_t[a].d_ds(i), P);

    std::vector<std::vector<SeriesVector>> Z(mu, std::vector<SeriesVector>(mu, SeriesVector(mu, MPoly(sh))));
    for (int i = 0; i < mu; ++i)
        for (int b = 0; b < mu; ++b)
            for (int k = 0; k < mu; ++k)
                for (int a = 0; a < mu; ++a)
                    if (!S[i][a].is_zero()) Z[i][b][k] += mul_trunc(S[i][a], Y[a][b][k], P);
    StructureConstants c(mu, std::vector<SeriesVector>(mu, SeriesVector(mu, MPoly(sh))));
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j)
            for (int k = 0; k < mu; ++k)
                for (int b = 0; b < mu; ++b)
                    if (!S[j][b].is_zero()) c[i][j][k] += mul_trunc(S[j][b], Z[i][b][k], P);
    return c;
}

MPoly third_derivative(const MPoly& F, int i, int j, int k) { return F.d_ds(i).d_ds(j).d_ds(k); }

MPoly potential_from(const StructureConstants& c, int P) {
    int mu = static_cast<int>(c.size());
    Shape sh{0, mu};
    MPoly F(sh);
    for (int n = 3; n <= P + 3; ++n) {
        Rational scale = Rational(1) / Rational(n * (n - 1) * (n - 2));
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j)
                for (int k = 0; k < mu; ++k) {
                    MPoly part = homogeneous_part(c[i][j][k], n - 3);
                    if (part.is_zero()) continue;
                    F += MPoly::s(sh, i) * MPoly::s(sh, j) * MPoly::s(sh, k) * part * scale;
                }
    }
    for (int i = 0; i < mu; ++i)
        for (int j = i; j < mu; ++j)
            for (int k = j; k < mu; ++k)
                if (trunc(third_derivative(F, i, j, k), P) != trunc(c[i][j][k], P))
                    throw std::logic_error("structure constants are not integrable");
    return F;
}

FrobeniusData frobenius_data(const GoodBasis& GB, int P, ZetaProjection projection) {
    if (P < 0) throw std::invalid_argument("order must be non-negative");
    FrobeniusData FD;
    FD.GB = &GB;
    FD.order = P;
    FD.d = GB.J->d;
    FD.eta = GB.eta;
    FD.zeta = primitive_form(GB, P + 1, projection);
    FD.psi = period_map(GB, FD.zeta, P);
    FD.flat = flat_coordinates(FD.psi, P);
    FD.c = structure_constants(GB, FD.psi, FD.flat, P);
    FD.potential = potential_from(FD.c, P);
    for (const auto& w : GB.weights) FD.E_weights.push_back(1 - w);
    return FD;
}

WdvvReport wdvv_check(const MPoly& F, const QMatrix& eta, int P) {
    int mu = F.shape().ns;
    QMatrix inv = inverse_or_throw(eta);
    Shape sh{0, mu};
    // F3[i][j][k] for all index triples (symmetric).
    std::vector<std::vector<SeriesVector>> F3(mu, std::vector<SeriesVector>(mu, SeriesVector(mu)));
    for (int i = 0; i < mu; ++i)
        for (int j = i; j < mu; ++j)
            for (int k = j; k < mu; ++k) {
                MPoly v = trunc(third_derivative(F, i, j, k), P);
                int idx[3] = {i, j, k};
                int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                for (auto& p : perms) F3[idx[p[0]]][idx[p[1]]][idx[p[2]]] = v;
            }
    // G[i][j][m] = sum_l F_ijl eta^{lm}
    std::vector<std::vector<SeriesVector>> G(mu, std::vector<SeriesVector>(mu, SeriesVector(mu, MPoly(sh))));
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j)
            for (int m = 0; m < mu; ++m)
                for (int l = 0; l < mu; ++l)
                    if (inv(l, m) != 0) G[i][j][m] += F3[i][j][l] * inv(l, m);
    // A(i, j, k, n) = sum_m G_ij^m F_mkn, symmetric in (i, j) and in (k, n).
    std::map<std::array<int, 4>, MPoly> A;
    auto value = [&](int i, int j, int k, int n) -> const MPoly& {
        if (i > j) std::swap(i, j);
        if (k > n) std::swap(k, n);
        std::array<int, 4> key{i, j, k, n};
        auto it = A.find(key);
        if (it != A.end()) return it->second;
        MPoly v(sh);
        for (int m = 0; m < mu; ++m) v += mul_trunc(G[i][j][m], F3[m][k][n], P);
        return A.emplace(key, std::move(v)).first->second;
    };
    WdvvReport rep;
    rep.verified_degree = P;
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j)
            for (int k = j + 1; k < mu; ++k)
                for (int n = 0; n < mu; ++n)
                    if (value(i, j, k, n) != value(i, k, j, n)) {
                        rep.ok = false;
                        rep.failing = {i, j, k, n};
                        return rep;
                    }
    return rep;
}

bool euler_check(const MPoly& F, const std::vector<Rational>& weights, const Rational& d) {
    int mu = F.shape().ns;
    Shape sh{0, mu};
    MPoly EF(sh);
    for (int i = 0; i < mu; ++i) EF += MPoly::s(sh, i) * F.d_ds(i) * weights.at(i);
    MPoly residual = EF - F * (3 - d);
    for (const auto& [e, c] : residual.terms())
        if (degree_of(e) > 2) return false;
    return true;
}

BOperators b_operators(const FrobeniusData& FD, const std::vector<Rational>& t0) {
    int mu = static_cast<int>(FD.E_weights.size());
    if (static_cast<int>(t0.size()) != mu) throw std::invalid_argument("point has the wrong dimension");
    QMatrix inv = inverse_or_throw(FD.eta);
    BOperators B;
    B.B0 = QMatrix(mu, mu);
    B.Binf = QMatrix(mu, mu);
    for (int a = 0; a < mu; ++a) B.Binf(a, a) = (2 - FD.d) / 2 - FD.E_weights[a];
    // (E o d_j)^k = sum_i wt_i t_i c_ij^k, c_ij^k = sum_l c_ijl eta^{lk}
    for (int i = 0; i < mu; ++i) {
        if (t0[i] == 0 || FD.E_weights[i] == 0) continue;
        for (int j = 0; j < mu; ++j)
            for (int l = 0; l < mu; ++l) {
                Rational cijl = FD.c[i][j][l].eval_s(t0).constant_term();
                if (cijl == 0) continue;
                for (int k = 0; k < mu; ++k) B.B0(k, j) += FD.E_weights[i] * t0[i] * cijl * inv(l, k);
            }
    }
    Rational min_wt = 0;
    bool any = false;
    for (const auto& w : FD.E_weights)
        if (w > 0 && (!any || w < min_wt)) {
            min_wt = w;
            any = true;
        }
    bool nonpositive = false;
    for (const auto& w : FD.E_weights) nonpositive = nonpositive || w <= 0;
    B.complete = any && !nonpositive && Rational(FD.order + 3) >= Rational(floor_to_long((3 - FD.d) / min_wt));
    return B;
}

std::string to_string_t(const MPoly& p) {
    Names n;
    for (int i = 0; i < p.shape().ns; ++i) n.s.push_back("t" + std::to_string(i + 1));
    return to_string(p, n);
}

}  // namespace saito

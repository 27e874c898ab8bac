#include "saito/primform.hpp"

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

// F - f in shape (N, mu), checked against the Milnor basis.
MPoly deformation_of(const JacobianData& J, const MPoly& F) {
    if (F.shape() != J.xs_shape()) throw std::invalid_argument("unfolding must have shape (N, mu)");
    MPoly dF = F - J.f.widen(J.xs_shape());
    if (dF != unfolding_deformation(J))
        throw PreconditionError("basis mismatch", "F - f is not sum s_alpha phi_alpha over the Milnor basis");
    return dF;
}

LatticeElement project(const LatticeElement& e, ZetaProjection proj) {
    if (proj == ZetaProjection::Positive) return e.pi_positive();
    int zi = Shape{0, e.ns()}.z_index();
    return e.filter([zi](const Exponents& x) { return x[zi] >= 0; });
}

// Polynomial representative of good-basis coordinates.
MPoly representative_omega(const GoodBasis& GB, const LatticeElement& e) {
    return lattice_representative(*GB.J, apply(GB.M, e));
}

// c * e for a scalar polynomial c in (s, z).
LatticeElement scale(const MPoly& c, const LatticeElement& e) {
    LatticeElement out = LatticeElement::zero(e.mu(), e.ns());
    for (int a = 0; a < e.mu(); ++a)
        if (!e.coeffs[a].is_zero()) out.coeffs[a] = c * e.coeffs[a];
    return out;
}

// Sum over a = 1..p of (F - f)^a / a! z^{-a} zeta_(p-a), as a polynomial.
MPoly exp_terms(const GoodBasis& GB, const MPoly& dF, const std::vector<LatticeElement>& zeta, int p) {
    MPoly out(GB.J->xs_shape());
    MPoly power = MPoly::constant(GB.J->xs_shape(), 1);
    for (int a = 1; a <= p; ++a) {
        power = power * dF;
        const LatticeElement& prev = zeta[p - a];
        if (prev.is_zero()) continue;
        out += (power * representative_omega(GB, prev)).mul_z(-a) * (Rational(1) / factorial(a));
    }
    return out;
}

std::vector<Exponents> s_monomials(int ns, int degree) {
    std::vector<Exponents> out;
    Exponents e(ns + 1, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == ns - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    if (ns == 0) {
        if (degree == 0) out.push_back(e);
        return out;
    }
    rec(0, degree);
    return out;
}

}  // namespace

MPoly standard_unfolding(const JacobianData& J) { return J.f.widen(J.xs_shape()) + unfolding_deformation(J); }

PrimitiveFormSeries primitive_form(const GoodBasis& GB, const MPoly& F, int P, ZetaProjection projection) {
    if (P < 0) throw std::invalid_argument("order must be non-negative");
    const JacobianData& J = *GB.J;
    MPoly dF = deformation_of(J, F);
    PrimitiveFormSeries out;
    out.projection = projection;
    out.components.push_back(LatticeElement::unit(J.mu, J.mu, 0));
    for (int p = 1; p <= P; ++p) {
        MPoly S = exp_terms(GB, dF, out.components, p);
        S = S.filter([&](const Exponents& e) { return s_degree_of(e, S.shape()) == p; });
        out.components.push_back(project(phi_omega_inverse(GB, S), projection) * Rational(-1));
    }
    return out;
}

PrimitiveFormSeries primitive_form(const GoodBasis& GB, int P, ZetaProjection projection) {
    return primitive_form(GB, standard_unfolding(*GB.J), P, projection);
}

JFunctionSeries j_function(const GoodBasis& GB, const MPoly& F, const PrimitiveFormSeries& zeta,
                           std::optional<int> z_floor) {
    const JacobianData& J = *GB.J;
    MPoly dF = deformation_of(J, F);
    JFunctionSeries out;
    int P = zeta.order();
    int top = 0;
    for (const auto& c : zeta.components)
        if (auto m = c.max_z()) top = std::max(top, *m);
    out.z_floor = z_floor ? *z_floor : -(P + top);
    for (int p = 0; p <= P; ++p) {
        MPoly S = exp_terms(GB, dF, zeta.components, p);
        LatticeElement Jp = zeta.components[p] + phi_omega_inverse(GB, S);
        if (auto m = Jp.min_z(); m && *m < out.z_floor)
            throw TruncationExhausted("z_floor " + std::to_string(out.z_floor) + " too shallow at s-order " +
                                      std::to_string(p) + "; needs " + std::to_string(*m));
        Jp.z_floor = out.z_floor;
        out.components.push_back(std::move(Jp));
    }
    return out;
}

int oracle_z_cap(const JacobianData& J, int p) {
    std::vector<long> Z(p + 1, 0);
    for (int q = 1; q <= p; ++q) {
        long best = 0;
        for (int a = 1; a <= q; ++a) best = std::max(best, Z[q - a] + floor_to_long(Rational(a + 1) * J.d) - a);
        Z[q] = best;
    }
    return static_cast<int>(Z[p]);
}

PrimitiveFormSeries oracle_primitive_form(const GoodBasis& GB, const MPoly& F, int P, std::optional<int> z_cap) {
    if (P < 0) throw std::invalid_argument("order must be non-negative");
    const JacobianData& J = *GB.J;
    const int mu = J.mu;
    MPoly dF = deformation_of(J, F);
    Shape csh{0, mu};

    // H[k][alpha] = (Phi^omega)^{-1} [(F - f)^k omega_alpha] / k!, the matrix
    // entries of e^{(F-f)/z} before the z^{-k} shift.
    std::vector<std::vector<LatticeElement>> H(P + 1);
    MPoly power = MPoly::constant(J.xs_shape(), 1);
    for (int k = 0; k <= P; ++k) {
        if (k > 0) power = power * dF;
        for (int a = 0; a < mu; ++a) {
            MPoly g = power * representative_omega(GB, LatticeElement::unit(mu, mu, a));
            H[k].push_back(phi_omega_inverse(GB, g) * (Rational(1) / factorial(k)));
        }
    }
    auto exp_apply = [&](const LatticeElement& zeta, int k) {
        LatticeElement out = LatticeElement::zero(mu, mu);
        for (int a = 0; a < mu; ++a)
            if (!zeta.coeffs[a].is_zero()) out += scale(zeta.coeffs[a], H[k][a]);
        return out.mul_z(-k);
    };

    PrimitiveFormSeries out;
    out.projection = ZetaProjection::NonNegative;
    out.components.push_back(LatticeElement::unit(mu, mu, 0));
    for (int p = 1; p <= P; ++p) {
        int cap = z_cap ? *z_cap : oracle_z_cap(J, p);
        LatticeElement rest = LatticeElement::zero(mu, mu);
        for (int a = 1; a <= p; ++a) rest += exp_apply(out.components[p - a], a);

        struct Unknown {
            int alpha;
            Exponents mono;
        };
        std::vector<Unknown> unknowns;
        for (const auto& sigma : s_monomials(mu, p))
            for (int m = 0; m <= cap; ++m)
                for (int a = 0; a < mu; ++a) {
                    Exponents e = sigma;
                    e[csh.z_index()] = m;
                    unknowns.push_back({a, e});
                }

        std::map<std::pair<int, Exponents>, std::size_t> rows;
        auto row_of = [&](int beta, const Exponents& e) {
            return rows.try_emplace({beta, e}, rows.size()).first->second;
        };
        std::vector<LatticeElement> images;
        for (const auto& u : unknowns) {
            LatticeElement z = LatticeElement::zero(mu, mu);
            z.coeffs[u.alpha] = MPoly::monomial(csh, u.mono, 1);
            images.push_back(exp_apply(z, 0));
            for (int b = 0; b < mu; ++b)
                for (const auto& [e, c] : images.back().coeffs[b].terms())
                    if (e[csh.z_index()] >= 0) row_of(b, e);
        }
        for (int b = 0; b < mu; ++b)
            for (const auto& [e, c] : rest.coeffs[b].terms())
                if (e[csh.z_index()] >= 0) row_of(b, e);

        QMatrix A(rows.size(), unknowns.size());
        QVector rhs(rows.size());
        for (std::size_t j = 0; j < unknowns.size(); ++j)
            for (int b = 0; b < mu; ++b)
                for (const auto& [e, c] : images[j].coeffs[b].terms())
                    if (e[csh.z_index()] >= 0) A(rows.at({b, e}), j) += c;
        for (int b = 0; b < mu; ++b)
            for (const auto& [e, c] : rest.coeffs[b].terms())
                if (e[csh.z_index()] >= 0) rhs[rows.at({b, e})] -= c;

        LinearSolution sol = solve_linear(A, rhs);
        if (!sol.consistent)
            throw TruncationExhausted("oracle z-cap " + std::to_string(cap) + " too small at s-order " +
                                      std::to_string(p));
        if (!sol.unique) throw std::logic_error("singular linear system for the primitive form at order " +
                                                std::to_string(p));
        LatticeElement zeta = LatticeElement::zero(mu, mu);
        for (std::size_t j = 0; j < unknowns.size(); ++j)
            if (sol.x[j] != 0) zeta.coeffs[unknowns[j].alpha].add_term(unknowns[j].mono, sol.x[j]);
        out.components.push_back(std::move(zeta));
    }
    return out;
}

}  // namespace saito

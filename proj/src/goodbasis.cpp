#include "saito/goodbasis.hpp"

#include <stdexcept>

#include "saito/errors.hpp"

namespace saito {

ZMatrix ZMatrix::identity(int n) { return ZMatrix{{QMatrix::identity(n)}}; }

ZMatrix ZMatrix::operator*(const ZMatrix& o) const {
    int n = size();
    ZMatrix r;
    r.terms.assign(terms.size() + o.terms.size() - 1, QMatrix(n, n));
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = 0; j < o.terms.size(); ++j) r.terms[i + j] = r.terms[i + j] + terms[i] * o.terms[j];
    r.trim();
    return r;
}

bool ZMatrix::operator==(const ZMatrix& o) const {
    ZMatrix a = *this, b = o;
    a.trim();
    b.trim();
    return a.terms == b.terms;
}

void ZMatrix::trim() {
    while (terms.size() > 1 && terms.back().is_zero()) terms.pop_back();
}

LatticeElement apply(const ZMatrix& M, const LatticeElement& e) {
    int mu = e.mu();
    Shape sh{0, e.ns()};
    LatticeElement out = LatticeElement::zero(mu, e.ns());
    out.s_truncation = e.s_truncation;
    out.truncated = e.truncated;
    out.z_floor = e.z_floor;
    for (std::size_t k = 0; k < M.terms.size(); ++k) {
        const QMatrix& Mk = M.terms[k];
        for (int a = 0; a < mu; ++a) {
            if (e.coeffs[a].is_zero()) continue;
            MPoly shifted = e.coeffs[a].mul_z(static_cast<int>(k));
            for (int b = 0; b < mu; ++b)
                if (Mk(b, a) != 0) out.coeffs[b] += shifted * Mk(b, a);
        }
    }
    for (auto& c : out.coeffs)
        if (c.is_zero()) c = MPoly(sh);
    return out;
}

namespace {

ZMatrix matrix_of(const JacobianData& J, const std::vector<LatticeElement>& omegas) {
    int top = 0;
    for (const auto& w : omegas)
        if (auto m = w.max_z()) top = std::max(top, *m);
    ZMatrix M;
    M.terms.assign(top + 1, QMatrix(J.mu, J.mu));
    Exponents e(1, 0);
    for (int a = 0; a < J.mu; ++a)
        for (int b = 0; b < J.mu; ++b)
            for (int k = 0; k <= top; ++k) {
                e[0] = k;
                M.terms[k](b, a) = omegas[a].coeffs[b].coefficient(e);
            }
    M.trim();
    return M;
}

// M^{-1} = sum_m (-N)^m M0^{-1} with N = M0^{-1}(M - M0). N raises weight
// differences, so the series stops once the powers vanish.
ZMatrix inverse_series(const ZMatrix& M, const QMatrix& M0inv) {
    int n = M.size();
    ZMatrix N;
    N.terms.assign(M.terms.size(), QMatrix(n, n));
    for (std::size_t k = 1; k < M.terms.size(); ++k) N.terms[k] = (M0inv * M.terms[k]) * Rational(-1);
    N.trim();
    ZMatrix base{{M0inv}};
    ZMatrix acc = base, term = base;
    for (int m = 1;; ++m) {
        if (m > 4096) throw std::logic_error("change matrix inverse did not terminate");
        term = N * term;
        bool zero = true;
        for (const auto& t : term.terms) zero = zero && t.is_zero();
        if (zero) break;
        acc.terms.resize(std::max(acc.terms.size(), term.terms.size()), QMatrix(n, n));
        for (std::size_t k = 0; k < term.terms.size(); ++k) acc.terms[k] = acc.terms[k] + term.terms[k];
    }
    acc.trim();
    return acc;
}

GoodBasis assemble(const JacobianData& J, std::vector<LatticeElement> omegas, std::vector<Rational> weights) {
    GoodBasis GB;
    GB.J = &J;
    GB.omegas = std::move(omegas);
    GB.weights = std::move(weights);
    GB.M = matrix_of(J, GB.omegas);
    auto M0inv = inverse(GB.M.at_zero());
    if (!M0inv) throw PreconditionError("mod-z condition violated", "the z = 0 part of the basis is not a basis of Jac(f)");
    GB.M_inverse = inverse_series(GB.M, *M0inv);
    GB.eta = GB.M.at_zero().transpose() * J.gram * GB.M.at_zero();
    return GB;
}

}  // namespace

std::vector<GradingObstruction> grading_obstructions(const JacobianData& J, const std::vector<LatticeElement>& omegas) {
    std::vector<GradingObstruction> out;
    for (int a = 0; a < static_cast<int>(omegas.size()); ++a)
        for (int b = a; b < static_cast<int>(omegas.size()); ++b) {
            auto wa = lattice_weight(J, omegas[a]), wb = lattice_weight(J, omegas[b]);
            if (!wa || !wb) continue;
            Rational slot = *wa + *wb - J.d;
            if (!is_integer(slot) || slot < 1) continue;
            int p = static_cast<int>(floor_to_long(slot));
            if (k_pairing_grading_check(J, omegas[a], omegas[b], p) == GradingVerdict::ForcedZero) continue;
            // K^(p)(a, b) = (-1)^p K^(p)(b, a): odd diagonal slots vanish.
            if (a == b && p % 2 == 1) continue;
            out.push_back({a, b, p});
        }
    return out;
}

GoodBasis monomial_good_basis(const JacobianData& J) {
    std::vector<LatticeElement> omegas;
    for (int a = 0; a < J.mu; ++a) omegas.push_back(LatticeElement::unit(J.mu, 0, a));
    GoodBasis GB = assemble(J, std::move(omegas), J.basis_weights);
    GB.status = grading_obstructions(J, GB.omegas).empty() ? GoodBasisStatus::Certified : GoodBasisStatus::Unverified;
    return GB;
}

GoodBasis custom_good_basis(const JacobianData& J, const std::vector<LatticeElement>& omegas, bool allow_unverified) {
    if (static_cast<int>(omegas.size()) != J.mu)
        throw PreconditionError("mod-z condition violated",
                                "expected " + std::to_string(J.mu) + " elements, got " + std::to_string(omegas.size()));
    std::vector<Rational> weights;
    for (std::size_t a = 0; a < omegas.size(); ++a) {
        const auto& w = omegas[a];
        std::string which = "element " + std::to_string(a + 1);
        if (w.mu() != J.mu || w.ns() != 0) throw std::invalid_argument(which + " has the wrong shape");
        if (w.is_zero()) throw PreconditionError("mod-z condition violated", which + " is zero");
        if (*w.min_z() < 0) throw PreconditionError("mod-z condition violated", which + " has negative z-powers");
        auto wt = lattice_weight(J, w);
        if (!wt) throw PreconditionError("not homogeneous", which);
        weights.push_back(*wt);
    }
    GoodBasis GB = assemble(J, omegas, std::move(weights));
    auto obstructions = grading_obstructions(J, GB.omegas);
    if (!obstructions.empty()) {
        if (!allow_unverified) {
            const auto& o = obstructions.front();
            throw PreconditionError("grading obstruction inconclusive",
                                    "pair (" + std::to_string(o.alpha + 1) + ", " + std::to_string(o.beta + 1) +
                                        ") at p = " + std::to_string(o.p));
        }
        GB.status = GoodBasisStatus::Unverified;
    }
    return GB;
}

GoodBasis custom_good_basis(const JacobianData& J, const std::vector<MPoly>& omegas, bool allow_unverified) {
    std::vector<LatticeElement> reduced;
    for (const auto& w : omegas) {
        if (w.shape().ns != 0 && w.depends_on_s()) throw std::invalid_argument("good basis elements must not involve s");
        MPoly x = w.shape().ns ? w.eval_s(std::vector<Rational>(w.shape().ns, 0)) : w;
        reduced.push_back(lattice_reduce(J, x));
    }
    return custom_good_basis(J, reduced, allow_unverified);
}

MPoly phi_omega_apply(const GoodBasis& GB, const MPoly& g) {
    if (g.depends_on_z()) throw std::invalid_argument("phi_omega_apply: z-free input required");
    const JacobianData& J = *GB.J;
    Decomposition D = regseq_decompose(J, g);
    Decomposition rotated;
    Shape csh{0, g.shape().ns};
    for (const auto& [key, c] : D) {
        for (std::size_t k = 0; k < GB.M.terms.size(); ++k) {
            const QMatrix& Mk = GB.M.terms[k];
            for (int b = 0; b < J.mu; ++b) {
                if (Mk(b, key.alpha) == 0) continue;
                DecompKey nk{key.p, b};
                auto it = rotated.try_emplace(nk, MPoly(csh)).first;
                it->second += c.mul_z(static_cast<int>(k)) * Mk(b, key.alpha);
                if (it->second.is_zero()) rotated.erase(it);
            }
        }
    }
    return phi_top_apply(Trivialization::central(J), rotated, g.shape());
}

LatticeElement phi_omega_inverse(const GoodBasis& GB, const LatticeElement& e) { return apply(GB.M_inverse, e); }

LatticeElement phi_omega_inverse(const GoodBasis& GB, const MPoly& g) {
    return phi_omega_inverse(GB, lattice_reduce(*GB.J, g));
}

}  // namespace saito

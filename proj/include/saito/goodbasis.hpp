#pragma once

#include <string>
#include <vector>

#include "saito/brieskorn.hpp"

namespace saito {

// Matrix polynomial sum_k terms[k] z^k over the rationals.
struct ZMatrix {
    std::vector<QMatrix> terms;

    static ZMatrix identity(int n);
    int size() const { return terms.empty() ? 0 : static_cast<int>(terms[0].rows()); }
    int degree() const { return static_cast<int>(terms.size()) - 1; }
    const QMatrix& at_zero() const { return terms.at(0); }
    ZMatrix operator*(const ZMatrix& o) const;
    bool operator==(const ZMatrix& o) const;
    // Drops trailing zero coefficients.
    void trim();
};

// Applies a z-matrix to lattice coordinates: out[b] = sum_a M[b][a](z) e[a].
LatticeElement apply(const ZMatrix& M, const LatticeElement& e);

enum class GoodBasisStatus { Certified, Unverified };

struct GoodBasis {
    const JacobianData* J = nullptr;
    std::vector<LatticeElement> omegas;  // central fiber, z-exponents >= 0
    std::vector<Rational> weights;       // wt(omega_alpha)
    ZMatrix M;                           // column alpha = coordinates of omega_alpha
    ZMatrix M_inverse;
    QMatrix eta;  // residue pairing of the omegas
    GoodBasisStatus status = GoodBasisStatus::Certified;
};

GoodBasis monomial_good_basis(const JacobianData& J);

// Validates the candidate elements. Throws PreconditionError with kind
// "not homogeneous", "mod-z condition violated" or "grading obstruction
// inconclusive" (the last one only when allow_unverified is false).
GoodBasis custom_good_basis(const JacobianData& J, const std::vector<LatticeElement>& omegas,
                            bool allow_unverified = false);
// Candidates given as polynomials in (x, z); each is reduced in the lattice first.
GoodBasis custom_good_basis(const JacobianData& J, const std::vector<MPoly>& omegas, bool allow_unverified = false);

// Pairs (alpha, beta, p) with p >= 1 where the grading permits a nonzero
// higher residue pairing, so goodness cannot be certified from weights alone.
struct GradingObstruction {
    int alpha, beta, p;
};
std::vector<GradingObstruction> grading_obstructions(const JacobianData& J, const std::vector<LatticeElement>& omegas);

// Phi^omega = M Phi^top on a z-free polynomial.
MPoly phi_omega_apply(const GoodBasis& GB, const MPoly& g);
// M^{-1} applied to lattice coordinates.
LatticeElement phi_omega_inverse(const GoodBasis& GB, const LatticeElement& e);
// Reduction of [g d^N x] followed by M^{-1}.
LatticeElement phi_omega_inverse(const GoodBasis& GB, const MPoly& g);

}  // namespace saito

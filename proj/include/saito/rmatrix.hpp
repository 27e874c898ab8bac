#pragma once

#include <string>
#include <vector>

#include "saito/frobenius.hpp"

namespace saito {

struct SemisimplePoint {
    const JacobianData* J = nullptr;
    std::vector<Rational> s0;
    MPoly F_at_s0;  // shape (N, 0)
    QuotientAlgebra quotient;
    QMatrix mult_F_standard;  // multiplication by F on the standard monomials
    QVector charpoly;
    QMatrix mult_F;  // multiplication by F in the Milnor basis coordinates
};

// Certifies that multiplication by F on C[x]/(dF/dx)(s0) has a squarefree
// characteristic polynomial and is invertible. Throws PreconditionError
// "not semisimple at s0" or "degenerate critical locus".
SemisimplePoint check_semisimple(const JacobianData& J, const std::vector<Rational>& s0);

// A = sum A_k z^k with F A = 1 in the lattice at s0; A_k in Milnor basis coordinates.
struct ASeries {
    std::vector<QVector> A;
    int order() const { return static_cast<int>(A.size()) - 1; }
};

ASeries a_series(const SemisimplePoint& SP, int K);

// Lattice class of F * sum A_k z^k at s0 minus [1], through z^K; zero when A is right.
std::vector<QVector> a_series_residual(const SemisimplePoint& SP, const ASeries& A);

// A_k = numerators[k] / delta^exponents[k] over polynomials in s, with
// delta = det of multiplication by F. Needs every s-weight positive.
struct SymbolicASeries {
    MPoly delta;
    std::vector<std::vector<MPoly>> numerators;
    std::vector<int> exponents;
    int order() const { return static_cast<int>(numerators.size()) - 1; }
};

SymbolicASeries symbolic_a_series(const JacobianData& J, int K);

// B[k] column beta = B_k(phi_beta) for k = 1..K; B[0] is zero.
struct BSeries {
    std::vector<QMatrix> B;
};

BSeries b_series(const SemisimplePoint& SP, const ASeries& A, int K);

struct RSeries {
    std::vector<QMatrix> R;
    int order() const { return static_cast<int>(R.size()) - 1; }
};

// (Phi^omega)^{-1} applied to a + z A_0 a - sum_{k>=2} z^k wt(a) B_k(a) on the
// basis a = phi^omega_beta, read off in columns.
RSeries r_matrix(const GoodBasis& GB, const SemisimplePoint& SP, int K);

// Solves [B0, R_{m+1}] = (m + Binf) R_m order by order, fixing the part commuting
// with B0 by solvability of the next order. Needs B0 with distinct eigenvalues.
RSeries r_matrix_dense(const QMatrix& B0, const QMatrix& Binf, int K);

// B0, Binf and eta moved from the flat frame to the basis d/ds_alpha at s0.
struct PointFrame {
    std::vector<Rational> t0;
    QMatrix T;  // T(l, alpha) = d t^l / d s_alpha at s0
    QMatrix B0, Binf, eta;
    // Whether the truncated series determine every entry exactly.
    bool exact = false;
};

PointFrame point_frame(const FrobeniusData& FD, const std::vector<Rational>& s0);

struct RCheck {
    bool ok = true;
    std::vector<QMatrix> residuals;  // indexed by order
    int first_failure = -1;
};

// [B0, R_{m+1}] - (m + Binf) R_m for m = 0..K-1.
RCheck dubrovin_check(const RSeries& R, const QMatrix& B0, const QMatrix& Binf);
// R(z) eta^{-1} R^T(-z) - eta^{-1} through z^K.
RCheck symplectic_check(const RSeries& R, const QMatrix& eta);
// lambda . s0 with lambda = 2^D and D the common denominator of the weights,
// so that every power lambda^w met by homogeneity_check is rational.
struct ScaledPoint {
    int log2_lambda = 0;
    std::vector<Rational> point;
};
ScaledPoint scaled_point(const JacobianData& J, const std::vector<Rational>& s0);

// R_k(lambda . s0)(a, b) = lambda^{w_b - w_a - k} R_k(s0)(a, b).
RCheck homogeneity_check(const RSeries& at_s0, const RSeries& at_scaled, const std::vector<Rational>& basis_weights,
                         int log2_lambda);

struct RVerification {
    bool r0_identity = false;
    RCheck dubrovin, symplectic, homogeneity;
    bool ok() const { return r0_identity && dubrovin.ok && symplectic.ok && homogeneity.ok; }
};

RVerification verify_r(const RSeries& R, const RSeries& R_scaled, const PointFrame& frame,
                       const std::vector<Rational>& basis_weights, int log2_lambda);

}  // namespace saito

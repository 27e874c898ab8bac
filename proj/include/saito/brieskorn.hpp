#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saito/jacobian.hpp"

namespace saito {

// sum_alpha coeffs[alpha](s, z) [phi_alpha d^N x]. Coefficients have shape (0, ns).
struct LatticeElement {
    std::vector<MPoly> coeffs;
    STruncation s_truncation;
    int z_floor = 0;
    bool truncated = false;

    static LatticeElement zero(int mu, int ns);
    static LatticeElement unit(int mu, int ns, int alpha);
    int mu() const { return static_cast<int>(coeffs.size()); }
    int ns() const { return coeffs.empty() ? 0 : coeffs[0].shape().ns; }
    bool is_zero() const;

    LatticeElement& operator+=(const LatticeElement& o);
    LatticeElement& operator-=(const LatticeElement& o);
    LatticeElement operator*(const Rational& c) const;
    friend LatticeElement operator+(LatticeElement a, const LatticeElement& b) { return a += b; }
    friend LatticeElement operator-(LatticeElement a, const LatticeElement& b) { return a -= b; }
    // Coefficients only; truncation bookkeeping is not compared.
    bool operator==(const LatticeElement& o) const { return coeffs == o.coeffs; }
    bool operator!=(const LatticeElement& o) const { return !(*this == o); }

    LatticeElement mul_z(int m) const;
    LatticeElement filter(const std::function<bool(const Exponents&)>& keep) const;
    LatticeElement pi_positive() const;     // z-exponents > 0
    LatticeElement pi_nonpositive() const;  // z-exponents <= 0
    // Coefficient vector of z^m (s-polynomials of shape (0, ns)).
    std::vector<MPoly> z_part(int m) const;
    std::optional<int> min_z() const;
    std::optional<int> max_z() const;
    LatticeElement eval_s(const std::vector<Rational>& point) const;
    LatticeElement widen_s(int ns) const;
};

std::string to_string(const LatticeElement& e, const JacobianData& J);

// Polynomial representative sum coeffs[alpha] * phi_alpha in shape (N, ns).
MPoly lattice_representative(const JacobianData& J, const LatticeElement& e);

// Rewriting reduction of [g d^N x]. An ideal multiple h * dF/dx_k is replaced by
// -z dh/dx_k (when z_branch) and -h * d(F - f)/dx_k (when a deformation is given).
struct RewriteOptions {
    bool z_branch = true;
    std::optional<MPoly> deformation;  // F - f, in the shape of the inputs
    STruncation truncation;
};

class Reducer {
public:
    Reducer(const JacobianData& J, RewriteOptions opts);
    LatticeElement reduce(const MPoly& g) const;
    const JacobianData& jacobian() const { return *J_; }
    const RewriteOptions& options() const { return opts_; }

private:
    const JacobianData* J_;
    RewriteOptions opts_;
    std::vector<Grouped> ddef_;  // grouped d(F - f)/dx_k
};

// F - f = sum s_alpha phi_alpha in shape (N, mu).
MPoly unfolding_deformation(const JacobianData& J);
// sum s0_alpha phi_alpha in shape (N, 0); rejects points that move along
// directions of non-positive weight.
MPoly point_deformation(const JacobianData& J, const std::vector<Rational>& s0);

// Central fiber: coefficient-linear over s.
LatticeElement lattice_reduce(const JacobianData& J, const MPoly& g);

enum class TruncationPolicy { Throw, Report };

LatticeElement lattice_reduce_unfolding(const JacobianData& J, const MPoly& g, const STruncation& T,
                                        TruncationPolicy policy = TruncationPolicy::Throw);
// Coordinates in the quotient by (dF/dx) (the z = 0 branch of the unfolding reduction).
LatticeElement quotient_normal_form(const JacobianData& J, const MPoly& g, const STruncation& T,
                                    TruncationPolicy policy = TruncationPolicy::Throw);

LatticeElement lattice_reduce_at_point(const JacobianData& J, const std::vector<Rational>& s0, const MPoly& g);
QVector quotient_class_at_point(const JacobianData& J, const std::vector<Rational>& s0, const MPoly& g);

enum class TrivializationMode { CentralFiber, Unfolding };

struct Trivialization {
    const JacobianData* J = nullptr;
    TrivializationMode mode = TrivializationMode::CentralFiber;
    STruncation truncation;

    static Trivialization central(const JacobianData& J) { return {&J, TrivializationMode::CentralFiber, {}}; }
    static Trivialization unfolding(const JacobianData& J, STruncation T) {
        return {&J, TrivializationMode::Unfolding, T};
    }
    // dF/dx_k (or df/dx_k) in the working shape.
    std::vector<MPoly> partial_derivatives() const;
    Shape shape() const;
};

// Decomposition in the special basis built from dF/dx_k (unfolding mode) or
// df/dx_k (central mode). In unfolding mode coefficients are s-polynomials
// and the recomposition identity holds modulo the truncation.
Decomposition trivialization_decompose(const Trivialization& T, const MPoly& g);

MPoly phi_top_apply(const Trivialization& T, const MPoly& g);
// Applies the operator products to a decomposition whose coefficients may carry z.
MPoly phi_top_apply(const Trivialization& T, const Decomposition& D, Shape shape);

// (Phi^top)^{-1} as the geometric series sum_m (-(Phi^top - Id))^m, z-linearly.
MPoly phi_top_inverse_series(const Trivialization& T, const MPoly& g);

// Lattice class via the inverse series followed by classwise reduction.
LatticeElement lattice_reduce_by_series(const Trivialization& T, const MPoly& g);

bool trivialization_identity_check(const Trivialization& T, const MPoly& g, int k);

// Weight of a lattice element (basis weights plus coefficient weights), or
// nullopt when it is not homogeneous. The zero element has no weight.
std::optional<Rational> lattice_weight(const JacobianData& J, const LatticeElement& e);

enum class GradingVerdict { ForcedZero, Vacuous };

GradingVerdict k_pairing_grading_check(const JacobianData& J, const LatticeElement& a, const LatticeElement& b, int p);

}  // namespace saito

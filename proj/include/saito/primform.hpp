#pragma once

#include <optional>
#include <vector>

#include "saito/goodbasis.hpp"

namespace saito {

// Which z-powers the recursion removes at each order. Positive is the
// recursion as usually stated; NonNegative also removes the z^0 part, which
// is what J in [d^N x] + z^{-1} B[[z^{-1}]] requires. They agree whenever all
// unfolding parameters have positive weight.
enum class ZetaProjection { Positive, NonNegative };

// zeta = sum_p components[p], components[p] homogeneous of s-degree p, in
// good-basis coordinates (shape (0, mu) coefficients, z-exponents >= 0).
struct PrimitiveFormSeries {
    std::vector<LatticeElement> components;
    ZetaProjection projection = ZetaProjection::Positive;
    int order() const { return static_cast<int>(components.size()) - 1; }
};

// Components of J = e^{(F-f)/z} zeta by s-degree, in good-basis coordinates.
struct JFunctionSeries {
    std::vector<LatticeElement> components;
    int z_floor = 0;
};

// F must be f + sum s_alpha phi_alpha over the Milnor basis, in shape (N, mu).
PrimitiveFormSeries primitive_form(const GoodBasis& GB, const MPoly& F, int P,
                                   ZetaProjection projection = ZetaProjection::Positive);
PrimitiveFormSeries primitive_form(const GoodBasis& GB, int P, ZetaProjection projection = ZetaProjection::Positive);

// Throws TruncationExhausted when a component reaches below z_floor.
JFunctionSeries j_function(const GoodBasis& GB, const MPoly& F, const PrimitiveFormSeries& zeta,
                           std::optional<int> z_floor = std::nullopt);

// Order-by-order dense solve of pi_{>=0} J_(p) = 0 with the operator
// e^{(F-f)/z} materialized on the basis. z_cap bounds the z-degree of the
// unknowns; by default it follows Z_p = max_a (Z_{p-a} + floor((a+1) d) - a).
PrimitiveFormSeries oracle_primitive_form(const GoodBasis& GB, const MPoly& F, int P,
                                          std::optional<int> z_cap = std::nullopt);

// The default z-cap of the oracle at order p.
int oracle_z_cap(const JacobianData& J, int p);

// f + sum s_alpha phi_alpha.
MPoly standard_unfolding(const JacobianData& J);

}  // namespace saito

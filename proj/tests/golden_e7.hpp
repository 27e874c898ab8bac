#pragma once

// Worked E7 tables for f = x1^3 + x1*x2^3 with basis
// {1, x1, x1^2, x2, x1*x2, x1^2*x2, x2^2} (indices 0..6 here).

#include <string>
#include <vector>

#include "saito/rational.hpp"

namespace saito::golden {

struct DecompTerm {
    std::vector<int> p;
    int alpha;
    Rational coeff;
};

struct ZTerm {
    int alpha;
    std::string coeff;  // polynomial in s1..s7 (multiplies z)
};

struct E7Row {
    std::string g;
    std::vector<DecompTerm> decomposition;
    std::string phi_top;                // image under the trivialization
    std::vector<ZTerm> lattice_z_part;  // z-corrections in the central-fiber map
};

inline const std::vector<E7Row>& e7_rows() {
    static const std::vector<E7Row> rows = {
        {"x2^3", {{{1, 0}, 0, 1}, {{0, 0}, 2, -3}}, "x2^3", {}},
        {"x1*x2^2", {{{0, 1}, 0, Rational(1, 3)}}, "x1*x2^2", {}},
        {"x1^3", {{{1, 0}, 1, Rational(1, 3)}, {{0, 1}, 3, Rational(-1, 9)}}, "x1^3 + (2/9)*z", {{0, "-2/9"}}},
        {"x2^4", {{{1, 0}, 3, 1}, {{0, 0}, 5, -3}}, "x2^4", {}},
        {"x1*x2^3", {{{0, 1}, 3, Rational(1, 3)}}, "x1*x2^3 + (1/3)*z", {{0, "-1/3"}}},
        {"x1^2*x2^2", {{{0, 1}, 1, Rational(1, 3)}}, "x1^2*x2^2", {}},
        {"x1^3*x2", {{{1, 0}, 4, Rational(1, 3)}, {{0, 1}, 6, Rational(-1, 9)}}, "x1^3*x2 + (1/9)*z*x2", {{3, "-1/9"}}},
        {"x1^4", {{{1, 0}, 2, Rational(1, 3)}, {{0, 1}, 4, Rational(-1, 9)}}, "x1^4 + (5/9)*z*x1", {{1, "-5/9"}}},
    };
    return rows;
}

// z-corrections of the s-dependent map for the unfolding F = f + sum s_a phi_a,
// as displayed for every row except x1^4 (recomputed separately).
struct UnfoldingRow {
    std::string g;
    std::vector<ZTerm> z_part;
};

inline const std::vector<UnfoldingRow>& e7_unfolding_rows() {
    static const std::vector<UnfoldingRow> rows = {
        {"x2^3", {}},
        {"x1*x2^2", {}},
        {"x1^3", {{0, "-2/9"}}},
        {"x2^4", {}},
        {"x1*x2^3", {{0, "-1/3"}}},
        {"x1^2*x2^2", {{0, "(2/27)*s6"}}},
        {"x1^3*x2", {{3, "-1/9"}, {0, "-(10/243)*s6^2"}}},
    };
    return rows;
}

// The x1^4 row as displayed, kept only to document the sign discrepancy:
// z*(5/9)[x1] - (5/81) s6 z [x2] - z (50 s6^3/2187)[1] - z (4 s3/27)[1].
inline const std::vector<ZTerm>& e7_unfolding_x1_4_displayed() {
    static const std::vector<ZTerm> terms = {{1, "5/9"}, {3, "-(5/81)*s6"}, {0, "-(50/2187)*s6^3 - (4/27)*s3"}};
    return terms;
}

}  // namespace saito::golden

#include "saito/rmatrix.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "saito/errors.hpp"

namespace saito {

namespace {

QVector z_coefficient(const LatticeElement& e, int m) {
    QVector v(e.mu());
    auto part = e.z_part(m);
    for (int a = 0; a < e.mu(); ++a) v[a] = part[a].constant_term();
    return v;
}

void add_to(QVector& acc, const QVector& v, const Rational& c = 1) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

QMatrix inverse_or_throw(const QMatrix& m, const char* what) {
    auto inv = inverse(m);
    if (!inv) throw std::logic_error(std::string(what) + " is singular");
    return *inv;
}

MPoly F_at(const JacobianData& J, const std::vector<Rational>& s0) { return J.f + point_deformation(J, s0); }

// Lattice reduction at s0 of a polynomial in x and z, with a cache keyed by input.
class PointReducer {
public:
    PointReducer(const JacobianData& J, const std::vector<Rational>& s0) : J_(&J), s0_(s0) {}
    const LatticeElement& reduce(const MPoly& g) {
        auto it = cache_.find(key(g));
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key(g), lattice_reduce_at_point(*J_, s0_, g)).first->second;
    }

private:
    static std::vector<std::pair<Exponents, Rational>> key(const MPoly& g) { return {g.terms().begin(), g.terms().end()}; }
    const JacobianData* J_;
    std::vector<Rational> s0_;
    std::map<std::vector<std::pair<Exponents, Rational>>, LatticeElement> cache_;
};

}  // namespace

SemisimplePoint check_semisimple(const JacobianData& J, const std::vector<Rational>& s0) {
    SemisimplePoint SP;
    SP.J = &J;
    SP.s0 = s0;
    SP.F_at_s0 = F_at(J, s0);
    auto Q = quotient_algebra(partials(SP.F_at_s0), J.N);
    if (!Q) throw PreconditionError("degenerate critical locus", "the critical quotient at s0 is infinite-dimensional");
    if (Q->dimension() != J.mu)
        throw PreconditionError("degenerate critical locus", "the critical quotient at s0 has dimension " +
                                                                 std::to_string(Q->dimension()) + ", expected " +
                                                                 std::to_string(J.mu));
    SP.quotient = std::move(*Q);
    const int mu = J.mu;
    Shape xs = J.x_shape();
    SP.mult_F_standard = QMatrix(mu, mu);
    for (int j = 0; j < mu; ++j) {
        Exponents e(xs.size(), 0);
        for (int k = 0; k < J.N; ++k) e[k] = SP.quotient.standard[j][k];
        SP.mult_F_standard.set_column(j, SP.quotient.coordinates(SP.F_at_s0 * MPoly::monomial(xs, e, 1)));
    }
    SP.charpoly = characteristic_polynomial(SP.mult_F_standard);
    QVector g = upoly_gcd(SP.charpoly, upoly_derivative(SP.charpoly));
    if (upoly_degree(g) > 0)
        throw PreconditionError("not semisimple at s0", "the characteristic polynomial of multiplication by F has a "
                                                        "repeated factor of degree " +
                                                            std::to_string(upoly_degree(g)));
    if (SP.charpoly[0] == 0)
        throw PreconditionError("not semisimple at s0", "multiplication by F is not invertible");

    // The Milnor basis must span the quotient at s0.
    QMatrix C(mu, mu);
    for (int b = 0; b < mu; ++b) C.set_column(b, SP.quotient.coordinates(J.milnor_basis[b]));
    if (!inverse(C)) throw PreconditionError("degenerate critical locus", "the Milnor basis does not span the quotient at s0");
    SP.mult_F = QMatrix(mu, mu);
    for (int b = 0; b < mu; ++b) SP.mult_F.set_column(b, quotient_class_at_point(J, s0, SP.F_at_s0 * J.milnor_basis[b]));
    return SP;
}

ASeries a_series(const SemisimplePoint& SP, int K) {
    if (K < 0) throw std::invalid_argument("order must be non-negative");
    const JacobianData& J = *SP.J;
    QMatrix inv = inverse_or_throw(SP.mult_F, "multiplication by F");
    ASeries out;
    out.A.push_back(inv * quotient_class_at_point(J, SP.s0, MPoly::constant(J.x_shape(), 1)));
    std::vector<LatticeElement> AF;  // [(A_j F) d^N x] at s0
    for (int k = 1; k <= K; ++k) {
        AF.push_back(lattice_reduce_at_point(J, SP.s0, representative(J, out.A[k - 1]) * SP.F_at_s0));
        QVector rhs(J.mu);
        for (int a = 1; a <= k; ++a) add_to(rhs, z_coefficient(AF[k - a], a), -1);
        out.A.push_back(inv * rhs);
    }
    return out;
}

std::vector<QVector> a_series_residual(const SemisimplePoint& SP, const ASeries& A) {
    const JacobianData& J = *SP.J;
    std::vector<LatticeElement> AF;
    for (const auto& a : A.A) AF.push_back(lattice_reduce_at_point(J, SP.s0, representative(J, a) * SP.F_at_s0));
    std::vector<QVector> out;
    for (int n = 0; n <= A.order(); ++n) {
        QVector r(J.mu);
        for (int a = 0; a <= n; ++a) add_to(r, z_coefficient(AF[n - a], a));
        if (n == 0) add_to(r, quotient_class_at_point(J, SP.s0, MPoly::constant(J.x_shape(), 1)), -1);
        out.push_back(std::move(r));
    }
    return out;
}

SymbolicASeries symbolic_a_series(const JacobianData& J, int K) {
    if (K < 0) throw std::invalid_argument("order must be non-negative");
    for (const auto& w : J.W.s)
        if (w <= 0) throw PreconditionError("unbounded reduction", "symbolic mode needs every s-weight positive");
    const int mu = J.mu;
    Shape cs{0, mu}, xs = J.xs_shape();
    const auto T = STruncation::unbounded();
    MPoly F = J.f.widen(xs) + unfolding_deformation(J);

    std::vector<std::vector<MPoly>> MF(mu, std::vector<MPoly>(mu, MPoly(cs)));
    for (int b = 0; b < mu; ++b) {
        auto col = quotient_normal_form(J, F * J.milnor_basis[b].widen(xs), T);
        for (int a = 0; a < mu; ++a) MF[a][b] = col.coeffs[a];
    }
    SymbolicASeries out;
    out.delta = determinant(MF, cs);
    if (out.delta.is_zero()) throw std::logic_error("multiplication by F is generically singular");
    std::vector<std::vector<MPoly>> adj(mu, std::vector<MPoly>(mu, MPoly(cs)));
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j) {
            std::vector<std::vector<MPoly>> minor;
            for (int r = 0; r < mu; ++r) {
                if (r == j) continue;
                std::vector<MPoly> row;
                for (int c = 0; c < mu; ++c)
                    if (c != i) row.push_back(MF[r][c]);
                minor.push_back(std::move(row));
            }
            MPoly m = mu == 1 ? MPoly::constant(cs, 1) : determinant(minor, cs);
            adj[i][j] = (i + j) % 2 ? -m : m;
        }
    auto apply_adj = [&](const std::vector<MPoly>& v) {
        std::vector<MPoly> r(mu, MPoly(cs));
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j)
                if (!v[j].is_zero() && !adj[i][j].is_zero()) r[i] += adj[i][j] * v[j];
        return r;
    };
    auto rep = [&](const std::vector<MPoly>& v) {
        MPoly r(xs);
        for (int b = 0; b < mu; ++b)
            if (!v[b].is_zero()) r += v[b].widen(xs) * J.milnor_basis[b].widen(xs);
        return r;
    };
    // Cancels common factors of delta.
    auto push = [&](std::vector<MPoly> num, int e) {
        while (e > 0) {
            std::vector<MPoly> q;
            for (const auto& c : num) {
                auto d = divide_exact(c, out.delta);
                if (!d) break;
                q.push_back(std::move(*d));
            }
            if (q.size() != num.size()) break;
            num = std::move(q);
            --e;
        }
        out.numerators.push_back(std::move(num));
        out.exponents.push_back(e);
    };

    auto unit = quotient_normal_form(J, MPoly::constant(xs, 1), T);
    push(apply_adj(unit.coeffs), 1);
    std::vector<LatticeElement> NF;
    for (int k = 1; k <= K; ++k) {
        NF.push_back(lattice_reduce_unfolding(J, rep(out.numerators[k - 1]) * F, T));
        int E = 0;
        for (int j = 0; j < k; ++j) E = std::max(E, out.exponents[j]);
        std::vector<MPoly> rhs(mu, MPoly(cs));
        for (int a = 1; a <= k; ++a) {
            auto part = NF[k - a].z_part(a);
            MPoly scale = out.delta.pow(E - out.exponents[k - a]);
            for (int b = 0; b < mu; ++b)
                if (!part[b].is_zero()) rhs[b] -= scale * part[b];
        }
        push(apply_adj(rhs), E + 1);
    }
    return out;
}

BSeries b_series(const SemisimplePoint& SP, const ASeries& A, int K) {
    const JacobianData& J = *SP.J;
    const int mu = J.mu;
    if (K >= 2 && A.order() < K - 2) throw std::invalid_argument("the A-series is too short for this order");
    BSeries out;
    out.B.assign(K + 1, QMatrix(mu, mu));
    if (K == 0) return out;
    PointReducer red(J, SP.s0);
    std::vector<MPoly> Arep;
    for (const auto& a : A.A) Arep.push_back(representative(J, a));
    // Polynomial forms of B_k(phi_beta); B_1 = -A_0 keeps the unreduced product.
    std::vector<std::vector<MPoly>> Bpoly(K + 1);
    for (int b = 0; b < mu; ++b) {
        MPoly p = -(Arep[0] * J.milnor_basis[b]);
        Bpoly[1].push_back(p);
        out.B[1].set_column(b, quotient_class_at_point(J, SP.s0, p));
    }
    for (int p = 2; p <= K; ++p) {
        for (int b = 0; b < mu; ++b) {
            const Rational& w = J.basis_weights[b];
            QVector col(mu);
            if (w != 0)
                for (int k = 1; k <= p - 1; ++k)
                    for (int j = 0; j <= p - k - 1; ++j) {
                        const auto& L = red.reduce(Arep[j] * Bpoly[k][b]);
                        add_to(col, z_coefficient(L, p - k - 1 - j), -w * k);
                    }
            out.B[p].set_column(b, col);
            Bpoly[p].push_back(representative(J, col));
        }
    }
    return out;
}

RSeries r_matrix(const GoodBasis& GB, const SemisimplePoint& SP, int K) {
    if (K < 1) throw std::invalid_argument("order must be at least 1");
    const JacobianData& J = *GB.J;
    if (SP.J != &J) throw std::invalid_argument("semisimple point and good basis refer to different singularities");
    const int mu = J.mu;
    ASeries A = a_series(SP, std::max(K - 2, 0));
    BSeries B = b_series(SP, A, K);
    MPoly A0 = representative(J, A.A[0]);
    QMatrix M0 = GB.M.at_zero();
    RSeries out;
    out.R.assign(K + 1, QMatrix(mu, mu));
    for (int b = 0; b < mu; ++b) {
        QVector coords = M0.column(b);
        MPoly a = representative(J, coords);
        MPoly g = a + (A0 * a).mul_z(1);
        for (int k = 2; k <= K; ++k)
            g -= representative(J, B.B[k] * coords).mul_z(k) * GB.weights[b];
        LatticeElement L = apply(GB.M_inverse, lattice_reduce_at_point(J, SP.s0, g));
        if (auto m = L.min_z(); m && *m < 0) throw std::logic_error("negative z-power in the R-matrix column");
        for (int k = 0; k <= K; ++k) out.R[k].set_column(b, z_coefficient(L, k));
    }
    return out;
}

RSeries r_matrix_dense(const QMatrix& B0, const QMatrix& Binf, int K) {
    const int mu = static_cast<int>(B0.rows());
    auto idx = [mu](int i, int j) { return static_cast<std::size_t>(i * mu + j); };
    RSeries out;
    out.R.push_back(QMatrix::identity(mu));
    std::vector<QMatrix> powers{QMatrix::identity(mu)};
    for (int p = 1; p < mu; ++p) powers.push_back(powers.back() * B0);
    for (int m = 0; m < K; ++m) {
        QMatrix A(mu * mu + mu, mu * mu);
        QVector rhs(mu * mu + mu);
        QMatrix shift = Binf;
        for (int i = 0; i < mu; ++i) shift(i, i) += m;
        QMatrix target = shift * out.R[m];
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j) {
                std::size_t r = idx(i, j);
                for (int l = 0; l < mu; ++l) {
                    A(r, idx(l, j)) += B0(i, l);
                    A(r, idx(i, l)) -= B0(l, j);
                }
                rhs[r] = target(i, j);
            }
        QMatrix next = Binf;
        for (int i = 0; i < mu; ++i) next(i, i) += m + 1;
        for (int p = 0; p < mu; ++p) {
            QMatrix C = powers[p] * next;
            std::size_t r = mu * mu + p;
            for (int i = 0; i < mu; ++i)
                for (int l = 0; l < mu; ++l) A(r, idx(l, i)) += C(i, l);
        }
        LinearSolution sol = solve_linear(A, rhs);
        if (!sol.consistent) throw std::logic_error("no solution at order " + std::to_string(m + 1));
        if (!sol.unique) throw std::logic_error("B0 does not have distinct eigenvalues");
        QMatrix X(mu, mu);
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j) X(i, j) = sol.x[idx(i, j)];
        out.R.push_back(std::move(X));
    }
    return out;
}

PointFrame point_frame(const FrobeniusData& FD, const std::vector<Rational>& s0) {
    const int mu = static_cast<int>(FD.E_weights.size());
    if (static_cast<int>(s0.size()) != mu) throw std::invalid_argument("point has the wrong dimension");
    PointFrame P;
    for (int b = 0; b < mu; ++b) P.t0.push_back(FD.flat.t_of_s[b].eval_s(s0).constant_term());
    P.T = QMatrix(mu, mu);
    for (int a = 0; a < mu; ++a)
        for (int l = 0; l < mu; ++l) P.T(l, a) = FD.psi[a][l].eval_s(s0).constant_term();
    BOperators B = b_operators(FD, P.t0);
    QMatrix Ti = inverse_or_throw(P.T, "the period map at s0");
    P.B0 = Ti * B.B0 * P.T;
    P.Binf = Ti * B.Binf * P.T;
    P.eta = P.T.transpose() * FD.eta * P.T;

    // Entries of t(s) have weight <= 1 and entries of Psi weight <= d, so
    // with positive weights the truncations are exact past these degrees.
    bool positive = true;
    Rational min_wt = 1;
    for (const auto& w : FD.E_weights) {
        positive = positive && w > 0;
        if (w > 0 && w < min_wt) min_wt = w;
    }
    P.exact = B.complete && positive && FD.order + 1 >= floor_to_long(Rational(1) / min_wt) &&
              FD.order >= floor_to_long(FD.d / min_wt);
    return P;
}

RCheck dubrovin_check(const RSeries& R, const QMatrix& B0, const QMatrix& Binf) {
    RCheck c;
    for (int m = 0; m < R.order(); ++m) {
        QMatrix shift = Binf;
        for (std::size_t i = 0; i < shift.rows(); ++i) shift(i, i) += m;
        QMatrix res = (B0 * R.R[m + 1] - R.R[m + 1] * B0) - shift * R.R[m];
        if (!res.is_zero() && c.ok) {
            c.ok = false;
            c.first_failure = m;
        }
        c.residuals.push_back(std::move(res));
    }
    return c;
}

RCheck symplectic_check(const RSeries& R, const QMatrix& eta) {
    QMatrix inv = inverse_or_throw(eta, "the metric");
    RCheck c;
    for (int n = 0; n <= R.order(); ++n) {
        QMatrix res(inv.rows(), inv.cols());
        for (int a = 0; a <= n; ++a) {
            QMatrix t = R.R[a] * inv * R.R[n - a].transpose();
            res = (n - a) % 2 ? res - t : res + t;
        }
        if (n == 0) res = res - inv;
        if (!res.is_zero() && c.ok) {
            c.ok = false;
            c.first_failure = n;
        }
        c.residuals.push_back(std::move(res));
    }
    return c;
}

ScaledPoint scaled_point(const JacobianData& J, const std::vector<Rational>& s0) {
    if (static_cast<int>(s0.size()) != J.mu) throw std::invalid_argument("point has the wrong dimension");
    long D = 1;
    for (const auto& w : J.basis_weights) D = std::lcm(D, w.get_den().get_si());
    ScaledPoint S;
    S.log2_lambda = static_cast<int>(D);
    for (int a = 0; a < J.mu; ++a) {
        Rational e = J.W.s[a] * D;
        S.point.push_back(s0[a] * rational_pow(Rational(2), e.get_num().get_si()));
    }
    return S;
}

RCheck homogeneity_check(const RSeries& at_s0, const RSeries& at_scaled, const std::vector<Rational>& basis_weights,
                         int log2_lambda) {
    RCheck c;
    const int mu = static_cast<int>(basis_weights.size());
    int K = std::min(at_s0.order(), at_scaled.order());
    for (int k = 0; k <= K; ++k) {
        QMatrix res(mu, mu);
        for (int a = 0; a < mu; ++a)
            for (int b = 0; b < mu; ++b) {
                Rational e = (basis_weights[b] - basis_weights[a] - k) * log2_lambda;
                if (!is_integer(e)) throw std::invalid_argument("scale factor does not clear the weight denominators");
                res(a, b) = at_scaled.R[k](a, b) - rational_pow(Rational(2), e.get_num().get_si()) * at_s0.R[k](a, b);
            }
        if (!res.is_zero() && c.ok) {
            c.ok = false;
            c.first_failure = k;
        }
        c.residuals.push_back(std::move(res));
    }
    return c;
}

RVerification verify_r(const RSeries& R, const RSeries& R_scaled, const PointFrame& frame,
                       const std::vector<Rational>& basis_weights, int log2_lambda) {
    RVerification v;
    v.r0_identity = !R.R.empty() && R.R[0] == QMatrix::identity(basis_weights.size());
    v.dubrovin = dubrovin_check(R, frame.B0, frame.Binf);
    v.symplectic = symplectic_check(R, frame.eta);
    v.homogeneity = homogeneity_check(R, R_scaled, basis_weights, log2_lambda);
    return v;
}

}  // namespace saito

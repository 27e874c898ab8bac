#include "saito/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace saito {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix size mismatch");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0) r(i, j) += a * o(k, j);
        }
    return r;
}

QVector QMatrix::operator*(const QVector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector size mismatch");
    QVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    QMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    QMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

QMatrix QMatrix::operator*(const Rational& c) const {
    QMatrix r = *this;
    for (auto& v : r.data_) v *= c;
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool QMatrix::is_zero() const {
    for (const auto& v : data_)
        if (v != 0) return false;
    return true;
}

QVector QMatrix::column(std::size_t j) const {
    QVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void QMatrix::set_column(std::size_t j, const QVector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v.at(i);
}

Rational determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    QMatrix a = m;
    std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < ncols && row < a.rows(); ++c) {
        std::size_t p = row;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
        Rational inv = 1 / a(row, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (a(row, j) != 0) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::optional<QMatrix> inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = m.rows();
    QMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1;
    }
    auto piv = rref(a, n);
    if (piv.size() != n) return std::nullopt;
    QMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = a(i, n + j);
    return r;
}

std::size_t rank(const QMatrix& m) {
    QMatrix a = m;
    return rref(a, a.cols()).size();
}

LinearSolution solve_linear(const QMatrix& A, const QVector& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("right-hand side size mismatch");
    std::size_t n = A.cols();
    QMatrix a(A.rows(), n + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = A(i, j);
        a(i, n) = b[i];
    }
    auto piv = rref(a, n);
    LinearSolution out;
    out.consistent = true;
    for (std::size_t i = piv.size(); i < a.rows(); ++i)
        if (a(i, n) != 0) out.consistent = false;
    out.unique = out.consistent && piv.size() == n;
    out.x.assign(n, 0);
    if (out.consistent)
        for (std::size_t r = 0; r < piv.size(); ++r) out.x[piv[r]] = a(r, n);
    return out;
}

QVector characteristic_polynomial(const QMatrix& m) {
    // Faddeev-LeVerrier.
    std::size_t n = m.rows();
    QVector c(n + 1);
    c[n] = 1;
    QMatrix Mk(n, n);  // M_0 = 0
    QMatrix I = QMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Mk = m * Mk + I * c[n - k + 1];
        QMatrix AM = m * Mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

int upoly_degree(const QVector& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

QVector upoly_derivative(const QVector& p) {
    QVector d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return d;
}

QVector upoly_gcd(QVector a, QVector b) {
    auto trim = [](QVector& p) {
        int d = upoly_degree(p);
        p.resize(static_cast<std::size_t>(d + 1));
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        while (upoly_degree(a) >= upoly_degree(b)) {
            int da = upoly_degree(a), db = upoly_degree(b);
            Rational f = a[da] / b[db];
            for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        Rational lc = a.back();
        for (auto& v : a) v /= lc;
    }
    return a;
}

std::string to_string(const QMatrix& m) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << m(i, j).get_str();
        out << "]";
    }
    out << "]";
    return out.str();
}

}  // namespace saito

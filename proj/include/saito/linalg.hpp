#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saito/rational.hpp"

namespace saito {

using QVector = std::vector<Rational>;

// Dense matrix over the rationals, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QVector operator*(const QVector& v) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const Rational& c) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& o) const;
    bool operator!=(const QMatrix& o) const { return !(*this == o); }
    bool is_zero() const;
    QVector column(std::size_t j) const;
    void set_column(std::size_t j, const QVector& v);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

Rational determinant(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);
std::size_t rank(const QMatrix& m);

struct LinearSolution {
    bool consistent = false;
    bool unique = false;
    QVector x;  // one solution when consistent (free variables set to 0)
};

// Solves A x = b by exact Gauss-Jordan elimination; A may be non-square.
LinearSolution solve_linear(const QMatrix& A, const QVector& b);

// Characteristic polynomial det(lambda - M), coefficients from degree 0 upward.
QVector characteristic_polynomial(const QMatrix& m);

// Univariate helpers on coefficient vectors (degree 0 first).
QVector upoly_derivative(const QVector& p);
QVector upoly_gcd(QVector a, QVector b);  // monic
int upoly_degree(const QVector& p);

std::string to_string(const QMatrix& m);

}  // namespace saito

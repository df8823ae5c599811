#pragma once

// Exact arithmetic over Q: dense matrices with row reduction, subspace
// bookkeeping, and univariate polynomials with factorization.

#include <complex>
#include <optional>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ogus {

using QVector = std::vector<mpq_class>;

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVector row(std::size_t i) const;
    QMatrix transpose() const;
    bool is_zero() const;

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend bool operator==(const QMatrix& a, const QMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpq_class> data_;
};

QMatrix scale(const QMatrix& a, const mpq_class& c);
QVector apply(const QMatrix& a, const QVector& x);

struct RowEchelon {
    QMatrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(QMatrix a);
std::size_t rank(const QMatrix& a);
// Basis of {x : a x = 0}, one vector per free column.
std::vector<QVector> kernel(const QMatrix& a);
std::optional<QMatrix> inverse(const QMatrix& a);

// Subspaces of Q^dim are passed as spanning lists of vectors.
std::vector<QVector> span_basis(const std::vector<QVector>& vectors, std::size_t dim);
std::vector<QVector> intersect(const std::vector<QVector>& a, const std::vector<QVector>& b, std::size_t dim);
bool in_span(const QVector& v, const std::vector<QVector>& basis, std::size_t dim);
bool same_span(const std::vector<QVector>& a, const std::vector<QVector>& b, std::size_t dim);
// Scales to coprime integers with a positive first nonzero entry.
QVector primitive(const QVector& v);

std::string to_string(const mpq_class& q);

// Univariate polynomial, coefficients from the constant term upward.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<mpq_class> coeffs);
    static QPoly monomial(const mpq_class& c, std::size_t degree);
    static QPoly linear_root(const mpq_class& root);  // x - root

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<mpq_class>& coeffs() const noexcept { return c_; }
    mpq_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
    mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

    QPoly monic() const;
    QPoly derivative() const;
    mpq_class eval(const mpq_class& x) const;
    bool is_integral() const;  // every coefficient in Z

    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

QPoly pow(const QPoly& f, unsigned e);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);  // monic, or zero

// Numeric roots of a nonconstant polynomial (companion matrix eigenvalues).
std::vector<std::complex<double>> numeric_roots(const QPoly& f);

// Monic irreducible factors over Q with multiplicities, ordered by
// (degree, coefficients). Degree of each squarefree part is capped at 12.
std::vector<std::pair<QPoly, int>> factor(const QPoly& f);

// Characteristic polynomial det(x - a) of a square rational matrix.
QPoly charpoly(const QMatrix& a);
QMatrix eval(const QPoly& f, const QMatrix& a);
QMatrix companion(const QPoly& monic);

}  // namespace ogus

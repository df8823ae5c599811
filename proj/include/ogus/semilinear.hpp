#pragma once

// sigma^e-semilinear operators F(x) = A sigma^e(x) on K_v^dim.

#include <cstddef>
#include <optional>

#include "ogus/padic.hpp"

namespace ogus {

// p^(-denom_exp) * numer: a matrix over K_v with one global denominator.
struct FracMatrix {
    PadicMatrix numer;
    int denom_exp = 0;

    static FracMatrix integral(PadicMatrix m) { return {std::move(m), 0}; }
    static FracMatrix identity(const ContextPtr& ctx, std::size_t n) { return {PadicMatrix::identity(ctx, n), 0}; }

    std::size_t rows() const noexcept { return numer.rows(); }
    std::size_t cols() const noexcept { return numer.cols(); }
    const ContextPtr& context() const noexcept { return numer.context(); }

    PadicFraction entry(std::size_t i, std::size_t j) const;
    // Valuation of the smallest entry over K_v, nullopt for the zero matrix.
    std::optional<int> min_valuation() const;
    // The integral matrix, when every entry lies in W(k). Throws NotInDomain.
    PadicMatrix to_integral() const;
    FracMatrix frobenius_pow(int e) const { return {numer.frobenius_pow(e), denom_exp}; }
    FracMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        return {numer.block(r0, c0, nr, nc), denom_exp};
    }
    // Same value, written over p^(-new_exp); new_exp >= denom_exp.
    FracMatrix with_denominator(int new_exp) const;
};

FracMatrix operator*(const FracMatrix& a, const FracMatrix& b);
FracMatrix operator+(const FracMatrix& a, const FracMatrix& b);
FracMatrix operator-(const FracMatrix& a, const FracMatrix& b);

class SemilinearOperator {
public:
    // twist is reduced mod n.
    SemilinearOperator(FracMatrix matrix, int twist);
    static SemilinearOperator identity(const ContextPtr& ctx, std::size_t dim, int twist = 1);

    const FracMatrix& matrix() const noexcept { return a_; }
    int twist() const noexcept { return twist_; }
    std::size_t dim() const noexcept { return a_.rows(); }
    const ContextPtr& context() const noexcept { return a_.context(); }

    // F(x) for a column vector x, given as a dim x 1 matrix.
    FracMatrix apply(const FracMatrix& x) const;

private:
    FracMatrix a_;
    int twist_;
};

// F o G: matrix A_F sigma^(e_F)(A_G), twist e_F + e_G. Throws DimensionMismatch.
SemilinearOperator compose(const SemilinearOperator& f, const SemilinearOperator& g);
// F^n for twist-1 F: the K_v-linear operator (twist 0).
SemilinearOperator linearize(const SemilinearOperator& f);
// p^(-k) F.
SemilinearOperator twist_op(const SemilinearOperator& f, int k);

struct CommuteWitness {
    std::size_t row = 0;
    std::size_t col = 0;
    PadicFraction discrepancy;  // (X A_M - A_N sigma(X))_{row,col}
    int valuation = 0;          // its valuation over K_v
};

struct CommuteResult {
    bool ok = true;
    int checked_precision = 0;  // absolute digits of the numerators compared
    std::optional<CommuteWitness> witness;
};

// Whether X A_M = A_N sigma(X) modulo p^(m - tolerance) in the common
// numerator scale. The witness is the first entry of largest discrepancy.
CommuteResult commutes(const FracMatrix& x, const SemilinearOperator& fm, const SemilinearOperator& fn,
                       int tolerance_digits);

}  // namespace ogus

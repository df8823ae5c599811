#pragma once

// Truncated arithmetic in W(k)/p^m for k = F_p or F_{p^2}.
//
// W(F_{p^2}) is modelled as Z_p[x]/(x^2 - d) with d a quadratic non-residue
// mod p, so an element is c0 + c1*g with g^2 = d. Every element carries an
// absolute precision: it is known modulo p^precision, and arithmetic only
// ever reports digits it can guarantee.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ogus {

class PadicContext;
using ContextPtr = std::shared_ptr<const PadicContext>;

class PadicContext {
public:
    // p odd prime, n in {1, 2}, m >= 4. For n = 2, d must be a quadratic
    // non-residue mod p (it is ignored for n = 1).
    static ContextPtr make(long p, int n, int m, long d = 0);

    long p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    const mpz_class& d() const noexcept { return d_; }
    const mpz_class& modulus() const noexcept { return powers_.back(); }
    const mpz_class& p_power(int e) const;  // 0 <= e <= m
    long residue_field_size() const noexcept { return n_ == 1 ? p_ : p_ * p_; }

    // sigma(g) = s0 + s1*g, found by Newton iteration on x^2 - d from g^p.
    const mpz_class& frobenius_g0() const noexcept { return sigma_g0_; }
    const mpz_class& frobenius_g1() const noexcept { return sigma_g1_; }

    bool same_as(const PadicContext& other) const noexcept
    {
        return p_ == other.p_ && n_ == other.n_ && m_ == other.m_ && d_ == other.d_;
    }

private:
    PadicContext(long p, int n, int m, long d);

    long p_;
    int n_;
    int m_;
    mpz_class d_;
    std::vector<mpz_class> powers_;
    mpz_class sigma_g0_;
    mpz_class sigma_g1_;
};

// v_p of a nonzero integer.
int valuation(const mpz_class& x, long p);
bool is_prime(long n);

class PadicElement {
public:
    explicit PadicElement(ContextPtr ctx);  // exact zero
    static PadicElement from_int(ContextPtr ctx, const mpz_class& value);
    // The p-adic integer c0 + c1*g; precision is clamped to m.
    static PadicElement from_coords(ContextPtr ctx, const mpz_class& c0, const mpz_class& c1, int precision);
    static PadicElement generator(ContextPtr ctx);  // g (n = 2 only)

    const ContextPtr& context() const noexcept { return ctx_; }
    const mpz_class& c0() const noexcept { return c0_; }
    const mpz_class& c1() const noexcept { return c1_; }
    int precision() const noexcept { return prec_; }

    // Largest e with p^e | x, or nullopt when x vanishes at its precision.
    std::optional<int> valuation() const;
    // min(valuation, precision): a lower bound that is always finite.
    int valuation_bound() const;
    bool is_zero() const { return !valuation().has_value(); }
    bool is_unit() const { return valuation() == 0; }

    PadicElement frobenius() const;
    PadicElement frobenius_pow(int e) const;  // sigma^e, e taken mod n
    PadicElement inverse() const;             // throws NotAUnit
    PadicElement pow(unsigned long e) const;
    PadicElement with_precision(int precision) const;  // only lowers
    PadicElement times_p_power(int e) const;          // e >= 0
    PadicElement residue() const { return with_precision(1); }

    PadicElement operator-() const;
    friend PadicElement operator+(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator-(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator*(const PadicElement& a, const PadicElement& b);
    PadicElement& operator+=(const PadicElement& b) { return *this = *this + b; }
    PadicElement& operator-=(const PadicElement& b) { return *this = *this - b; }
    PadicElement& operator*=(const PadicElement& b) { return *this = *this * b; }

    // Equal at the smaller of the two precisions.
    friend bool operator==(const PadicElement& a, const PadicElement& b) { return (a - b).is_zero(); }

    // Base-p digits, least significant first, per coordinate.
    std::string digits() const;

private:
    PadicElement(ContextPtr ctx, mpz_class c0, mpz_class c1, int prec);
    void normalize();

    ContextPtr ctx_;
    mpz_class c0_;
    mpz_class c1_;
    int prec_;
};

// p^valuation * unit, the elements of W(k)[1/p]. The unit part has
// valuation 0 or is zero; its precision is the relative precision.
class PadicFraction {
public:
    explicit PadicFraction(const PadicElement& x);
    PadicFraction(const PadicElement& unit, int valuation);

    const PadicElement& unit_part() const noexcept { return unit_; }
    int valuation() const noexcept { return val_; }
    bool is_zero() const { return unit_.is_zero(); }
    // Absolute precision: the value is known modulo p^absolute_precision.
    int absolute_precision() const noexcept { return val_ + unit_.precision(); }

    PadicFraction shifted(int k) const;  // multiply by p^k
    PadicElement to_integral() const;    // throws NotInDomain when valuation < 0
    PadicFraction inverse() const;

    friend PadicFraction operator*(const PadicFraction& a, const PadicFraction& b);
    friend PadicFraction operator+(const PadicFraction& a, const PadicFraction& b);
    friend PadicFraction operator-(const PadicFraction& a, const PadicFraction& b);

    std::string to_string() const;

private:
    PadicElement unit_;
    int val_;
};

// Dense matrix over W(k)/p^m.
class PadicMatrix {
public:
    PadicMatrix(ContextPtr ctx, std::size_t rows, std::size_t cols);
    static PadicMatrix identity(ContextPtr ctx, std::size_t n);

    const ContextPtr& context() const noexcept { return ctx_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    PadicElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const PadicElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    PadicMatrix frobenius_pow(int e) const;  // entrywise sigma^e
    PadicMatrix times_p_power(int e) const;
    PadicMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    int min_precision() const;
    std::optional<int> min_valuation() const;  // nullopt if all entries vanish
    bool is_zero() const { return !min_valuation().has_value(); }

    friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b);
    friend PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b);
    friend PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b);
    PadicMatrix scaled(const PadicElement& c) const;

private:
    ContextPtr ctx_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<PadicElement> data_;
};

// Smith-form elimination over the discrete valuation ring W(k). Column
// operations are accumulated in `column_transform`, so a x = 0 becomes
// diag(p^pivot_valuations) (V^{-1} x) = 0.
struct SmithForm {
    std::vector<int> pivot_valuations;  // one per nonzero pivot, in order
    PadicMatrix column_transform;       // V, invertible cols x cols
    int working_precision;              // precision floor of the elimination
};

SmithForm smith_form(const PadicMatrix& a);

// Kernel over K = W(k)[1/p]. Pivots with valuation >= working_precision -
// guard count as zero. When expected_dim is given, a different count raises
// PrecisionExhausted. Returned columns form a basis of the kernel.
std::vector<std::vector<PadicElement>> kernel(const PadicMatrix& a, int guard, std::optional<std::size_t> expected_dim = {});
// Rank over K with the same zero test.
std::size_t rank(const PadicMatrix& a, int guard);

// Solves a x = b for square a invertible over W(k) (unit determinant).
std::vector<PadicElement> solve_unimodular(const PadicMatrix& a, const std::vector<PadicElement>& b);

}  // namespace ogus

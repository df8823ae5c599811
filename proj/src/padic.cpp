#include "ogus/padic.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ogus/errors.hpp"

namespace ogus {

namespace {

mpz_class mod(const mpz_class& x, const mpz_class& m)
{
    mpz_class r = x % m;
    if (r < 0)
        r += m;
    return r;
}

mpz_class powmod(const mpz_class& b, const mpz_class& e, const mpz_class& m)
{
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Raw arithmetic in (Z/M)[g]/(g^2 - d), used before elements exist.
struct Pair {
    mpz_class a, b;
};

Pair pair_mul(const Pair& x, const Pair& y, const mpz_class& d, const mpz_class& m)
{
    return {mod(x.a * y.a + d * x.b * y.b, m), mod(x.a * y.b + x.b * y.a, m)};
}

Pair pair_inv(const Pair& x, const mpz_class& d, const mpz_class& m)
{
    const mpz_class norm = mod(x.a * x.a - d * x.b * x.b, m);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), norm.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorKind::NotAUnit, "frobenius lift: non-invertible iterate");
    return {mod(x.a * inv, m), mod(-x.b * inv, m)};
}

}  // namespace

int valuation(const mpz_class& x, long p)
{
    if (x == 0)
        throw Error(ErrorKind::InvalidArgument, "valuation of zero integer");
    mpz_class rest;
    const mpz_class pz = p;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

// --------------------------------------------------------------- context

PadicContext::PadicContext(long p, int n, int m, long d) : p_(p), n_(n), m_(m)
{
    if (p == 2)
        throw Error(ErrorKind::RamifiedOrEvenPlace, "PadicContext: p = 2 is not supported");
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidArgument, "PadicContext: p must be an odd prime");
    if (n != 1 && n != 2)
        throw Error(ErrorKind::InvalidArgument, "PadicContext: residue degree must be 1 or 2");
    if (m < 4)
        throw Error(ErrorKind::InvalidArgument, "PadicContext: precision must be at least 4");
    powers_.reserve(static_cast<std::size_t>(m) + 1);
    powers_.emplace_back(1);
    for (int e = 1; e <= m; ++e)
        powers_.push_back(powers_.back() * p);
    const mpz_class& big = powers_.back();
    if (n == 1) {
        d_ = 0;
        return;
    }
    d_ = mod(mpz_class(d), big);
    const mpz_class pz = p;
    const mpz_class euler = powmod(mod(d_, pz), (pz - 1) / 2, pz);
    if (euler != pz - 1)
        throw Error(ErrorKind::InvalidArgument, "PadicContext: d must be a quadratic non-residue mod p");

    // Newton on y^2 - d starting from g^p; it must land on -g.
    Pair y{0, 1}, acc{1, 0};
    for (long i = 0; i < p; ++i)
        acc = pair_mul(acc, y, d_, big);
    y = acc;
    for (int iter = 0; iter < 2 * m + 8; ++iter) {
        const Pair sq = pair_mul(y, y, d_, big);
        const Pair f{mod(sq.a - d_, big), sq.b};
        if (f.a == 0 && f.b == 0)
            break;
        const Pair inv2y = pair_inv({mod(2 * y.a, big), mod(2 * y.b, big)}, d_, big);
        const Pair step = pair_mul(f, inv2y, d_, big);
        y = {mod(y.a - step.a, big), mod(y.b - step.b, big)};
    }
    sigma_g0_ = y.a;
    sigma_g1_ = y.b;
    if (sigma_g0_ != 0 || sigma_g1_ != big - 1)
        throw Error(ErrorKind::InvalidArgument, "PadicContext: Frobenius lift did not converge to -g");
}

ContextPtr PadicContext::make(long p, int n, int m, long d)
{
    return ContextPtr(new PadicContext(p, n, m, d));
}

const mpz_class& PadicContext::p_power(int e) const
{
    if (e < 0 || e > m_)
        throw Error(ErrorKind::InvalidArgument, "p_power: exponent out of range");
    return powers_[static_cast<std::size_t>(e)];
}

// --------------------------------------------------------------- element

PadicElement::PadicElement(ContextPtr ctx) : ctx_(std::move(ctx)), c0_(0), c1_(0), prec_(ctx_->m()) {}

PadicElement::PadicElement(ContextPtr ctx, mpz_class c0, mpz_class c1, int prec)
    : ctx_(std::move(ctx)), c0_(std::move(c0)), c1_(std::move(c1)), prec_(std::clamp(prec, 0, ctx_->m()))
{
    normalize();
}

void PadicElement::normalize()
{
    const mpz_class& pm = ctx_->p_power(prec_);
    c0_ = mod(c0_, pm);
    c1_ = ctx_->n() == 1 ? mpz_class(0) : mod(c1_, pm);
}

PadicElement PadicElement::from_int(ContextPtr ctx, const mpz_class& value)
{
    const int m = ctx->m();
    return PadicElement(std::move(ctx), value, 0, m);
}

PadicElement PadicElement::from_coords(ContextPtr ctx, const mpz_class& c0, const mpz_class& c1, int precision)
{
    if (ctx->n() == 1 && c1 != 0)
        throw Error(ErrorKind::InvalidArgument, "from_coords: second coordinate requires n = 2");
    return PadicElement(std::move(ctx), c0, c1, precision);
}

PadicElement PadicElement::generator(ContextPtr ctx)
{
    if (ctx->n() != 2)
        throw Error(ErrorKind::InvalidArgument, "generator: only defined for n = 2");
    const int m = ctx->m();
    return PadicElement(std::move(ctx), 0, 1, m);
}

std::optional<int> PadicElement::valuation() const
{
    if (prec_ == 0)
        return std::nullopt;
    std::optional<int> v;
    if (c0_ != 0)
        v = ogus::valuation(c0_, ctx_->p());
    if (c1_ != 0) {
        const int v1 = ogus::valuation(c1_, ctx_->p());
        v = v ? std::min(*v, v1) : v1;
    }
    return v;
}

int PadicElement::valuation_bound() const
{
    return valuation().value_or(prec_);
}

PadicElement PadicElement::frobenius() const
{
    if (ctx_->n() == 1)
        return *this;
    return PadicElement(ctx_, c0_ + c1_ * ctx_->frobenius_g0(), c1_ * ctx_->frobenius_g1(), prec_);
}

PadicElement PadicElement::frobenius_pow(int e) const
{
    const int n = ctx_->n();
    const int r = ((e % n) + n) % n;
    return r == 0 ? *this : frobenius();
}

PadicElement PadicElement::inverse() const
{
    if (!is_unit())
        throw Error(ErrorKind::NotAUnit, "inverse of a non-unit");
    const mpz_class& pm = ctx_->p_power(prec_);
    mpz_class norm = ctx_->n() == 1 ? c0_ : mod(c0_ * c0_ - ctx_->d() * c1_ * c1_, pm);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), norm.get_mpz_t(), pm.get_mpz_t());
    if (ctx_->n() == 1)
        return PadicElement(ctx_, inv, 0, prec_);
    return PadicElement(ctx_, c0_ * inv, -c1_ * inv, prec_);
}

PadicElement PadicElement::pow(unsigned long e) const
{
    PadicElement result = from_int(ctx_, 1);
    PadicElement base = *this;
    while (e > 0) {
        if (e & 1UL)
            result *= base;
        e >>= 1U;
        if (e > 0)
            base *= base;
    }
    return result;
}

PadicElement PadicElement::with_precision(int precision) const
{
    return PadicElement(ctx_, c0_, c1_, std::min(prec_, precision));
}

PadicElement PadicElement::times_p_power(int e) const
{
    if (e < 0)
        throw Error(ErrorKind::InvalidArgument, "times_p_power: negative exponent (use PadicFraction)");
    if (e >= ctx_->m())
        return PadicElement(ctx_, 0, 0, ctx_->m());
    const mpz_class& pe = ctx_->p_power(e);
    return PadicElement(ctx_, c0_ * pe, c1_ * pe, prec_ + e);
}

PadicElement PadicElement::operator-() const
{
    return PadicElement(ctx_, -c0_, -c1_, prec_);
}

namespace {

void require_same(const PadicElement& a, const PadicElement& b)
{
    if (a.context() != b.context() && !a.context()->same_as(*b.context()))
        throw Error(ErrorKind::InvalidArgument, "p-adic operands from different contexts");
}

}  // namespace

PadicElement operator+(const PadicElement& a, const PadicElement& b)
{
    require_same(a, b);
    return PadicElement(a.ctx_, a.c0_ + b.c0_, a.c1_ + b.c1_, std::min(a.prec_, b.prec_));
}

PadicElement operator-(const PadicElement& a, const PadicElement& b)
{
    require_same(a, b);
    return PadicElement(a.ctx_, a.c0_ - b.c0_, a.c1_ - b.c1_, std::min(a.prec_, b.prec_));
}

PadicElement operator*(const PadicElement& a, const PadicElement& b)
{
    require_same(a, b);
    const int prec = std::min(a.prec_ + b.valuation_bound(), b.prec_ + a.valuation_bound());
    if (a.ctx_->n() == 1)
        return PadicElement(a.ctx_, a.c0_ * b.c0_, 0, prec);
    return PadicElement(a.ctx_, a.c0_ * b.c0_ + a.ctx_->d() * a.c1_ * b.c1_, a.c0_ * b.c1_ + a.c1_ * b.c0_, prec);
}

std::string PadicElement::digits() const
{
    auto coord = [&](mpz_class x) {
        std::ostringstream os;
        for (int i = 0; i < prec_; ++i) {
            const mpz_class r = x % ctx_->p();
            x /= ctx_->p();
            os << (i ? " " : "") << r.get_str();
        }
        return os.str();
    };
    std::ostringstream os;
    os << coord(c0_);
    if (ctx_->n() == 2)
        os << " ; " << coord(c1_);
    os << " | O(" << ctx_->p() << "^" << prec_ << ")";
    return os.str();
}

// -------------------------------------------------------------- fraction

PadicFraction::PadicFraction(const PadicElement& x) : unit_(x), val_(0)
{
    const auto v = x.valuation();
    if (!v || *v == 0)
        return;
    const mpz_class& pv = x.context()->p_power(*v);
    unit_ = PadicElement::from_coords(x.context(), x.c0() / pv, x.c1() / pv, x.precision() - *v);
    val_ = *v;
}

PadicFraction::PadicFraction(const PadicElement& unit, int valuation) : PadicFraction(unit)
{
    val_ += valuation;
}

PadicFraction PadicFraction::shifted(int k) const
{
    PadicFraction r = *this;
    r.val_ += k;
    return r;
}

PadicElement PadicFraction::to_integral() const
{
    if (unit_.is_zero()) {
        const int prec = std::max(0, absolute_precision());
        return PadicElement::from_coords(unit_.context(), 0, 0, prec);
    }
    if (val_ < 0)
        throw Error(ErrorKind::NotInDomain, "to_integral: negative valuation");
    return unit_.times_p_power(val_);
}

PadicFraction PadicFraction::inverse() const
{
    return PadicFraction(unit_.inverse(), -val_);
}

PadicFraction operator*(const PadicFraction& a, const PadicFraction& b)
{
    if (a.is_zero() || b.is_zero()) {
        // absolute precision of a product with an (inexact) zero
        const int prec = std::min(a.absolute_precision() + (b.is_zero() ? b.absolute_precision() : b.val_),
                                  b.absolute_precision() + (a.is_zero() ? a.absolute_precision() : a.val_));
        const int v = std::min(prec, 0);
        return PadicFraction(PadicElement::from_coords(a.unit_.context(), 0, 0, prec - v), v);
    }
    return PadicFraction(a.unit_ * b.unit_, a.val_ + b.val_);
}

PadicFraction operator+(const PadicFraction& a, const PadicFraction& b)
{
    const int v = std::min(a.val_, b.val_);
    const PadicElement ua = a.unit_.times_p_power(a.val_ - v);
    const PadicElement ub = b.unit_.times_p_power(b.val_ - v);
    return PadicFraction(ua + ub, v);
}

PadicFraction operator-(const PadicFraction& a, const PadicFraction& b)
{
    return a + PadicFraction(-b.unit_, b.val_);
}

std::string PadicFraction::to_string() const
{
    std::ostringstream os;
    if (val_ != 0 && !is_zero())
        os << unit_.context()->p() << "^" << val_ << " * ";
    os << unit_.digits();
    return os.str();
}

// ---------------------------------------------------------------- matrix

PadicMatrix::PadicMatrix(ContextPtr ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, PadicElement(ctx))
{
}

PadicMatrix PadicMatrix::identity(ContextPtr ctx, std::size_t n)
{
    PadicMatrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = PadicElement::from_int(ctx, 1);
    return m;
}

PadicMatrix PadicMatrix::frobenius_pow(int e) const
{
    PadicMatrix r = *this;
    for (auto& x : r.data_)
        x = x.frobenius_pow(e);
    return r;
}

PadicMatrix PadicMatrix::times_p_power(int e) const
{
    PadicMatrix r = *this;
    for (auto& x : r.data_)
        x = x.times_p_power(e);
    return r;
}

PadicMatrix PadicMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw Error(ErrorKind::DimensionMismatch, "block out of range");
    PadicMatrix b(ctx_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

int PadicMatrix::min_precision() const
{
    int m = ctx_->m();
    for (const auto& x : data_)
        m = std::min(m, x.precision());
    return m;
}

std::optional<int> PadicMatrix::min_valuation() const
{
    std::optional<int> v;
    for (const auto& x : data_)
        if (const auto vx = x.valuation())
            v = v ? std::min(*v, *vx) : *vx;
    return v;
}

PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorKind::DimensionMismatch, "PadicMatrix product: inner dimensions differ");
    PadicMatrix c(a.ctx_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            PadicElement acc(a.ctx_);
            for (std::size_t k = 0; k < a.cols_; ++k)
                acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorKind::DimensionMismatch, "PadicMatrix sum: shapes differ");
    PadicMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] += b.data_[i];
    return c;
}

PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorKind::DimensionMismatch, "PadicMatrix difference: shapes differ");
    PadicMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] -= b.data_[i];
    return c;
}

PadicMatrix PadicMatrix::scaled(const PadicElement& c) const
{
    PadicMatrix r = *this;
    for (auto& x : r.data_)
        x *= c;
    return r;
}

// ------------------------------------------------------ Smith elimination

SmithForm smith_form(const PadicMatrix& a)
{
    PadicMatrix w = a;
    PadicMatrix v = PadicMatrix::identity(a.context(), a.cols());
    std::vector<int> pivots;
    const std::size_t steps = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < steps; ++t) {
        std::optional<int> best;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < w.rows(); ++i)
            for (std::size_t j = t; j < w.cols(); ++j)
                if (const auto vij = w(i, j).valuation(); vij && (!best || *vij < *best)) {
                    best = vij;
                    bi = i;
                    bj = j;
                }
        if (!best)
            break;
        if (bi != t)
            for (std::size_t j = 0; j < w.cols(); ++j)
                std::swap(w(bi, j), w(t, j));
        if (bj != t) {
            for (std::size_t i = 0; i < w.rows(); ++i)
                std::swap(w(i, bj), w(i, t));
            for (std::size_t i = 0; i < v.rows(); ++i)
                std::swap(v(i, bj), v(i, t));
        }
        const int e = *best;
        const PadicElement uinv = PadicFraction(w(t, t)).unit_part().inverse();
        for (std::size_t i = t + 1; i < w.rows(); ++i) {
            if (w(i, t).is_zero())
                continue;
            const PadicElement f = PadicFraction(w(i, t)).shifted(-e).to_integral() * uinv;
            for (std::size_t j = t; j < w.cols(); ++j)
                w(i, j) -= f * w(t, j);
        }
        for (std::size_t j = t + 1; j < w.cols(); ++j) {
            if (w(t, j).is_zero())
                continue;
            const PadicElement f = PadicFraction(w(t, j)).shifted(-e).to_integral() * uinv;
            for (std::size_t i = t; i < w.rows(); ++i)
                w(i, j) -= f * w(i, t);
            for (std::size_t i = 0; i < v.rows(); ++i)
                v(i, j) -= f * v(i, t);
        }
        pivots.push_back(e);
    }
    const int wp = std::min(w.min_precision(), v.min_precision());
    return SmithForm{std::move(pivots), std::move(v), wp};
}

namespace {

std::size_t nonzero_pivots(const SmithForm& sf, int guard)
{
    std::size_t r = 0;
    for (int e : sf.pivot_valuations)
        if (e < sf.working_precision - guard)
            ++r;
    return r;
}

}  // namespace

std::vector<std::vector<PadicElement>> kernel(const PadicMatrix& a, int guard, std::optional<std::size_t> expected_dim)
{
    const SmithForm sf = smith_form(a);
    if (sf.working_precision - guard <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "kernel: no precision left after elimination");
    const std::size_t r = nonzero_pivots(sf, guard);
    const std::size_t dim = a.cols() - r;
    if (expected_dim && *expected_dim != dim)
        throw Error(ErrorKind::PrecisionExhausted, "kernel: rank ambiguous at working precision (found dimension "
                                                       + std::to_string(dim) + ", expected "
                                                       + std::to_string(*expected_dim) + ")");
    std::vector<std::vector<PadicElement>> basis;
    for (std::size_t t = r; t < a.cols(); ++t) {
        std::vector<PadicElement> col;
        col.reserve(a.cols());
        for (std::size_t i = 0; i < a.cols(); ++i)
            col.push_back(sf.column_transform(i, t));
        basis.push_back(std::move(col));
    }
    return basis;
}

std::size_t rank(const PadicMatrix& a, int guard)
{
    return nonzero_pivots(smith_form(a), guard);
}

std::vector<PadicElement> solve_unimodular(const PadicMatrix& a, const std::vector<PadicElement>& b)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw Error(ErrorKind::DimensionMismatch, "solve_unimodular: shapes");
    PadicMatrix w = a;
    std::vector<PadicElement> rhs = b;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && !w(piv, c).is_unit())
            ++piv;
        if (piv == n)
            throw Error(ErrorKind::NotAUnit, "solve_unimodular: matrix is singular mod p");
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(w(piv, j), w(c, j));
            std::swap(rhs[piv], rhs[c]);
        }
        const PadicElement inv = w(c, c).inverse();
        for (std::size_t j = c; j < n; ++j)
            w(c, j) *= inv;
        rhs[c] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w(i, c).is_zero())
                continue;
            const PadicElement f = w(i, c);
            for (std::size_t j = c; j < n; ++j)
                w(i, j) -= f * w(c, j);
            rhs[i] -= f * rhs[c];
        }
    }
    return rhs;
}

}  // namespace ogus

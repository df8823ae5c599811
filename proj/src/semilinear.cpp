#include "ogus/semilinear.hpp"

#include <algorithm>

#include "ogus/errors.hpp"

namespace ogus {

PadicFraction FracMatrix::entry(std::size_t i, std::size_t j) const
{
    return PadicFraction(numer(i, j)).shifted(-denom_exp);
}

std::optional<int> FracMatrix::min_valuation() const
{
    const auto v = numer.min_valuation();
    if (!v)
        return std::nullopt;
    return *v - denom_exp;
}

PadicMatrix FracMatrix::to_integral() const
{
    if (denom_exp <= 0)
        return numer.times_p_power(-denom_exp);
    const auto v = numer.min_valuation();
    if (v && *v < denom_exp)
        throw Error(ErrorKind::NotInDomain, "FracMatrix::to_integral: entry of negative valuation");
    PadicMatrix out(context(), rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            out(i, j) = entry(i, j).to_integral();
    return out;
}

FracMatrix FracMatrix::with_denominator(int new_exp) const
{
    if (new_exp < denom_exp)
        throw Error(ErrorKind::InvalidArgument, "with_denominator: can only enlarge the denominator");
    return {numer.times_p_power(new_exp - denom_exp), new_exp};
}

FracMatrix operator*(const FracMatrix& a, const FracMatrix& b)
{
    return {a.numer * b.numer, a.denom_exp + b.denom_exp};
}

FracMatrix operator+(const FracMatrix& a, const FracMatrix& b)
{
    const int d = std::max(a.denom_exp, b.denom_exp);
    return {a.with_denominator(d).numer + b.with_denominator(d).numer, d};
}

FracMatrix operator-(const FracMatrix& a, const FracMatrix& b)
{
    const int d = std::max(a.denom_exp, b.denom_exp);
    return {a.with_denominator(d).numer - b.with_denominator(d).numer, d};
}

SemilinearOperator::SemilinearOperator(FracMatrix matrix, int twist) : a_(std::move(matrix)), twist_(0)
{
    if (a_.rows() != a_.cols())
        throw Error(ErrorKind::DimensionMismatch, "SemilinearOperator: matrix not square");
    const int n = a_.context()->n();
    twist_ = ((twist % n) + n) % n;
}

SemilinearOperator SemilinearOperator::identity(const ContextPtr& ctx, std::size_t dim, int twist)
{
    return {FracMatrix::identity(ctx, dim), twist};
}

FracMatrix SemilinearOperator::apply(const FracMatrix& x) const
{
    if (x.rows() != dim())
        throw Error(ErrorKind::DimensionMismatch, "SemilinearOperator::apply: vector length");
    return a_ * x.frobenius_pow(twist_);
}

SemilinearOperator compose(const SemilinearOperator& f, const SemilinearOperator& g)
{
    if (f.dim() != g.dim() || !f.context()->same_as(*g.context()))
        throw Error(ErrorKind::DimensionMismatch, "compose: operators on different spaces");
    return {f.matrix() * g.matrix().frobenius_pow(f.twist()), f.twist() + g.twist()};
}

SemilinearOperator linearize(const SemilinearOperator& f)
{
    const int n = f.context()->n();
    if (f.twist() != 1 % n)
        throw Error(ErrorKind::InvalidArgument, "linearize: operator must have twist 1");
    SemilinearOperator out = f;
    for (int i = 1; i < n; ++i)
        out = compose(out, f);
    return out;
}

SemilinearOperator twist_op(const SemilinearOperator& f, int k)
{
    FracMatrix a = f.matrix();
    a.denom_exp += k;
    return {a, f.twist()};
}

CommuteResult commutes(const FracMatrix& x, const SemilinearOperator& fm, const SemilinearOperator& fn,
                       int tolerance_digits)
{
    if (x.rows() != fn.dim() || x.cols() != fm.dim())
        throw Error(ErrorKind::DimensionMismatch, "commutes: X has the wrong shape");
    if (!fm.context()->same_as(*fn.context()) || !x.context()->same_as(*fm.context()))
        throw Error(ErrorKind::DimensionMismatch, "commutes: operators over different contexts");
    const FracMatrix diff = x * fm.matrix() - fn.matrix() * x.frobenius_pow(fn.twist());
    const int m = fm.context()->m();
    const int target = m - tolerance_digits;

    CommuteResult res;
    res.checked_precision = std::min(diff.numer.min_precision(), target);
    for (std::size_t i = 0; i < diff.rows(); ++i) {
        for (std::size_t j = 0; j < diff.cols(); ++j) {
            const PadicElement& e = diff.numer(i, j);
            if (e.with_precision(target).is_zero())
                continue;
            const int v = *e.valuation() - diff.denom_exp;
            if (!res.witness || v < res.witness->valuation)
                res.witness = CommuteWitness{i, j, diff.entry(i, j), v};
            res.ok = false;
        }
    }
    return res;
}

}  // namespace ogus

#include "ogus/logexp.hpp"

#include <algorithm>

#include "ogus/errors.hpp"

namespace ogus {

int log_precision_loss(long p, int m)
{
    int e = 0;
    long pe = 1;
    while (pe < m) {
        pe *= p;
        ++e;
    }
    return e;
}

LogValue plog(const PadicElement& x)
{
    const ContextPtr& ctx = x.context();
    const PadicElement one = PadicElement::from_int(ctx, 1);
    const PadicElement y = x - one;
    if (y.valuation_bound() < 1)
        throw Error(ErrorKind::NotPrincipalUnit, "plog: argument is not 1 mod p");

    const int m = ctx->m();
    const long p = ctx->p();
    PadicElement sum(ctx);
    const int vy = y.valuation_bound();
    if (y.is_zero()) {
        // log(1) = 0, known to the precision of the input
        return {sum.with_precision(x.precision()), std::min(x.precision(), m - log_precision_loss(p, m))};
    }
    PadicElement power = y;
    for (long k = 1;; ++k) {
        // remaining terms have valuation >= k*vy - log_p(k)
        const int vk = valuation(mpz_class(k), p);
        PadicElement term = PadicFraction(power).shifted(-vk).to_integral();
        term *= PadicElement::from_int(ctx, k / static_cast<long>(mpz_class(ctx->p_power(vk)).get_si())).inverse();
        sum = (k % 2 == 1) ? sum + term : sum - term;
        const long next = k + 1;
        long lognext = 0;
        for (long t = next; t >= p; t /= p)
            ++lognext;
        if (next * vy - lognext >= m)
            break;
        power *= y;
    }
    const int guaranteed = std::min(sum.precision(), m - log_precision_loss(p, m));
    return {sum, guaranteed};
}

PadicElement pexp(const PadicElement& x)
{
    const ContextPtr& ctx = x.context();
    if (x.valuation_bound() < 1)
        throw Error(ErrorKind::NotInDomain, "pexp: valuation of argument below 1");
    const int m = ctx->m();
    const long p = ctx->p();
    const int vx = x.valuation_bound();
    PadicElement sum = PadicElement::from_int(ctx, 1);
    PadicElement term = sum;
    if (x.is_zero())
        return sum.with_precision(x.precision());
    for (long k = 1;; ++k) {
        // term_k = term_{k-1} * x / k
        const int vk = valuation(mpz_class(k), p);
        term = PadicFraction(term * x).shifted(-vk).to_integral();
        term *= PadicElement::from_int(ctx, k / static_cast<long>(mpz_class(ctx->p_power(vk)).get_si())).inverse();
        sum += term;
        // v(x^j / j!) >= j*vx - (j-1)/(p-1) for every later j
        const long next = k + 1;
        if (next * vx - (next - 1) / (p - 1) >= m)
            break;
    }
    return sum;
}

LogValue log_torus_unit(const PadicElement& a)
{
    if (!a.is_unit())
        throw Error(ErrorKind::NotAUnit, "log_torus_unit: argument is not a unit");
    const ContextPtr& ctx = a.context();
    const long q1 = ctx->residue_field_size() - 1;
    LogValue lg = plog(a.pow(static_cast<unsigned long>(q1)));
    lg.value *= PadicElement::from_int(ctx, q1).inverse();
    lg.guaranteed_precision = std::min(lg.guaranteed_precision, lg.value.precision());
    return lg;
}

}  // namespace ogus

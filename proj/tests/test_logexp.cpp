#include "doctest.h"
#include "support.hpp"

#include "ogus/logexp.hpp"

using namespace ogus;
using ogus::test::error_kind_of;

namespace {

PadicElement truncate(const PadicElement& x, int digits) { return x.with_precision(digits); }

}  // namespace

TEST_CASE("log and exp examples")
{
    auto ctx = PadicContext::make(5, 1, 4);
    CHECK(plog(PadicElement::from_int(ctx, 1)).value.is_zero());
    // 5 - 25/2 + 125/3 mod 625
    const LogValue l6 = plog(PadicElement::from_int(ctx, 6));
    CHECK(l6.value.c0() == 555);
    CHECK(l6.guaranteed_precision == 3);

    // contexts need m >= 4; the three-digit value is the truncation
    auto ctx3 = PadicContext::make(5, 1, 4);
    // 1 + 5 + 25/2 mod 125
    CHECK(pexp(PadicElement::from_int(ctx3, 5)).with_precision(3).c0() == 81);
    CHECK(pexp(PadicElement(ctx3)) == PadicElement::from_int(ctx3, 1));

    CHECK(error_kind_of([&] { plog(PadicElement::from_int(ctx, 2)); }) == ErrorKind::NotPrincipalUnit);
    CHECK(error_kind_of([&] { pexp(PadicElement::from_int(ctx, 2)); }) == ErrorKind::NotInDomain);
    CHECK(error_kind_of([&] { log_torus_unit(PadicElement::from_int(ctx, 10)); }) == ErrorKind::NotAUnit);

    const PadicElement x = log_Ga(PadicElement::from_int(ctx, 7));
    CHECK(x == PadicElement::from_int(ctx, 7));
}

TEST_CASE("torsion-kill logarithm examples")
{
    auto ctx = PadicContext::make(5, 1, 20);
    CHECK(log_torus_unit(PadicElement::from_int(ctx, -1)).value.is_zero());
    const LogValue l6 = log_torus_unit(PadicElement::from_int(ctx, 6));
    const LogValue p6 = plog(PadicElement::from_int(ctx, 6));
    const int g = std::min(l6.guaranteed_precision, p6.guaranteed_precision);
    CHECK(truncate(l6.value, g) == truncate(p6.value, g));
    const LogValue l2 = log_torus_unit(PadicElement::from_int(ctx, 2));
    const LogValue l16 = plog(PadicElement::from_int(ctx, 16));
    CHECK(truncate(l2.value * PadicElement::from_int(ctx, 4), l16.guaranteed_precision)
          == truncate(l16.value, l2.guaranteed_precision));
    CHECK(l2.value.valuation_bound() >= 1);

    auto ctx2 = PadicContext::make(5, 2, 20, 2);
    // a primitive 24th root of unity: the Teichmuller lift of g
    PadicElement zeta = PadicElement::generator(ctx2);
    for (int k = 0; k < 20; ++k)
        zeta = zeta.pow(25);
    CHECK(zeta.pow(24) == PadicElement::from_int(ctx2, 1));
    CHECK(log_torus_unit(zeta).value.is_zero());
}

TEST_CASE("log is a homomorphism and exp inverts it")
{
    for (long p : {3L, 5L, 7L, 11L}) {
        for (int n : {1, 2}) {
            auto ctx = PadicContext::make(p, n, 24, n == 2 ? (p == 7 ? 3 : 2) : 0);
            for (int t = 0; t < 50; ++t) {
                const PadicElement u = test::random_principal_unit(ctx);
                const PadicElement w = test::random_principal_unit(ctx);
                const LogValue lu = plog(u), lw = plog(w), luw = plog(u * w);
                const int g = std::min({lu.guaranteed_precision, lw.guaranteed_precision, luw.guaranteed_precision});
                CHECK(truncate(luw.value, g) == truncate(lu.value + lw.value, g));
                CHECK(truncate(pexp(lu.value), g) == truncate(u, g));
                const PadicElement x = test::random_element(ctx).times_p_power(1);
                CHECK(truncate(plog(pexp(x)).value, g) == truncate(x, g));
            }
        }
    }
}

TEST_CASE("Frobenius equivariance and power rule at an inert place")
{
    auto ctx = PadicContext::make(7, 2, 24, 3);
    for (int t = 0; t < 100; ++t) {
        const PadicElement a = test::random_unit(ctx);
        const LogValue la = log_torus_unit(a);
        const LogValue lsa = log_torus_unit(a.frobenius());
        const int g = std::min(la.guaranteed_precision, lsa.guaranteed_precision);
        CHECK(truncate(la.value.frobenius(), g) == truncate(lsa.value, g));
        const PadicElement u = test::random_principal_unit(ctx);
        CHECK(truncate(plog(u).value.frobenius(), g) == truncate(plog(u.frobenius()).value, g));
        for (int k = -3; k <= 3; ++k) {
            const PadicElement ak = k >= 0 ? a.pow(k) : a.inverse().pow(-k);
            const LogValue lk = log_torus_unit(ak);
            const int gk = std::min(g, lk.guaranteed_precision);
            CHECK(truncate(lk.value, gk) == truncate(la.value * PadicElement::from_int(ctx, k), gk));
        }
    }
}

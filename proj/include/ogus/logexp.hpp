#pragma once

// p-adic exponential and logarithm, and the logarithm on unit groups of
// G_m and G_a.

#include "ogus/padic.hpp"

namespace ogus {

struct LogValue {
    PadicElement value;        // valuation >= 1
    int guaranteed_precision;  // digits certified, never above value.precision()
};

// Digits lost to the 1/k divisors of the log series: ceil(log_p m).
int log_precision_loss(long p, int m);

// log(x) for x = 1 mod p. Throws NotPrincipalUnit.
LogValue plog(const PadicElement& x);

// exp(x) for valuation(x) >= 1. Throws NotInDomain.
PadicElement pexp(const PadicElement& x);

// lambda(a) = log(a^(q-1)) / (q-1), q = |k_v|: kills the prime-to-p torsion
// of W(k_v)^x and agrees with plog on principal units. Throws NotAUnit.
LogValue log_torus_unit(const PadicElement& a);

// The logarithm of G_a is the identity on the additive coordinate.
inline const PadicElement& log_Ga(const PadicElement& x) { return x; }

}  // namespace ogus

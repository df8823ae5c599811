#include "doctest.h"
#include "support.hpp"

#include "ogus/numfield.hpp"

using namespace ogus;
using ogus::test::error_kind_of;

namespace {

// Brute-force quadratic residue test over all residues.
bool is_square_mod(long d, long p)
{
    const long r = ((d % p) + p) % p;
    for (long x = 0; x < p; ++x)
        if ((x * x) % p == r)
            return true;
    return false;
}

}  // namespace

TEST_CASE("place classification examples")
{
    const Place a = classify_place(QuadField(1), 5);
    CHECK(a.kind == PlaceKind::Split);
    CHECK(a.residue_degree == 1);
    const Place b = classify_place(QuadField(2), 5);
    CHECK(b.kind == PlaceKind::Inert);
    CHECK(b.residue_degree == 2);
    const Place c = classify_place(QuadField(2), 7);
    CHECK(c.kind == PlaceKind::Split);
    CHECK(error_kind_of([] { classify_place(QuadField(3), 3); }) == ErrorKind::RamifiedOrEvenPlace);
    CHECK(error_kind_of([] { classify_place(QuadField(5), 2); }) == ErrorKind::RamifiedOrEvenPlace);
    CHECK(error_kind_of([] { QuadField(12); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("classification agrees with brute-force residues")
{
    for (long d : {1L, -1L, 2L, -2L, 3L, -3L, 5L}) {
        const QuadField k(d);
        for (long p = 3; p < 1000; p += 2) {
            if (!is_prime(p) || d % p == 0)
                continue;
            const Place v = classify_place(k, p);
            const bool split = d == 1 || is_square_mod(d, p);
            CHECK(v.p == p);
            CHECK((v.kind == PlaceKind::Split) == split);
            CHECK(v.residue_degree == (split ? 1 : 2));
        }
    }
}

TEST_CASE("conjugation")
{
    const QuadField k2(2), k3(3);
    const QuadraticFieldElement q(k2, mpq_class(3, 2));
    CHECK(galois_conjugate(q) == q);
    CHECK(galois_conjugate(QuadraticFieldElement(k2, 0, 1)) == QuadraticFieldElement(k2, 0, -1));
    CHECK(galois_conjugate(QuadraticFieldElement(k3, 1, 2)) == QuadraticFieldElement(k3, 1, -2));
    for (int t = 0; t < 100; ++t) {
        const QuadraticFieldElement x(k3, mpq_class(test::uniform(-50, 50), test::uniform(1, 9)),
                                      mpq_class(test::uniform(-3, 3), test::uniform(1, 9)));
        CHECK(galois_conjugate(galois_conjugate(x)) == x);
        CHECK((galois_conjugate(x) == x) == x.is_rational());
    }
    // d = 1 folds b into a
    const QuadraticFieldElement r(QuadField(1), 2, 3);
    CHECK(r.a() == 5);
    CHECK(r.is_rational());
}

TEST_CASE("embedding examples")
{
    const LocalField q5(QuadField(1), classify_place(QuadField(1), 5), 8);
    CHECK(embed(QuadraticFieldElement(QuadField(1), 1), q5) == PadicElement::from_int(q5.context(), 1));
    const PadicElement half = embed(QuadraticFieldElement(QuadField(1), mpq_class(1, 2)), q5);
    CHECK(half.residue().c0() == 3);
    CHECK(half * PadicElement::from_int(q5.context(), 2) == PadicElement::from_int(q5.context(), 1));
    CHECK(error_kind_of([&] { embed(QuadraticFieldElement(QuadField(1), mpq_class(1, 5)), q5); })
          == ErrorKind::DenominatorNotUnit);

    const QuadField k2(2);
    const LocalField inert(k2, classify_place(k2, 5), 10);
    const PadicElement s = embed(QuadraticFieldElement(k2, 0, 1), inert);
    CHECK(s * s == PadicElement::from_int(inert.context(), 2));
    const LocalField split(k2, classify_place(k2, 7), 10);
    const PadicElement t = embed(QuadraticFieldElement(k2, 0, 1), split);
    CHECK(t * t == PadicElement::from_int(split.context(), 2));
    CHECK(t.residue().c0() == 3);  // smallest square root of 2 mod 7
}

TEST_CASE("embedding is a ring homomorphism commuting with conjugation")
{
    for (long d : {2L, -1L, 3L, 5L}) {
        const QuadField k(d);
        for (long p : {3L, 7L, 11L, 13L}) {
            if (d % p == 0)
                continue;
            const LocalField local(k, classify_place(k, p), 16);
            for (int t = 0; t < 200; ++t) {
                auto rnd = [&] {
                    long den;
                    do
                        den = test::uniform(1, 40);
                    while (den % p == 0);
                    return QuadraticFieldElement(k, mpq_class(test::uniform(-500, 500), den),
                                                 mpq_class(test::uniform(-500, 500), den));
                };
                const QuadraticFieldElement x = rnd(), y = rnd();
                CHECK(embed(x + y, local) == embed(x, local) + embed(y, local));
                CHECK(embed(x * y, local) == embed(x, local) * embed(y, local));
                if (local.place().kind == PlaceKind::Inert)
                    CHECK(embed(galois_conjugate(x), local) == embed(x, local).frobenius());
            }
        }
    }
}

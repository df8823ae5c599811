#include "doctest.h"
#include "support.hpp"

#include "ogus/berkowitz.hpp"
#include "ogus/lattice.hpp"
#include "ogus/rational.hpp"

using namespace ogus;

namespace {

QPoly poly(std::initializer_list<long> low_to_high)
{
    std::vector<mpq_class> c;
    for (long x : low_to_high)
        c.emplace_back(x);
    return QPoly(c);
}

}  // namespace

TEST_CASE("row reduction and kernels")
{
    const QMatrix a = QMatrix::from_rows({{1, 2, 3}, {2, 4, 7}}, 3);
    CHECK(rank(a) == 2);
    const auto ker = kernel(a);
    REQUIRE(ker.size() == 1);
    CHECK(apply(a, ker[0]) == QVector{0, 0});
    CHECK(primitive(ker[0]) == QVector{2, -1, 0});

    const QMatrix b = QMatrix::from_rows({{2, 1}, {1, 1}}, 2);
    const auto inv = inverse(b);
    REQUIRE(inv);
    CHECK(*inv * b == QMatrix::identity(2));
    CHECK_FALSE(inverse(QMatrix::from_rows({{1, 2}, {2, 4}}, 2)));
}

TEST_CASE("subspace operations")
{
    const std::vector<QVector> u = {{1, 0, 0}, {0, 1, 0}};
    const std::vector<QVector> w = {{0, 1, 0}, {0, 0, 1}};
    const auto cap = intersect(u, w, 3);
    REQUIRE(cap.size() == 1);
    CHECK(same_span(cap, {{0, 5, 0}}, 3));
    CHECK(in_span({3, 4, 0}, u, 3));
    CHECK_FALSE(in_span({0, 0, 1}, u, 3));
    CHECK(intersect(u, {}, 3).empty());
}

TEST_CASE("polynomial arithmetic and factorization")
{
    const QPoly f = poly({-1, 0, 1});  // x^2 - 1
    const auto [q, r] = divmod(f, poly({-1, 1}));
    CHECK(q == poly({1, 1}));
    CHECK(r.is_zero());
    CHECK(gcd(f, poly({1, 2, 1})) == poly({1, 1}));

    // (x - 1)^2 (x^2 - 5) (x^2 - 3x + 1)
    const QPoly g = pow(poly({-1, 1}), 2) * poly({-5, 0, 1}) * poly({1, -3, 1});
    const auto fac = factor(g);
    REQUIRE(fac.size() == 3);
    CHECK(fac[0].first == poly({-1, 1}));
    CHECK(fac[0].second == 2);
    CHECK(fac[1].first == poly({-5, 0, 1}));
    CHECK(fac[2].first == poly({1, -3, 1}));

    // rational non-integral roots
    const QPoly h = QPoly::linear_root(mpq_class(1, 5)) * QPoly::linear_root(mpq_class(1, 25));
    const auto fh = factor(h);
    REQUIRE(fh.size() == 2);
    CHECK(fh[0].first == QPoly::linear_root(mpq_class(1, 5)));
    CHECK(fh[1].first == QPoly::linear_root(mpq_class(1, 25)));
}

TEST_CASE("charpoly agrees between Berkowitz and Q-matrix path")
{
    const QMatrix a = QMatrix::from_rows({{2, 1, 0}, {0, 3, 1}, {1, 0, 5}}, 3);
    const QPoly cp = charpoly(a);
    CHECK(cp.leading() == 1);
    // det(a) = 2*15 - 1*(0 - 1) = 31; constant term = -det
    CHECK(cp.coeff(0) == -31);
    CHECK(cp.coeff(2) == -10);
    CHECK(eval(cp, a).is_zero());

    std::vector<std::vector<mpq_class>> rows = {{2, 1, 0}, {0, 3, 1}, {1, 0, 5}};
    const auto b = berkowitz(rows, mpq_class(0), mpq_class(1));
    REQUIRE(b.size() == 4);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(b[k] == cp.coeff(3 - k));
    CHECK(charpoly(companion(poly({-5, 0, 1}))) == poly({-5, 0, 1}));
}

TEST_CASE("rational reconstruction, HNF and LLL")
{
    const mpz_class m = mpz_class(5) * 5 * 5 * 5 * 5 * 5 * 5 * 5;
    mpz_class inv3;
    mpz_invert(inv3.get_mpz_t(), mpz_class(3).get_mpz_t(), m.get_mpz_t());
    const mpz_class u = mpz_class(-7 * inv3) % m;
    const auto q = rational_reconstruct(u < 0 ? mpz_class(u + m) : u, m, 100);
    REQUIRE(q);
    CHECK(*q == mpq_class(-7, 3));

    // lattice {x : x0 + 7 x1 = 0 mod 101} plus 101 Z^2 contains (7, -1)
    const auto basis = hnf_modular({{7, -1}}, 2, 101);
    REQUIRE(basis.size() == 2);
    auto reduced = basis;
    lll_reduce(reduced);
    CHECK(norm_squared(reduced[0]) == 50);
}

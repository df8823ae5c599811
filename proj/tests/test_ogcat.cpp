#include "doctest.h"
#include "support.hpp"

#include "ogus/motive.hpp"
#include "ogus/ogcat.hpp"

using namespace ogus;
using ogus::test::error_kind_of;

namespace {

KummerMotive kummer(long a) { return KummerMotive(1, 1, {{mpq_class(a)}}); }

std::vector<Place> places_of(const QuadField& k, std::initializer_list<long> ps)
{
    std::vector<Place> out;
    for (long p : ps)
        out.push_back(classify_place(k, p));
    return out;
}

// dim-dimensional object of one weight with F = p^(-denom) C sigma at each place.
OgObject synthetic(const QMatrix& c, int denom, int weight, const std::vector<Place>& places, const QPoly& cp)
{
    OgObject x;
    x.dim = c.rows();
    x.steps = {{weight, x.dim}};
    for (const Place& v : places) {
        LocalField local(x.field, v, 40);
        PadicMatrix numer(local.context(), x.dim, x.dim);
        for (std::size_t i = 0; i < x.dim; ++i)
            for (std::size_t j = 0; j < x.dim; ++j)
                numer(i, j) = embed_rational(c(i, j), local.context());
        x.locals.push_back({local, SemilinearOperator({numer, denom}, 1), {cp}});
    }
    return x;
}

QPoly poly(std::initializer_list<mpq_class> c) { return QPoly(std::vector<mpq_class>(c)); }

bool same_matrix(const FracMatrix& a, const FracMatrix& b) { return (a - b).numer.is_zero(); }

}  // namespace

TEST_CASE("check_object")
{
    const QuadField q;
    const OgObject t = t_Og(kummer(2), q, places_of(q, {3, 5, 7}), 40);
    const ObjectReport rep = check_object(t);
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
    CHECK(rep.purity.size() == 6);

    // identity Frobenius on a weight -2 step
    const OgObject bad = synthetic(QMatrix::identity(1), 0, -2, places_of(q, {5}), poly({-1, 1}));
    const ObjectReport r2 = check_object(bad);
    CHECK_FALSE(r2.ok);
    REQUIRE_FALSE(r2.violations.empty());

    const OgObject empty;
    CHECK(check_object(empty).ok);

    // swapping the weight tags of the graded pieces is rejected
    OgObject swapped = t;
    swapped.steps = {{0, 1}, {-2, 2}};
    CHECK_FALSE(check_object(swapped).ok);
    OgObject relabeled = t;
    relabeled.steps = {{0, 1}, {2, 2}};
    for (auto& lf : relabeled.locals)
        lf.graded_charpolys.clear();
    CHECK_FALSE(check_object(relabeled).ok);
}

TEST_CASE("twists")
{
    const QuadField k(2);
    const auto pl = places_of(k, {3, 7});
    const OgObject t = t_Og(kummer(2), k, pl, 40);
    const OgObject t0 = twist_object(t, 0);
    CHECK(t0.steps == t.steps);

    const OgObject w0 = gr(t, 0);
    const OgObject w0t = twist_object(w0, 1);
    REQUIRE(w0t.steps.size() == 1);
    CHECK(w0t.steps[0].weight == -2);
    CHECK(check_object(w0t).ok);

    const OgObject back = twist_object(twist_object(t, 1), -1);
    CHECK(back.steps == t.steps);
    for (std::size_t i = 0; i < t.locals.size(); ++i) {
        const FracMatrix& a = t.locals[i].frobenius.matrix();
        const FracMatrix& b = back.locals[i].frobenius.matrix();
        CHECK(a.denom_exp == b.denom_exp);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                CHECK(a.numer(r, c).c0() == b.numer(r, c).c0());
                CHECK(a.numer(r, c).c1() == b.numer(r, c).c1());
                CHECK(a.numer(r, c).precision() == b.numer(r, c).precision());
            }
        CHECK(t.locals[i].graded_charpolys == back.locals[i].graded_charpolys);
    }
}

TEST_CASE("graded pieces and W_n")
{
    const QuadField q;
    const KummerMotive m(2, 1, {{mpq_class(2)}, {mpq_class(5, 7)}});
    const OgObject t = t_Og(m, q, places_of(q, {3, 11}), 40);
    const OgObject g0 = gr(t, 0);
    CHECK(g0.dim == 1);
    for (const auto& lf : g0.locals)
        CHECK(same_matrix(lf.frobenius.matrix(), FracMatrix::identity(lf.local.context(), 1)));
    const OgObject g2 = gr(t, -2);
    CHECK(g2.dim == 2);
    for (const auto& lf : g2.locals)
        CHECK(same_matrix(lf.frobenius.matrix(), FracMatrix{PadicMatrix::identity(lf.local.context(), 2), 1}));
    CHECK(gr(t, -1).dim == 0);
    const OgObject w = w_leq(t, 0);
    CHECK(w.dim == t.dim);
    CHECK(w.steps == t.steps);
    CHECK(w_leq(t, -2).dim == 2);

    OgObject bad = t;
    PadicMatrix a = bad.locals[0].frobenius.matrix().numer;
    a(2, 0) = PadicElement::from_int(a.context(), 1);
    bad.locals[0].frobenius = SemilinearOperator({a, 1}, 1);
    CHECK(error_kind_of([&] { gr(bad, 0); }) == ErrorKind::FiltrationNotCoordinateAligned);
    CHECK_FALSE(check_object(bad).ok);
}

TEST_CASE("effectivity")
{
    const QuadField q;
    const OgObject t = t_Og(kummer(2), q, places_of(q, {3, 5, 7}), 40);
    const LEffectivity le = is_l_effective(t);
    CHECK_FALSE(le.ok);
    REQUIRE(le.witness);
    CHECK(le.witness->row == 0);
    CHECK(le.witness->col == 0);
    CHECK(le.witness->valuation == -1);
    CHECK(is_l_effective(twist_object(t, -1)).ok);
    const OgObject empty;
    CHECK(is_l_effective(empty).ok);

    CHECK(is_e_effective(gr(t, 0)));
    CHECK_FALSE(is_e_effective(gr(t, -2)));
    const OgObject comp = synthetic(companion(poly({-7, 0, 1})), 0, 1, places_of(q, {7}), poly({-7, 0, 1}));
    CHECK(check_object(comp).ok);
    CHECK(is_e_effective(comp));

    // a stored charpoly that disagrees with the matrix
    const OgObject wrong = synthetic(QMatrix::identity(1), 0, 0, places_of(q, {5}), poly({-2, 1}));
    CHECK(error_kind_of([&] { is_e_effective(wrong); }) == ErrorKind::CharpolyMismatch);
}

TEST_CASE("level <= 1")
{
    const QuadField k(2);
    const OgObject t = t_Og(KummerMotive(1, 2, {{mpq_class(2), mpq_class(3)}}), k, places_of(k, {5, 7, 11}), 40);
    const LevelReport rep = is_level_le_1(t);
    CHECK(rep.holds);
    CHECK_FALSE(rep.literal_reading);
    for (const auto& c : rep.clauses)
        if (c.name.find("literal") == std::string::npos)
            CHECK_MESSAGE(c.holds, c.name);

    const QuadField q;
    const OgObject w0 = gr(t_Og(kummer(2), q, places_of(q, {3}), 40), 0);
    const LevelReport high = is_level_le_1(twist_object(w0, -2));
    CHECK_FALSE(high.holds);
    CHECK_FALSE(high.clauses[0].holds);

    // weight -1: F = p^-1 C(x^2 - p), so gr_-1(-1) = C(x^2 - p) is integral
    const OgObject w1 = synthetic(companion(poly({-7, 0, 1})), 1, -1, places_of(q, {7}), poly({mpq_class(-1, 7), 0, 1}));
    CHECK(check_object(w1).ok);
    const LevelReport r1 = is_level_le_1(w1);
    CHECK(r1.holds);
    CHECK(is_l_effective(twist_object(w1, -1)).ok);
}

TEST_CASE("Kronecker rationality")
{
    const QuadField k(2);
    const std::vector<Place> inert = places_of(k, {3, 5, 11});
    CHECK(kronecker_rational(QuadraticFieldElement(k, mpq_class(1, 2)), inert).rational);
    const KroneckerReport s = kronecker_rational(QuadraticFieldElement(k, 0, 1), places_of(k, {5}));
    CHECK_FALSE(s.rational);
    CHECK_FALSE(s.local);
    CHECK(s.rejecting_place == 5);
    CHECK(kronecker_rational(QuadraticFieldElement(k, 3, 0), inert).agree);

    const std::vector<Place> wide = places_of(k, {3, 5, 11, 13, 19, 29, 37, 43});
    for (int t = 0; t < 100; ++t) {
        const QuadraticFieldElement r(k, mpq_class(test::uniform(-1000, 1000), test::uniform(1, 1000)));
        const KroneckerReport a = kronecker_rational(r, inert);
        CHECK(a.rational);
        CHECK(a.agree);
        long b = 0;
        while (b == 0)
            b = test::uniform(-1000, 1000);
        const QuadraticFieldElement x(k, mpq_class(test::uniform(-1000, 1000), test::uniform(1, 1000)),
                                      mpq_class(b, test::uniform(1, 1000)));
        const KroneckerReport c = kronecker_rational(x, wide);
        REQUIRE_FALSE(c.places_checked.empty());
        CHECK_FALSE(c.rational);
        CHECK(c.agree);
    }
}

TEST_CASE("hom_space examples")
{
    const QuadField q;
    const auto pl = places_of(q, {3, 5, 7});
    const OgObject t2 = t_Og(kummer(2), q, pl, 40);
    const HomSolution end2 = hom_space(t2, t2);
    CHECK(end2.analytic_dimension == 1);
    REQUIRE(end2.basis.size() == 1);
    KMatrix id(q, 2, 2);
    id(0, 0) = QuadraticFieldElement(q, 1);
    id(1, 1) = QuadraticFieldElement(q, 1);
    CHECK(end2.basis[0] == id);

    const OgObject t1 = t_Og(kummer(1), q, pl, 40);
    const HomSolution h12 = hom_space(t1, t2);
    REQUIRE(h12.analytic_dimension == 1);
    KMatrix torus(q, 2, 2);
    torus(0, 0) = QuadraticFieldElement(q, 1);
    CHECK(h12.basis[0] == torus);

    const auto pl3 = places_of(q, {5, 7, 11});
    CHECK(hom_space(t_Og(kummer(2), q, pl3, 40), t_Og(kummer(3), q, pl3, 40)).analytic_dimension == 0);
}

TEST_CASE("hom_space properties")
{
    const QuadField k(2);
    const auto pl = places_of(k, {3, 5, 7});
    const std::vector<long> vals = {2, 3, 4, 6};
    for (long a : vals)
        for (long b : vals) {
            const auto pab = select_places(
                [&] {
                    std::vector<Place> g;
                    for (const auto& v : good_places(kummer(a), k, 50))
                        if (is_good_place(kummer(b), k, v.p))
                            g.push_back(v);
                    return g;
                }(),
                k);
            const OgObject m = t_Og(kummer(a), k, pab, 40), n = t_Og(kummer(b), k, pab, 40);
            const HomSolution h = hom_space(m, n);
            for (int tw : {-1, 1}) {
                const HomSolution ht = hom_space(twist_object(m, tw), twist_object(n, tw));
                CHECK(ht.basis == h.basis);
            }
            for (const auto& x : h.basis) {
                CHECK(weight_raising_block_is_zero(x, m, n));
                // the inert places force every entry to be rational
                for (std::size_t i = 0; i < x.rows(); ++i)
                    for (std::size_t j = 0; j < x.cols(); ++j)
                        CHECK(x(i, j).is_rational());
            }
        }
    // pure pieces of different weights
    const OgObject t = t_Og(kummer(2), k, pl, 40);
    CHECK(hom_space(gr(t, 0), gr(t, -2)).analytic_dimension == 0);
    CHECK(hom_space(gr(t, -2), gr(t, 0)).analytic_dimension == 0);
    CHECK(hom_space(gr(t, 0), gr(t, 0)).analytic_dimension == 1);
}

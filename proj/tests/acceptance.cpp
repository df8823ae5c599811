#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "ogus/bogcat.hpp"
#include "ogus/errors.hpp"
#include "ogus/motive.hpp"

using namespace ogus;

namespace {

std::mt19937_64 rng(20241016);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

mpz_class random_residue(const mpz_class& modulus)
{
    static gmp_randclass state(gmp_randinit_default);
    static bool seeded = false;
    if (!seeded) {
        state.seed(11);
        seeded = true;
    }
    return state.get_z_range(modulus);
}

PadicElement random_element(const ContextPtr& ctx)
{
    const mpz_class c1 = ctx->n() == 2 ? random_residue(ctx->modulus()) : mpz_class(0);
    return PadicElement::from_coords(ctx, random_residue(ctx->modulus()), c1, ctx->m());
}

long nonresidue(long p)
{
    for (long d = 2;; ++d)
        if (mpz_legendre(mpz_class(d).get_mpz_t(), mpz_class(p).get_mpz_t()) == -1)
            return d;
}

mpq_class ppow(long p, int e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    return e >= 0 ? mpq_class(r) : mpq_class(1, r);
}

QPoly poly(std::initializer_list<mpq_class> c) { return QPoly(std::vector<mpq_class>(c)); }

FracMatrix to_frac(const QMatrix& a, const ContextPtr& ctx)
{
    int d = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0)
                d = std::max(d, valuation(a(i, j).get_den(), ctx->p()));
    PadicMatrix m(ctx, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = embed_rational(a(i, j) * ppow(ctx->p(), d), ctx);
    return {m, d};
}

KummerMotive kummer(const mpq_class& a) { return KummerMotive(1, 1, {{a}}); }

KummerMotive random_motive(long max_entry)
{
    const std::size_t s = uniform(0, 2), r = uniform(0, 2);
    std::vector<std::vector<mpq_class>> u(s, std::vector<mpq_class>(r));
    for (auto& row : u)
        for (auto& x : row)
            x = mpq_class(uniform(1, max_entry), uniform(1, max_entry));
    return KummerMotive(s, r, u);
}

std::vector<Place> common_places(const KummerMotive& m, const KummerMotive& n, const QuadField& k)
{
    std::vector<Place> good;
    for (const auto& v : good_places(m, k, 50))
        if (is_good_place(n, k, v.p))
            good.push_back(v);
    return select_places(good, k);
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

void run(int id, const std::string& name, const std::function<void(Outcome&)>& body, double limit_seconds = 0)
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const Error& e) {
        out.require(false, std::string("error ") + std::string(to_string(e.kind())) + ": " + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0) {
        std::ostringstream os;
        os << "runtime " << secs << " s exceeds " << limit_seconds << " s";
        out.require(secs < limit_seconds, os.str());
    }
    if (!out.pass)
        ++failures;
    std::printf("criterion %2d %s  %s (%.2f s)%s%s\n", id, out.pass ? "PASS" : "FAIL", name.c_str(), secs,
                out.detail.empty() ? "" : ": ", out.detail.c_str());
}

// Fullness data shared by criteria 6, 7, 9 and 10.
struct FullnessRun {
    QuadField field;
    std::vector<std::pair<long, long>> pairs;
    std::vector<FullnessReport> reports;
    std::vector<std::vector<Place>> places;
};

std::vector<FullnessRun> fullness_runs;

}  // namespace

int main()
{
    run(1, "exp/log inversion at m = 64", [](Outcome& o) {
        const int m = 64, guard = kDefaultGuard;
        for (long p : {3L, 5L, 7L, 11L})
            for (int n : {1, 2}) {
                const ContextPtr ctx = PadicContext::make(p, n, m, n == 2 ? nonresidue(p) : 0);
                for (int t = 0; t < 100; ++t) {
                    const PadicElement u = PadicElement::from_int(ctx, 1) + random_element(ctx).times_p_power(1);
                    const LogValue l = plog(u);
                    const PadicElement back = pexp(l.value.with_precision(l.guaranteed_precision));
                    o.require(back.precision() >= m - guard, "pexp(plog(u)) lost precision");
                    o.require(back.with_precision(m - guard) == u.with_precision(m - guard),
                              "pexp(plog(u)) != u at p = " + std::to_string(p));
                }
            }
    }, 5.0);

    run(2, "Frobenius laws", [](Outcome& o) {
        for (long p : {3L, 5L, 7L, 11L})
            for (int n : {1, 2}) {
                const ContextPtr ctx = PadicContext::make(p, n, 20, n == 2 ? nonresidue(p) : 0);
                for (int t = 0; t < 200; ++t) {
                    const PadicElement x = random_element(ctx), y = random_element(ctx);
                    o.require((x + y).frobenius() == x.frobenius() + y.frobenius(), "sigma not additive");
                    o.require((x * y).frobenius() == x.frobenius() * y.frobenius(), "sigma not multiplicative");
                    o.require(PadicElement::from_int(ctx, 1).frobenius() == PadicElement::from_int(ctx, 1),
                              "sigma(1) != 1");
                    if (n == 2)
                        o.require(x.frobenius().frobenius() == x, "sigma^2 != id");
                    else
                        o.require(x.frobenius() == x, "sigma != id on Z_p");
                    o.require(x.frobenius().residue() == x.pow(static_cast<unsigned long>(p)).residue(),
                              "sigma(x) != x^p mod p");
                }
            }
    });

    run(3, "weight detection table", [](Outcome& o) {
        auto moduli_ok = [](const PurityReport& r, double target) {
            for (double x : r.numeric_moduli)
                if (std::abs(x - target) > 1e-9 * target)
                    return false;
            return !r.numeric_moduli.empty();
        };
        for (long p : {3L, 5L, 7L, 11L})
            for (int n : {1, 2}) {
                const mpq_class q = ppow(p, n);
                const double qd = std::pow(static_cast<double>(p), n);
                const PurityReport w0 = weil_weight(poly({-1, 1}), p, n);
                const PurityReport w2 = weil_weight(poly({-q, 1}), p, n);
                const PurityReport w1 = weil_weight(poly({-q, 0, 1}), p, n);
                o.require(w0.weight == 0 && moduli_ok(w0, 1.0), "x - 1 is not weight 0");
                o.require(w2.weight == 2 && moduli_ok(w2, qd), "x - p^n is not weight 2");
                o.require(w1.weight == 1 && moduli_ok(w1, std::sqrt(qd)), "x^2 - p^n is not weight 1");
            }
        o.require(!weil_weight(poly({1, -3, 1}), 5, 1).weight, "x^2 - 3x + 1 reported pure at p^n = 5");
    });

    run(4, "decomposition vs exact generalized-eigenspace oracle", [](Outcome& o) {
        for (int trial = 0; trial < 50; ++trial) {
            const long p = std::array<long, 3>{3, 5, 7}[trial % 3];
            const int n = 1 + trial % 2;
            const ContextPtr ctx = PadicContext::make(p, n, 40, nonresidue(p));
            const mpq_class q = ppow(p, n);
            const std::vector<QPoly> pure = {poly({-1, 1}), poly({1, 1}),      poly({-q, 1}),
                                             poly({-1 / q, 1}), poly({-q, 0, 1}), poly({q, -1, 1})};
            std::vector<QPoly> chosen;
            QPoly cp({mpq_class(1)});
            std::size_t dim = 0;
            const std::size_t target = uniform(2, 4);
            while (dim < target) {
                QPoly f = pure[uniform(0, 5)];
                if (dim + f.degree() > target)
                    f = pure[uniform(0, 3)];
                chosen.push_back(f);
                cp = cp * f;
                dim += f.degree();
            }
            QMatrix d(dim, dim);
            std::size_t off = 0;
            for (const auto& f : chosen) {
                const QMatrix c = companion(f);
                for (std::size_t i = 0; i < c.rows(); ++i)
                    for (std::size_t j = 0; j < c.cols(); ++j)
                        d(off + i, off + j) = c(i, j);
                off += c.rows();
            }
            QMatrix s = QMatrix::identity(dim);
            for (int t = 0; t < 6; ++t) {
                const std::size_t i = uniform(0, dim - 1), j = (i + uniform(1, dim - 1)) % dim;
                QMatrix e = QMatrix::identity(dim);
                e(i, j) = uniform(-3, 3);
                s = s * e;
            }
            const QMatrix f = s * d * *inverse(s);
            const WeightDecomposition dec = decompose(to_frac(f, ctx), cp);
            std::size_t total = 0;
            for (const auto& h : dec.summands) {
                QPoly gi({mpq_class(1)});
                for (const auto& [g, mult] : factor(cp))
                    if (weil_weight(g, p, n).weight == h.weight)
                        gi = gi * pow(g, static_cast<unsigned>(mult));
                const auto exact = kernel(eval(pow(gi, static_cast<unsigned>(dim)), f));
                PadicMatrix cols(ctx, dim, exact.size());
                for (std::size_t c = 0; c < exact.size(); ++c) {
                    const QVector v = primitive(exact[c]);
                    for (std::size_t r = 0; r < dim; ++r)
                        cols(r, c) = embed_rational(v[r], ctx);
                }
                o.require(same_column_span(h.basis, cols), "summand differs from the oracle at trial " +
                                                               std::to_string(trial));
                total += h.basis.cols();
            }
            o.require(total == dim, "summands do not fill the space");
        }
    });

    run(5, "identity between [1 -> 1] and [1 -> 2] rejected", [](Outcome& o) {
        const QuadField q;
        for (long p : {3L, 5L, 7L}) {
            const std::vector<Place> pl = {classify_place(q, p)};
            const OgObject m = t_Og(kummer(1), q, pl, 40), n = t_Og(kummer(2), q, pl, 40);
            const auto& lm = m.locals[0];
            const CommuteResult c = commutes(FracMatrix::identity(lm.local.context(), 2), lm.frobenius,
                                             n.locals[0].frobenius, kDefaultGuard);
            o.require(!c.ok && c.witness, "identity accepted at p = " + std::to_string(p));
            if (!c.witness)
                continue;
            o.require(c.witness->row == 0 && c.witness->col == 1, "witness not at the torus-lattice entry");
            // discrepancy = -(1 - 1/p) lambda(2)
            const LogValue lam = delta_section(kummer(2), n.locals[0].local).lambda[0][0];
            o.require(!lam.value.is_zero(), "lambda(2) = 0");
            const PadicElement scaled = c.witness->discrepancy.shifted(1).to_integral();
            const PadicElement expect = -(lam.value * PadicElement::from_int(lm.local.context(), p - 1));
            const int prec = std::min(scaled.precision(), expect.precision());
            o.require(scaled.with_precision(prec) == expect.with_precision(prec),
                      "witness is not -(1 - 1/p) lambda(2)");
        }
        const std::vector<Place> pl = {classify_place(q, 3), classify_place(q, 5), classify_place(q, 7)};
        const HomSolution h = hom_space(t_Og(kummer(1), q, pl, 40), t_Og(kummer(2), q, pl, 40));
        o.require(h.analytic_dimension == 1, "hom space dimension " + std::to_string(h.analytic_dimension));
        if (h.basis.size() == 1) {
            const KMatrix& x = h.basis[0];
            o.require(x(1, 1).is_zero() && x(0, 1).is_zero() && x(1, 0).is_zero() && !x(0, 0).is_zero(),
                      "basis does not kill the lattice coordinate: " + x.to_string());
        }
    });

    run(6, "fullness desk experiment over Q and Q(sqrt 2)", [](Outcome& o) {
        const std::vector<long> vals = {2, 3, 4, 6, 8, 9, 12};
        for (long d : {1L, 2L}) {
            FullnessRun fr{QuadField(d), {}, {}, {}};
            for (long a : vals)
                for (long b : vals) {
                    const auto pl = common_places(kummer(a), kummer(b), fr.field);
                    if (d != 1) {
                        bool inert = false;
                        for (const auto& v : pl)
                            inert = inert || v.kind == PlaceKind::Inert;
                        o.require(inert, "no inert place for (" + std::to_string(a) + ", " + std::to_string(b) + ")");
                    }
                    const FullnessReport r = check_fullness(kummer(a), kummer(b), fr.field, pl, 40, 1000000);
                    const std::string tag = "(" + std::to_string(a) + ", " + std::to_string(b) + ") over d = " +
                                            std::to_string(d);
                    o.require(r.analytic.analytic_dimension == r.exact_basis.size(), "dimension mismatch " + tag);
                    o.require(r.spaces_equal, "FULLNESS_VIOLATION " + tag);
                    fr.pairs.emplace_back(a, b);
                    fr.reports.push_back(r);
                    fr.places.push_back(pl);
                }
            fullness_runs.push_back(std::move(fr));
        }
    }, 30.0);

    run(7, "faithfulness on the exact bases", [](Outcome& o) {
        o.require(!fullness_runs.empty(), "criterion 6 produced no data");
        for (const auto& fr : fullness_runs)
            for (const auto& r : fr.reports) {
                o.require(r.faithful, "a nonzero morphism realizes to zero");
                for (const auto& x : r.realized)
                    o.require(!x.is_zero(), "zero realization");
            }
    });

    run(8, "section uniqueness", [](Outcome& o) {
        const QuadField k(2);
        for (int t = 0; t < 20; ++t) {
            KummerMotive m = random_motive(30);
            while (m.r() == 0)
                m = random_motive(30);
            const auto good = good_places(m, k, 60);
            std::vector<Place> two = {good[0], good.back()};
            for (const Place& v : two) {
                const SectionReport s = section_uniqueness(m, LocalField(k, v, 30));
                o.require(s.solution_dimension == 0, "solution set not a point");
                o.require(s.matches_delta, "solution differs from delta_section");
            }
        }
    });

    run(9, "strictness of reconstructed homs", [](Outcome& o) {
        o.require(!fullness_runs.empty(), "criterion 6 produced no data");
        for (const auto& fr : fullness_runs)
            for (std::size_t i = 0; i < fr.reports.size(); ++i)
                for (const auto& x : fr.reports[i].analytic.basis) {
                    const OgObject m = t_Og(kummer(fr.pairs[i].first), fr.field, fr.places[i], 40);
                    const OgObject n = t_Og(kummer(fr.pairs[i].second), fr.field, fr.places[i], 40);
                    o.require(weight_raising_block_is_zero(x, m, n) && x(1, 0).is_zero(),
                              "weight-raising block nonzero: " + x.to_string());
                }
    });

    run(10, "effectivity and level predicates", [](Outcome& o) {
        for (const QuadField& k : {QuadField(1), QuadField(2)})
            for (long a : {2, 3, 4, 6, 8, 9, 12}) {
                const KummerMotive m = kummer(a);
                const OgObject x = t_Og(m, k, select_places(good_places(m, k, 50), k), 40);
                const std::string tag = " for a = " + std::to_string(a) + ", d = " + std::to_string(k.d());
                o.require(!is_l_effective(x).ok, "T_Og l-effective" + tag);
                o.require(is_l_effective(twist_object(x, -1)).ok, "T_Og(-1) not l-effective" + tag);
                o.require(is_e_effective(gr(x, 0)), "gr_0 not e-effective" + tag);
                o.require(is_e_effective(twist_object(gr(x, -2), -1)), "gr_-2(-1) not e-effective" + tag);
                const LevelReport lv = is_level_le_1(x);
                o.require(lv.holds, "level <= 1 fails" + tag);
            }
    });

    run(11, "psi route consistency", [](Outcome& o) {
        const QuadField k(2);
        for (int t = 0; t < 50; ++t) {
            const KummerMotive m = random_motive(40);
            const auto pl = select_places(good_places(m, k, 80), k);
            o.require(pl.size() == 3, "fewer than 3 places");
            o.require(same_residues(t_BOg(m, k, pl, 20), t_BOg_direct(m, k, pl, 20)), "routes disagree");
        }
    });

    run(12, "non-fullness of T_BOg", [](Outcome& o) {
        const QuadField k(2);
        const KummerMotive z(0, 1, {});
        const auto pl = select_places(good_places(z, k, 50), k);
        const BOgObject b = t_BOg(z, k, pl, 20);
        const std::size_t bog = bog_hom_space(b, b).size(), exact = motive_hom_exact(z, z).size();
        o.require(bog == 2, "End in BOg has dimension " + std::to_string(bog));
        o.require(exact == 1, "motive End has dimension " + std::to_string(exact));
    });

    run(13, "Kronecker test", [](Outcome& o) {
        const QuadField k(2);
        std::vector<Place> inert;
        for (long p = 3; inert.size() < 8; p += 2)
            if (is_prime(p) && classify_place(k, p).kind == PlaceKind::Inert)
                inert.push_back(classify_place(k, p));
        for (int t = 0; t < 100; ++t) {
            const QuadraticFieldElement r(k, mpq_class(uniform(-1000, 1000), uniform(1, 1000)));
            const KroneckerReport a = kronecker_rational(r, inert);
            o.require(a.rational && a.local && a.agree, "rational element rejected");
        }
        for (int t = 0; t < 100; ++t) {
            long b = 0;
            while (b == 0)
                b = uniform(-1000, 1000);
            const QuadraticFieldElement x(k, mpq_class(uniform(-1000, 1000), uniform(1, 1000)),
                                          mpq_class(b, uniform(1, 1000)));
            const KroneckerReport c = kronecker_rational(x, inert);
            o.require(!c.places_checked.empty(), "no usable inert place");
            o.require(!c.local && c.agree, "irrational element accepted");
            o.require(c.rejecting_place && !c.places_checked.empty() && *c.rejecting_place == c.places_checked.front(),
                      "not rejected at the first usable inert place");
        }
    });

    std::printf("%s: %d of 13 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}

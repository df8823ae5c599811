#include "ogus/ogcat.hpp"

#include <algorithm>
#include <set>

#include "ogus/errors.hpp"
#include "ogus/lattice.hpp"

namespace ogus {

namespace {

constexpr long kCharpolyHeight = 1000000;

// det(x - cA) from det(x - A): coefficient of x^k picks up c^(deg - k).
QPoly scale_roots(const QPoly& f, const mpq_class& c)
{
    std::vector<mpq_class> out(f.coeffs().size());
    mpq_class power = 1;
    for (std::size_t k = out.size(); k-- > 0;) {
        out[k] = f.coeffs()[k] * power;
        power *= c;
    }
    return QPoly(out);
}

mpq_class p_power_q(long p, long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(r) : mpq_class(1, r);
}

SemilinearOperator block_op(const SemilinearOperator& f, std::size_t b0, std::size_t b1)
{
    return {f.matrix().block(b0, b0, b1 - b0, b1 - b0), f.twist()};
}

void require_aligned(const OgObject& x, int guard)
{
    const std::vector<int> w = x.coordinate_weights();
    for (const auto& lf : x.locals) {
        const FracMatrix& a = lf.frobenius.matrix();
        const int target = lf.local.context()->m() - guard;
        for (std::size_t r = 0; r < x.dim; ++r)
            for (std::size_t c = 0; c < x.dim; ++c)
                if (w[r] > w[c] && !a.numer(r, c).with_precision(target).is_zero())
                    throw Error(ErrorKind::FiltrationNotCoordinateAligned,
                                "Frobenius at p = " + std::to_string(lf.local.p()) + " raises weight at entry ("
                                    + std::to_string(r) + ", " + std::to_string(c) + ")");
    }
}

// Restriction to coordinates [b0, b1) carrying the steps in [k0, k1).
OgObject restrict(const OgObject& x, std::size_t k0, std::size_t k1)
{
    OgObject out;
    out.field = x.field;
    const std::size_t b0 = x.step_begin(k0);
    const std::size_t b1 = k1 == 0 ? 0 : x.steps[k1 - 1].dim;
    out.dim = b1 - b0;
    for (std::size_t k = k0; k < k1; ++k)
        out.steps.push_back({x.steps[k].weight, x.steps[k].dim - b0});
    for (const auto& lf : x.locals) {
        LocalFrobenius r{lf.local, block_op(lf.frobenius, b0, b1), {}};
        if (lf.graded_charpolys.size() == x.steps.size())
            r.graded_charpolys.assign(lf.graded_charpolys.begin() + static_cast<long>(k0),
                                      lf.graded_charpolys.begin() + static_cast<long>(k1));
        out.locals.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::vector<Place> OgObject::places() const
{
    std::vector<Place> out;
    for (const auto& lf : locals)
        out.push_back(lf.local.place());
    return out;
}

const LocalFrobenius* OgObject::at(long p) const
{
    for (const auto& lf : locals)
        if (lf.local.p() == p)
            return &lf;
    return nullptr;
}

std::vector<int> OgObject::coordinate_weights() const
{
    std::vector<int> w(dim, 0);
    std::size_t c = 0;
    for (const auto& s : steps)
        for (; c < s.dim && c < dim; ++c)
            w[c] = s.weight;
    return w;
}

ObjectReport check_object(const OgObject& x, int guard)
{
    ObjectReport rep;
    auto violate = [&](std::string where, std::string what) {
        rep.ok = false;
        rep.violations.push_back({std::move(where), std::move(what)});
    };

    if (x.dim > 0 && (x.steps.empty() || x.steps.back().dim != x.dim))
        violate("filtration", "weight steps are not exhaustive");
    for (std::size_t k = 1; k < x.steps.size(); ++k) {
        if (x.steps[k].weight <= x.steps[k - 1].weight)
            violate("filtration", "weights are not strictly increasing");
        if (x.steps[k].dim < x.steps[k - 1].dim)
            violate("filtration", "step dimensions decrease");
    }
    if (!rep.ok)
        return rep;

    std::set<long> seen;
    for (const auto& lf : x.locals) {
        const std::string where = "p = " + std::to_string(lf.local.p());
        if (!seen.insert(lf.local.p()).second)
            violate(where, "place listed twice");
        if (!(lf.local.field() == x.field))
            violate(where, "place belongs to another field");
        if (lf.frobenius.dim() != x.dim) {
            violate(where, "Frobenius has the wrong dimension");
            continue;
        }
        if (!lf.frobenius.context()->same_as(*lf.local.context()))
            violate(where, "Frobenius is defined over another context");
        if (lf.frobenius.twist() != 1 % lf.local.n())
            violate(where, "Frobenius is not sigma-semilinear");
        if (x.dim > 0 && rank(lf.frobenius.matrix().numer, guard) != x.dim)
            violate(where, "Frobenius is not invertible");
    }
    try {
        require_aligned(x, guard);
    } catch (const Error& e) {
        violate("filtration", e.what());
        return rep;
    }

    for (const auto& lf : x.locals) {
        if (lf.frobenius.dim() != x.dim)
            continue;
        const std::string where = "p = " + std::to_string(lf.local.p());
        try {
            const std::vector<QPoly> cps = graded_charpolys(x, lf, guard);
            const FracMatrix lin = linearize(lf.frobenius).matrix();
            for (std::size_t k = 0; k < x.steps.size(); ++k) {
                const std::size_t b0 = x.step_begin(k), b1 = x.steps[k].dim;
                if (b1 == b0)
                    continue;
                const FracMatrix block = lin.block(b0, b0, b1 - b0, b1 - b0);
                bool pure = false;
                try {
                    pure = is_pure(block, cps[k], x.steps[k].weight, guard);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::MixedNonIntegralWeight)
                        throw;
                }
                rep.purity.push_back({lf.local.p(), x.steps[k].weight, b1 - b0, pure});
                if (!pure)
                    violate(where, "gr_" + std::to_string(x.steps[k].weight) + " is not pure of weight "
                                       + std::to_string(x.steps[k].weight));
            }
        } catch (const Error& e) {
            violate(where, std::string(to_string(e.kind())) + ": " + e.what());
        }
    }
    return rep;
}

OgObject twist_object(const OgObject& x, int k)
{
    OgObject out = x;
    for (auto& s : out.steps)
        s.weight -= 2 * k;
    for (auto& lf : out.locals) {
        lf.frobenius = twist_op(lf.frobenius, k);
        const mpq_class c = p_power_q(lf.local.p(), -static_cast<long>(k) * lf.local.n());
        for (auto& cp : lf.graded_charpolys)
            cp = scale_roots(cp, c);
    }
    return out;
}

OgObject gr(const OgObject& x, int i, int guard)
{
    require_aligned(x, guard);
    for (std::size_t k = 0; k < x.steps.size(); ++k)
        if (x.steps[k].weight == i) {
            OgObject out = restrict(x, k, k + 1);
            out.steps[0].dim = out.dim;
            return out;
        }
    return restrict(x, 0, 0);
}

OgObject w_leq(const OgObject& x, int n, int guard)
{
    require_aligned(x, guard);
    std::size_t k1 = 0;
    while (k1 < x.steps.size() && x.steps[k1].weight <= n)
        ++k1;
    return restrict(x, 0, k1);
}

LEffectivity is_l_effective(const OgObject& x)
{
    LEffectivity res;
    for (const auto& lf : x.locals) {
        const FracMatrix& a = lf.frobenius.matrix();
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                const auto v = a.numer(i, j).valuation();
                if (!v || *v - a.denom_exp >= 0)
                    continue;
                const int val = *v - a.denom_exp;
                if (!res.witness || val < res.witness->valuation)
                    res.witness = LEffectivity::Witness{lf.local.p(), i, j, val};
                res.ok = false;
            }
    }
    return res;
}

std::vector<QPoly> graded_charpolys(const OgObject& x, const LocalFrobenius& lf, int guard)
{
    if (lf.graded_charpolys.size() == x.steps.size())
        return lf.graded_charpolys;
    const FracMatrix lin = linearize(lf.frobenius).matrix();
    std::vector<QPoly> out;
    for (std::size_t k = 0; k < x.steps.size(); ++k) {
        const std::size_t b0 = x.step_begin(k), b1 = x.steps[k].dim;
        if (b1 == b0)
            out.emplace_back(std::vector<mpq_class>{1});
        else
            out.push_back(reconstruct_charpoly(lin.block(b0, b0, b1 - b0, b1 - b0), kCharpolyHeight, guard));
    }
    return out;
}

bool is_e_effective(const OgObject& x, int guard)
{
    bool ok = true;
    for (const auto& lf : x.locals) {
        const std::vector<QPoly> cps = graded_charpolys(x, lf, guard);
        const FracMatrix lin = linearize(lf.frobenius).matrix();
        for (std::size_t k = 0; k < x.steps.size(); ++k) {
            const std::size_t b0 = x.step_begin(k), b1 = x.steps[k].dim;
            if (b1 == b0)
                continue;
            check_charpoly(lin.block(b0, b0, b1 - b0, b1 - b0), cps[k], guard);
            ok = ok && cps[k].monic().is_integral();
        }
    }
    return ok;
}

LevelReport is_level_le_1(const OgObject& x, int guard)
{
    LevelReport rep;
    auto clause = [&](const std::string& name, auto&& test) {
        bool holds = false;
        try {
            holds = test();
        } catch (const Error&) {
            holds = false;
        }
        rep.clauses.push_back({name, holds});
        return holds;
    };

    const bool a = clause("weights in {-2,-1,0}", [&] {
        for (std::size_t k = 0; k < x.steps.size(); ++k)
            if (x.steps[k].dim > x.step_begin(k) && (x.steps[k].weight < -2 || x.steps[k].weight > 0))
                return false;
        return true;
    });
    auto w2 = [&] { return twist_object(w_leq(x, -2, guard), -1); };
    const bool b = clause("W_-2(-1) l-effective, e-effective, pure of weight 0", [&] {
        const OgObject t = w2();
        const ObjectReport r = check_object(t, guard);
        for (const auto& s : t.steps)
            if (s.dim > 0 && s.weight != 0)
                return false;
        return r.ok && is_l_effective(t).ok && is_e_effective(t, guard);
    });
    const bool c = clause("X(-1) l-effective", [&] { return is_l_effective(twist_object(x, -1)).ok; });
    const bool d0 = clause("gr_0 e-effective", [&] { return is_e_effective(gr(x, 0, guard), guard); });
    const bool d1 = clause("gr_-1(-1) e-effective",
                           [&] { return is_e_effective(twist_object(gr(x, -1, guard), -1), guard); });
    const bool d2 = clause("W_-2(-1) e-effective", [&] { return is_e_effective(w2(), guard); });
    rep.literal_reading = clause("X e-effective (literal reading)", [&] { return is_e_effective(x, guard); });
    rep.holds = a && b && c && d0 && d1 && d2;
    return rep;
}

KroneckerReport kronecker_rational(const QuadraticFieldElement& c, const std::vector<Place>& places, int m)
{
    KroneckerReport rep;
    rep.rational = galois_conjugate(c) == c;
    for (const Place& v : places) {
        if (v.kind != PlaceKind::Inert)
            continue;
        const LocalField local(c.field(), v, m);
        PadicElement e(local.context());
        try {
            e = embed(c, local);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::DenominatorNotUnit)
                continue;
            throw;
        }
        rep.places_checked.push_back(v.p);
        if (!(e.frobenius() == e)) {
            rep.local = false;
            if (!rep.rejecting_place)
                rep.rejecting_place = v.p;
        }
    }
    rep.agree = rep.rational == rep.local;
    return rep;
}

FracMatrix embed_matrix(const KMatrix& x, const LocalField& local)
{
    const ContextPtr& ctx = local.context();
    const PadicFraction s(local.sqrt_d());
    std::vector<PadicFraction> entries;
    int denom = 0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const QuadraticFieldElement& e = x(i, j);
            PadicFraction f = embed_fraction(e.a(), ctx);
            if (sgn(e.b()) != 0)
                f = f + embed_fraction(e.b(), ctx) * s;
            if (!f.is_zero())
                denom = std::max(denom, -f.valuation());
            entries.push_back(f);
        }
    PadicMatrix numer(ctx, x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            numer(i, j) = entries[i * x.cols() + j].shifted(denom).to_integral();
    return {numer, denom};
}

namespace {

struct LocalCandidates {
    std::vector<QVector> span;
    PlaceSolution info;
};

// Integral points of small height in the solution module at one place.
LocalCandidates solve_at_place(const OgObject& m, const OgObject& n, const LocalFrobenius& lm,
                               const LocalFrobenius& ln, const HomOptions& opt)
{
    const LocalField& local = lm.local;
    const ContextPtr& ctx = local.context();
    const long p = local.p();
    const bool rational = m.field.is_rational();
    const std::size_t step = rational ? 1 : 2;
    const std::size_t rows = n.dim, cols = m.dim;
    const std::size_t unknowns = KMatrix::coordinate_count(m.field, rows, cols);
    const int deg = local.n();

    const FracMatrix& fm = lm.frobenius.matrix();
    const FracMatrix& fn = ln.frobenius.matrix();
    const int d = std::max(fm.denom_exp, fn.denom_exp);
    const PadicMatrix am = fm.with_denominator(d).numer;
    const PadicMatrix an = fn.with_denominator(d).numer;
    const PadicElement s = local.sqrt_d();
    const PadicElement ss = s.frobenius();

    // (X A_M - A_N sigma(X))_{ij}, split into Z_p coordinates
    const auto zp = PadicContext::make(p, 1, ctx->m());
    PadicMatrix sys(zp, rows * cols * static_cast<std::size_t>(deg), unknowns);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<PadicElement> coeff(unknowns, PadicElement(ctx));
            for (std::size_t k = 0; k < cols; ++k) {
                const std::size_t u = (i * cols + k) * step;
                coeff[u] += am(k, j);
                if (!rational)
                    coeff[u + 1] += s * am(k, j);
            }
            for (std::size_t k = 0; k < rows; ++k) {
                const std::size_t u = (k * cols + j) * step;
                coeff[u] -= an(i, k);
                if (!rational)
                    coeff[u + 1] -= an(i, k) * ss;
            }
            const std::size_t row = (i * cols + j) * static_cast<std::size_t>(deg);
            for (std::size_t u = 0; u < unknowns; ++u) {
                const PadicElement& e = coeff[u];
                sys(row, u) = PadicElement::from_coords(zp, e.c0(), 0, e.precision());
                if (deg == 2)
                    sys(row + 1, u) = PadicElement::from_coords(zp, e.c1(), 0, e.precision());
            }
        }

    const SmithForm sf = smith_form(sys);
    const int k = std::min(sf.working_precision, sys.min_precision()) - opt.guard;
    if (k <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "hom_space: no precision left at p = " + std::to_string(p));
    const mpz_class& modulus = zp->p_power(k);

    // u in the lattice iff y = V^{-1} u has p^{e_t} y_t = 0 mod p^k
    std::vector<ZVector> gens;
    std::size_t padic_dim = 0;
    for (std::size_t t = 0; t < unknowns; ++t) {
        const int e = t < sf.pivot_valuations.size() ? sf.pivot_valuations[t] : k;
        if (e >= k)
            ++padic_dim;
        const mpz_class mult = e >= k ? mpz_class(1) : zp->p_power(k - e);
        ZVector g(unknowns);
        for (std::size_t i = 0; i < unknowns; ++i)
            g[i] = (sf.column_transform(i, t).c0() * mult) % modulus;
        gens.push_back(std::move(g));
    }
    std::vector<ZVector> basis = hnf_modular(gens, unknowns, modulus);
    lll_reduce(basis);

    LocalCandidates out;
    out.info = PlaceSolution{p, k, 0, padic_dim, 0};
    std::vector<QVector> cands;
    for (const auto& v : basis) {
        const mpz_class h = max_abs(v);
        if (h <= opt.bound) {
            cands.emplace_back(v.begin(), v.end());
        } else if (out.info.shortest_rejected == 0 || h < out.info.shortest_rejected) {
            out.info.shortest_rejected = h;
        }
    }
    out.span = span_basis(cands, unknowns);
    out.info.local_dimension = out.span.size();
    return out;
}

}  // namespace

HomSolution hom_space(const OgObject& m, const OgObject& n, const HomOptions& opt)
{
    if (!(m.field == n.field))
        throw Error(ErrorKind::InvalidArgument, "hom_space: objects over different fields");
    HomSolution sol;
    sol.reconstruction_bound = opt.bound;
    const std::size_t unknowns = KMatrix::coordinate_count(m.field, n.dim, m.dim);

    std::vector<std::pair<const LocalFrobenius*, const LocalFrobenius*>> common;
    for (const auto& lm : m.locals)
        if (const LocalFrobenius* ln = n.at(lm.local.p())) {
            if (!lm.local.context()->same_as(*ln->local.context()))
                throw Error(ErrorKind::InvalidArgument, "hom_space: precision differs at p = " + std::to_string(lm.local.p()));
            common.emplace_back(&lm, ln);
            sol.places_used.push_back(lm.local.place());
        }
    if (common.empty())
        throw Error(ErrorKind::InvalidArgument, "hom_space: no common place");

    if (unknowns == 0)
        return sol;

    std::vector<QVector> space;
    bool first = true;
    sol.precision_used = common.front().first->local.context()->m();
    for (const auto& [lm, ln] : common) {
        LocalCandidates c = solve_at_place(m, n, *lm, *ln, opt);
        sol.precision_used = std::min(sol.precision_used, c.info.precision);
        sol.per_place.push_back(c.info);
        space = first ? c.span : intersect(space, c.span, unknowns);
        first = false;
    }

    for (const auto& v : space) {
        const KMatrix x = KMatrix::from_coordinates(m.field, n.dim, m.dim, primitive(v));
        for (const auto& [lm, ln] : common) {
            const CommuteResult r = commutes(embed_matrix(x, lm->local), lm->frobenius, ln->frobenius, opt.guard);
            if (!r.ok)
                throw Error(ErrorKind::ReconstructionFailed,
                            "hom_space: reconstructed map fails at p = " + std::to_string(lm->local.p())
                                + "; raise the precision");
        }
        sol.basis.push_back(x);
    }
    sol.analytic_dimension = sol.basis.size();
    return sol;
}

bool weight_raising_block_is_zero(const KMatrix& x, const OgObject& m, const OgObject& n)
{
    const std::vector<int> wm = m.coordinate_weights(), wn = n.coordinate_weights();
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (wn[i] > wm[j] && !x(i, j).is_zero())
                return false;
    return true;
}

}  // namespace ogus

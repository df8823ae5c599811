#include "ogus/isocrystal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ogus/berkowitz.hpp"
#include "ogus/errors.hpp"
#include "ogus/lattice.hpp"
#include "ogus/numfield.hpp"

namespace ogus {

namespace {

// x = +-p^e exactly; returns e.
std::optional<int> signed_p_power(const mpq_class& x, long p)
{
    if (sgn(x) == 0)
        return std::nullopt;
    mpz_class num = abs(x.get_num()), den = x.get_den();
    const mpz_class pz = p;
    const int vn = static_cast<int>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
    const int vd = static_cast<int>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    if (num != 1 || den != 1)
        return std::nullopt;
    return vn - vd;
}

FracMatrix scale(const FracMatrix& a, const PadicFraction& c)
{
    if (c.is_zero()) {
        PadicMatrix z(a.context(), a.rows(), a.cols());
        return {z, 0};
    }
    return {a.numer.scaled(c.unit_part()), a.denom_exp - c.valuation()};
}

// Coefficients of det(x - A) for A = p^(-d) N, leading first.
std::vector<PadicFraction> padic_charpoly(const FracMatrix& a)
{
    const ContextPtr& ctx = a.context();
    const std::size_t n = a.rows();
    std::vector<std::vector<PadicElement>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rows[i].push_back(a.numer(i, j));
    const auto cn = berkowitz(rows, PadicElement(ctx), PadicElement::from_int(ctx, 1));
    std::vector<PadicFraction> out;
    for (std::size_t k = 0; k <= n; ++k)
        out.push_back(PadicFraction(cn[k]).shifted(-a.denom_exp * static_cast<int>(k)));
    return out;
}

}  // namespace

PurityReport weil_weight(const QPoly& f, long p, int n)
{
    if (f.degree() < 1)
        throw Error(ErrorKind::NotMonicNormalizable, "weil_weight: zero or constant polynomial");
    const QPoly g = f.monic();

    PurityReport rep{g, std::nullopt, {}};
    for (const auto& z : numeric_roots(g))
        rep.numeric_moduli.push_back(std::abs(z));
    std::sort(rep.numeric_moduli.begin(), rep.numeric_moduli.end());

    const auto e = signed_p_power(g.coeff(0), p);
    if (!e)
        return rep;
    // |f(0)| = p^(n i deg / 2)
    const int denom = n * g.degree();
    if ((2 * *e) % denom != 0)
        return rep;
    const int i = 2 * *e / denom;
    const double target = std::pow(static_cast<double>(p), n * i / 2.0);
    for (double r : rep.numeric_moduli)
        if (std::abs(r - target) > 1e-9 * target)
            return rep;
    rep.weight = i;
    return rep;
}

FracMatrix normalized(const FracMatrix& a)
{
    const auto v = a.numer.min_valuation();
    if (!v || *v == 0)
        return a;
    PadicMatrix out(a.context(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = PadicFraction(a.numer(i, j)).shifted(-*v).to_integral();
    return {out, a.denom_exp - *v};
}

FracMatrix eval(const QPoly& f, const FracMatrix& a)
{
    const ContextPtr& ctx = a.context();
    const std::size_t n = a.rows();
    const FracMatrix id = FracMatrix::identity(ctx, n);
    FracMatrix acc{PadicMatrix(ctx, n, n), 0};
    for (int k = f.degree(); k >= 0; --k)
        acc = normalized(acc * a + scale(id, embed_fraction(f.coeff(static_cast<std::size_t>(k)), ctx)));
    return acc;
}

void check_charpoly(const FracMatrix& f, const QPoly& charpoly, int guard)
{
    const std::size_t n = f.rows();
    if (charpoly.degree() != static_cast<int>(n))
        throw Error(ErrorKind::CharpolyMismatch, "charpoly degree differs from the dimension");
    const QPoly c = charpoly.monic();
    const auto got = padic_charpoly(f);
    const int target = f.context()->m() - guard;
    for (std::size_t k = 0; k <= n; ++k) {
        const PadicFraction expected = embed_fraction(c.coeff(n - k), f.context());
        const PadicFraction diff = got[k] - expected;
        // compare at the absolute precision both sides support
        const int prec = std::min(target - f.denom_exp * static_cast<int>(k), diff.absolute_precision());
        if (!diff.is_zero() && diff.valuation() < prec)
            throw Error(ErrorKind::CharpolyMismatch,
                        "p-adic characteristic polynomial disagrees in the coefficient of x^" + std::to_string(n - k));
    }
}

QPoly reconstruct_charpoly(const FracMatrix& f, const mpz_class& bound, int guard)
{
    const std::size_t n = f.rows();
    const ContextPtr& ctx = f.context();
    const auto got = padic_charpoly(f);
    std::vector<mpq_class> coeffs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        // p^(d k) c_k is the integral Berkowitz coefficient
        const PadicElement integral = got[k].shifted(f.denom_exp * static_cast<int>(k)).to_integral();
        const int prec = std::min(integral.precision(), ctx->m() - guard);
        if (prec <= 0 || integral.with_precision(prec).c1() != 0)
            throw Error(ErrorKind::ReconstructionFailed, "reconstruct_charpoly: coefficient not rational at precision");
        const mpz_class& mod = ctx->p_power(prec);
        const auto q = rational_reconstruct(mpz_class(integral.c0() % mod), mod, bound);
        if (!q)
            throw Error(ErrorKind::ReconstructionFailed, "reconstruct_charpoly: no rational of bounded height");
        const long shift = static_cast<long>(f.denom_exp) * static_cast<long>(k);
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), mpz_class(ctx->p()).get_mpz_t(), static_cast<unsigned long>(std::labs(shift)));
        coeffs[n - k] = shift >= 0 ? mpq_class(*q / pk) : mpq_class(*q * pk);
        coeffs[n - k].canonicalize();
    }
    return QPoly(coeffs);
}

WeightDecomposition decompose(const FracMatrix& f_linear, const QPoly& charpoly, int guard)
{
    const std::size_t n = f_linear.rows();
    const ContextPtr& ctx = f_linear.context();
    if (f_linear.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "decompose: operator not square");
    WeightDecomposition out;
    if (n == 0)
        return out;

    const auto fac = factor(charpoly.monic());
    std::map<int, std::pair<QPoly, std::size_t>> by_weight;  // weight -> (g_i, dim H_i)
    std::map<int, int> exponent;                             // weight -> largest multiplicity
    for (const auto& [g, mult] : fac) {
        PurityReport rep = weil_weight(g, ctx->p(), ctx->n());
        if (!rep.weight)
            throw Error(ErrorKind::MixedNonIntegralWeight, "factor " + g.to_string() + " is not pure of integral weight");
        auto [it, fresh] = by_weight.try_emplace(*rep.weight, QPoly({mpq_class(1)}), 0);
        it->second.first = it->second.first * g;
        it->second.second += static_cast<std::size_t>(g.degree() * mult);
        exponent[*rep.weight] = std::max(exponent[*rep.weight], mult);
        out.factors.push_back(std::move(rep));
    }
    check_charpoly(f_linear, charpoly, guard);

    std::size_t cumulative = 0;
    for (const auto& [w, data] : by_weight) {
        const auto& [g, expected] = data;
        FracMatrix gi = eval(g, f_linear);
        FracMatrix power = FracMatrix::identity(ctx, n);
        for (int k = 0; k < exponent[w]; ++k)
            power = normalized(power * gi);
        const auto ker = kernel(power.numer, guard, expected);
        PadicMatrix basis(ctx, n, ker.size());
        for (std::size_t c = 0; c < ker.size(); ++c)
            for (std::size_t r = 0; r < n; ++r)
                basis(r, c) = ker[c][r];
        out.summands.push_back({w, std::move(basis)});
        cumulative += expected;
        out.filtration.emplace_back(w, cumulative);
    }
    return out;
}

bool is_pure(const FracMatrix& f_linear, const QPoly& charpoly, int i, int guard)
{
    const ContextPtr& ctx = f_linear.context();
    bool pure = true;
    for (const auto& [g, mult] : factor(charpoly.monic())) {
        const PurityReport rep = weil_weight(g, ctx->p(), ctx->n());
        if (!rep.weight)
            throw Error(ErrorKind::MixedNonIntegralWeight, "factor " + g.to_string() + " is not pure of integral weight");
        pure = pure && *rep.weight == i;
    }
    check_charpoly(f_linear, charpoly, guard);
    return pure;
}

std::vector<PadicMatrix> linear_intertwiners(const FracMatrix& fm, const FracMatrix& fn, int guard)
{
    const std::size_t a = fn.rows(), b = fm.rows();
    const ContextPtr& ctx = fm.context();
    // X fm - fn X = 0 over the common denominator; unknown X(i, j) at i * b + j
    const int d = std::max(fm.denom_exp, fn.denom_exp);
    const PadicMatrix m = fm.with_denominator(d).numer;
    const PadicMatrix nn = fn.with_denominator(d).numer;
    PadicMatrix sys(ctx, a * b, a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            const std::size_t row = i * b + j;
            for (std::size_t k = 0; k < b; ++k)
                sys(row, i * b + k) += m(k, j);
            for (std::size_t k = 0; k < a; ++k)
                sys(row, k * b + j) -= nn(i, k);
        }
    std::vector<PadicMatrix> out;
    for (const auto& v : kernel(sys, guard)) {
        PadicMatrix x(ctx, a, b);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j)
                x(i, j) = v[i * b + j];
        out.push_back(std::move(x));
    }
    return out;
}

bool same_column_span(const PadicMatrix& a, const PadicMatrix& b, int guard)
{
    if (a.rows() != b.rows())
        return false;
    PadicMatrix both(a.context(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            both(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            both(i, a.cols() + j) = b(i, j);
    }
    const std::size_t ra = rank(a, guard), rb = rank(b, guard);
    return ra == rb && rank(both, guard) == ra;
}

}  // namespace ogus

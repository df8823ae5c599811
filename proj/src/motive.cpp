#include "ogus/motive.hpp"

#include <algorithm>
#include <map>

#include "ogus/errors.hpp"

namespace ogus {

namespace {

std::vector<mpz_class> prime_factors(mpz_class x)
{
    std::vector<mpz_class> out;
    x = abs(x);
    for (mpz_class q = 2; q * q <= x; ++q) {
        if (x % q != 0)
            continue;
        out.push_back(q);
        while (x % q == 0)
            x /= q;
        if (mpz_probab_prime_p(x.get_mpz_t(), 30) > 0)
            break;
    }
    if (x > 1)
        out.push_back(x);
    return out;
}

std::vector<mpz_class> common_primes(const KummerMotive& m, const KummerMotive& n)
{
    std::vector<mpz_class> out;
    for (const auto* k : {&m, &n})
        for (const auto& row : k->entries())
            for (const auto& a : row)
                for (const mpz_class& part : {a.get_num(), a.get_den()})
                    for (const auto& q : prime_factors(part))
                        out.push_back(q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Exponent vector of a positive rational over the given primes.
std::vector<long> nu(const mpq_class& a, const std::vector<mpz_class>& primes)
{
    std::vector<long> out;
    for (const auto& q : primes) {
        mpz_class num = a.get_num(), den = a.get_den();
        const long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t()));
        const long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t()));
        out.push_back(vn - vd);
    }
    return out;
}

QPoly linear(const mpq_class& root) { return QPoly::linear_root(root); }

}  // namespace

KummerMotive::KummerMotive(std::size_t s, std::size_t r, std::vector<std::vector<mpq_class>> entries)
    : s_(s), r_(r), u_(std::move(entries))
{
    if (u_.size() != s_)
        throw Error(ErrorKind::DimensionMismatch, "KummerMotive: expected " + std::to_string(s_) + " rows");
    for (auto& row : u_) {
        if (row.size() != r_)
            throw Error(ErrorKind::DimensionMismatch, "KummerMotive: expected " + std::to_string(r_) + " columns");
        for (auto& a : row) {
            a.canonicalize();
            if (sgn(a) <= 0)
                throw Error(ErrorKind::NonPositiveEntry, "KummerMotive: entry " + a.get_str() + " is not positive");
        }
    }
}

bool is_good_place(const KummerMotive& m, const QuadField& field, long p)
{
    if (p == 2 || !is_prime(p) || field.d() % p == 0)
        return false;
    for (const auto& row : m.entries())
        for (const auto& a : row)
            if (a.get_num() % p == 0 || a.get_den() % p == 0)
                return false;
    return true;
}

std::vector<Place> good_places(const KummerMotive& m, const QuadField& field, long bound)
{
    std::vector<Place> out;
    for (long p = 3; p <= bound; p += 2)
        if (is_good_place(m, field, p))
            out.push_back(classify_place(field, p));
    return out;
}

std::vector<Place> select_places(const std::vector<Place>& good, const QuadField& field, std::size_t count)
{
    std::vector<Place> out(good.begin(), good.begin() + static_cast<long>(std::min(count, good.size())));
    if (field.is_rational() || out.empty())
        return out;
    const auto inert = [](const Place& v) { return v.kind == PlaceKind::Inert; };
    if (std::any_of(out.begin(), out.end(), inert))
        return out;
    const auto it = std::find_if(good.begin(), good.end(), inert);
    if (it != good.end())
        out.back() = *it;
    return out;
}

DeRhamLayout t_dR(const KummerMotive& m)
{
    return {m.s() + m.r(), {{-2, m.s()}, {0, m.s() + m.r()}}};
}

DeltaData delta_section(const KummerMotive& m, const LocalField& local)
{
    if (!is_good_place(m, local.field(), local.p()))
        throw Error(ErrorKind::NotAGoodPlace, "delta_section: p = " + std::to_string(local.p()) + " is not good");
    DeltaData out{local.place(), {}};
    for (std::size_t i = 0; i < m.s(); ++i) {
        out.lambda.emplace_back();
        for (std::size_t j = 0; j < m.r(); ++j)
            out.lambda.back().push_back(log_torus_unit(embed_rational(m.entry(i, j), local.context())));
    }
    return out;
}

OgObject t_Og(const KummerMotive& m, const QuadField& field, const std::vector<Place>& places, int precision)
{
    const std::size_t s = m.s(), r = m.r(), dim = s + r;
    OgObject x;
    x.field = field;
    x.dim = dim;
    x.steps = t_dR(m).steps;
    for (const Place& v : places) {
        if (!is_good_place(m, field, v.p))
            throw Error(ErrorKind::NotAGoodPlace, "t_Og: p = " + std::to_string(v.p) + " is not good");
        LocalField local(field, v, precision);
        const ContextPtr& ctx = local.context();
        const DeltaData delta = delta_section(m, local);
        const PadicElement pe = PadicElement::from_int(ctx, v.p);
        // p A_v = [[I_s, p Lambda - sigma(Lambda)], [0, p I_r]]
        PadicMatrix numer(ctx, dim, dim);
        for (std::size_t i = 0; i < s; ++i)
            numer(i, i) = PadicElement::from_int(ctx, 1);
        for (std::size_t j = 0; j < r; ++j)
            numer(s + j, s + j) = pe;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                const LogValue& l = delta.lambda[i][j];
                const PadicElement lam = l.value.with_precision(l.guaranteed_precision);
                numer(i, s + j) = pe * lam - lam.frobenius();
            }
        const mpq_class q = mpq_class(1, mpz_class(ctx->residue_field_size()));
        std::vector<QPoly> cps = {pow(linear(q), static_cast<unsigned>(s)), pow(linear(1), static_cast<unsigned>(r))};
        x.locals.push_back({local, SemilinearOperator({numer, 1}, 1), std::move(cps)});
    }
    return x;
}

bool is_compatible(const MotiveHom& phi, const KummerMotive& m, const KummerMotive& n)
{
    if (phi.e.rows() != n.s() || phi.e.cols() != m.s() || phi.d.rows() != n.r() || phi.d.cols() != m.r())
        return false;
    const std::vector<mpz_class> primes = common_primes(m, n);
    for (std::size_t i = 0; i < n.s(); ++i)
        for (std::size_t j = 0; j < m.r(); ++j) {
            std::vector<mpq_class> lhs(primes.size()), rhs(primes.size());
            for (std::size_t k = 0; k < m.s(); ++k) {
                const auto v = nu(m.entry(k, j), primes);
                for (std::size_t t = 0; t < primes.size(); ++t)
                    lhs[t] += phi.e(i, k) * v[t];
            }
            for (std::size_t l = 0; l < n.r(); ++l) {
                const auto v = nu(n.entry(i, l), primes);
                for (std::size_t t = 0; t < primes.size(); ++t)
                    rhs[t] += phi.d(l, j) * v[t];
            }
            if (lhs != rhs)
                return false;
        }
    return true;
}

KMatrix realize_hom(const MotiveHom& phi, const KummerMotive& m, const KummerMotive& n, const QuadField& field)
{
    if (!is_compatible(phi, m, n))
        throw Error(ErrorKind::IncompatibleHom, "realize_hom: multiplicative identity fails");
    KMatrix x(field, n.s() + n.r(), m.s() + m.r());
    for (std::size_t i = 0; i < n.s(); ++i)
        for (std::size_t k = 0; k < m.s(); ++k)
            x(i, k) = QuadraticFieldElement(field, phi.e(i, k));
    for (std::size_t l = 0; l < n.r(); ++l)
        for (std::size_t j = 0; j < m.r(); ++j)
            x(n.s() + l, m.s() + j) = QuadraticFieldElement(field, phi.d(l, j));
    return x;
}

std::vector<MotiveHom> motive_hom_exact(const KummerMotive& m, const KummerMotive& n)
{
    const std::vector<mpz_class> primes = common_primes(m, n);
    const std::size_t ne = n.s() * m.s(), nd = n.r() * m.r();
    // unknowns: E(i, k) at i * s_M + k, then D(l, j) at ne + l * r_M + j
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < n.s(); ++i)
        for (std::size_t j = 0; j < m.r(); ++j)
            for (std::size_t t = 0; t < primes.size(); ++t) {
                QVector row(ne + nd);
                for (std::size_t k = 0; k < m.s(); ++k)
                    row[i * m.s() + k] += nu(m.entry(k, j), primes)[t];
                for (std::size_t l = 0; l < n.r(); ++l)
                    row[ne + l * m.r() + j] -= nu(n.entry(i, l), primes)[t];
                rows.push_back(std::move(row));
            }
    std::vector<QVector> ker;
    if (rows.empty()) {
        for (std::size_t u = 0; u < ne + nd; ++u) {
            QVector e(ne + nd);
            e[u] = 1;
            ker.push_back(e);
        }
    } else {
        ker = kernel(QMatrix::from_rows(rows, ne + nd));
    }
    std::vector<MotiveHom> out;
    for (const auto& v0 : span_basis(ker, ne + nd)) {
        const QVector v = primitive(v0);
        MotiveHom phi{QMatrix(n.s(), m.s()), QMatrix(n.r(), m.r())};
        for (std::size_t i = 0; i < n.s(); ++i)
            for (std::size_t k = 0; k < m.s(); ++k)
                phi.e(i, k) = v[i * m.s() + k];
        for (std::size_t l = 0; l < n.r(); ++l)
            for (std::size_t j = 0; j < m.r(); ++j)
                phi.d(l, j) = v[ne + l * m.r() + j];
        out.push_back(std::move(phi));
    }
    return out;
}

FullnessReport check_fullness(const KummerMotive& m, const KummerMotive& n, const QuadField& field,
                              const std::vector<Place>& places, int precision, const mpz_class& bound)
{
    FullnessReport rep;
    rep.exact_basis = motive_hom_exact(m, n);
    const std::size_t dim = KMatrix::coordinate_count(field, n.s() + n.r(), m.s() + m.r());
    std::vector<QVector> image;
    for (const auto& phi : rep.exact_basis) {
        KMatrix x = realize_hom(phi, m, n, field);
        if (x.is_zero())
            rep.faithful = false;
        image.push_back(x.coordinates());
        rep.realized.push_back(std::move(x));
    }
    const OgObject om = t_Og(m, field, places, precision);
    const OgObject on = t_Og(n, field, places, precision);
    rep.analytic = hom_space(om, on, HomOptions{kDefaultGuard, bound});
    std::vector<QVector> analytic;
    for (const auto& x : rep.analytic.basis) {
        analytic.push_back(x.coordinates());
        rep.strict = rep.strict && weight_raising_block_is_zero(x, om, on);
    }
    rep.spaces_equal = span_basis(image, dim).size() == rep.exact_basis.size()
                       && analytic.size() == rep.exact_basis.size() && same_span(image, analytic, dim);
    return rep;
}

SectionReport section_uniqueness(const KummerMotive& m, const LocalField& local)
{
    const DeltaData delta = delta_section(m, local);
    const ContextPtr& ctx = local.context();
    const int n = local.n();
    const PadicElement pe = PadicElement::from_int(ctx, local.p());

    // y -> p y - sigma(y) on W(k), as a Z_p-matrix in the basis (1, g)
    std::vector<PadicElement> basis = {PadicElement::from_int(ctx, 1)};
    if (n == 2)
        basis.push_back(PadicElement::generator(ctx));
    const auto zp = PadicContext::make(local.p(), 1, ctx->m());
    PadicMatrix l(zp, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const PadicElement img = pe * basis[c] - basis[c].frobenius();
        l(0, c) = PadicElement::from_int(zp, img.c0());
        if (n == 2)
            l(1, c) = PadicElement::from_int(zp, img.c1());
    }

    SectionReport rep{local.place(), static_cast<std::size_t>(n) - rank(l, kDefaultGuard), true, {}, ctx->m()};
    if (rep.solution_dimension != 0)
        throw Error(ErrorKind::PrecisionExhausted, "section_uniqueness: degenerate section equation");
    for (std::size_t i = 0; i < m.s(); ++i) {
        rep.solution.emplace_back();
        for (std::size_t j = 0; j < m.r(); ++j) {
            const LogValue& lv = delta.lambda[i][j];
            const PadicElement lam = lv.value.with_precision(lv.guaranteed_precision);
            // p Y - sigma(Y) = p Lambda - sigma(Lambda), the top block of A sigma(S) = S times p
            const PadicElement rhs = pe * lam - lam.frobenius();
            std::vector<PadicElement> b = {PadicElement::from_coords(zp, rhs.c0(), 0, rhs.precision())};
            if (n == 2)
                b.push_back(PadicElement::from_coords(zp, rhs.c1(), 0, rhs.precision()));
            const auto y = solve_unimodular(l, b);
            const PadicElement sol =
                PadicElement::from_coords(ctx, y[0].c0(), n == 2 ? y[1].c0() : mpz_class(0),
                                          std::min(y[0].precision(), n == 2 ? y[1].precision() : ctx->m()));
            rep.precision = std::min(rep.precision, sol.precision());
            rep.matches_delta = rep.matches_delta && sol == lam;
            rep.solution.back().push_back(sol);
        }
    }
    return rep;
}

}  // namespace ogus

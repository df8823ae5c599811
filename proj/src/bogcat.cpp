#include "ogus/bogcat.hpp"

#include "ogus/errors.hpp"

namespace ogus {

std::vector<Place> BOgObject::places() const
{
    std::vector<Place> out;
    for (const auto& l : locals)
        out.push_back(l.local.place());
    return out;
}

const ResidueFrobenius* BOgObject::at(long p) const
{
    for (const auto& l : locals)
        if (l.local.p() == p)
            return &l;
    return nullptr;
}

PadicMatrix pth_power_op(std::size_t s, std::size_t r, const ContextPtr& ctx)
{
    PadicMatrix out(ctx, s + r, s + r);
    for (std::size_t i = 0; i < s + r; ++i)
        for (std::size_t j = 0; j < s + r; ++j)
            out(i, j) = PadicElement::from_int(ctx, i == j && i < s ? 1 : 0).with_precision(1);
    return out;
}

BOgObject psi(const OgObject& x)
{
    const LEffectivity le = is_l_effective(x);
    if (!le.ok)
        throw Error(ErrorKind::NotLEffective, "psi: F_v is not integral at p = " + std::to_string(le.witness->p));
    BOgObject out{x.field, x.dim, {}};
    for (const auto& lf : x.locals) {
        if (lf.frobenius.twist() != 1 % lf.local.n())
            throw Error(ErrorKind::InvalidArgument, "psi: Frobenius twist must be 1");
        const PadicMatrix a = lf.frobenius.matrix().to_integral();
        PadicMatrix res(a.context(), a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                res(i, j) = a(i, j).residue();
        out.locals.push_back({lf.local, res});
    }
    return out;
}

BOgObject t_BOg(const KummerMotive& m, const QuadField& field, const std::vector<Place>& places, int precision)
{
    for (const Place& v : places) {
        const LocalField local(field, v, precision);
        for (const auto& row : delta_section(m, local).lambda)
            for (const auto& lam : row)
                if (lam.value.valuation_bound() < 1)
                    throw Error(ErrorKind::InvalidArgument, "t_BOg: logarithm not divisible by p");
    }
    return psi(twist_object(t_Og(m, field, places, precision), -1));
}

BOgObject t_BOg_direct(const KummerMotive& m, const QuadField& field, const std::vector<Place>& places,
                       int precision)
{
    BOgObject out{field, m.s() + m.r(), {}};
    for (const Place& v : places) {
        if (!is_good_place(m, field, v.p))
            throw Error(ErrorKind::NotAGoodPlace, "t_BOg_direct: p = " + std::to_string(v.p) + " is not good");
        const LocalField local(field, v, precision);
        out.locals.push_back({local, pth_power_op(m.s(), m.r(), local.context())});
    }
    return out;
}

bool same_residues(const BOgObject& a, const BOgObject& b)
{
    if (!(a.field == b.field) || a.dim != b.dim || a.locals.size() != b.locals.size())
        return false;
    for (std::size_t k = 0; k < a.locals.size(); ++k) {
        const PadicMatrix& x = a.locals[k].matrix;
        const PadicMatrix& y = b.locals[k].matrix;
        if (!(a.locals[k].local.place() == b.locals[k].local.place()))
            return false;
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t j = 0; j < a.dim; ++j)
                if (!(x(i, j).residue() == y(i, j).residue()))
                    return false;
    }
    return true;
}

namespace {

mpz_class symmetric(const mpz_class& c, long p)
{
    mpz_class r = c % p;
    if (r < 0)
        r += p;
    if (2 * r > p)
        r -= p;
    return r;
}

// A K-matrix whose image in k_v is the given residue matrix.
KMatrix lift(const PadicMatrix& a, const QuadField& field, long p)
{
    KMatrix out(field, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = QuadraticFieldElement(field, symmetric(a(i, j).c0(), p), symmetric(a(i, j).c1(), p));
    return out;
}

KMatrix conjugate(const KMatrix& x)
{
    KMatrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = galois_conjugate(x(i, j));
    return out;
}

}  // namespace

std::vector<KMatrix> bog_hom_space(const BOgObject& m, const BOgObject& n)
{
    if (!(m.field == n.field))
        throw Error(ErrorKind::InvalidArgument, "bog_hom_space: different fields");
    const QuadField& field = m.field;
    const std::size_t count = KMatrix::coordinate_count(field, n.dim, m.dim);
    if (count == 0)
        return {};
    std::vector<QVector> rows;
    for (const auto& lm : m.locals) {
        const ResidueFrobenius* ln = n.at(lm.local.p());
        if (!ln)
            continue;
        const long p = lm.local.p();
        const KMatrix fm = lift(lm.matrix, field, p);
        const KMatrix fn = lift(ln->matrix, field, p);
        const bool inert = lm.local.place().kind == PlaceKind::Inert;
        // The constraint map is Q-linear; evaluate it on each coordinate vector.
        std::vector<QVector> images;
        for (std::size_t t = 0; t < count; ++t) {
            QVector e(count, 0);
            e[t] = 1;
            const KMatrix x = KMatrix::from_coordinates(field, n.dim, m.dim, e);
            const KMatrix lhs = x * fm;
            const KMatrix rhs = fn * (inert ? conjugate(x) : x);
            QVector img;
            for (std::size_t i = 0; i < lhs.rows(); ++i)
                for (std::size_t j = 0; j < lhs.cols(); ++j) {
                    const QuadraticFieldElement d = lhs(i, j) - rhs(i, j);
                    img.push_back(d.a());
                    if (!field.is_rational())
                        img.push_back(d.b());
                }
            images.push_back(img);
        }
        for (std::size_t r = 0; r < images.front().size(); ++r) {
            QVector row(count);
            for (std::size_t t = 0; t < count; ++t)
                row[t] = images[t][r];
            rows.push_back(row);
        }
    }
    std::vector<QVector> basis;
    if (rows.empty()) {
        for (std::size_t t = 0; t < count; ++t) {
            QVector e(count, 0);
            e[t] = 1;
            basis.push_back(e);
        }
    } else {
        basis = kernel(QMatrix::from_rows(rows, count));
    }
    std::vector<KMatrix> out;
    for (const auto& v : basis)
        out.push_back(KMatrix::from_coordinates(field, n.dim, m.dim, primitive(v)));
    return out;
}

}  // namespace ogus

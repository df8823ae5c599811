#include "ogus/numfield.hpp"

#include <algorithm>
#include <sstream>

#include "ogus/errors.hpp"

namespace ogus {

bool is_squarefree(long d)
{
    if (d == 0)
        return false;
    long n = d < 0 ? -d : d;
    for (long q = 2; q * q <= n; ++q)
        if (n % (q * q) == 0)
            return false;
    return true;
}

QuadField::QuadField(long d) : d_(d)
{
    if (!is_squarefree(d))
        throw Error(ErrorKind::InvalidArgument, "QuadField: d must be squarefree and nonzero");
}

QuadraticFieldElement::QuadraticFieldElement(QuadField field, mpq_class a, mpq_class b)
    : field_(field), a_(std::move(a)), b_(std::move(b))
{
    a_.canonicalize();
    b_.canonicalize();
    if (field_.is_rational()) {
        a_ += b_;  // sqrt(1) = 1
        b_ = 0;
    }
}

QuadraticFieldElement operator+(const QuadraticFieldElement& x, const QuadraticFieldElement& y)
{
    return QuadraticFieldElement(x.field_, x.a_ + y.a_, x.b_ + y.b_);
}

QuadraticFieldElement operator-(const QuadraticFieldElement& x, const QuadraticFieldElement& y)
{
    return QuadraticFieldElement(x.field_, x.a_ - y.a_, x.b_ - y.b_);
}

QuadraticFieldElement operator*(const QuadraticFieldElement& x, const QuadraticFieldElement& y)
{
    const long d = x.field_.d();
    return QuadraticFieldElement(x.field_, x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
}

std::string QuadraticFieldElement::to_string() const
{
    if (sgn(b_) == 0)
        return a_.get_str();
    std::ostringstream os;
    if (sgn(a_) != 0)
        os << a_.get_str() << (sgn(b_) > 0 ? "+" : "");
    os << b_.get_str() << "*sqrt(" << field_.d() << ")";
    return os.str();
}

std::string to_string(const Place& v)
{
    std::ostringstream os;
    os << v.p << (v.kind == PlaceKind::Inert ? " (inert, n=2)" : " (split, n=1)");
    return os.str();
}

Place classify_place(const QuadField& field, long p)
{
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidArgument, "classify_place: p is not prime");
    if (p == 2 || field.d() % p == 0)
        throw Error(ErrorKind::RamifiedOrEvenPlace, "classify_place: p divides 2d");
    if (field.is_rational())
        return Place{p, 1, PlaceKind::Split};
    mpz_class r;
    const mpz_class base = ((field.d() % p) + p) % p;
    const mpz_class pz = p;
    mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), pz.get_mpz_t());
    if (r == 1)
        return Place{p, 1, PlaceKind::Split};
    return Place{p, 2, PlaceKind::Inert};
}

QuadraticFieldElement galois_conjugate(const QuadraticFieldElement& x)
{
    return QuadraticFieldElement(x.field(), x.a(), -x.b());
}

namespace {

PadicElement split_sqrt(long d, const ContextPtr& ctx)
{
    const long p = ctx->p();
    const long dm = ((d % p) + p) % p;
    long r = 0;
    while (r < p && (r * r) % p != dm)
        ++r;
    if (r == p)
        throw Error(ErrorKind::InvalidArgument, "split_sqrt: d is not a square mod p");
    // Newton: y <- (y + d/y) / 2, quadratic convergence from a simple root.
    const PadicElement dd = PadicElement::from_int(ctx, d);
    const PadicElement half = PadicElement::from_int(ctx, 2).inverse();
    PadicElement y = PadicElement::from_int(ctx, r);
    for (int iter = 0; iter < 64; ++iter) {
        const PadicElement next = (y + dd * y.inverse()) * half;
        if (next == y && (next * next - dd).is_zero())
            break;
        y = next;
    }
    return y;
}

}  // namespace

LocalField::LocalField(QuadField field, Place place, int m)
    : field_(field),
      place_(place),
      ctx_(PadicContext::make(place.p, place.residue_degree, m, field.d())),
      sqrt_d_(ctx_)
{
    if (classify_place(field, place.p) != place)
        throw Error(ErrorKind::InvalidArgument, "LocalField: place does not match the field");
    if (field.is_rational())
        sqrt_d_ = PadicElement::from_int(ctx_, 1);
    else if (place.kind == PlaceKind::Inert)
        sqrt_d_ = PadicElement::generator(ctx_);
    else
        sqrt_d_ = split_sqrt(field.d(), ctx_);
}

PadicElement embed_rational(const mpq_class& q, const ContextPtr& ctx)
{
    const mpz_class& den = q.get_den();
    if (den % ctx->p() == 0)
        throw Error(ErrorKind::DenominatorNotUnit, "embed: denominator divisible by p");
    return PadicElement::from_int(ctx, q.get_num()) * PadicElement::from_int(ctx, den).inverse();
}

PadicFraction embed_fraction(const mpq_class& q, const ContextPtr& ctx)
{
    if (sgn(q) == 0)
        return PadicFraction(PadicElement(ctx));
    const long p = ctx->p();
    const int vn = valuation(q.get_num(), p);
    const int vd = valuation(q.get_den(), p);
    mpz_class num = q.get_num(), den = q.get_den();
    const mpz_class pz = p;
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    return PadicFraction(embed_rational(mpq_class(num, den), ctx), vn - vd);
}

PadicElement embed(const QuadraticFieldElement& x, const LocalField& local)
{
    if (!(x.field() == local.field()))
        throw Error(ErrorKind::InvalidArgument, "embed: element and place belong to different fields");
    const ContextPtr& ctx = local.context();
    return embed_rational(x.a(), ctx) + embed_rational(x.b(), ctx) * local.sqrt_d();
}

}  // namespace ogus

namespace ogus {

bool KMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const auto& x) { return x.is_zero(); });
}

std::vector<mpq_class> KMatrix::coordinates() const
{
    std::vector<mpq_class> out;
    out.reserve(coordinate_count(field_, rows_, cols_));
    for (const auto& x : data_) {
        out.push_back(x.a());
        if (!field_.is_rational())
            out.push_back(x.b());
    }
    return out;
}

KMatrix KMatrix::from_coordinates(QuadField field, std::size_t rows, std::size_t cols,
                                  const std::vector<mpq_class>& coords)
{
    if (coords.size() != coordinate_count(field, rows, cols))
        throw Error(ErrorKind::DimensionMismatch, "KMatrix::from_coordinates: wrong length");
    KMatrix m(field, rows, cols);
    const std::size_t step = field.is_rational() ? 1 : 2;
    for (std::size_t e = 0; e < rows * cols; ++e)
        m.data_[e] = QuadraticFieldElement(field, coords[e * step], step == 2 ? coords[e * step + 1] : mpq_class(0));
    return m;
}

KMatrix operator*(const KMatrix& x, const KMatrix& y)
{
    if (x.cols_ != y.rows_ || !(x.field_ == y.field_))
        throw Error(ErrorKind::DimensionMismatch, "KMatrix product: shapes or fields differ");
    KMatrix out(x.field_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
        for (std::size_t j = 0; j < y.cols_; ++j)
            for (std::size_t k = 0; k < x.cols_; ++k)
                out(i, j) = out(i, j) + x(i, k) * y(k, j);
    return out;
}

std::string KMatrix::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < cols_; ++j)
            s += (j ? ", " : "") + (*this)(i, j).to_string();
    }
    return s + "]";
}

}  // namespace ogus

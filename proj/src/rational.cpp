#include "ogus/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "ogus/berkowitz.hpp"
#include "ogus/errors.hpp"

namespace ogus {

QMatrix QMatrix::identity(std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols)
{
    QMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw Error(ErrorKind::DimensionMismatch, "from_rows: ragged rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

QVector QMatrix::row(std::size_t i) const
{
    return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QMatrix QMatrix::transpose() const
{
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool QMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const mpq_class& q) { return sgn(q) == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorKind::DimensionMismatch, "QMatrix product: inner dimensions differ");
    QMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorKind::DimensionMismatch, "QMatrix sum: shapes differ");
    QMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] += b.data_[i];
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorKind::DimensionMismatch, "QMatrix difference: shapes differ");
    QMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] -= b.data_[i];
    return c;
}

bool operator==(const QMatrix& a, const QMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

QMatrix scale(const QMatrix& a, const mpq_class& c)
{
    QMatrix r = a;
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            r(i, j) *= c;
    return r;
}

QVector apply(const QMatrix& a, const QVector& x)
{
    if (x.size() != a.cols())
        throw Error(ErrorKind::DimensionMismatch, "apply: vector length");
    QVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            y[i] += a(i, j) * x[j];
    return y;
}

RowEchelon rref(QMatrix a)
{
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < a.rows() && sgn(a(pivot, col)) == 0)
            ++pivot;
        if (pivot == a.rows())
            continue;
        if (pivot != lead_row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(pivot, j), a(lead_row, j));
        const mpq_class inv = 1 / a(lead_row, col);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(lead_row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == lead_row || sgn(a(i, col)) == 0)
                continue;
            const mpq_class f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) -= f * a(lead_row, j);
        }
        out.pivots.push_back(col);
        ++lead_row;
    }
    out.reduced = std::move(a);
    return out;
}

std::size_t rank(const QMatrix& a)
{
    return rref(a).pivots.size();
}

std::vector<QVector> kernel(const QMatrix& a)
{
    const RowEchelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : e.pivots)
        is_pivot[c] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        QVector v(a.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QMatrix> inverse(const QMatrix& a)
{
    if (a.rows() != a.cols())
        throw Error(ErrorKind::DimensionMismatch, "inverse: matrix not square");
    const std::size_t n = a.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    const RowEchelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

std::vector<QVector> span_basis(const std::vector<QVector>& vectors, std::size_t dim)
{
    if (vectors.empty())
        return {};
    const RowEchelon e = rref(QMatrix::from_rows(vectors, dim));
    std::vector<QVector> basis;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        basis.push_back(e.reduced.row(r));
    return basis;
}

std::vector<QVector> intersect(const std::vector<QVector>& a, const std::vector<QVector>& b, std::size_t dim)
{
    const auto ba = span_basis(a, dim);
    const auto bb = span_basis(b, dim);
    if (ba.empty() || bb.empty())
        return {};
    // Solve sum x_i a_i = sum y_j b_j.
    QMatrix sys(dim, ba.size() + bb.size());
    for (std::size_t i = 0; i < ba.size(); ++i)
        for (std::size_t r = 0; r < dim; ++r)
            sys(r, i) = ba[i][r];
    for (std::size_t j = 0; j < bb.size(); ++j)
        for (std::size_t r = 0; r < dim; ++r)
            sys(r, ba.size() + j) = -bb[j][r];
    std::vector<QVector> common;
    for (const QVector& k : kernel(sys)) {
        QVector v(dim);
        for (std::size_t i = 0; i < ba.size(); ++i)
            for (std::size_t r = 0; r < dim; ++r)
                v[r] += k[i] * ba[i][r];
        common.push_back(std::move(v));
    }
    return span_basis(common, dim);
}

bool in_span(const QVector& v, const std::vector<QVector>& basis, std::size_t dim)
{
    std::vector<QVector> all = basis;
    const std::size_t r0 = basis.empty() ? 0 : rank(QMatrix::from_rows(basis, dim));
    all.push_back(v);
    return rank(QMatrix::from_rows(all, dim)) == r0;
}

bool same_span(const std::vector<QVector>& a, const std::vector<QVector>& b, std::size_t dim)
{
    return span_basis(a, dim) == span_basis(b, dim);
}

QVector primitive(const QVector& v)
{
    mpz_class den = 1;
    for (const auto& q : v)
        den = lcm(den, q.get_den());
    mpz_class g = 0;
    for (const auto& q : v)
        g = gcd(g, mpz_class(q.get_num() * (den / q.get_den())));
    QVector out(v.size());
    if (g == 0)
        return out;
    int sign = 0;
    for (const auto& q : v)
        if (sgn(q) != 0) {
            sign = sgn(q);
            break;
        }
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = mpq_class(v[i] * den / g * sign);
        out[i].canonicalize();
    }
    return out;
}

std::string to_string(const mpq_class& q)
{
    return q.get_str();
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs))
{
    for (auto& q : c_)
        q.canonicalize();
    trim();
}

QPoly QPoly::monomial(const mpq_class& c, std::size_t degree)
{
    std::vector<mpq_class> v(degree + 1);
    v[degree] = c;
    return QPoly(std::move(v));
}

QPoly QPoly::linear_root(const mpq_class& root)
{
    return QPoly({-root, mpq_class(1)});
}

void QPoly::trim()
{
    while (!c_.empty() && sgn(c_.back()) == 0)
        c_.pop_back();
}

QPoly QPoly::monic() const
{
    if (c_.empty())
        return *this;
    const mpq_class lc = c_.back();
    std::vector<mpq_class> v = c_;
    for (auto& q : v)
        q /= lc;
    return QPoly(std::move(v));
}

QPoly QPoly::derivative() const
{
    if (c_.size() <= 1)
        return QPoly();
    std::vector<mpq_class> v(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        v[k - 1] = c_[k] * static_cast<long>(k);
    return QPoly(std::move(v));
}

mpq_class QPoly::eval(const mpq_class& x) const
{
    mpq_class acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;)
        acc = acc * x + c_[k];
    return acc;
}

bool QPoly::is_integral() const
{
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& q) { return q.get_den() == 1; });
}

QPoly operator+(const QPoly& a, const QPoly& b)
{
    std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = a.coeff(k) + b.coeff(k);
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b)
{
    std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = a.coeff(k) - b.coeff(k);
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return QPoly();
    std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(v));
}

std::string QPoly::to_string() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const mpq_class& q = c_[k];
        if (sgn(q) == 0)
            continue;
        const bool neg = sgn(q) < 0;
        const mpq_class mag = neg ? mpq_class(-q) : q;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const bool unit = mag == 1;
        if (k == 0 || !unit)
            os << mag.get_str();
        if (k >= 1)
            os << (k == 0 || unit ? "" : "*") << "x";
        if (k >= 2)
            os << "^" << k;
    }
    return os.str();
}

QPoly pow(const QPoly& f, unsigned e)
{
    QPoly r({mpq_class(1)});
    for (unsigned i = 0; i < e; ++i)
        r = r * f;
    return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b)
{
    if (b.is_zero())
        throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    std::vector<mpq_class> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db)
        return {QPoly(), a};
    std::vector<mpq_class> quo(static_cast<std::size_t>(a.degree() - db + 1));
    for (int k = a.degree(); k >= db; --k) {
        const mpq_class f = rem[static_cast<std::size_t>(k)] / b.leading();
        quo[static_cast<std::size_t>(k - db)] = f;
        if (sgn(f) == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(QPoly a, QPoly b)
{
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<std::complex<double>> numeric_roots(const QPoly& f)
{
    const int d = f.degree();
    if (d < 1)
        throw Error(ErrorKind::InvalidArgument, "numeric_roots: constant polynomial");
    const QPoly g = f.monic();
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
        comp(i, d - 1) = -g.coeff(static_cast<std::size_t>(i)).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < d; ++i)
        roots.push_back(solver.eigenvalues()[i]);
    std::sort(roots.begin(), roots.end(), [](auto x, auto y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return roots;
}

namespace {

// Squarefree decomposition (Yun) of a monic polynomial.
std::vector<std::pair<QPoly, int>> squarefree(const QPoly& f)
{
    std::vector<std::pair<QPoly, int>> parts;
    const QPoly df = f.derivative();
    const QPoly a0 = gcd(f, df);
    QPoly b = divmod(f, a0).first;
    QPoly c = divmod(df, a0).first;
    QPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        const QPoly a = gcd(b, d);
        if (a.degree() > 0)
            parts.emplace_back(a, i);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
        ++i;
    }
    return parts;
}

bool near_integer(double x, long double& rounded)
{
    rounded = std::round(static_cast<long double>(x));
    return std::fabs(static_cast<long double>(x) - rounded) <= 1e-6L * std::max<long double>(1.0L, std::fabs(rounded));
}

// Monic integral squarefree h: split off minimal-degree factors found by
// rounding products over subsets of its numeric roots; each candidate is
// confirmed by exact division.
void split_integral(const QPoly& h, std::vector<QPoly>& out)
{
    const int d = h.degree();
    if (d <= 1) {
        out.push_back(h);
        return;
    }
    if (d > 12)
        throw Error(ErrorKind::InvalidArgument, "factor: squarefree part of degree > 12 not supported");
    const auto roots = numeric_roots(h);
    for (int size = 1; size <= d / 2; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<std::complex<double>> prod{1.0};
            for (int i : idx) {
                std::vector<std::complex<double>> next(prod.size() + 1, 0.0);
                for (std::size_t k = 0; k < prod.size(); ++k) {
                    next[k + 1] += prod[k];
                    next[k] -= prod[k] * roots[static_cast<std::size_t>(i)];
                }
                prod = std::move(next);
            }
            bool ok = true;
            std::vector<mpq_class> coeffs;
            for (const auto& z : prod) {
                long double r = 0;
                if (std::fabs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z)) || !near_integer(z.real(), r)) {
                    ok = false;
                    break;
                }
                mpz_class zi;
                zi = static_cast<double>(r);
                coeffs.emplace_back(zi);
            }
            if (ok) {
                const QPoly cand(coeffs);
                auto [q, rem] = divmod(h, cand);
                if (rem.is_zero()) {
                    out.push_back(cand);
                    split_integral(q, out);
                    return;
                }
            }
            // next combination
            int k = size - 1;
            while (k >= 0 && idx[static_cast<std::size_t>(k)] == d - size + k)
                --k;
            if (k < 0)
                break;
            ++idx[static_cast<std::size_t>(k)];
            for (int j = k + 1; j < size; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    out.push_back(h);
}

bool poly_less(const QPoly& a, const QPoly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (std::size_t k = 0; k < a.coeffs().size(); ++k)
        if (a.coeffs()[k] != b.coeffs()[k])
            return a.coeffs()[k] < b.coeffs()[k];
    return false;
}

}  // namespace

std::vector<std::pair<QPoly, int>> factor(const QPoly& f)
{
    if (f.degree() < 1)
        throw Error(ErrorKind::InvalidArgument, "factor: constant polynomial");
    std::vector<std::pair<QPoly, int>> result;
    for (const auto& [part, mult] : squarefree(f.monic())) {
        // h(y) = L^d part(y / L) is monic integral.
        mpz_class l = 1;
        for (const auto& q : part.coeffs())
            l = lcm(l, q.get_den());
        const int d = part.degree();
        std::vector<mpq_class> hc(static_cast<std::size_t>(d + 1));
        mpz_class lp = 1;
        for (int k = d; k >= 0; --k) {
            hc[static_cast<std::size_t>(k)] = part.coeff(static_cast<std::size_t>(k)) * lp;
            lp *= l;
        }
        std::vector<QPoly> pieces;
        split_integral(QPoly(hc), pieces);
        for (const QPoly& piece : pieces) {
            // back-substitute y = L x and renormalize
            const int e = piece.degree();
            std::vector<mpq_class> gc(static_cast<std::size_t>(e + 1));
            mpq_class lk = 1;
            for (int k = 0; k <= e; ++k) {
                gc[static_cast<std::size_t>(k)] = piece.coeff(static_cast<std::size_t>(k)) * lk;
                lk *= l;
            }
            result.emplace_back(QPoly(gc).monic(), mult);
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return result;
}

QPoly charpoly(const QMatrix& a)
{
    if (a.rows() != a.cols())
        throw Error(ErrorKind::DimensionMismatch, "charpoly: matrix not square");
    std::vector<std::vector<mpq_class>> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        rows[i] = a.row(i);
    auto lead_first = berkowitz<mpq_class>(rows, mpq_class(0), mpq_class(1));
    std::reverse(lead_first.begin(), lead_first.end());
    return QPoly(std::move(lead_first));
}

QMatrix eval(const QPoly& f, const QMatrix& a)
{
    QMatrix acc(a.rows(), a.cols());
    for (std::size_t k = f.coeffs().size(); k-- > 0;)
        acc = acc * a + scale(QMatrix::identity(a.rows()), f.coeffs()[k]);
    return acc;
}

QMatrix companion(const QPoly& monic)
{
    const int d = monic.degree();
    QMatrix c(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 1; i < d; ++i)
        c(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = 1;
    for (int i = 0; i < d; ++i)
        c(static_cast<std::size_t>(i), static_cast<std::size_t>(d - 1)) = -monic.coeff(static_cast<std::size_t>(i));
    return c;
}

}  // namespace ogus

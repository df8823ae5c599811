#include "ogus/lattice.hpp"

#include <utility>

#include "ogus/errors.hpp"

namespace ogus {

std::optional<mpq_class> rational_reconstruct(const mpz_class& u, const mpz_class& modulus, const mpz_class& bound)
{
    // Extended Euclid on (modulus, u), stopping at the first remainder <= bound.
    mpz_class r0 = modulus, r1 = u % modulus;
    if (r1 < 0)
        r1 += modulus;
    mpz_class s0 = 0, s1 = 1;
    while (r1 > bound) {
        const mpz_class q = r0 / r1;
        mpz_class t = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(t);
        t = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(t);
    }
    if (s1 == 0 || abs(s1) > bound)
        return std::nullopt;
    if (gcd(s1, modulus) != 1)
        return std::nullopt;
    mpq_class q(r1, s1);
    q.canonicalize();
    return q;
}

std::vector<ZVector> hnf_modular(const std::vector<ZVector>& generators, std::size_t dim, const mpz_class& modulus)
{
    // modulus * e_i lies in the lattice, so every coordinate can be reduced
    // mod modulus at any time.
    auto reduce = [&](ZVector& v) {
        for (auto& x : v) {
            x %= modulus;
            if (x < 0)
                x += modulus;
        }
    };
    std::vector<ZVector> cols = generators;
    for (auto& c : cols) {
        if (c.size() != dim)
            throw Error(ErrorKind::DimensionMismatch, "hnf_modular: generator length");
        reduce(c);
    }
    std::vector<ZVector> basis;
    basis.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        ZVector pivot(dim, 0);
        pivot[i] = modulus;
        for (auto& c : cols) {
            if (c[i] == 0)
                continue;
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pivot[i].get_mpz_t(), c[i].get_mpz_t());
            const mpz_class a = pivot[i] / g, b = c[i] / g;
            ZVector np(dim), nc(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                np[k] = s * pivot[k] + t * c[k];
                nc[k] = a * c[k] - b * pivot[k];
            }
            // keep the pivot coordinate exact (it divides modulus)
            const mpz_class keep = np[i];
            reduce(np);
            np[i] = keep;
            reduce(nc);
            pivot = std::move(np);
            c = std::move(nc);
        }
        basis.push_back(std::move(pivot));
    }
    return basis;
}

mpz_class norm_squared(const ZVector& v)
{
    mpz_class s = 0;
    for (const auto& x : v)
        s += x * x;
    return s;
}

mpz_class max_abs(const ZVector& v)
{
    mpz_class m = 0;
    for (const auto& x : v)
        if (abs(x) > m)
            m = abs(x);
    return m;
}

void lll_reduce(std::vector<ZVector>& b, const mpq_class& delta)
{
    const std::size_t n = b.size();
    if (n <= 1)
        return;
    // Exact Gram-Schmidt data: mu[i][j] and squared norms bn[i].
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> bn(n);
    auto gram_schmidt = [&]() {
        std::vector<std::vector<mpq_class>> star(n);
        for (std::size_t i = 0; i < n; ++i) {
            star[i].assign(b[i].begin(), b[i].end());
            for (std::size_t j = 0; j < i; ++j) {
                mpq_class num = 0;
                for (std::size_t k = 0; k < b[i].size(); ++k)
                    num += mpq_class(b[i][k]) * star[j][k];
                mu[i][j] = bn[j] == 0 ? mpq_class(0) : mpq_class(num / bn[j]);
                for (std::size_t k = 0; k < b[i].size(); ++k)
                    star[i][k] -= mu[i][j] * star[j][k];
            }
            bn[i] = 0;
            for (const auto& x : star[i])
                bn[i] += x * x;
            if (bn[i] == 0)
                throw Error(ErrorKind::InvalidArgument, "lll_reduce: dependent basis");
        }
    };
    gram_schmidt();

    auto size_reduce = [&](std::size_t k, std::size_t j) {
        mpq_class m = mu[k][j];
        // nearest integer to mu
        const mpq_class shifted = m + mpq_class(1, 2);
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        if (q == 0)
            return;
        for (std::size_t t = 0; t < b[k].size(); ++t)
            b[k][t] -= q * b[j][t];
        mu[k][j] -= q;
        for (std::size_t i = 0; i < j; ++i)
            mu[k][i] -= q * mu[j][i];
    };

    std::size_t k = 1;
    while (k < n) {
        size_reduce(k, k - 1);
        if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            for (std::size_t j = k - 1; j-- > 0;)
                size_reduce(k, j);
            ++k;
            continue;
        }
        // swap b_k and b_{k-1}, update Gram-Schmidt data incrementally
        std::swap(b[k], b[k - 1]);
        const mpq_class m = mu[k][k - 1];
        const mpq_class bnew = bn[k] + m * m * bn[k - 1];
        mu[k][k - 1] = m * bn[k - 1] / bnew;
        bn[k] = bn[k - 1] * bn[k] / bnew;
        bn[k - 1] = bnew;
        for (std::size_t j = 0; j + 1 < k; ++j)
            std::swap(mu[k - 1][j], mu[k][j]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const mpq_class t = mu[i][k];
            mu[i][k] = mu[i][k - 1] - m * t;
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
        }
        if (k > 1)
            --k;
    }
}

}  // namespace ogus

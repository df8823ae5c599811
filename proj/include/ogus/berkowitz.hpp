#pragma once

#include <cstddef>
#include <vector>

namespace ogus {

// Division-free characteristic polynomial (Samuelson-Berkowitz). Works over
// any commutative ring, which matters for W(k)/p^m where small integers are
// not always invertible. Returns det(x - a) with the leading coefficient
// first.
template <class Ring>
std::vector<Ring> berkowitz(const std::vector<std::vector<Ring>>& a, const Ring& zero, const Ring& one)
{
    const std::size_t n = a.size();
    if (n == 0)
        return {one};

    std::vector<Ring> poly{one, zero - a[n - 1][n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        const std::size_t m = n - k - 1;  // size of the trailing block
        std::vector<Ring> t;
        t.reserve(m + 2);
        t.push_back(one);
        t.push_back(zero - a[k][k]);

        // w = A1^j C for j = 0..m-1, with A1 the trailing block.
        std::vector<Ring> w(m, zero);
        for (std::size_t i = 0; i < m; ++i)
            w[i] = a[k + 1 + i][k];
        for (std::size_t j = 0; j < m; ++j) {
            Ring rw = zero;
            for (std::size_t i = 0; i < m; ++i)
                rw = rw + a[k][k + 1 + i] * w[i];
            t.push_back(zero - rw);
            if (j + 1 < m) {
                std::vector<Ring> next(m, zero);
                for (std::size_t r = 0; r < m; ++r)
                    for (std::size_t c = 0; c < m; ++c)
                        next[r] = next[r] + a[k + 1 + r][k + 1 + c] * w[c];
                w = std::move(next);
            }
        }

        std::vector<Ring> grown(m + 2, zero);
        for (std::size_t i = 0; i < m + 2; ++i)
            for (std::size_t j = 0; j <= i && j < poly.size(); ++j)
                grown[i] = grown[i] + t[i - j] * poly[j];
        poly = std::move(grown);
    }
    return poly;
}

}  // namespace ogus

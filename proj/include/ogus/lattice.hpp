#pragma once

// Integer lattice utilities used to pull rational points out of p-adic
// solution modules.

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace ogus {

using ZVector = std::vector<mpz_class>;

// Finds r/s with |r|, |s| <= bound and r = u s (mod modulus), if one
// exists. Unique when 2 bound^2 < modulus.
std::optional<mpq_class> rational_reconstruct(const mpz_class& u, const mpz_class& modulus, const mpz_class& bound);

// Basis of the lattice spanned by `generators` together with modulus * Z^dim,
// in lower-triangular Hermite form (one vector per coordinate).
std::vector<ZVector> hnf_modular(const std::vector<ZVector>& generators, std::size_t dim, const mpz_class& modulus);

// In-place LLL reduction of a basis of linearly independent vectors.
void lll_reduce(std::vector<ZVector>& basis, const mpq_class& delta = mpq_class(99, 100));

mpz_class norm_squared(const ZVector& v);
mpz_class max_abs(const ZVector& v);

}  // namespace ogus

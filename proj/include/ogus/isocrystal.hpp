#pragma once

// Weights of Weil numbers and the splitting of a linear Frobenius into
// generalized eigenspaces of pure weight.

#include <cstddef>
#include <optional>
#include <vector>

#include "ogus/padic.hpp"
#include "ogus/rational.hpp"
#include "ogus/semilinear.hpp"

namespace ogus {

struct PurityReport {
    QPoly factor;                        // monic
    std::optional<int> weight;           // nullopt: not pure of integral weight
    std::vector<double> numeric_moduli;  // |root| for every complex root
};

// f is normalized to be monic and is pure of weight i when every root has
// modulus p^(n i / 2). Irreducibility is not required: x^2 - p^2 is pure of
// weight 1 for n = 2. Throws NotMonicNormalizable for zero or constant f.
PurityReport weil_weight(const QPoly& f, long p, int n);

struct WeightSummand {
    int weight;
    PadicMatrix basis;  // columns span H_weight
};

struct WeightDecomposition {
    std::vector<WeightSummand> summands;                 // increasing weight
    std::vector<std::pair<int, std::size_t>> filtration;  // (i, dim W_i)
    std::vector<PurityReport> factors;
};

inline constexpr int kDefaultGuard = 4;

// charpoly of a linear operator over K_v, checked against the supplied
// rational polynomial modulo p^(m - guard). Throws CharpolyMismatch.
void check_charpoly(const FracMatrix& f, const QPoly& charpoly, int guard = kDefaultGuard);

// Reconstructs det(x - F) from p-adic data, each coefficient with height at
// most `bound`. Throws ReconstructionFailed.
QPoly reconstruct_charpoly(const FracMatrix& f, const mpz_class& bound, int guard = kDefaultGuard);

// H_i = ker g_i(F)^e for the product g_i of the weight-i factors and e their
// largest multiplicity. Throws MixedNonIntegralWeight, CharpolyMismatch,
// PrecisionExhausted.
WeightDecomposition decompose(const FracMatrix& f_linear, const QPoly& charpoly, int guard = kDefaultGuard);

bool is_pure(const FracMatrix& f_linear, const QPoly& charpoly, int i, int guard = kDefaultGuard);

// Intertwiners X F_M = F_N X of linear operators, as a basis of
// dim_N x dim_M matrices over K_v.
std::vector<PadicMatrix> linear_intertwiners(const FracMatrix& fm, const FracMatrix& fn, int guard = kDefaultGuard);

// Column spans of a and b agree over K_v at the guarded precision.
bool same_column_span(const PadicMatrix& a, const PadicMatrix& b, int guard = kDefaultGuard);

// f(F) for a rational polynomial, with the common p-power divided out.
FracMatrix eval(const QPoly& f, const FracMatrix& a);
// p-power content removed: min valuation of the numerator is 0.
FracMatrix normalized(const FracMatrix& a);

}  // namespace ogus

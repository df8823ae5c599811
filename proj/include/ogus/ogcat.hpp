#pragma once

// Desk-scale objects of FOg(K): a K-vector space K^dim with a coordinate
// weight filtration and, at finitely many places, a sigma-semilinear
// Frobenius on K_v^dim (the comparison maps g_v are the identity).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ogus/isocrystal.hpp"
#include "ogus/numfield.hpp"
#include "ogus/semilinear.hpp"

namespace ogus {

struct WeightStep {
    int weight;
    std::size_t dim;  // dim W_weight, spanned by the first dim coordinates
    friend bool operator==(const WeightStep&, const WeightStep&) = default;
};

struct LocalFrobenius {
    LocalField local;
    SemilinearOperator frobenius;  // twist 1
    // Exact det(x - F^n) on each graded piece, aligned with the weight
    // steps. Empty when unknown; then reconstructed from p-adic data.
    std::vector<QPoly> graded_charpolys;
};

struct OgObject {
    QuadField field;
    std::size_t dim = 0;
    std::vector<WeightStep> steps;
    std::vector<LocalFrobenius> locals;

    std::vector<Place> places() const;
    const LocalFrobenius* at(long p) const;
    std::size_t step_begin(std::size_t k) const { return k == 0 ? 0 : steps[k - 1].dim; }
    // Weight label of each coordinate.
    std::vector<int> coordinate_weights() const;
};

struct Violation {
    std::string where;
    std::string what;
};

struct PurityLine {
    long p;
    int weight;
    std::size_t dim;
    bool pure;
};

struct ObjectReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::vector<PurityLine> purity;
};

// Verifies every invariant of an object. Never throws.
ObjectReport check_object(const OgObject& x, int guard = kDefaultGuard);

// F -> p^(-k) F at every place; weight labels move from i to i - 2k.
OgObject twist_object(const OgObject& x, int k);

// Throw FiltrationNotCoordinateAligned when a Frobenius has a nonzero
// weight-raising block.
OgObject gr(const OgObject& x, int i, int guard = kDefaultGuard);
OgObject w_leq(const OgObject& x, int n, int guard = kDefaultGuard);

struct LEffectivity {
    bool ok = true;
    struct Witness {
        long p;
        std::size_t row;
        std::size_t col;
        int valuation;
    };
    std::optional<Witness> witness;
};

// Every F_v preserves the standard lattice.
LEffectivity is_l_effective(const OgObject& x);

// Exact det(x - F_v^n) on the graded pieces, stored or reconstructed.
std::vector<QPoly> graded_charpolys(const OgObject& x, const LocalFrobenius& lf, int guard = kDefaultGuard);

// Every linearized Frobenius has a monic integral characteristic
// polynomial. The stored polynomials are checked against the p-adic
// matrices first (CharpolyMismatch).
bool is_e_effective(const OgObject& x, int guard = kDefaultGuard);

struct Clause {
    std::string name;
    bool holds;
};

struct LevelReport {
    bool holds = false;          // implemented (gradedwise) reading
    bool literal_reading = false;  // e-effectivity of the whole object
    std::vector<Clause> clauses;
};

// Weights in {-2, -1, 0}; W_{-2}(-1) l- and e-effective of weight 0;
// X(-1) l-effective; e-effectivity of gr_0, gr_{-1}(-1) and W_{-2}(-1).
// The literal reading (X itself e-effective) is reported alongside.
LevelReport is_level_le_1(const OgObject& x, int guard = kDefaultGuard);

struct KroneckerReport {
    bool rational = false;  // exact: conj(c) = c
    bool local = true;      // sigma_v(c) = c at every usable inert place
    bool agree = true;
    std::optional<long> rejecting_place;  // first inert place with sigma_v(c) != c
    std::vector<long> places_checked;
};

KroneckerReport kronecker_rational(const QuadraticFieldElement& c, const std::vector<Place>& places, int m = 40);

// Entries of x in K_v, written over a common denominator p^D.
FracMatrix embed_matrix(const KMatrix& x, const LocalField& local);

struct HomOptions {
    int guard = kDefaultGuard;
    mpz_class bound = 1000000;
};

struct PlaceSolution {
    long p;
    int precision;                      // digits k of the constraint lattice
    std::size_t local_dimension;        // rational candidates found at p
    std::size_t padic_kernel_dimension;  // dimension over Q_p of the solutions
    mpz_class shortest_rejected;        // max-norm of the first rejected vector
};

struct HomSolution {
    std::vector<KMatrix> basis;  // over Q; primitive integral coordinates
    std::size_t analytic_dimension = 0;
    std::vector<Place> places_used;
    int precision_used = 0;
    mpz_class reconstruction_bound;
    std::vector<PlaceSolution> per_place;
};

// K-linear X : M -> N with X A_M = A_N sigma(X) at every common place.
// Throws ReconstructionFailed, PrecisionExhausted.
HomSolution hom_space(const OgObject& m, const OgObject& n, const HomOptions& options = {});

// The block sending a coordinate of M to a coordinate of N of larger weight.
bool weight_raising_block_is_zero(const KMatrix& x, const OgObject& m, const OgObject& n);

}  // namespace ogus

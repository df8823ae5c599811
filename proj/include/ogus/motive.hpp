#pragma once

// Split Kummer 1-motives [u : Z^r -> G_m^s] with positive rational entries
// and their realizations.

#include <cstddef>
#include <optional>
#include <vector>

#include "ogus/logexp.hpp"
#include "ogus/ogcat.hpp"

namespace ogus {

class KummerMotive {
public:
    // entries[i][j] = a_ij, the i-th torus coordinate of u(e_j); s x r.
    // Throws NonPositiveEntry.
    KummerMotive(std::size_t s, std::size_t r, std::vector<std::vector<mpq_class>> entries);

    std::size_t s() const noexcept { return s_; }
    std::size_t r() const noexcept { return r_; }
    const mpq_class& entry(std::size_t i, std::size_t j) const { return u_[i][j]; }
    const std::vector<std::vector<mpq_class>>& entries() const noexcept { return u_; }

private:
    std::size_t s_;
    std::size_t r_;
    std::vector<std::vector<mpq_class>> u_;
};

// Odd p <= bound with p not dividing 2d or any numerator or denominator.
std::vector<Place> good_places(const KummerMotive& m, const QuadField& field, long bound);
bool is_good_place(const KummerMotive& m, const QuadField& field, long p);

// The `count` smallest good places; when d != 1 and none of them is inert,
// the largest is replaced by the smallest inert good place.
std::vector<Place> select_places(const std::vector<Place>& good, const QuadField& field, std::size_t count = 3);

struct DeRhamLayout {
    std::size_t dim;
    std::vector<WeightStep> steps;  // W_-2 = torus coordinates, W_0 = everything
};

DeRhamLayout t_dR(const KummerMotive& m);

struct DeltaData {
    Place place;
    std::vector<std::vector<LogValue>> lambda;  // s x r, lambda_v(a_ij)
};

// Throws NotAGoodPlace.
DeltaData delta_section(const KummerMotive& m, const LocalField& local);

// F_v = A_v sigma with A_v = [[p^-1 I_s, Lambda - p^-1 sigma(Lambda)], [0, I_r]].
OgObject t_Og(const KummerMotive& m, const QuadField& field, const std::vector<Place>& places, int precision);

struct MotiveHom {
    QMatrix e;  // s_N x s_M, on tori
    QMatrix d;  // r_N x r_M, on lattices
};

// Whether prod_k a_kj^E_ik = prod_l b_il^D_lj for all i, j.
bool is_compatible(const MotiveHom& phi, const KummerMotive& m, const KummerMotive& n);

// diag(E, D) over K. Throws IncompatibleHom.
KMatrix realize_hom(const MotiveHom& phi, const KummerMotive& m, const KummerMotive& n, const QuadField& field);

// Basis of Hom(M, N) tensor Q from exponent vectors over the common primes.
std::vector<MotiveHom> motive_hom_exact(const KummerMotive& m, const KummerMotive& n);

struct FullnessReport {
    std::vector<MotiveHom> exact_basis;
    std::vector<KMatrix> realized;  // realize_hom of the exact basis
    HomSolution analytic;
    bool faithful = true;           // nonzero exact basis elements realize to nonzero
    bool spaces_equal = false;
    bool strict = true;             // every analytic basis matrix preserves weights
    bool violation() const { return !faithful || !spaces_equal; }
};

FullnessReport check_fullness(const KummerMotive& m, const KummerMotive& n, const QuadField& field,
                              const std::vector<Place>& places, int precision, const mpz_class& bound);

struct SectionReport {
    Place place;
    std::size_t solution_dimension;  // of the affine solution set
    bool matches_delta;              // the unique solution is Lambda
    std::vector<std::vector<PadicElement>> solution;  // the Y block, s x r
    int precision;
};

// Sections S = [[Y], [I_r]] with A sigma(S) = S. Throws PrecisionExhausted.
SectionReport section_uniqueness(const KummerMotive& m, const LocalField& local);

}  // namespace ogus

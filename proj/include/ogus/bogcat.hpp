#pragma once

// Objects of BOg(K): K^dim with the standard lattice and, at finitely many
// places, a sigma-bar-semilinear endomorphism of k_v^dim.

#include <cstddef>
#include <vector>

#include "ogus/motive.hpp"

namespace ogus {

struct ResidueFrobenius {
    LocalField local;
    PadicMatrix matrix;  // entries at precision 1, twist 1
};

struct BOgObject {
    QuadField field;
    std::size_t dim = 0;
    std::vector<ResidueFrobenius> locals;

    std::vector<Place> places() const;
    const ResidueFrobenius* at(long p) const;
};

// p-th power operation on Lie(G_m^s x G_a^r): diag(I_s, 0_r) over k_v.
PadicMatrix pth_power_op(std::size_t s, std::size_t r, const ContextPtr& ctx);

// Reduction of an l-effective object. Throws NotLEffective.
BOgObject psi(const OgObject& x);

// psi(t_Og(M)(-1)).
BOgObject t_BOg(const KummerMotive& m, const QuadField& field, const std::vector<Place>& places, int precision);
// The same object from pth_power_op on the universal extension.
BOgObject t_BOg_direct(const KummerMotive& m, const QuadField& field, const std::vector<Place>& places,
                       int precision);

bool same_residues(const BOgObject& a, const BOgObject& b);

// Q-basis of the K-matrices X with X F_M = F_N sigma-bar(X) at every common
// place, residues lifted symmetrically to K.
std::vector<KMatrix> bog_hom_space(const BOgObject& m, const BOgObject& n);

}  // namespace ogus

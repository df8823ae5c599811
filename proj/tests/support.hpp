#pragma once

#include <optional>
#include <random>

#include "ogus/errors.hpp"
#include "ogus/padic.hpp"

namespace ogus::test {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline mpz_class random_residue(const mpz_class& modulus)
{
    static gmp_randclass state(gmp_randinit_default);
    static bool seeded = false;
    if (!seeded) {
        state.seed(7);
        seeded = true;
    }
    return state.get_z_range(modulus);
}

inline PadicElement random_element(const ContextPtr& ctx)
{
    const mpz_class c1 = ctx->n() == 2 ? random_residue(ctx->modulus()) : mpz_class(0);
    return PadicElement::from_coords(ctx, random_residue(ctx->modulus()), c1, ctx->m());
}

inline PadicElement random_unit(const ContextPtr& ctx)
{
    for (;;) {
        PadicElement x = random_element(ctx);
        if (x.is_unit())
            return x;
    }
}

inline PadicElement random_principal_unit(const ContextPtr& ctx)
{
    const PadicElement y = random_element(ctx).times_p_power(1);
    return PadicElement::from_int(ctx, 1) + y;
}

template <class F>
std::optional<ErrorKind> error_kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace ogus::test

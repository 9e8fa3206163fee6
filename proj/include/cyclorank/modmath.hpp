#pragma once

/**
 * @file modmath.hpp
 * @brief Arithmetic in F_N for primes N < 2^62 and the p-th power residue
 *        character x -> x^((N-1)/p).
 *
 * Products are formed in a 128-bit intermediate. Exponentiation runs in
 * Montgomery form; everything crossing the public surface is a plain residue
 * in [0, N).
 */

#include <cstdint>
#include <vector>

namespace cyclorank {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u64 kMaxModulus = u64{1} << 62;

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

// Odd prime modulus N < 2^62 together with its Montgomery constants.
class PrimeModulus {
public:
    explicit PrimeModulus(u64 n);

    u64 value() const noexcept { return n_; }

    u64 reduce(u64 x) const noexcept { return x % n_; }
    u64 reduce_signed(i64 x) const noexcept;
    u64 add(u64 a, u64 b) const noexcept;
    u64 sub(u64 a, u64 b) const noexcept;
    u64 mul(u64 a, u64 b) const noexcept { return static_cast<u64>(u128{a} * b % n_); }
    u64 pow(u64 base, u64 exp) const noexcept;
    u64 inverse(u64 a) const;

    friend bool operator==(const PrimeModulus& x, const PrimeModulus& y) noexcept {
        return x.n_ == y.n_;
    }

private:
    u64 to_montgomery(u64 x) const noexcept;
    u64 redc(u128 t) const noexcept;

    u64 n_;
    u64 n_neg_inv_; // -N^{-1} mod 2^64
    u64 r2_;        // 2^128 mod N
};

// A prime N together with an odd prime p dividing N - 1.
class ModulusContext {
public:
    ModulusContext(u64 n, u64 p);

    const PrimeModulus& modulus() const noexcept { return mod_; }
    u64 n() const noexcept { return mod_.value(); }
    u64 p() const noexcept { return p_; }
    u64 cofactor() const noexcept { return cofactor_; }

    // x^((N-1)/p), an element of the order-p subgroup.
    u64 character(u64 x) const noexcept { return mod_.pow(mod_.reduce(x), cofactor_); }

private:
    PrimeModulus mod_;
    u64 p_;
    u64 cofactor_;
};

// Character value of x expressed as a power of a fixed order-p element f.
struct PowerClass {
    unsigned index = 0;
    u64 base = 0;

    bool is_pth_power() const noexcept { return index == 0; }
    friend bool operator==(const PowerClass&, const PowerClass&) = default;
};

u64 mod_pow(u64 base, u64 exp, const PrimeModulus& mod);
inline u64 mod_pow(u64 base, u64 exp, const ModulusContext& ctx) {
    return mod_pow(base, exp, ctx.modulus());
}

// First g^((N-1)/p) != 1 for g = 2, 3, ...
u64 find_order_p_element(const ModulusContext& ctx);

// Discrete log of an element of mu_p to the base f, by linear scan.
unsigned log_mu_p(u64 value, const ModulusContext& ctx, u64 f);

PowerClass power_class(u64 x, const ModulusContext& ctx, u64 f);

// x^((N-1)/9) == 1. (N-1)/9 is even, so the sign of x never matters.
bool is_9th_power(u64 x, const PrimeModulus& mod);

u64 factorial_mod(u64 m, const PrimeModulus& mod);

// index_table[k] = power_class(k).index for 1 <= k <= limit (entry 0 unused).
// Filled by a linear sieve: one character evaluation per prime k, additive
// combination for composites.
std::vector<std::uint8_t> character_index_table(u64 limit, const ModulusContext& ctx, u64 f);

} // namespace cyclorank

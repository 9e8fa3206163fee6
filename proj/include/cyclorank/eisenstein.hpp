#pragma once

/**
 * @file eisenstein.hpp
 * @brief Z[zeta_3]: splitting N = n * conj(n), the representation
 *        4N = A^2 + 27B^2, cubic residue symbols and the criteria that decide
 *        rk_3 Cl(Q(zeta_3, N^(1/3))).
 *
 * Two normalizations coexist and are kept apart on purpose:
 *  - QuadRep fixes A = 1 (mod 3), B >= 0.
 *  - SplitData::primary is the generator a + b*zeta_3 with a = 1 (mod 3) and
 *    3 | b. For that generator 2a - b = -1 (mod 3), i.e. 2a - b = -A.
 */

#include <array>
#include <cstdint>

#include "cyclorank/modmath.hpp"

namespace cyclorank {

// a + b*zeta_3, zeta_3^2 + zeta_3 + 1 = 0.
struct EisensteinInt {
    i64 a = 0;
    i64 b = 0;

    EisensteinInt conj() const { return {a - b, -b}; } // zeta_3 -> zeta_3^2
    EisensteinInt times_zeta() const { return {-b, a - b}; }
    EisensteinInt operator-() const { return {-a, -b}; }

    // The six unit multiples +-zeta_3^v * x, v = 0, 1, 2.
    std::array<EisensteinInt, 6> associates() const;

    friend bool operator==(const EisensteinInt&, const EisensteinInt&) = default;
};

EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);

// a^2 - ab + b^2. Throws ArithmeticError if it does not fit in 64 bits.
i64 eis_norm(const EisensteinInt& x);

// 4N = A^2 + 27B^2 with A = 1 (mod 3), B >= 0.
struct QuadRep {
    i64 A = 0;
    i64 B = 0;
    u64 n = 0;

    friend bool operator==(const QuadRep&, const QuadRep&) = default;
};

// Dispatches to the bounded scan below 10^6 and to Cornacchia above.
QuadRep represent_4N(u64 n);
QuadRep represent_4N_scan(u64 n);
QuadRep represent_4N_cornacchia(u64 n);

// Exhaustive over every B; throws InternalError unless exactly one pair
// (|A|, |B|) exists.
QuadRep represent_4N_bruteforce(u64 n);

inline constexpr u64 kRepresentationScanLimit = 1'000'000;

struct SplitData {
    EisensteinInt primary; // a = 1 (mod 3), 3 | b, norm N
    QuadRep rep;
    u64 zeta_image = 0;    // t with a + b*t = 0 (mod N); the image of zeta_3 in Z[zeta_3]/n
};

SplitData split_prime(u64 n);

// Image of x in F_N = Z[zeta_3]/primary via zeta_3 -> zeta_image.
u64 to_residue(const EisensteinInt& x, const SplitData& split);

// Image of x in Z[zeta_3]/conj(primary), via zeta_3 -> zeta_image^2.
u64 to_conjugate_residue(const EisensteinInt& x, const SplitData& split);

// Cubic residue symbol (x / n)_3 = x^((N-1)/3) in F_N, as an index to base f.
// ctx must have p = 3.
PowerClass cubic_symbol(u64 x, const ModulusContext& ctx, u64 f);
PowerClass cubic_symbol(const EisensteinInt& x, const SplitData& split, const ModulusContext& ctx,
                        u64 f);

// Some generator of n is congruent to +-zeta_3^v * 2^w (mod 9), w in {1, 2}.
// Defined for N = 4, 7 (mod 9).
bool star_condition(u64 n);

// N*a = 1 (mod 9) for the primary generator: triviality of the cubic Hilbert
// symbol of n^2 * conj(n) against pi = 1 - zeta_3 at pi.
bool hilbert_pi_unit_criterion(const SplitData& split);

// Exponent e in {0, 1, 2} with that symbol = zeta_3^e, read off as
// (1 - N*a)/3 mod 3. Zero exactly when the criterion holds.
unsigned hilbert_pi_exponent(const SplitData& split);

struct GerthMatrix {
    unsigned width = 3;
    std::array<unsigned, 3> beta{};
    unsigned rank = 0;
};

// Row (beta_11, beta_12, beta_13) for N = 4, 7 (mod 9); rk_3 Cl(L) = 2 - rank.
GerthMatrix gerth_matrix(u64 n);

// The 1x3 matrix [m'_10 m'_11 m'_12] of cubic Hilbert symbols against N for
// N = 1 (mod 9): the zeta_3 entry and the entries of n and conj(n) at n.
std::array<unsigned, 3> m_prime_entries(u64 n);

} // namespace cyclorank

#pragma once

/**
 * @file invariants.hpp
 * @brief F_N-valued products whose p-th power status bounds p-ranks:
 *
 *   M     = prod_{k=1}^{(N-1)/2} k^k
 *   M_i   = prod_{k=1}^{N-1} prod_{a=1}^{k-1} k^(a^i),   i odd, 1 <= i <= p-4
 *   M_k   = prod_{j=1}^{p-1} (1 - f^j)^(j^k),            0 < k < p-1
 *
 * M and M_i only matter through their power class, so their exponents are
 * reduced mod p and accumulated against a character index table. M_k is
 * evaluated as an honest residue.
 */

#include <cstdint>
#include <span>
#include <vector>

#include "cyclorank/modmath.hpp"

namespace cyclorank {

// Irregular primes below 100; p >= 100 is not vetted at all.
bool is_vetted_regular(u64 p);
void require_vetted_regular(u64 p);

PowerClass m_ce(const ModulusContext& ctx, u64 f);
PowerClass m_i_ss(const ModulusContext& ctx, u64 f, unsigned i);

// Same as above but reusing a table from character_index_table(N - 1, ...).
PowerClass m_ce(const ModulusContext& ctx, u64 f, std::span<const std::uint8_t> index_table);
PowerClass m_i_ss(const ModulusContext& ctx, u64 f, unsigned i,
                  std::span<const std::uint8_t> index_table);

struct MiClass {
    unsigned i = 0;
    PowerClass cls;
};

struct MuResult {
    unsigned mu = 0;
    int cl_f_upper = 0; // p - 2 - 2*mu, with rk_p Cl(Q(zeta_p)) = 0 for regular p
    std::vector<MiClass> classes;
};

MuResult mu_count(const ModulusContext& ctx, u64 f);

struct MkValue {
    u64 value = 0;
    PowerClass cls;
};

MkValue m_k(const ModulusContext& ctx, u64 f, unsigned k);

struct TwistDimension {
    unsigned i = 0;         // even, 2 <= i <= p - 3
    unsigned k = 0;         // p - 1 - i
    unsigned dimension = 0; // dim H^1_Lambda(F_p(-i)) in {0, 1}
};

struct AlphaResult {
    unsigned alpha = 0;
    std::vector<TwistDimension> twists;
};

// Counts even i in [2, p-3] with M_{p-1-i} a p-th power. Independent of f.
AlphaResult alpha(const ModulusContext& ctx, u64 f);

struct InvariantRecord {
    u64 n = 0;
    u64 p = 0;
    u64 f = 0;
    PowerClass m_class;
    std::vector<MiClass> mi_classes;
    std::vector<std::pair<unsigned, MkValue>> mk_classes; // k = 1 .. p-2
    unsigned mu = 0;
    int cl_f_upper = 0;
    unsigned alpha = 0;
    std::vector<TwistDimension> twists;
};

// Everything above for one (N, p); one O(N) pass shared by M and all M_i.
InvariantRecord compute_invariants(u64 n, u64 p);

} // namespace cyclorank

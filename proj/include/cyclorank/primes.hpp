#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyclorank/modmath.hpp"

namespace cyclorank {

struct SieveOptions {
    // Hard ceiling on the sieved range; raise explicitly for longer runs.
    u64 max_limit = u64{1} << 30;
    u64 segment_size = u64{1} << 18;
};

// Residue filter "N mod modulus in residues". Validates that every residue
// is coprime to the modulus.
class ResidueFilter {
public:
    ResidueFilter(u64 modulus, std::span<const u64> residues);

    bool accepts(u64 n) const noexcept { return allowed_[n % modulus_] != 0; }
    u64 modulus() const noexcept { return modulus_; }

private:
    u64 modulus_;
    std::vector<std::uint8_t> allowed_;
};

// Primes in [2, sqrt_limit], used to cross off segments.
std::vector<std::uint32_t> base_primes(u64 sqrt_limit);

// Appends the primes of [lo, hi) to out in ascending order.
void sieve_segment(u64 lo, u64 hi, std::span<const std::uint32_t> base, std::vector<u64>& out);

// Calls fn(N) for every prime lo <= N <= hi accepted by the filter, ascending.
template <class Fn>
void for_each_prime_in_class(u64 lo, u64 hi, const ResidueFilter& filter, Fn&& fn,
                             const SieveOptions& opts = {});

std::vector<u64> primes_in_class(u64 limit, u64 modulus, std::span<const u64> residues,
                                 const SieveOptions& opts = {});

struct TargetClass {
    u64 n = 0;
    u64 p = 0;
    u64 residue_mod_p2 = 0;
    bool pi_ramified = false;  // (1 - zeta_p) ramifies in L/K
    bool zeta_is_norm = false; // zeta_p is a norm from L
};

// Reads both flags off the single congruence N mod p^2.
TargetClass classify_target(u64 n, u64 p);

// ----------------------------------------------------------------------------

void check_sieve_range(u64 hi, const SieveOptions& opts);
u64 isqrt(u64 n) noexcept;

template <class Fn>
void for_each_prime_in_class(u64 lo, u64 hi, const ResidueFilter& filter, Fn&& fn,
                             const SieveOptions& opts) {
    if (hi < 2 || lo > hi) return;
    check_sieve_range(hi, opts);
    if (lo < 2) lo = 2;
    const auto base = base_primes(isqrt(hi));
    std::vector<u64> segment;
    for (u64 start = lo; start <= hi;) {
        const u64 end = (hi - start + 1 > opts.segment_size) ? start + opts.segment_size : hi + 1;
        segment.clear();
        sieve_segment(start, end, base, segment);
        for (u64 n : segment) {
            if (filter.accepts(n)) fn(n);
        }
        start = end;
    }
}

} // namespace cyclorank

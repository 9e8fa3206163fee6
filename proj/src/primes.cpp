#include "cyclorank/primes.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cyclorank/errors.hpp"

namespace cyclorank {

u64 isqrt(u64 n) noexcept {
    auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && u128{r} * r > n) --r;
    while (u128{r + 1} * (r + 1) <= n) ++r;
    return r;
}

void check_sieve_range(u64 hi, const SieveOptions& opts) {
    if (hi > opts.max_limit) {
        throw DomainError("sieve limit " + std::to_string(hi) + " exceeds the configured ceiling " +
                          std::to_string(opts.max_limit));
    }
}

ResidueFilter::ResidueFilter(u64 modulus, std::span<const u64> residues) : modulus_(modulus) {
    if (modulus == 0) throw DomainError("residue modulus must be positive");
    if (residues.empty()) throw DomainError("residue set must be nonempty");
    if (modulus > (u64{1} << 24)) throw DomainError("residue modulus too large");
    allowed_.assign(modulus, 0);
    for (u64 r : residues) {
        if (std::gcd(r, modulus) != 1 && modulus != 1) {
            throw DomainError("residue " + std::to_string(r) + " is not coprime to " +
                              std::to_string(modulus));
        }
        allowed_[r % modulus] = 1;
    }
}

std::vector<std::uint32_t> base_primes(u64 sqrt_limit) {
    std::vector<std::uint8_t> composite(sqrt_limit + 1, 0);
    std::vector<std::uint32_t> out;
    for (u64 k = 2; k <= sqrt_limit; ++k) {
        if (composite[k]) continue;
        out.push_back(static_cast<std::uint32_t>(k));
        for (u64 m = k * k; m <= sqrt_limit; m += k) composite[m] = 1;
    }
    return out;
}

void sieve_segment(u64 lo, u64 hi, std::span<const std::uint32_t> base, std::vector<u64>& out) {
    if (lo < 2) lo = 2;
    if (lo >= hi) return;
    std::vector<std::uint8_t> composite(hi - lo, 0);
    for (u64 q : base) {
        if (q * q >= hi) break;
        u64 first = std::max(q * q, (lo + q - 1) / q * q);
        for (u64 m = first; m < hi; m += q) composite[m - lo] = 1;
    }
    for (u64 n = lo; n < hi; ++n) {
        if (!composite[n - lo]) out.push_back(n);
    }
}

std::vector<u64> primes_in_class(u64 limit, u64 modulus, std::span<const u64> residues,
                                 const SieveOptions& opts) {
    ResidueFilter filter(modulus, residues);
    std::vector<u64> out;
    for_each_prime_in_class(2, limit, filter, [&](u64 n) { out.push_back(n); }, opts);
    return out;
}

TargetClass classify_target(u64 n, u64 p) {
    if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
    if (n == p) throw DomainError("N must differ from p");
    if (!is_prime(n)) throw DomainError("N = " + std::to_string(n) + " is not prime");
    if (n % p != 1) throw DomainError("N must split completely: N = " + std::to_string(n) +
                                      " is not 1 mod " + std::to_string(p));
    TargetClass t;
    t.n = n;
    t.p = p;
    t.residue_mod_p2 = n % (p * p);
    t.zeta_is_norm = t.residue_mod_p2 == 1;
    t.pi_ramified = !t.zeta_is_norm;
    return t;
}

} // namespace cyclorank

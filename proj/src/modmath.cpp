#include "cyclorank/modmath.hpp"

#include <array>
#include <limits>
#include <string>

#include "cyclorank/errors.hpp"

namespace cyclorank {

namespace {

u64 mulmod_any(u64 a, u64 b, u64 n) { return static_cast<u64>(u128{a} * b % n); }

u64 powmod_any(u64 base, u64 exp, u64 n) {
    u64 result = 1 % n;
    base %= n;
    while (exp > 0) {
        if (exp & 1) result = mulmod_any(result, base, n);
        base = mulmod_any(base, base, n);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = powmod_any(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod_any(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr std::array<u64, 12> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic below 3.3e24.
    for (u64 a : small) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(u64 n) : n_(n) {
    if (n < 3 || n % 2 == 0 || n >= kMaxModulus) {
        throw DomainError("modulus must be an odd prime below 2^62, got " + std::to_string(n));
    }
    if (!is_prime(n)) throw DomainError("modulus " + std::to_string(n) + " is not prime");
    // Newton iteration for N^{-1} mod 2^64; each step doubles the correct bits.
    u64 inv = n;
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    n_neg_inv_ = ~inv + 1;
    u64 r = static_cast<u64>((u128{1} << 64) % n);
    r2_ = mulmod_any(r, r, n);
}

u64 PrimeModulus::reduce_signed(i64 x) const noexcept {
    i64 r = x % static_cast<i64>(n_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(n_) : r);
}

u64 PrimeModulus::add(u64 a, u64 b) const noexcept {
    u64 s = a + b; // a, b < 2^62, no wrap
    return s >= n_ ? s - n_ : s;
}

u64 PrimeModulus::sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + n_ - b; }

u64 PrimeModulus::redc(u128 t) const noexcept {
    u64 m = static_cast<u64>(t) * n_neg_inv_;
    u64 r = static_cast<u64>((t + u128{m} * n_) >> 64);
    return r >= n_ ? r - n_ : r;
}

u64 PrimeModulus::to_montgomery(u64 x) const noexcept { return redc(u128{x} * r2_); }

u64 PrimeModulus::pow(u64 base, u64 exp) const noexcept {
    u64 result = to_montgomery(1);
    u64 b = to_montgomery(base);
    while (exp > 0) {
        if (exp & 1) result = redc(u128{result} * b);
        b = redc(u128{b} * b);
        exp >>= 1;
    }
    return redc(result);
}

u64 PrimeModulus::inverse(u64 a) const {
    a %= n_;
    if (a == 0) throw DomainError("zero has no inverse mod " + std::to_string(n_));
    return pow(a, n_ - 2);
}

ModulusContext::ModulusContext(u64 n, u64 p) : mod_(n), p_(p) {
    if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime, got " + std::to_string(p));
    if (n == p) throw DomainError("N must differ from p");
    if ((n - 1) % p != 0) {
        throw DomainError("N = " + std::to_string(n) + " is not 1 mod p = " + std::to_string(p));
    }
    cofactor_ = (n - 1) / p;
}

u64 mod_pow(u64 base, u64 exp, const PrimeModulus& mod) {
    if (base >= mod.value()) throw DomainError("mod_pow: base must be reduced below the modulus");
    return mod.pow(base, exp);
}

u64 find_order_p_element(const ModulusContext& ctx) {
    for (u64 g = 2; g < ctx.n(); ++g) {
        u64 f = ctx.character(g);
        if (f != 1) return f;
    }
    throw InternalError("no element of order p found; context is invalid");
}

unsigned log_mu_p(u64 value, const ModulusContext& ctx, u64 f) {
    const auto& mod = ctx.modulus();
    u64 power = 1;
    for (unsigned k = 0; k < ctx.p(); ++k) {
        if (power == value) return k;
        power = mod.mul(power, f);
    }
    throw DomainError("value " + std::to_string(value) + " is not a power of the reference element");
}

PowerClass power_class(u64 x, const ModulusContext& ctx, u64 f) {
    x = ctx.modulus().reduce(x);
    if (x == 0) throw DomainError("character undefined at zero");
    return PowerClass{log_mu_p(ctx.character(x), ctx, f), f};
}

bool is_9th_power(u64 x, const PrimeModulus& mod) {
    const u64 n = mod.value();
    if ((n - 1) % 9 != 0) throw DomainError("9th power test requires N = 1 (mod 9)");
    x = mod.reduce(x);
    if (x == 0) throw DomainError("9th power test undefined at zero");
    return mod.pow(x, (n - 1) / 9) == 1;
}

u64 factorial_mod(u64 m, const PrimeModulus& mod) {
    if (m >= mod.value()) throw DomainError("factorial_mod: m must be below N");
    u64 acc = 1;
    for (u64 k = 2; k <= m; ++k) acc = mod.mul(acc, k);
    return acc;
}

std::vector<std::uint8_t> character_index_table(u64 limit, const ModulusContext& ctx, u64 f) {
    if (limit >= ctx.n()) throw DomainError("character table must stay below N");
    if (ctx.p() > std::numeric_limits<std::uint8_t>::max() - 1) {
        throw DomainError("character table supports p < 255");
    }
    if (limit > std::numeric_limits<std::uint32_t>::max()) {
        throw DomainError("character table limit exceeds 2^32");
    }
    constexpr std::uint8_t unset = std::numeric_limits<std::uint8_t>::max();
    const auto p = static_cast<unsigned>(ctx.p());
    std::vector<std::uint8_t> ind(limit + 1, unset);
    std::vector<std::uint32_t> primes;
    if (limit >= 1) ind[1] = 0;
    for (u64 k = 2; k <= limit; ++k) {
        if (ind[k] == unset) {
            ind[k] = static_cast<std::uint8_t>(power_class(k, ctx, f).index);
            primes.push_back(static_cast<std::uint32_t>(k));
        }
        for (std::uint32_t q : primes) {
            u64 multiple = k * q;
            if (multiple > limit) break;
            ind[multiple] = static_cast<std::uint8_t>((ind[k] + ind[q]) % p);
            if (k % q == 0) break;
        }
    }
    return ind;
}

} // namespace cyclorank

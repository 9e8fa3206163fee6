#include "cyclorank/eisenstein.hpp"

#include <cassert>
#include <limits>
#include <optional>
#include <string>

#include "cyclorank/errors.hpp"
#include "cyclorank/primes.hpp"

namespace cyclorank {

namespace {

i64 checked(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min()) {
        throw ArithmeticError("Eisenstein coefficient overflow");
    }
    return static_cast<i64>(v);
}

i64 mod3(i64 x) { return ((x % 3) + 3) % 3; }
i64 mod9(i64 x) { return ((x % 9) + 9) % 9; }

void require_split(u64 n) {
    if (n == 3 || n % 3 != 1) throw DomainError("N = " + std::to_string(n) + " is not 1 mod 3");
    if (!is_prime(n)) throw DomainError("N = " + std::to_string(n) + " is not prime");
    if (n >= kMaxModulus) throw DomainError("N must be below 2^62");
}

std::optional<u64> exact_sqrt(u128 v) {
    if (v > std::numeric_limits<u64>::max()) return std::nullopt;
    u64 r = isqrt(static_cast<u64>(v));
    if (u128{r} * r == v) return r;
    return std::nullopt;
}

QuadRep normalize(i64 A, i64 B, u64 n) {
    if (A < 0) A = -A;
    if (B < 0) B = -B;
    if (mod3(A) != 1) A = -A;
    return QuadRep{A, B, n};
}

// 4N - 27B^2, or nullopt once it goes negative.
std::optional<u128> remainder_for(u64 n, u64 B) {
    u128 four_n = u128{n} * 4;
    u128 used = u128{B} * B * 27;
    if (used > four_n) return std::nullopt;
    return four_n - used;
}

#ifndef NDEBUG
// A * ((N-1)/3)!^3 = 1 (mod N). O(N), so only checked for small N.
void assert_wilson_jacobi(const QuadRep& rep) {
    if (rep.n > kRepresentationScanLimit) return;
    PrimeModulus mod(rep.n);
    u64 f = factorial_mod((rep.n - 1) / 3, mod);
    u64 cube = mod.mul(mod.mul(f, f), f);
    assert(mod.mul(mod.reduce_signed(rep.A), cube) == 1);
}
#endif

QuadRep finish(QuadRep rep) {
    assert(rep.B != 0);
#ifndef NDEBUG
    assert_wilson_jacobi(rep);
#endif
    return rep;
}

// x^2 + 3y^2 = N via Cornacchia's reduction.
std::pair<u64, u64> cornacchia_x2_plus_3y2(u64 n) {
    PrimeModulus mod(n);
    u64 t = 1;
    for (u64 g = 2; t == 1; ++g) t = mod.pow(g, (n - 1) / 3);
    // (2t + 1)^2 = 4(t^2 + t + 1) - 3 = -3.
    u64 r = mod.add(mod.add(t, t), 1);
    if (r > n / 2) r = n - r;
    u64 a = n;
    u64 b = r;
    const u64 bound = isqrt(n);
    while (b > bound) {
        u64 next = a % b;
        a = b;
        b = next;
    }
    u64 rest = n - b * b;
    if (rest % 3 != 0) throw InternalError("Cornacchia failed for N = " + std::to_string(n));
    auto y = exact_sqrt(rest / 3);
    if (!y) throw InternalError("Cornacchia failed for N = " + std::to_string(n));
    return {b, *y};
}

} // namespace

std::array<EisensteinInt, 6> EisensteinInt::associates() const {
    const EisensteinInt z1 = times_zeta();
    const EisensteinInt z2 = z1.times_zeta();
    return {*this, z1, z2, -*this, -z1, -z2};
}

EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    const i128 ac = i128{x.a} * y.a;
    const i128 bd = i128{x.b} * y.b;
    const i128 cross = i128{x.a} * y.b + i128{x.b} * y.a;
    return {checked(ac - bd), checked(cross - bd)};
}

i64 eis_norm(const EisensteinInt& x) {
    return checked(i128{x.a} * x.a - i128{x.a} * x.b + i128{x.b} * x.b);
}

QuadRep represent_4N(u64 n) {
    return n < kRepresentationScanLimit ? represent_4N_scan(n) : represent_4N_cornacchia(n);
}

QuadRep represent_4N_scan(u64 n) {
    require_split(n);
    for (u64 B = 1;; ++B) {
        auto rest = remainder_for(n, B);
        if (!rest) break;
        if (auto A = exact_sqrt(*rest)) return finish(normalize(static_cast<i64>(*A), static_cast<i64>(B), n));
    }
    throw InternalError("no representation 4N = A^2 + 27B^2; N not 1 (mod 3)");
}

QuadRep represent_4N_bruteforce(u64 n) {
    require_split(n);
    std::optional<QuadRep> found;
    unsigned count = 0;
    for (u64 B = 0;; ++B) {
        auto rest = remainder_for(n, B);
        if (!rest) break;
        if (auto A = exact_sqrt(*rest)) {
            ++count;
            found = normalize(static_cast<i64>(*A), static_cast<i64>(B), n);
        }
    }
    if (count != 1) {
        throw InternalError("expected exactly one representation of 4N, found " + std::to_string(count));
    }
    return *found;
}

QuadRep represent_4N_cornacchia(u64 n) {
    require_split(n);
    auto [x, y] = cornacchia_x2_plus_3y2(n);
    // x + y*sqrt(-3) = (x + y) + 2y*zeta_3; pick the associate with 3 | b.
    const EisensteinInt gen{static_cast<i64>(x + y), static_cast<i64>(2 * y)};
    for (const auto& u : gen.associates()) {
        if (mod3(u.b) == 0) return finish(normalize(checked(i128{2} * u.a - u.b), u.b / 3, n));
    }
    throw InternalError("no associate with 3 | b for N = " + std::to_string(n));
}

SplitData split_prime(u64 n) {
    const QuadRep rep = represent_4N(n);
    // A + 3B is even because A and B share parity.
    const EisensteinInt gen{(rep.A + 3 * rep.B) / 2, 3 * rep.B};
    if (eis_norm(gen) != static_cast<i64>(n)) throw InternalError("split generator has wrong norm");
    for (const auto& u : gen.associates()) {
        if (mod3(u.a) == 1 && mod3(u.b) == 0) {
            PrimeModulus mod(n);
            const u64 a = mod.reduce_signed(u.a);
            const u64 b = mod.reduce_signed(u.b);
            const u64 t = mod.sub(0, mod.mul(a, mod.inverse(b)));
            return SplitData{u, rep, t};
        }
    }
    throw InternalError("no primary associate for N = " + std::to_string(n));
}

u64 to_residue(const EisensteinInt& x, const SplitData& split) {
    PrimeModulus mod(split.rep.n);
    return mod.add(mod.reduce_signed(x.a), mod.mul(mod.reduce_signed(x.b), split.zeta_image));
}

u64 to_conjugate_residue(const EisensteinInt& x, const SplitData& split) {
    PrimeModulus mod(split.rep.n);
    const u64 t2 = mod.mul(split.zeta_image, split.zeta_image);
    return mod.add(mod.reduce_signed(x.a), mod.mul(mod.reduce_signed(x.b), t2));
}

PowerClass cubic_symbol(u64 x, const ModulusContext& ctx, u64 f) {
    if (ctx.p() != 3) throw DomainError("cubic symbol needs a p = 3 context");
    return power_class(x, ctx, f);
}

PowerClass cubic_symbol(const EisensteinInt& x, const SplitData& split, const ModulusContext& ctx,
                        u64 f) {
    return cubic_symbol(to_residue(x, split), ctx, f);
}

bool star_condition(u64 n) {
    require_split(n);
    if (n % 9 == 1) throw DomainError("(star) is defined for N != 1 (mod 9)");
    const SplitData split = split_prime(n);

    std::array<EisensteinInt, 12> candidates;
    std::size_t k = 0;
    for (i64 two_w : {2, 4}) {
        for (const auto& c : EisensteinInt{two_w, 0}.associates()) candidates[k++] = c;
    }
    for (const auto& g : split.primary.associates()) {
        for (const auto& c : candidates) {
            if (mod9(g.a - c.a) == 0 && mod9(g.b - c.b) == 0) return true;
        }
    }
    return false;
}

unsigned hilbert_pi_exponent(const SplitData& split) {
    const i64 na = mod9(static_cast<i64>(split.rep.n % 9) * mod9(split.primary.a));
    const i64 diff = mod9(1 - na);
    if (diff % 3 != 0) throw InternalError("N*a is not 1 mod 3 for a primary generator");
    return static_cast<unsigned>(diff / 3);
}

bool hilbert_pi_unit_criterion(const SplitData& split) {
    const i64 na = mod9(static_cast<i64>(split.rep.n % 9) * mod9(split.primary.a));
    return na == 1;
}

GerthMatrix gerth_matrix(u64 n) {
    require_split(n);
    if (n % 9 == 1) throw DomainError("Gerth matrix path requires N != 1 (mod 9)");
    const SplitData split = split_prime(n);
    const ModulusContext ctx(n, 3);
    const u64 f = find_order_p_element(ctx);

    GerthMatrix m;
    m.width = 3;
    // (x1, N) at n and at conj(n) reduce to conj(n) mod n and n mod conj(n)
    // being cubes; both residues are +-A, a cube by A * (m!)^3 = 1.
    m.beta[0] = cubic_symbol(split.primary.conj(), split, ctx, f).index;
    m.beta[1] = cubic_symbol(to_conjugate_residue(split.primary, split), ctx, f).index;
    if (m.beta[0] != 0 || m.beta[1] != 0) {
        throw InternalError("Gerth entries at n, conj(n) must vanish (N = " + std::to_string(n) + ")");
    }
    m.beta[2] = hilbert_pi_exponent(split);
    m.rank = m.beta[2] != 0 ? 1 : 0;
    return m;
}

std::array<unsigned, 3> m_prime_entries(u64 n) {
    require_split(n);
    if (n % 9 != 1) throw DomainError("M'_L entries are defined for N = 1 (mod 9)");
    const SplitData split = split_prime(n);
    const ModulusContext ctx(n, 3);
    const u64 f = find_order_p_element(ctx);
    auto neg = [](unsigned e) { return (3 - e) % 3; };
    // (zeta_3, N)_n is the inverse of the residue symbol (zeta_3 / n)_3.
    const unsigned zeta_entry = neg(cubic_symbol(split.zeta_image, ctx, f).index);
    // (n, N)_n = (n, conj(n))_n, trivial iff conj(n) is a cube mod n.
    const unsigned own_entry = cubic_symbol(split.primary.conj(), split, ctx, f).index;
    // (conj(n), N)_n = (n, conj(n))_n^{-1} * (conj(n), conj(n))_n, the second factor a unit pairing.
    const unsigned conj_entry = neg(own_entry);
    return {zeta_entry, own_entry, conj_entry};
}

} // namespace cyclorank

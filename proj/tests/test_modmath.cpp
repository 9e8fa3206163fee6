#include "doctest.h"

#include <random>

#include "cyclorank/errors.hpp"
#include "cyclorank/modmath.hpp"
#include "oracles.hpp"

using namespace cyclorank;

TEST_CASE("mod_pow small cases") {
    const PrimeModulus m7(7);
    for (u64 x = 0; x < 7; ++x) CHECK(mod_pow(x, 0, m7) == 1);
    CHECK(mod_pow(2, 2, m7) == 4);
    CHECK(mod_pow(0, 5, m7) == 0);
    CHECK(mod_pow(17, 6, PrimeModulus(19)) == 7);
    CHECK_THROWS_AS(mod_pow(7, 1, m7), DomainError);
}

TEST_CASE("mod_pow agrees with repeated multiplication") {
    for (u64 n = 3; n <= 1000; ++n) {
        if (!oracle::trial_division_prime(n)) continue;
        const PrimeModulus mod(n);
        for (u64 base = 0; base < n; base += 1 + n / 17) {
            for (u64 e = 0; e <= 50; ++e) REQUIRE(mod_pow(base, e, mod) == oracle::naive_pow(base, e, n));
        }
    }
}

TEST_CASE("Montgomery powering near the 2^62 ceiling") {
    // 2^62 - 57 is the largest prime below 2^62.
    const u64 n = (u64{1} << 62) - 57;
    REQUIRE(is_prime(n));
    const PrimeModulus mod(n);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const u64 b = rng() % n;
        const u64 e = rng();
        CHECK(mod.pow(b, e) == oracle::binary_pow(b, e, n));
    }
    CHECK(mod.pow(3, n - 1) == 1);
    CHECK(mod.mul(mod.inverse(12345), 12345) == 1);
}

TEST_CASE("is_prime matches trial division") {
    for (u64 n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == oracle::trial_division_prime(n));
    CHECK_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_prime(1000000007ULL));
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(PrimeModulus(15), DomainError);
    CHECK_THROWS_AS(PrimeModulus(2), DomainError);
    CHECK_THROWS_AS(PrimeModulus(u64{1} << 62), DomainError);
    CHECK_THROWS_AS(ModulusContext(13, 5), DomainError);
    CHECK_THROWS_AS(ModulusContext(11, 4), DomainError);
    CHECK_THROWS_AS(ModulusContext(3, 3), DomainError);
    const ModulusContext ctx(31, 5);
    CHECK(ctx.cofactor() * ctx.p() == ctx.n() - 1);
}

TEST_CASE("find_order_p_element") {
    CHECK(find_order_p_element(ModulusContext(7, 3)) == 4);
    CHECK(find_order_p_element(ModulusContext(11, 5)) == 4);
    CHECK(find_order_p_element(ModulusContext(13, 3)) == 3);

    for (u64 n = 7; n < 3000; n += 2) {
        if (!oracle::trial_division_prime(n)) continue;
        for (u64 p : {3, 5, 7, 11, 13}) {
            if (n % p != 1) continue;
            const ModulusContext ctx(n, p);
            const u64 f = find_order_p_element(ctx);
            REQUIRE(f != 1);
            REQUIRE(oracle::binary_pow(f, p, n) == 1);
            REQUIRE(find_order_p_element(ctx) == f);
        }
    }
}

TEST_CASE("power_class examples") {
    const ModulusContext c11(11, 5);
    CHECK(power_class(1, c11, 4).index == 0);
    CHECK(power_class(6, c11, 4).index == 4);
    CHECK(power_class(6, c11, 4).base == 4);

    const ModulusContext c19(19, 3);
    const u64 f = find_order_p_element(c19);
    CHECK(power_class(7, c19, f).is_pth_power());
    CHECK_THROWS_WITH_AS(power_class(0, c19, f), "character undefined at zero", DomainError);
    CHECK_THROWS_AS(power_class(19, c19, f), DomainError);
}

TEST_CASE("power_class is a character") {
    std::mt19937_64 rng(1);
    for (u64 n = 7; n <= 10000; n += 2) {
        if (!oracle::trial_division_prime(n)) continue;
        for (u64 p : {3, 5, 7}) {
            if (n % p != 1) continue;
            const ModulusContext ctx(n, p);
            const u64 f = find_order_p_element(ctx);
            for (int t = 0; t < 8; ++t) {
                const u64 x = 1 + rng() % (n - 1);
                const u64 y = 1 + rng() % (n - 1);
                const unsigned ix = power_class(x, ctx, f).index;
                const unsigned iy = power_class(y, ctx, f).index;
                REQUIRE(power_class(oracle::mul(x, y, n), ctx, f).index == (ix + iy) % p);
            }
        }
    }
}

TEST_CASE("index 0 iff x is a p-th power, full sweep") {
    for (u64 n = 7; n <= 2000; n += 2) {
        if (!oracle::trial_division_prime(n)) continue;
        for (u64 p : {3, 5, 7, 11}) {
            if (n % p != 1) continue;
            const ModulusContext ctx(n, p);
            const u64 f = find_order_p_element(ctx);
            const auto powers = oracle::pth_powers(n, p);
            for (u64 x = 1; x < n; ++x) {
                const PowerClass c = power_class(x, ctx, f);
                REQUIRE(c.is_pth_power() == (mod_pow(x, (n - 1) / p, ctx) == 1));
                REQUIRE(c.is_pth_power() == powers[x]);
                REQUIRE(c.index == oracle::brute_index(x, n, p, f));
            }
        }
    }
}

TEST_CASE("is_9th_power") {
    const PrimeModulus m19(19);
    CHECK(is_9th_power(1, m19));
    CHECK_FALSE(is_9th_power(7, m19));
    CHECK(is_9th_power(18, m19));
    CHECK_THROWS_WITH_AS(is_9th_power(2, PrimeModulus(13)),
                         "9th power test requires N = 1 (mod 9)", DomainError);

    for (u64 n : {19, 37, 73, 109, 127, 163, 181, 199, 271, 307}) {
        const PrimeModulus mod(n);
        const auto ninth = oracle::pth_powers(n, 9);
        for (u64 x = 1; x < n; ++x) {
            REQUIRE(is_9th_power(x, mod) == ninth[x]);
            REQUIRE(is_9th_power(x, mod) == is_9th_power(n - x, mod));
        }
    }
}

TEST_CASE("factorial_mod") {
    CHECK(factorial_mod(0, PrimeModulus(19)) == 1);
    CHECK(factorial_mod(6, PrimeModulus(19)) == 17);
    CHECK(factorial_mod(20, PrimeModulus(61)) == 47);
    // Wilson.
    CHECK(factorial_mod(100, PrimeModulus(101)) == 100);
    CHECK_THROWS_AS(factorial_mod(19, PrimeModulus(19)), DomainError);
}

TEST_CASE("character_index_table matches per-element power_class") {
    for (u64 n : {31, 61, 211, 337, 1009, 4733}) {
        for (u64 p : {3, 5, 7, 11}) {
            if (n % p != 1) continue;
            const ModulusContext ctx(n, p);
            const u64 f = find_order_p_element(ctx);
            const auto table = character_index_table(n - 1, ctx, f);
            for (u64 k = 1; k < n; ++k) REQUIRE(table[k] == power_class(k, ctx, f).index);
        }
    }
}

#include "cyclorank/invariants.hpp"

#include <array>
#include <string>

#include "cyclorank/errors.hpp"

namespace cyclorank {

namespace {

constexpr std::array<u64, 3> kIrregularBelow100 = {37, 59, 67};

u64 pow_mod_any(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = static_cast<u64>(u128{result} * base % m);
        base = static_cast<u64>(u128{base} * base % m);
        exp >>= 1;
    }
    return result;
}

void require_table(const ModulusContext& ctx, std::span<const std::uint8_t> table, u64 upto) {
    if (table.size() <= upto) {
        throw DomainError("character table too short for N = " + std::to_string(ctx.n()));
    }
}

void require_odd_i(const ModulusContext& ctx, unsigned i) {
    if (i % 2 == 0 || i < 1 || i + 4 > ctx.p()) {
        throw DomainError("M_i needs odd i in [1, p-4]; got i = " + std::to_string(i) +
                          " for p = " + std::to_string(ctx.p()));
    }
}

} // namespace

bool is_vetted_regular(u64 p) {
    if (p < 3 || p >= 100 || !is_prime(p)) return false;
    for (u64 q : kIrregularBelow100) {
        if (p == q) return false;
    }
    return true;
}

void require_vetted_regular(u64 p) {
    if (!is_vetted_regular(p)) {
        throw DomainError("p = " + std::to_string(p) + ": regular pairs require eigenspace data");
    }
}

PowerClass m_ce(const ModulusContext& ctx, u64 f, std::span<const std::uint8_t> table) {
    const u64 half = (ctx.n() - 1) / 2;
    require_table(ctx, table, half);
    const u64 p = ctx.p();
    u64 exponent = 0;
    for (u64 k = 1; k <= half; ++k) exponent = (exponent + (k % p) * table[k]) % p;
    return PowerClass{static_cast<unsigned>(exponent), f};
}

PowerClass m_ce(const ModulusContext& ctx, u64 f) {
    return m_ce(ctx, f, character_index_table((ctx.n() - 1) / 2, ctx, f));
}

PowerClass m_i_ss(const ModulusContext& ctx, u64 f, unsigned i, std::span<const std::uint8_t> table) {
    require_odd_i(ctx, i);
    require_table(ctx, table, ctx.n() - 1);
    const u64 p = ctx.p();
    std::vector<u64> power(p);
    for (u64 r = 0; r < p; ++r) power[r] = pow_mod_any(r, i, p);

    // exponent of chi(k) in M_i is S(k-1) = sum_{a<k} a^i (mod p).
    u64 running = 0;
    u64 exponent = 0;
    u64 k_mod_p = 1;
    for (u64 k = 1; k <= ctx.n() - 1; ++k) {
        exponent = (exponent + running * table[k]) % p;
        running = (running + power[k_mod_p]) % p;
        if (++k_mod_p == p) k_mod_p = 0;
    }
    return PowerClass{static_cast<unsigned>(exponent), f};
}

PowerClass m_i_ss(const ModulusContext& ctx, u64 f, unsigned i) {
    require_odd_i(ctx, i);
    return m_i_ss(ctx, f, i, character_index_table(ctx.n() - 1, ctx, f));
}

MuResult mu_count(const ModulusContext& ctx, u64 f) {
    require_vetted_regular(ctx.p());
    MuResult r;
    const unsigned p = static_cast<unsigned>(ctx.p());
    if (p >= 5) {
        const auto table = character_index_table(ctx.n() - 1, ctx, f);
        for (unsigned i = 1; i + 4 <= p; i += 2) {
            const PowerClass cls = m_i_ss(ctx, f, i, table);
            r.classes.push_back({i, cls});
            if (!cls.is_pth_power()) ++r.mu;
        }
    }
    r.cl_f_upper = static_cast<int>(p) - 2 - 2 * static_cast<int>(r.mu);
    return r;
}

MkValue m_k(const ModulusContext& ctx, u64 f, unsigned k) {
    const u64 p = ctx.p();
    if (k == 0 || k + 1 >= p) {
        throw DomainError("M_k needs 0 < k < p-1; got k = " + std::to_string(k));
    }
    const auto& mod = ctx.modulus();
    const u64 order = ctx.n() - 1;
    u64 product = 1;
    u64 f_power = 1;
    for (u64 j = 1; j < p; ++j) {
        f_power = mod.mul(f_power, f);
        const u64 factor = mod.sub(1, f_power);
        if (factor == 0) throw InternalError("1 - f^j vanished; f does not have order p");
        product = mod.mul(product, mod.pow(factor, pow_mod_any(j, k, order)));
    }
    return MkValue{product, power_class(product, ctx, f)};
}

AlphaResult alpha(const ModulusContext& ctx, u64 f) {
    AlphaResult r;
    const unsigned p = static_cast<unsigned>(ctx.p());
    for (unsigned i = 2; i + 3 <= p; i += 2) {
        const unsigned k = p - 1 - i;
        const bool pth_power = m_k(ctx, f, k).cls.is_pth_power();
        r.twists.push_back({i, k, pth_power ? 1u : 0u});
        if (pth_power) ++r.alpha;
    }
    return r;
}

InvariantRecord compute_invariants(u64 n, u64 p) {
    require_vetted_regular(p);
    const ModulusContext ctx(n, p);
    InvariantRecord rec;
    rec.n = n;
    rec.p = p;
    rec.f = find_order_p_element(ctx);

    const auto table = character_index_table(n - 1, ctx, rec.f);
    rec.m_class = m_ce(ctx, rec.f, table);
    for (unsigned i = 1; i + 4 <= p; i += 2) rec.mi_classes.push_back({i, m_i_ss(ctx, rec.f, i, table)});
    for (const auto& mi : rec.mi_classes) {
        if (!mi.cls.is_pth_power()) ++rec.mu;
    }
    rec.cl_f_upper = static_cast<int>(p) - 2 - 2 * static_cast<int>(rec.mu);
    for (unsigned k = 1; k + 1 < p; ++k) rec.mk_classes.emplace_back(k, m_k(ctx, rec.f, k));
    AlphaResult a = alpha(ctx, rec.f);
    rec.alpha = a.alpha;
    rec.twists = std::move(a.twists);
    return rec;
}

} // namespace cyclorank

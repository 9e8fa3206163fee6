#include "cyclorank/rank.hpp"

#include <string>

#include "cyclorank/errors.hpp"
#include "cyclorank/invariants.hpp"

namespace cyclorank {

namespace {

bool one_mod_9(u64 n) { return n % 9 == 1; }

unsigned rank_via(u64 n, Rank3Method m) {
    switch (m) {
    case Rank3Method::cornacchia:
        return rank3_cornacchia(represent_4N(n));
    case Rank3Method::gerth:
        if (one_mod_9(n)) throw DomainError("gerth method requires N != 1 (mod 9)");
        return 2 - gerth_matrix(n).rank;
    case Rank3Method::star:
        if (one_mod_9(n)) throw DomainError("star method requires N != 1 (mod 9)");
        return star_condition(n) ? 2 : 1;
    case Rank3Method::factorial: {
        if (!one_mod_9(n)) throw DomainError("factorial method requires N = 1 (mod 9)");
        const ModulusContext ctx(n, 3);
        const u64 fact = factorial_mod((n - 1) / 3, ctx.modulus());
        return ctx.character(fact) == 1 ? 2 : 1;
    }
    case Rank3Method::all:
        break;
    }
    throw InternalError("rank_via called with 'all'");
}

} // namespace

std::string_view to_string(Rank3Method m) {
    switch (m) {
    case Rank3Method::cornacchia: return "cornacchia";
    case Rank3Method::gerth: return "gerth";
    case Rank3Method::star: return "star";
    case Rank3Method::factorial: return "factorial";
    case Rank3Method::all: return "all";
    }
    return "?";
}

Rank3Method parse_rank3_method(std::string_view name) {
    for (auto m : {Rank3Method::cornacchia, Rank3Method::gerth, Rank3Method::star,
                   Rank3Method::factorial, Rank3Method::all}) {
        if (to_string(m) == name) return m;
    }
    throw DomainError("unknown rank3 method '" + std::string(name) + "'");
}

unsigned rank3_cornacchia(const QuadRep& rep) {
    if (!one_mod_9(rep.n)) return rep.B % 3 == 0 ? 2 : 1;
    // (N-1)/9 is even, so |A| and A give the same answer.
    const PrimeModulus mod(rep.n);
    const u64 abs_a = static_cast<u64>(rep.A < 0 ? -rep.A : rep.A);
    return is_9th_power(mod.reduce(abs_a), mod) ? 2 : 1;
}

Rank3Result rank3(u64 n, Rank3Method method) {
    if (n == 3 || n % 3 != 1 || !is_prime(n)) {
        throw DomainError("rank3 needs a prime N = 1 (mod 3), got " + std::to_string(n));
    }
    Rank3Result r;
    if (method != Rank3Method::all) {
        r.rank = rank_via(n, method);
        r.by_method.emplace_back(method, r.rank);
        return r;
    }
    std::vector<Rank3Method> methods{Rank3Method::cornacchia};
    if (one_mod_9(n)) {
        methods.push_back(Rank3Method::factorial);
    } else {
        methods.push_back(Rank3Method::gerth);
        methods.push_back(Rank3Method::star);
    }
    for (auto m : methods) r.by_method.emplace_back(m, rank_via(n, m));
    r.rank = r.by_method.front().second;
    for (const auto& [m, value] : r.by_method) {
        if (value != r.rank) r.methods_agreed = false;
    }
    return r;
}

RankReport bounds(u64 n, u64 p, unsigned cl_k_rank, Rank3Method exact_method) {
    RankReport rep;
    rep.n = n;
    rep.p = p;
    rep.target_class = classify_target(n, p);
    const bool regular = cl_k_rank == 0;
    if (regular) require_vetted_regular(p);

    const unsigned half = static_cast<unsigned>((p - 1) / 2);
    rep.coarse_lower = half;
    if (regular) {
        rep.coarse_upper = static_cast<unsigned>((p - 1) * (p - 2));
    } else {
        // (3/2)(p-1)^2 is an integer because p - 1 is even.
        rep.coarse_upper = static_cast<unsigned>(p * cl_k_rank + 3 * (p - 1) * (p - 1) / 2);
    }
    rep.lower = rep.coarse_lower;
    rep.upper = rep.coarse_upper;

    if (regular) {
        const ModulusContext ctx(n, p);
        rep.alpha = alpha(ctx, find_order_p_element(ctx)).alpha;
        rep.refined = true;
        rep.lower = half + rep.alpha;
        rep.upper = rep.coarse_upper - static_cast<unsigned>(p - 1) * (half - 1 - rep.alpha);
    }

    if (p == 3) {
        rep.rep = represent_4N(n);
        const Rank3Result r = rank3(n, exact_method);
        rep.exact_rank3 = r.rank;
        rep.methods_agreed = r.methods_agreed;
    }
    return rep;
}

unsigned odd_twist_count(u64 p) {
    require_vetted_regular(p);
    unsigned count = 0;
    for (u64 j = 1; j + 2 <= p; j += 2) {
        if (j % (p - 1) != 1) ++count;
    }
    return count;
}

} // namespace cyclorank

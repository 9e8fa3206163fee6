#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cyclorank/eisenstein.hpp"
#include "cyclorank/modmath.hpp"
#include "cyclorank/primes.hpp"

namespace cyclorank {

// Independent routes to rk_3 Cl(Q(zeta_3, N^(1/3))):
//   cornacchia  N != 1 (mod 9): 3 | B.  N = 1 (mod 9): |A| is a 9th power mod N.
//   gerth       N != 1 (mod 9): 2 - rank of the Gerth row.
//   star        N != 1 (mod 9): the mod-9 congruence on a generator of n.
//   factorial   N = 1 (mod 9): ((N-1)/3)! is a cube mod N. O(N).
//   all         every method valid for the residue class of N.
enum class Rank3Method { cornacchia, gerth, star, factorial, all };

std::string_view to_string(Rank3Method m);
Rank3Method parse_rank3_method(std::string_view name);

struct Rank3Result {
    unsigned rank = 0;
    bool methods_agreed = true;
    std::vector<std::pair<Rank3Method, unsigned>> by_method;
};

// Throws DomainError when the method does not apply to N's class mod 9.
Rank3Result rank3(u64 n, Rank3Method method = Rank3Method::cornacchia);

// Single-method fast path used by scans.
unsigned rank3_cornacchia(const QuadRep& rep);

struct RankReport {
    u64 n = 0;
    u64 p = 0;
    TargetClass target_class;
    std::optional<QuadRep> rep;           // p = 3 only
    std::optional<unsigned> exact_rank3;  // p = 3 only
    bool methods_agreed = true;
    bool refined = false;                 // alpha-refined bounds were applied
    unsigned alpha = 0;
    unsigned lower = 0;
    unsigned upper = 0;
    unsigned coarse_lower = 0;
    unsigned coarse_upper = 0;
    std::optional<int> cl_f_upper;        // filled by callers that computed mu
};

// (p-1)/2 <= rk_p Cl(L) <= (p-1)(p-2) for regular p, refined by alpha.
// A positive cl_k_rank switches the ceiling to p*cl_k_rank + 3(p-1)^2/2 and
// skips the regular-prime refinement.
RankReport bounds(u64 n, u64 p, unsigned cl_k_rank = 0,
                  Rank3Method exact_method = Rank3Method::all);

// Odd j in [1, p-2] with j != 1 (mod p-1): (p-3)/2 of them.
unsigned odd_twist_count(u64 p);

} // namespace cyclorank

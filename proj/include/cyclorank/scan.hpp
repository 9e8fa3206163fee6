#pragma once

/**
 * @file scan.hpp
 * @brief Density experiments over all primes up to a limit.
 *
 * The range [2, limit] is cut into contiguous shards whose boundaries depend
 * only on (limit, shards). Shards run on a worker pool and their integer
 * tallies are merged in range order, so a summary does not depend on the
 * shard or worker count.
 */

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cyclorank/modmath.hpp"
#include "cyclorank/primes.hpp"

namespace cyclorank {

enum class Rank3Classes { one_mod_9, four_seven_mod_9, all };

struct ClassTally {
    u64 key = 0;   // N mod 9 for p = 3, N mod p^2 otherwise
    u64 total = 0;
    u64 hits = 0;  // rank 2 for p = 3, alpha >= 1 otherwise

    double density() const { return total == 0 ? 0.0 : static_cast<double>(hits) / total; }
    friend bool operator==(const ClassTally&, const ClassTally&) = default;
};

// Running tally over the scanned primes N <= threshold.
struct Checkpoint {
    u64 threshold = 0;
    u64 total = 0;
    u64 hits = 0;

    double density() const { return total == 0 ? 0.0 : static_cast<double>(hits) / total; }
    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct ScanSummary {
    u64 p = 0;
    u64 limit = 0;
    std::vector<ClassTally> classes;                   // ascending key
    std::vector<Checkpoint> checkpoints;               // ascending threshold, last = limit
    std::map<unsigned, u64> alpha_histogram;
    std::map<std::pair<unsigned, unsigned>, u64> bounds_histogram; // (lower, upper) -> count

    u64 total() const;
    u64 hits() const;
    double density() const;
    friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

// CYCLORANK_THREADS if set and positive, else hardware concurrency.
unsigned default_workers();

// Shard k covers [edges[k], edges[k+1]).
std::vector<u64> shard_edges(u64 limit, unsigned shards);

// 10^3, 10^4, ... below limit, then limit.
std::vector<u64> checkpoint_thresholds(u64 limit);

// workers = 0 means default_workers().
ScanSummary scan_rank3(u64 limit, Rank3Classes classes, unsigned shards, unsigned workers = 0,
                       const SieveOptions& sieve = {});
ScanSummary scan_alpha(u64 p, u64 limit, unsigned shards, unsigned workers = 0,
                       const SieveOptions& sieve = {});

} // namespace cyclorank

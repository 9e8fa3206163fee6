#include "cyclorank/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "cyclorank/eisenstein.hpp"
#include "cyclorank/errors.hpp"
#include "cyclorank/invariants.hpp"
#include "cyclorank/primes.hpp"
#include "cyclorank/rank.hpp"

namespace cyclorank {

namespace {

struct Observation {
    u64 key = 0;
    bool hit = false;
    unsigned alpha = 0;
    std::pair<unsigned, unsigned> bounds{0, 0};
};

struct ShardTally {
    std::map<u64, std::pair<u64, u64>> classes;
    std::vector<std::pair<u64, u64>> buckets; // per checkpoint interval
    std::map<unsigned, u64> alpha_histogram;
    std::map<std::pair<unsigned, unsigned>, u64> bounds_histogram;
};

template <class Observe>
ScanSummary run_sharded(u64 p, u64 limit, unsigned shards, unsigned workers,
                        const ResidueFilter& filter, const SieveOptions& sieve, bool track_alpha,
                        Observe observe) {
    if (limit < 100) throw DomainError("scan limit must be at least 100");
    if (shards == 0) throw DomainError("shard count must be positive");
    check_sieve_range(limit, sieve);
    if (workers == 0) workers = default_workers();
    workers = std::min(workers, shards);

    const auto edges = shard_edges(limit, shards);
    const auto thresholds = checkpoint_thresholds(limit);
    std::vector<ShardTally> tallies(shards);
    std::atomic<unsigned> next{0};
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](unsigned worker) {
        try {
            for (unsigned s = next++; s < shards; s = next++) {
                ShardTally& t = tallies[s];
                t.buckets.assign(thresholds.size(), {0, 0});
                if (edges[s] >= edges[s + 1]) continue;
                std::size_t bucket = 0;
                for_each_prime_in_class(edges[s], edges[s + 1] - 1, filter, [&](u64 n) {
                    const Observation o = observe(n);
                    while (thresholds[bucket] < n) ++bucket;
                    auto& c = t.classes[o.key];
                    ++c.first;
                    ++t.buckets[bucket].first;
                    if (o.hit) {
                        ++c.second;
                        ++t.buckets[bucket].second;
                    }
                    if (track_alpha) {
                        ++t.alpha_histogram[o.alpha];
                        ++t.bounds_histogram[o.bounds];
                    }
                }, sieve);
            }
        } catch (...) {
            errors[worker] = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    ScanSummary out;
    out.p = p;
    out.limit = limit;
    std::map<u64, std::pair<u64, u64>> classes;
    std::vector<std::pair<u64, u64>> buckets(thresholds.size(), {0, 0});
    for (const ShardTally& t : tallies) {
        for (const auto& [key, c] : t.classes) {
            classes[key].first += c.first;
            classes[key].second += c.second;
        }
        for (std::size_t b = 0; b < buckets.size(); ++b) {
            buckets[b].first += t.buckets[b].first;
            buckets[b].second += t.buckets[b].second;
        }
        for (const auto& [a, c] : t.alpha_histogram) out.alpha_histogram[a] += c;
        for (const auto& [lu, c] : t.bounds_histogram) out.bounds_histogram[lu] += c;
    }
    for (const auto& [key, c] : classes) out.classes.push_back({key, c.first, c.second});
    u64 total = 0;
    u64 hits = 0;
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        total += buckets[b].first;
        hits += buckets[b].second;
        out.checkpoints.push_back({thresholds[b], total, hits});
    }
    return out;
}

} // namespace

u64 ScanSummary::total() const {
    u64 t = 0;
    for (const auto& c : classes) t += c.total;
    return t;
}

u64 ScanSummary::hits() const {
    u64 h = 0;
    for (const auto& c : classes) h += c.hits;
    return h;
}

double ScanSummary::density() const {
    const u64 t = total();
    return t == 0 ? 0.0 : static_cast<double>(hits()) / t;
}

unsigned default_workers() {
    if (const char* env = std::getenv("CYCLORANK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<u64> shard_edges(u64 limit, unsigned shards) {
    if (shards == 0) throw DomainError("shard count must be positive");
    std::vector<u64> edges(shards + 1);
    const u64 span = limit - 1; // [2, limit]
    for (unsigned k = 0; k <= shards; ++k) {
        edges[k] = 2 + static_cast<u64>(u128{span} * k / shards);
    }
    return edges;
}

std::vector<u64> checkpoint_thresholds(u64 limit) {
    std::vector<u64> out;
    for (u64 t = 1000; t < limit; t *= 10) out.push_back(t);
    out.push_back(limit);
    return out;
}

ScanSummary scan_rank3(u64 limit, Rank3Classes classes, unsigned shards, unsigned workers,
                       const SieveOptions& sieve) {
    std::vector<u64> residues;
    if (classes != Rank3Classes::four_seven_mod_9) residues.push_back(1);
    if (classes != Rank3Classes::one_mod_9) {
        residues.push_back(4);
        residues.push_back(7);
    }
    const ResidueFilter filter(9, residues);
    return run_sharded(3, limit, shards, workers, filter, sieve, false, [](u64 n) {
        return Observation{n % 9, rank3_cornacchia(represent_4N(n)) == 2, 0, {1, 2}};
    });
}

ScanSummary scan_alpha(u64 p, u64 limit, unsigned shards, unsigned workers,
                       const SieveOptions& sieve) {
    require_vetted_regular(p);
    const std::array<u64, 1> one{1};
    const ResidueFilter filter(p, one);
    return run_sharded(p, limit, shards, workers, filter, sieve, true, [p](u64 n) {
        const RankReport r = bounds(n, p, 0, Rank3Method::cornacchia);
        return Observation{n % (p * p), r.alpha >= 1, r.alpha, {r.lower, r.upper}};
    });
}

} // namespace cyclorank

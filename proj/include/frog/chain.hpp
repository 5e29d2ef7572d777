#pragma once
// Chain decomposition of passage times.
//
// A chain through the awake set is encoded by the number of *fresh*
// occupied sites each leg's walk uncovers: starting from the anchor
// a(1) = source, the walk from a(l) is scanned for visits to occupied
// sites not seen by any earlier (frozen) leg range nor by its own prior
// range; sigma(l, i) is the time of the i-th such discovery, the leg ends
// at its I_l-th discovery, and that site becomes the next anchor.  The
// total passage time of the realized chain equals sum_l sigma(l, I_l).

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "frog/dynamics.hpp"
#include "frog/lattice.hpp"
#include "frog/rng.hpp"

namespace frog {

// fresh-site counts I_1, ..., I_nu (all >= 1)
struct ChainSpec {
    std::vector<std::uint64_t> fresh_counts;
    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto v : fresh_counts) s += v;
        return s;
    }
};

struct LegTrace {
    Site anchor;                          // a(l)
    std::vector<std::int64_t> sigma;      // sigma(l, 1..I_l); sigma(l, 0) = 0
    std::vector<Site> fresh_sites;        // discovery i lands on fresh_sites[i-1]
    std::uint64_t range_size = 0;         // #R^{a(l)}_{sigma(l, I_l)}
};

struct ChainTrace {
    std::vector<LegTrace> legs;
    bool censored = false;           // a leg ran out of horizon before its count
    std::int64_t censor_horizon = 0;
    bool domain_truncated = false;   // some walk left the sampled domain
    std::uint64_t max_range_l1 = 0;  // max |S^{a(l)}_k|_1 over all traced steps

    std::int64_t total_time() const {  // sum of completed-leg durations
        std::int64_t s = 0;
        for (const auto& l : legs)
            if (!l.sigma.empty()) s += l.sigma.back();
        return s;
    }
    std::uint64_t total_fresh() const {
        std::uint64_t s = 0;
        for (const auto& l : legs) s += l.sigma.size();
        return s;
    }
};

// Realize the chain encoded by `spec` from `source`.  Each fresh-site
// search scans at most `leg_horizon` steps past the previous discovery
// before reporting censoring.  Sites outside the sampled domain are
// treated as vacant and flagged via domain_truncated.
ChainTrace build_chain(const Configuration& c, const WalkOracle& o, const Site& source,
                       const ChainSpec& spec, std::int64_t leg_horizon);

// Recover the fresh-count encoding of a realized finite passage to an
// occupied target: I_l = number of distinct occupied sites, outside all
// earlier leg ranges (and excluding the source on the first leg), that
// leg l's walk visits up to and including its arrival.  Feeding the
// result back into build_chain reproduces the passage value exactly.
ChainSpec extract_minimizing_chain(const Configuration& c, const WalkOracle& o,
                                   const PassageResult& p);

struct ChainStatsRow {
    std::uint64_t seed = 0;
    int d = 0;
    double r = 0;
    std::uint64_t nu = 0;        // number of legs realized
    std::uint64_t sum_fresh = 0;  // sum I_l over completed legs
    std::int64_t sum_sigma = 0;
    std::uint64_t max_range = 0;  // max L1 excursion
    bool censored = false;
};

struct ChainStatsReport {
    std::vector<ChainStatsRow> rows;
    // empirical frequency of {sum sigma <= C * delta^2 * sum I}
    double time_event_freq = 0;
    // empirical frequency of {max range >= C2 * delta * t and sum sigma <= delta^2 * t}
    double range_event_freq = 0;
    std::uint64_t uncensored = 0;
    // two-sample agreement: total duration of the multi-leg chain vs. a
    // single leg asked for the same total fresh count (equal in law);
    // Kolmogorov-Smirnov distance over the uncensored trials
    double ks_distance = 0;
};

ChainStatsReport chain_statistics(int d, double r, const ChainSpec& spec, std::uint64_t trials,
                                  std::uint64_t base_seed, std::int64_t leg_horizon,
                                  std::int64_t domain_radius, double event_c, double event_c2,
                                  double event_t);

}  // namespace frog

#pragma once
// Exact and statistical checks on the simple random walk: full path
// enumeration for the second-moment hitting inequality, Monte Carlo range
// growth, hitting probabilities, range-in-ball deviations, collective
// visit shortfalls and an adapted Chernoff tail bound.

#include <cstdint>
#include <string>
#include <vector>

#include "frog/lattice.hpp"
#include "frog/stats_util.hpp"

namespace frog {

// Everything in the report is an integer count over the (2d)^n equally
// likely n-step paths, so the inequality verdicts are exact rational
// comparisons with no floating tolerance.
struct EnumerationReport {
    int d = 0;
    int n = 0;
    std::uint64_t paths = 0;  // (2d)^n
    std::vector<Site> gamma;  // deduplicated, lexicographically sorted

    // numerators over `paths`: E[#(R_n^0 cap Gamma)] = mean_num / paths
    std::uint64_t mean_num = 0;
    std::uint64_t second_num = 0;  // second-moment numerator
    // per gamma site x: numerator of E[#(R_n^x cap Gamma)], and their max
    std::vector<std::uint64_t> per_site_num;
    std::uint64_t sup_num = 0;
    // #paths from 0 whose gamma-visit count reaches half the mean
    std::uint64_t half_count = 0;
    // hist[k] = #paths from 0 visiting exactly k distinct gamma sites
    std::vector<std::uint64_t> hist;

    // P(#(R_n^0 cap Gamma) >= E/2) >= E / (12 sup_x E[#(R_n^x cap Gamma)])
    bool chain_holds = false;
    // plain second-moment bound  P(... >= E/2) >= E^2 / (4 E[(...)^2])
    bool second_moment_holds = false;

    double lhs_prob() const { return paths ? (double)half_count / (double)paths : 0.0; }
    double mean() const { return paths ? (double)mean_num / (double)paths : 0.0; }
};

// Enumerates all (2d)^n paths from 0, and from every x in gamma for the
// supremum term.  Guards: n <= 7 and (2d)^n <= 5e6; |gamma| <= 63.
EnumerationReport pz_exact_check(int d, int n, std::vector<Site> gamma);

struct RangeGrowthRow {
    std::int64_t n = 0;
    std::uint64_t trials = 0;
    double mean = 0;     // E-hat[#R_n^0]
    double ci_half = 0;  // normal-approximation 95% half width
    double phi = 0;      // phi_d(n); NaN where the scale is undefined
    double ratio = 0;    // mean / phi
};

// Monte Carlo range sizes at each n with ratios to the growth scale.
std::vector<RangeGrowthRow> range_growth(int d, const std::vector<std::int64_t>& n_list,
                                         std::uint64_t trials, std::uint64_t seed,
                                         unsigned threads = 0);

struct HittingReport {
    int d = 0;
    Site z;
    std::int64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double p_hat = 0;  // empirical P(H(0,z) <= n)
    Interval ci;       // Wilson 95%
    // implied constant: p_hat * log(1+|z|_2) in d=2, p_hat * |z|_2^{d-2} above
    double c_hat = 0;
    bool regime_ok = true;  // n >= |z|_2^2; violations are warnings only
};

HittingReport hitting_probability(int d, const Site& z, std::int64_t n, std::uint64_t trials,
                                  std::uint64_t seed, unsigned threads = 0);

struct RangeBallReport {
    int d = 0;
    std::int64_t n = 0;
    double beta = 0;
    std::uint64_t trials = 0;
    std::uint64_t events = 0;  // #(R_n^0 cap B_2(0, n^{1/2+beta})) < n^{1-2beta}
    double freq = 0;
    Interval ci;
    double bound = 0;  // 2 exp(-n^beta)
};

// Frequency of the small-range-in-ball deviation event.  n >= 2 and
// beta in (0, 1/2].
RangeBallReport range_ball_deviation(int d, std::int64_t n, double beta, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads = 0);

struct CknReport {
    int d = 0;
    std::int64_t n = 0;
    std::size_t a_size = 0;
    std::size_t b_size = 0;
    double delta = 0;
    double r = 0;
    double c_ckn = 0;
    std::uint64_t trials = 0;

    double prop_threshold = 0;   // min(c_ckn phi_d(n) #A, (1-delta) #B)
    double lemma_threshold = 0;  // (r/2) * prop_threshold
    std::uint64_t prop_events = 0;   // #(R_n^A cap B) < prop_threshold
    std::uint64_t lemma_events = 0;  // #(R_n^A cap B cap O) < lemma_threshold
    double prop_freq = 0;
    double lemma_freq = 0;
    Interval prop_ci;
    Interval lemma_ci;
    double prop_bound = 0;   // exp(-c_ckn #A)
    double lemma_bound = 0;  // exp(-c_ckn #A) + exp(-(r/8) prop_threshold)
    // largest c in (0,1] whose shortfall frequency still obeys exp(-c #A)
    double c_admissible = 0;

    // proof-shaped diagnostics: walks are replayed one by one; tau is the
    // first walk whose fresh-target pool has already shrunk to delta #B,
    // and Y_i flags walk i visiting fewer than c_ckn phi_d(n) fresh sites
    std::uint64_t diag_tau_lt = 0;            // trials with tau < #A
    std::uint64_t diag_event_and_tau_lt = 0;  // shortfall trials among them
    std::uint64_t diag_adapted_high = 0;  // sum_i Y_i 1{tau >= i} >= (1 - c_ckn) #A
    double diag_mean_y_sum = 0;
};

// Shortfall frequencies for the collective visit count of #A independent
// walks into B, plain and occupancy-thinned.  Preconditions (violations
// throw): n >= 2, all pairwise A-B distances <= sqrt(n), and
// #B >= delta n^{d/2}.
CknReport ckn_event_frequency(int d, std::int64_t n, std::vector<Site> a_sites,
                              std::vector<Site> b_sites, double delta, double r, double c_ckn,
                              std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

struct ChernoffReport {
    double q = 0;
    std::int64_t n = 0;
    double c = 0;
    std::string schedule;
    std::uint64_t trials = 0;
    std::uint64_t events = 0;  // sum_i X_i >= (1-c) n
    double freq = 0;
    Interval ci;
    double bound = 0;  // exp(-c n)
    bool holds = false;
};

// Tail frequency for a sum of adapted indicators whose conditional
// success probability never exceeds q.  Schedules: "iid" (q every step),
// "alternating" (q, q/2, ...), "adaptive" (q/2 right after a success,
// q otherwise), "custom:p1,p2,..." (cycled; every p must be <= q, larger
// values throw).
ChernoffReport adapted_chernoff_check(double q, std::int64_t n, const std::string& schedule,
                                      double c, std::uint64_t trials, std::uint64_t seed,
                                      unsigned threads = 0);

}  // namespace frog

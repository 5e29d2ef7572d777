#pragma once
// Monte Carlo estimation of the linear growth rate of passage times and
// its low-density divergence.

#include <cstdint>
#include <vector>

#include "frog/dynamics.hpp"
#include "frog/lattice.hpp"
#include "frog/stats_util.hpp"

namespace frog {

// divergence rate delta_d(r): sqrt(|log r| / r) in d = 2, r^{-1/2} above
double delta_rate(int d, double r);

// range growth scale phi_d(t): t / log t in d = 2 (t > 1), t above (t > 0)
double phi_scale(int d, double t);

struct HorizonPolicy {
    // per-leg horizon = ceil(factor * dist^2 * max(1, delta^2)) with dist
    // the L1 source-target distance; `fixed` >= 0 overrides everything
    double factor = 50.0;
    std::int64_t fixed = -1;
    // deterministic per-trial work cap; trials that exhaust it censor
    std::int64_t step_budget = 1000000000LL;

    std::int64_t horizon(int d, double r, std::uint64_t dist) const;
};

struct MuRow {
    std::int64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t censored = 0;        // includes trials with no target found
    std::uint64_t boundary_touch = 0;  // diagnostic: front met the domain edge
    double mu_hat = 0;                 // mean T(0, v_n) / n over uncensored trials
    double ci_half = 0;
    double censor_rate = 0;
    double ratio = 0;  // mu_hat / (delta * |x|_1)
};

struct MuEstimate {
    int d = 0;
    double r = 0;
    Site x;
    std::uint64_t seed = 0;
    double delta = 0;
    std::vector<MuRow> rows;
};

// raised when every trial of some n censors (no usable estimate)
struct EstimationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// For each n: per trial, sample a fresh configuration with the origin
// forced occupied on a box of radius 1.5 n |x|_inf + 4 sqrt(H), aim at
// the occupied site closest to n*x (L1, lexicographic tie-break) and
// measure the restricted passage time from the origin.
MuEstimate estimate_mu(int d, double r, const Site& x, const std::vector<std::int64_t>& n_list,
                       std::uint64_t trials, std::uint64_t seed, const HorizonPolicy& policy = {},
                       unsigned threads = 0);

struct SweepCell {
    double r = 0;
    double delta = 0;
    MuRow row;
    bool excluded = false;  // delta == 0 cells are dropped from the fit
};

struct SweepResult {
    int d = 0;
    Site x;
    std::int64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<SweepCell> cells;
    // least-squares fit of log mu_hat against log delta_d(r)
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;  // one per included cell
};

// Estimate mu over a density grid and fit the divergence exponent.
// Throws std::invalid_argument when fewer than 3 grid points survive the
// delta > 0 exclusion.
SweepResult scaling_sweep(int d, const std::vector<double>& r_list, const Site& x, std::int64_t n,
                          std::uint64_t trials, std::uint64_t seed,
                          const HorizonPolicy& policy = {}, unsigned threads = 0);

}  // namespace frog

#pragma once
// Small numeric helpers shared by the estimation and statistics code.

#include <cstdint>
#include <functional>
#include <vector>

namespace frog {

// Pairwise (cascade) summation; deterministic for a given input order.
// Callers that aggregate across trials sort first so the result does not
// depend on trial completion order.
double pairwise_sum(const std::vector<double>& xs);

struct MeanCi {
    std::uint64_t n = 0;
    double mean = 0;
    double half_width = 0;  // 1.96 * sd / sqrt(n), 0 when n < 2
};

// normal-approximation CI; values are sorted internally before summing
MeanCi mean_ci_normal(std::vector<double> values);

struct Interval {
    double lo = 0, hi = 0;
};

// Wilson score interval for a binomial proportion (95%)
Interval wilson_ci(std::uint64_t successes, std::uint64_t trials);

// two-sample Kolmogorov-Smirnov distance; 1 if either sample is empty
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

// Run fn(i) for i in [0, count) across `threads` workers with a static
// block partition.  Each index must be independent of the others; the
// partition never affects which work item gets which index, so results
// are identical for every thread count.
void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& fn);

}  // namespace frog

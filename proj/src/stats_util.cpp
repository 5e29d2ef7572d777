#include "frog/stats_util.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace frog {

namespace {

double pairwise_rec(const double* xs, std::size_t n) {
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += xs[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_rec(xs, h) + pairwise_rec(xs + h, n - h);
}

}  // namespace

double pairwise_sum(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : pairwise_rec(xs.data(), xs.size());
}

MeanCi mean_ci_normal(std::vector<double> values) {
    MeanCi out;
    out.n = values.size();
    if (values.empty()) return out;
    std::sort(values.begin(), values.end());
    out.mean = pairwise_sum(values) / (double)values.size();
    if (values.size() < 2) return out;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double dlt = values[i] - out.mean;
        sq[i] = dlt * dlt;
    }
    std::sort(sq.begin(), sq.end());
    double var = pairwise_sum(sq) / (double)(values.size() - 1);
    out.half_width = 1.96 * std::sqrt(var / (double)values.size());
    return out;
}

Interval wilson_ci(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_ci: zero trials");
    if (successes > trials) throw std::invalid_argument("wilson_ci: successes > trials");
    const double z = 1.959963984540054;
    const double n = (double)trials;
    const double p = (double)successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    // the interval provably contains p; clamp away endpoint roundoff
    return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) return 1.0;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs((double)i / a.size() - (double)j / b.size()));
    }
    return d;
}

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("least_squares: need at least two points");
    const double n = (double)xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("least_squares: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.residuals.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residuals[i] = ys[i] - (fit.intercept + fit.slope * xs[i]);
    return fit;
}

void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = (unsigned)std::min<std::uint64_t>(threads, count);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            const std::uint64_t chunk = (count + threads - 1) / threads;
            const std::uint64_t begin = (std::uint64_t)w * chunk;
            const std::uint64_t end = std::min(count, begin + chunk);
            try {
                for (std::uint64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace frog

#include "frog/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "frog/rng.hpp"

namespace frog {

double delta_rate(int d, double r) {
    Site::check_dim(d);
    if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("delta_rate: r must lie in (0, 1]");
    if (d == 2) return std::sqrt(std::fabs(std::log(r)) / r);
    return 1.0 / std::sqrt(r);
}

double phi_scale(int d, double t) {
    Site::check_dim(d);
    if (d == 2) {
        if (!(t > 1.0)) throw std::invalid_argument("phi_scale: need t > 1 in dimension 2");
        return t / std::log(t);
    }
    if (!(t > 0.0)) throw std::invalid_argument("phi_scale: need t > 0");
    return t;
}

std::int64_t HorizonPolicy::horizon(int d, double r, std::uint64_t dist) const {
    if (fixed >= 0) return fixed;
    const double del = delta_rate(d, r);
    const double d2 = std::max(1.0, del * del);
    const double h = factor * (double)dist * (double)dist * d2;
    return (std::int64_t)std::ceil(h);
}

namespace {

struct TrialOutcome {
    bool censored = true;
    bool boundary = false;
    double value = 0;  // T / n
};

}  // namespace

MuEstimate estimate_mu(int d, double r, const Site& x, const std::vector<std::int64_t>& n_list,
                       std::uint64_t trials, std::uint64_t seed, const HorizonPolicy& policy,
                       unsigned threads) {
    Site::check_dim(d);
    if (x.dim != d) throw std::invalid_argument("estimate_mu: direction dimension mismatch");
    if (l1_norm(x) == 0) throw std::invalid_argument("estimate_mu: direction must be nonzero");
    if (trials < 2) throw std::invalid_argument("estimate_mu: need at least 2 trials");
    if (n_list.empty()) throw std::invalid_argument("estimate_mu: empty n list");
    for (auto n : n_list)
        if (n < 1) throw std::invalid_argument("estimate_mu: n must be >= 1");

    MuEstimate est;
    est.d = d;
    est.r = r;
    est.x = x;
    est.seed = seed;
    est.delta = delta_rate(d, r);

    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const std::int64_t n = n_list[ni];
        const Site target_center = x.scaled(n);
        const std::uint64_t dist_nom = l1_norm(target_center);
        const std::int64_t H = policy.horizon(d, r, dist_nom);
        const std::int64_t margin =
            (std::int64_t)std::ceil(1.5 * (double)n * (double)linf_norm(x) +
                                    4.0 * std::sqrt((double)H));
        const Box domain{Site::zero(d), margin, Norm::LInf};
        const Region region = Region::of(domain);

        std::vector<TrialOutcome> outcomes(trials);
        parallel_for(trials, threads, [&](std::uint64_t ti) {
            const std::uint64_t s = substream(seed, kTagTrial, ni * trials + ti);
            Configuration c(s, d, r, domain, /*force_origin=*/true);
            WalkOracle o(s, d);
            TrialOutcome& tout = outcomes[ti];
            auto target = c.closest_occupied(target_center, margin + (std::int64_t)linf_norm(target_center));
            if (!target) return;  // vacant domain: censored
            PassageOptions popt;
            popt.global_cap = H;
            popt.step_budget = policy.step_budget;
            PassageResult p = passage_time(c, o, Site::zero(d), *target, region, H, popt);
            tout.boundary = p.boundary_touch;
            if (!p.value.is_finite()) return;
            tout.censored = false;
            tout.value = (double)p.value.value / (double)n;
        });

        MuRow row;
        row.n = n;
        row.trials = trials;
        std::vector<double> vals;
        for (const auto& tr : outcomes) {
            if (tr.censored) ++row.censored;
            else vals.push_back(tr.value);
            if (tr.boundary) ++row.boundary_touch;
        }
        if (vals.empty())
            throw EstimationFailure("estimate_mu: every trial censored at n = " +
                                    std::to_string(n));
        MeanCi mc = mean_ci_normal(std::move(vals));
        row.mu_hat = mc.mean;
        row.ci_half = mc.half_width;
        row.censor_rate = (double)row.censored / (double)trials;
        const double dl1 = est.delta * (double)l1_norm(x);
        row.ratio = row.mu_hat / dl1;  // inf when delta == 0 (r = 1 in d = 2)
        est.rows.push_back(row);
    }
    return est;
}

SweepResult scaling_sweep(int d, const std::vector<double>& r_list, const Site& x, std::int64_t n,
                          std::uint64_t trials, std::uint64_t seed, const HorizonPolicy& policy,
                          unsigned threads) {
    SweepResult sw;
    sw.d = d;
    sw.x = x;
    sw.n = n;
    sw.trials = trials;
    sw.seed = seed;

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < r_list.size(); ++i) {
        const double r = r_list[i];
        SweepCell cell;
        cell.r = r;
        cell.delta = delta_rate(d, r);
        MuEstimate est = estimate_mu(d, r, x, {n}, trials, substream(seed, kTagDraw, i), policy,
                                     threads);
        cell.row = est.rows[0];
        cell.excluded = !(cell.delta > 0.0) || !(cell.row.mu_hat > 0.0);
        sw.cells.push_back(cell);
        if (!cell.excluded) {
            lx.push_back(std::log(cell.delta));
            ly.push_back(std::log(cell.row.mu_hat));
        }
    }
    std::size_t distinct = 0;
    std::vector<double> sorted_lx = lx;
    std::sort(sorted_lx.begin(), sorted_lx.end());
    sorted_lx.erase(std::unique(sorted_lx.begin(), sorted_lx.end()), sorted_lx.end());
    distinct = sorted_lx.size();
    if (distinct < 3)
        throw std::invalid_argument("scaling_sweep: need at least 3 usable density points");
    LineFit fit = least_squares(lx, ly);
    sw.slope = fit.slope;
    sw.intercept = fit.intercept;
    sw.residuals = fit.residuals;
    return sw;
}

}  // namespace frog

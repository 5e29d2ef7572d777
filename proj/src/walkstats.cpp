#include "frog/walkstats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frog/estimator.hpp"
#include "frog/rng.hpp"

namespace frog {

namespace {

// depth-first sweep over every remaining path; mask tracks which gamma
// sites the path has touched so far (start position included)
void enum_rec(int depth_left, Site& pos, std::uint64_t mask, const std::vector<Site>& gamma,
              std::vector<std::uint64_t>& hist) {
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (pos == gamma[i]) {
            mask |= 1ULL << i;
            break;  // gamma sites are distinct
        }
    }
    if (depth_left == 0) {
        hist[(std::size_t)std::popcount(mask)] += 1;
        return;
    }
    for (int axis = 0; axis < pos.dim; ++axis) {
        pos.c[axis] += 1;
        enum_rec(depth_left - 1, pos, mask, gamma, hist);
        pos.c[axis] -= 2;
        enum_rec(depth_left - 1, pos, mask, gamma, hist);
        pos.c[axis] += 1;
    }
}

std::vector<std::uint64_t> enumerate_hist(const Site& start, int n,
                                          const std::vector<Site>& gamma) {
    std::vector<std::uint64_t> hist(gamma.size() + 1, 0);
    Site pos = start;
    enum_rec(n, pos, 0, gamma, hist);
    return hist;
}

// number of distinct sites an n-step walk visits, optionally only those
// with squared L2 norm <= keep_radius_sq (negative disables the filter)
std::uint64_t distinct_visited(WalkCursor cur, std::int64_t n, double keep_radius_sq) {
    const int d = cur.pos.dim;
    int w = 1;
    while (((std::int64_t)1 << w) <= 2 * n) ++w;
    if (d * w <= 64) {
        // coordinates stay in [-n, n]; pack offset coordinates into one key
        std::vector<std::uint64_t> keys;
        keys.reserve((std::size_t)n + 1);
        auto push = [&](const Site& s) {
            if (keep_radius_sq >= 0 && (double)l2_norm_sq(s) > keep_radius_sq) return;
            std::uint64_t key = 0;
            for (int i = 0; i < d; ++i) key = (key << w) | (std::uint64_t)(s.c[i] + n);
            keys.push_back(key);
        };
        push(cur.pos);
        for (std::int64_t k = 0; k < n; ++k) {
            cur.step();
            push(cur.pos);
        }
        std::sort(keys.begin(), keys.end());
        return (std::uint64_t)(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    std::vector<Site> sites;
    sites.reserve((std::size_t)n + 1);
    if (keep_radius_sq < 0 || (double)l2_norm_sq(cur.pos) <= keep_radius_sq)
        sites.push_back(cur.pos);
    for (std::int64_t k = 0; k < n; ++k) {
        cur.step();
        if (keep_radius_sq < 0 || (double)l2_norm_sq(cur.pos) <= keep_radius_sq)
            sites.push_back(cur.pos);
    }
    std::sort(sites.begin(), sites.end());
    return (std::uint64_t)(std::unique(sites.begin(), sites.end()) - sites.begin());
}

}  // namespace

EnumerationReport pz_exact_check(int d, int n, std::vector<Site> gamma) {
    Site::check_dim(d);
    if (n < 0 || n > 7) throw std::invalid_argument("pz_exact_check: n must be in [0, 7]");
    double paths_est = std::pow(2.0 * d, (double)n);
    if (paths_est > 5e6)
        throw std::invalid_argument("pz_exact_check: (2d)^n exceeds the enumeration guard");
    for (const auto& s : gamma)
        if (s.dim != d) throw std::invalid_argument("pz_exact_check: gamma dimension mismatch");
    std::sort(gamma.begin(), gamma.end());
    gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
    if (gamma.size() > 63) throw std::invalid_argument("pz_exact_check: gamma larger than 63 sites");

    EnumerationReport rep;
    rep.d = d;
    rep.n = n;
    rep.gamma = gamma;
    rep.paths = 1;
    for (int i = 0; i < n; ++i) rep.paths *= (std::uint64_t)(2 * d);

    rep.hist = enumerate_hist(Site::zero(d), n, gamma);
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < rep.hist.size(); ++k) {
        total += rep.hist[k];
        rep.mean_num += (std::uint64_t)k * rep.hist[k];
        rep.second_num += (std::uint64_t)(k * k) * rep.hist[k];
    }
    if (total != rep.paths) throw std::logic_error("pz_exact_check: path count mismatch");

    // visit count k reaches half the mean iff 2 k paths >= mean_num
    for (std::size_t k = 0; k < rep.hist.size(); ++k)
        if (2 * (std::uint64_t)k * rep.paths >= rep.mean_num) rep.half_count += rep.hist[k];

    rep.per_site_num.reserve(gamma.size());
    for (const auto& x : gamma) {
        auto hx = enumerate_hist(x, n, gamma);
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < hx.size(); ++k) s += (std::uint64_t)k * hx[k];
        rep.per_site_num.push_back(s);
        rep.sup_num = std::max(rep.sup_num, s);
    }

    using u128 = unsigned __int128;
    rep.chain_holds = (u128)rep.half_count * 12u * rep.sup_num >= (u128)rep.mean_num * rep.paths;
    rep.second_moment_holds =
        (u128)rep.half_count * 4u * rep.second_num >= (u128)rep.mean_num * rep.mean_num;
    return rep;
}

std::vector<RangeGrowthRow> range_growth(int d, const std::vector<std::int64_t>& n_list,
                                         std::uint64_t trials, std::uint64_t seed,
                                         unsigned threads) {
    Site::check_dim(d);
    if (trials < 1) throw std::invalid_argument("range_growth: trials must be >= 1");
    for (auto n : n_list)
        if (n < 0) throw std::invalid_argument("range_growth: n must be >= 0");

    std::vector<RangeGrowthRow> rows;
    rows.reserve(n_list.size());
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const std::int64_t n = n_list[ni];
        std::vector<double> sizes(trials, 0.0);
        parallel_for(trials, threads, [&](std::uint64_t t) {
            WalkOracle oracle(substream(seed, kTagTrial, ni * trials + t), d);
            sizes[t] = (double)distinct_visited(WalkCursor(oracle, Site::zero(d)), n, -1.0);
        });
        MeanCi ci = mean_ci_normal(std::move(sizes));
        RangeGrowthRow row;
        row.n = n;
        row.trials = trials;
        row.mean = ci.mean;
        row.ci_half = ci.half_width;
        if (n < 1 || (d == 2 && n < 2)) {
            row.phi = std::numeric_limits<double>::quiet_NaN();
            row.ratio = std::numeric_limits<double>::quiet_NaN();
        } else {
            row.phi = phi_scale(d, (double)n);
            row.ratio = row.mean / row.phi;
        }
        rows.push_back(row);
    }
    return rows;
}

HittingReport hitting_probability(int d, const Site& z, std::int64_t n, std::uint64_t trials,
                                  std::uint64_t seed, unsigned threads) {
    Site::check_dim(d);
    if (z.dim != d) throw std::invalid_argument("hitting_probability: z dimension mismatch");
    if (n < 0) throw std::invalid_argument("hitting_probability: n must be >= 0");
    if (trials < 1) throw std::invalid_argument("hitting_probability: trials must be >= 1");

    HittingReport rep;
    rep.d = d;
    rep.z = z;
    rep.n = n;
    rep.trials = trials;
    rep.regime_ok = (std::uint64_t)n >= l2_norm_sq(z);

    if (z == Site::zero(d)) {
        rep.hits = trials;  // H(0,0) = 0, nothing to sample
    } else {
        std::vector<std::uint8_t> hit(trials, 0);
        parallel_for(trials, threads, [&](std::uint64_t t) {
            WalkOracle oracle(substream(seed, kTagTrial, t), d);
            WalkCursor cur(oracle, Site::zero(d));
            for (std::int64_t k = 0; k < n; ++k) {
                cur.step();
                if (cur.pos == z) {
                    hit[t] = 1;
                    break;
                }
            }
        });
        for (auto h : hit) rep.hits += h;
    }
    rep.p_hat = (double)rep.hits / (double)trials;
    rep.ci = wilson_ci(rep.hits, trials);
    double znorm = l2_norm(z);
    rep.c_hat = d == 2 ? rep.p_hat * std::log1p(znorm) : rep.p_hat * std::pow(znorm, d - 2);
    return rep;
}

RangeBallReport range_ball_deviation(int d, std::int64_t n, double beta, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads) {
    Site::check_dim(d);
    if (n < 2) throw std::invalid_argument("range_ball_deviation: n must be >= 2");
    if (!(beta > 0.0 && beta <= 0.5))
        throw std::invalid_argument("range_ball_deviation: beta must lie in (0, 1/2]");
    if (trials < 1) throw std::invalid_argument("range_ball_deviation: trials must be >= 1");

    const double radius_sq = std::pow((double)n, 1.0 + 2.0 * beta);
    const double need = std::pow((double)n, 1.0 - 2.0 * beta);

    std::vector<std::uint8_t> ev(trials, 0);
    parallel_for(trials, threads, [&](std::uint64_t t) {
        WalkOracle oracle(substream(seed, kTagTrial, t), d);
        std::uint64_t in_ball =
            distinct_visited(WalkCursor(oracle, Site::zero(d)), n, radius_sq);
        ev[t] = (double)in_ball < need ? 1 : 0;
    });

    RangeBallReport rep;
    rep.d = d;
    rep.n = n;
    rep.beta = beta;
    rep.trials = trials;
    for (auto e : ev) rep.events += e;
    rep.freq = (double)rep.events / (double)trials;
    rep.ci = wilson_ci(rep.events, trials);
    rep.bound = 2.0 * std::exp(-std::pow((double)n, beta));
    return rep;
}

namespace {

// largest c in (0, 1] with freq{count < min(c * phell, cap)} <= exp(-c * ell);
// freq is a left-continuous step function of c, so each constant piece is
// decided against the decreasing bound at its own right end
double largest_admissible_c(std::vector<std::uint32_t> counts, double phell, double cap,
                            std::size_t ell) {
    std::sort(counts.begin(), counts.end());
    const double trials = (double)counts.size();
    auto freq_at = [&](double c) {
        double thr = std::min(c * phell, cap);
        auto it = std::lower_bound(counts.begin(), counts.end(), thr,
                                   [](std::uint32_t v, double t) { return (double)v < t; });
        return (double)(it - counts.begin()) / trials;
    };

    std::vector<double> pts{0.0, 1.0};
    if (cap / phell > 0.0 && cap / phell < 1.0) pts.push_back(cap / phell);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i > 0 && counts[i] == counts[i - 1]) continue;
        double c = (double)counts[i] / phell;
        if (c > 0.0 && c < 1.0) pts.push_back(c);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    for (std::size_t i = pts.size(); i-- > 1;) {
        double hi = pts[i], lo = pts[i - 1];
        double f = freq_at(hi);
        if (f == 0.0) return hi;
        double cmax = -std::log(f) / (double)ell;
        if (cmax >= hi) return hi;
        if (cmax > lo) return cmax;
    }
    return 0.0;
}

}  // namespace

CknReport ckn_event_frequency(int d, std::int64_t n, std::vector<Site> a_sites,
                              std::vector<Site> b_sites, double delta, double r, double c_ckn,
                              std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    Site::check_dim(d);
    if (n < 2) throw std::invalid_argument("ckn_event_frequency: n must be >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("ckn_event_frequency: delta must lie in (0, 1)");
    if (!(r > 0.0 && r <= 1.0))
        throw std::invalid_argument("ckn_event_frequency: r must lie in (0, 1]");
    if (!(c_ckn > 0.0 && c_ckn < 1.0))
        throw std::invalid_argument("ckn_event_frequency: c_ckn must lie in (0, 1)");
    if (trials < 1) throw std::invalid_argument("ckn_event_frequency: trials must be >= 1");
    if (a_sites.empty() || b_sites.empty())
        throw std::invalid_argument("ckn_event_frequency: A and B must be nonempty");
    for (const auto& s : a_sites)
        if (s.dim != d) throw std::invalid_argument("ckn_event_frequency: A dimension mismatch");
    for (const auto& s : b_sites)
        if (s.dim != d) throw std::invalid_argument("ckn_event_frequency: B dimension mismatch");

    std::sort(a_sites.begin(), a_sites.end());
    a_sites.erase(std::unique(a_sites.begin(), a_sites.end()), a_sites.end());
    std::sort(b_sites.begin(), b_sites.end());
    b_sites.erase(std::unique(b_sites.begin(), b_sites.end()), b_sites.end());

    for (const auto& x : a_sites)
        for (const auto& y : b_sites)
            if (l2_dist_sq(x, y) > (std::uint64_t)n)
                throw std::invalid_argument(
                    "ckn_event_frequency: some A-B pair is farther than sqrt(n)");
    if ((double)b_sites.size() < delta * std::pow((double)n, d / 2.0))
        throw std::invalid_argument("ckn_event_frequency: #B below delta n^{d/2}");

    const std::size_t ell = a_sites.size();
    const std::size_t bsz = b_sites.size();
    const double phi = phi_scale(d, (double)n);
    const double cap = (1.0 - delta) * (double)bsz;
    const double prop_thr = std::min(c_ckn * phi * (double)ell, cap);
    const std::uint64_t occ_threshold = bernoulli_threshold(r);

    // bounding box of B for a cheap membership pre-filter
    Site blo = b_sites.front(), bhi = b_sites.front();
    for (const auto& y : b_sites)
        for (int i = 0; i < d; ++i) {
            blo.c[i] = std::min(blo.c[i], y.c[i]);
            bhi.c[i] = std::max(bhi.c[i], y.c[i]);
        }

    std::vector<std::uint32_t> count_total(trials, 0);
    std::vector<std::uint8_t> ev_prop(trials, 0), ev_lemma(trials, 0), tau_lt(trials, 0);
    std::vector<std::uint32_t> y_active(trials, 0);

    parallel_for(trials, threads, [&](std::uint64_t t) {
        std::uint64_t tseed = substream(seed, kTagTrial, t);
        WalkOracle oracle(tseed, d);
        std::vector<std::uint8_t> mark(bsz, 0);
        std::size_t marked = 0;
        std::size_t tau = 0;  // 0 = not triggered yet

        auto b_index = [&](const Site& s) -> std::size_t {
            for (int i = 0; i < d; ++i)
                if (s.c[i] < blo.c[i] || s.c[i] > bhi.c[i]) return bsz;
            auto it = std::lower_bound(b_sites.begin(), b_sites.end(), s);
            if (it != b_sites.end() && *it == s) return (std::size_t)(it - b_sites.begin());
            return bsz;
        };

        std::uint32_t active = 0;
        for (std::size_t i = 0; i < ell; ++i) {
            // fresh pool before walk i+1 is B minus everything marked so far
            if (tau == 0 && (double)(bsz - marked) <= delta * (double)bsz) tau = i + 1;
            bool tau_ge = tau == 0 || tau >= i + 1;
            WalkCursor cur(oracle, a_sites[i]);
            std::size_t fresh = 0;
            std::size_t idx = b_index(cur.pos);
            if (idx < bsz && !mark[idx]) {
                mark[idx] = 1;
                ++marked;
                ++fresh;
            }
            for (std::int64_t k = 0; k < n; ++k) {
                cur.step();
                idx = b_index(cur.pos);
                if (idx < bsz && !mark[idx]) {
                    mark[idx] = 1;
                    ++marked;
                    ++fresh;
                }
            }
            if ((double)fresh < c_ckn * phi && tau_ge) ++active;
        }

        std::size_t occ_hits = 0;
        for (std::size_t j = 0; j < bsz; ++j)
            if (mark[j] && (site_key(tseed, kTagOmega, b_sites[j]) >> 11) < occ_threshold)
                ++occ_hits;

        count_total[t] = (std::uint32_t)marked;
        y_active[t] = active;
        ev_prop[t] = (double)marked < prop_thr ? 1 : 0;
        ev_lemma[t] = (double)occ_hits < (r / 2.0) * prop_thr ? 1 : 0;
        tau_lt[t] = (tau != 0 && tau < ell) ? 1 : 0;
    });

    CknReport rep;
    rep.d = d;
    rep.n = n;
    rep.a_size = ell;
    rep.b_size = bsz;
    rep.delta = delta;
    rep.r = r;
    rep.c_ckn = c_ckn;
    rep.trials = trials;
    rep.prop_threshold = prop_thr;
    rep.lemma_threshold = (r / 2.0) * prop_thr;
    double y_sum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        rep.prop_events += ev_prop[t];
        rep.lemma_events += ev_lemma[t];
        rep.diag_tau_lt += tau_lt[t];
        if (ev_prop[t] && tau_lt[t]) ++rep.diag_event_and_tau_lt;
        if ((double)y_active[t] >= (1.0 - c_ckn) * (double)ell) ++rep.diag_adapted_high;
        y_sum += (double)y_active[t];
    }
    rep.prop_freq = (double)rep.prop_events / (double)trials;
    rep.lemma_freq = (double)rep.lemma_events / (double)trials;
    rep.prop_ci = wilson_ci(rep.prop_events, trials);
    rep.lemma_ci = wilson_ci(rep.lemma_events, trials);
    rep.prop_bound = std::exp(-c_ckn * (double)ell);
    rep.lemma_bound = rep.prop_bound + std::exp(-(r / 8.0) * prop_thr);
    rep.diag_mean_y_sum = y_sum / (double)trials;
    rep.c_admissible = largest_admissible_c(std::move(count_total), phi * (double)ell, cap, ell);
    return rep;
}

ChernoffReport adapted_chernoff_check(double q, std::int64_t n, const std::string& schedule,
                                      double c, std::uint64_t trials, std::uint64_t seed,
                                      unsigned threads) {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("adapted_chernoff_check: q must lie in [0, 1]");
    if (n < 1) throw std::invalid_argument("adapted_chernoff_check: n must be >= 1");
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("adapted_chernoff_check: c must lie in (0, 1)");
    if (trials < 1) throw std::invalid_argument("adapted_chernoff_check: trials must be >= 1");

    enum class Kind { iid, alternating, adaptive, custom };
    Kind kind;
    std::vector<double> pattern;
    if (schedule == "iid") {
        kind = Kind::iid;
    } else if (schedule == "alternating") {
        kind = Kind::alternating;
    } else if (schedule == "adaptive") {
        kind = Kind::adaptive;
    } else if (schedule.rfind("custom:", 0) == 0) {
        kind = Kind::custom;
        std::string rest = schedule.substr(7);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t used = 0;
            pattern.push_back(std::stod(rest.substr(pos), &used));
            pos += used;
            if (pos < rest.size()) {
                if (rest[pos] != ',')
                    throw std::invalid_argument("adapted_chernoff_check: malformed custom schedule");
                ++pos;
            }
        }
        if (pattern.empty())
            throw std::invalid_argument("adapted_chernoff_check: empty custom schedule");
        for (double p : pattern)
            if (!(p >= 0.0) || p > q)
                throw std::invalid_argument(
                    "adapted_chernoff_check: schedule probability exceeds q");
    } else {
        throw std::invalid_argument("adapted_chernoff_check: unknown schedule '" + schedule + "'");
    }

    const double event_thr = (1.0 - c) * (double)n;
    std::vector<std::uint8_t> ev(trials, 0);
    parallel_for(trials, threads, [&](std::uint64_t t) {
        std::uint64_t base = substream(seed, kTagTrial, t);
        std::uint64_t sum = 0;
        bool prev = false;
        for (std::int64_t i = 1; i <= n; ++i) {
            double p = q;
            switch (kind) {
                case Kind::iid: break;
                case Kind::alternating: p = (i % 2 == 1) ? q : q * 0.5; break;
                case Kind::adaptive: p = prev ? q * 0.5 : q; break;
                case Kind::custom: p = pattern[(std::size_t)(i - 1) % pattern.size()]; break;
            }
            bool x = u01(stream_at(base, (std::uint64_t)i)) < p;
            prev = x;
            sum += x ? 1 : 0;
        }
        ev[t] = (double)sum >= event_thr ? 1 : 0;
    });

    ChernoffReport rep;
    rep.q = q;
    rep.n = n;
    rep.c = c;
    rep.schedule = schedule;
    rep.trials = trials;
    for (auto e : ev) rep.events += e;
    rep.freq = (double)rep.events / (double)trials;
    rep.ci = wilson_ci(rep.events, trials);
    rep.bound = std::exp(-c * (double)n);
    rep.holds = rep.freq <= rep.bound;
    return rep;
}

}  // namespace frog

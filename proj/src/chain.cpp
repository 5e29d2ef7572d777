#include "frog/chain.hpp"

#include <algorithm>

#include "frog/estimator.hpp"
#include "frog/stats_util.hpp"

namespace frog {

ChainTrace build_chain(const Configuration& c, const WalkOracle& o, const Site& source,
                       const ChainSpec& spec, std::int64_t leg_horizon) {
    if (source.dim != c.dim() || o.dim() != c.dim())
        throw std::invalid_argument("build_chain: dimension mismatch");
    for (auto v : spec.fresh_counts)
        if (v == 0) throw std::invalid_argument("build_chain: fresh counts must be >= 1");
    if (leg_horizon < 0) throw std::invalid_argument("build_chain: negative horizon");

    ChainTrace tr;
    std::unordered_set<Site, SiteHash> frozen;  // union of completed leg ranges
    Site anchor = source;

    for (std::uint64_t l = 0; l < spec.fresh_counts.size(); ++l) {
        LegTrace leg;
        leg.anchor = anchor;
        std::unordered_set<Site, SiteHash> range;  // this walk's own visited set
        WalkCursor cur(o, anchor);
        range.insert(cur.pos);
        tr.max_range_l1 = std::max(tr.max_range_l1, l1_norm(cur.pos));

        std::int64_t k = 0;
        std::int64_t last_sigma = 0;
        const std::uint64_t want = spec.fresh_counts[l];
        while (leg.sigma.size() < want) {
            if (k - last_sigma >= leg_horizon) {
                tr.censored = true;
                tr.censor_horizon = leg_horizon;
                leg.range_size = range.size();
                tr.legs.push_back(std::move(leg));
                return tr;
            }
            cur.step();
            ++k;
            tr.max_range_l1 = std::max(tr.max_range_l1, l1_norm(cur.pos));
            const Site& z = cur.pos;
            bool seen_before = range.count(z) != 0;
            range.insert(z);
            if (seen_before || frozen.count(z)) continue;
            if (!c.in_domain(z)) {
                tr.domain_truncated = true;  // occupancy unknown, treat as vacant
                continue;
            }
            if (!c.is_occupied(z)) continue;
            // fresh occupied site: sigma(l, i) = k
            leg.sigma.push_back(k);
            leg.fresh_sites.push_back(z);
            last_sigma = k;
        }
        leg.range_size = range.size();
        anchor = leg.fresh_sites.back();  // a(l+1) = S^{a(l)}_{sigma(l, I_l)}
        // freeze exactly the range up to sigma(l, I_l): the loop stops at
        // the discovery step, so `range` holds precisely that prefix
        for (const auto& z : range) frozen.insert(z);
        tr.legs.push_back(std::move(leg));
    }
    return tr;
}

ChainSpec extract_minimizing_chain(const Configuration& c, const WalkOracle& o,
                                   const PassageResult& p) {
    if (!p.value.is_finite())
        throw std::invalid_argument("extract_minimizing_chain: passage value not finite");
    const auto& path = p.realized_path;
    const auto& legs = p.per_leg_times;
    if (path.size() < 2 || legs.size() != path.size() - 1)
        throw std::invalid_argument("extract_minimizing_chain: malformed realized path");
    if (!c.in_domain(path.back()) || !c.is_occupied(path.back()))
        throw std::invalid_argument("extract_minimizing_chain: target must be occupied");

    ChainSpec spec;
    std::unordered_set<Site, SiteHash> frozen;
    for (std::size_t l = 0; l < legs.size(); ++l) {
        WalkCursor cur(o, path[l]);
        std::unordered_set<Site, SiteHash> range;
        std::uint64_t fresh = 0;
        range.insert(cur.pos);
        // k = 0 start site never counts: on leg 1 the source is excluded
        // by definition, later anchors lie in the previous frozen range
        if (l == 0) frozen.insert(path[0]);
        for (std::int64_t k = 1; k <= legs[l]; ++k) {
            cur.step();
            const Site& z = cur.pos;
            bool seen = range.count(z) != 0;
            range.insert(z);
            if (seen || frozen.count(z)) continue;
            if (!c.in_domain(z) || !c.is_occupied(z)) continue;
            ++fresh;
        }
        if (cur.pos != path[l + 1])
            throw std::invalid_argument("extract_minimizing_chain: leg replay mismatch");
        spec.fresh_counts.push_back(fresh);
        for (const auto& z : range) frozen.insert(z);
    }
    return spec;
}

ChainStatsReport chain_statistics(int d, double r, const ChainSpec& spec, std::uint64_t trials,
                                  std::uint64_t base_seed, std::int64_t leg_horizon,
                                  std::int64_t domain_radius, double event_c, double event_c2,
                                  double event_t) {
    ChainStatsReport rep;
    const double del = delta_rate(d, r);
    std::vector<double> multi_times, single_times;
    const Site origin = Site::zero(d);
    const Box domain{origin, domain_radius, Norm::LInf};

    for (std::uint64_t i = 0; i < trials; ++i) {
        const std::uint64_t seed = substream(base_seed, kTagTrial, i);
        Configuration c(seed, d, r, domain);
        WalkOracle o(seed, d);
        ChainTrace tr = build_chain(c, o, origin, spec, leg_horizon);

        ChainStatsRow row;
        row.seed = seed;
        row.d = d;
        row.r = r;
        row.nu = tr.legs.size();
        row.sum_fresh = tr.total_fresh();
        row.sum_sigma = tr.total_time();
        row.max_range = tr.max_range_l1;
        row.censored = tr.censored;
        rep.rows.push_back(row);
        if (tr.censored) continue;
        ++rep.uncensored;

        if ((double)row.sum_sigma <= event_c * del * del * (double)row.sum_fresh)
            rep.time_event_freq += 1;
        if ((double)row.max_range >= event_c2 * del * event_t &&
            (double)row.sum_sigma <= del * del * event_t)
            rep.range_event_freq += 1;
        multi_times.push_back((double)row.sum_sigma);

        // independent single-leg realization with the same total count
        const std::uint64_t seed2 = substream(base_seed, kTagDraw, i);
        Configuration c2(seed2, d, r, domain);
        WalkOracle o2(seed2, d);
        ChainSpec single;
        single.fresh_counts = {spec.total()};
        ChainTrace tr2 = build_chain(c2, o2, origin, single, leg_horizon);
        if (!tr2.censored) single_times.push_back((double)tr2.total_time());
    }
    if (rep.uncensored) {
        rep.time_event_freq /= (double)rep.uncensored;
        rep.range_event_freq /= (double)rep.uncensored;
    }
    rep.ks_distance = ks_two_sample(multi_times, single_times);
    return rep;
}

}  // namespace frog

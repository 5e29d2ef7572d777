#include "frog/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "frog/estimator.hpp"

namespace frog {

namespace {

std::int64_t floor64(double x) { return (std::int64_t)std::floor(x); }
std::int64_t ceil64(double x) { return (std::int64_t)std::ceil(x); }

// box certainly inside the sampled domain?  corner test on the LInf
// hull; exact because the domain ball is convex
bool box_in_domain(const Configuration& c, const Box& b) {
    int d = b.center.dim;
    Box hull = b.linf_hull();
    Site cur = Site::zero(d);
    for (std::uint64_t bits = 0; bits < (1ULL << d); ++bits) {
        for (int i = 0; i < d; ++i)
            cur.c[i] = hull.center.c[i] + ((bits >> i) & 1 ? hull.radius : -hull.radius);
        if (!c.in_domain(cur)) return false;
    }
    return true;
}

void require_in_domain(const Configuration& c, const Box& b, const char* what) {
    if (!box_in_domain(c, b)) throw DomainTooSmall(std::string(what) + " exceeds sampled domain");
}

void check_dims(const Configuration& c, const WalkOracle& o, const RenormParams& p) {
    if (c.dim() != p.d || o.dim() != p.d)
        throw std::invalid_argument("renorm: dimension mismatch between configuration and params");
}

// minimal finite recorded passage time to an occupied site of `box`,
// lexicographically smallest site on ties
struct OccupiedHit {
    bool found = false;
    Site site;
    std::int64_t time = 0;
};

OccupiedHit best_occupied_hit(const Configuration& c, const FrontResult& fr, const Box& box,
                              std::int64_t budget) {
    OccupiedHit best;
    for (const Site& z : box.enumerate()) {
        if (!c.is_occupied(z) || !fr.was_visited(z)) continue;
        ExtendedTime t = fr.time_at(z);
        if (!t.is_finite() || t.value > budget) continue;
        if (!best.found || t.value < best.time) {
            best.found = true;
            best.site = z;
            best.time = t.value;
        }
    }
    return best;
}

}  // namespace

RenormParams RenormParams::physical(int d, double r, double c_ckn) {
    if (d < 2 || d > kMaxDim) throw std::invalid_argument("renorm params: need 2 <= d <= 8");
    if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("renorm params: need 0 < r <= 1");
    if (!(c_ckn > 0.0) || c_ckn >= 1.0)
        throw std::invalid_argument("renorm params: need 0 < c_ckn < 1");

    RenormParams p;
    p.d = d;
    p.r = r;
    p.c_ckn = c_ckn;
    p.override_mode = false;

    p.epsilon = 1.0 / (12.0 * d);
    p.rho = 410.0 * d * d / c_ckn;
    p.delta_rec = std::pow(50.0 * d, -0.5 * d);
    const double delta = delta_rate(d, r);
    p.psi = 2.0 * d * delta * delta / c_ckn;

    const double s = std::pow(r, -(0.5 + p.epsilon));
    p.scale = ceil64(std::pow(r, -0.5 * d));
    p.good_box_radius = floor64(s);
    p.good_restrict_radius = 2 * p.scale;
    p.good_budget = floor64(p.rho * std::pow(r, -0.5 * d) * delta);

    p.theta_spacing = 7 * ceil64(s);
    p.theta_in_radius = floor64(s);
    p.theta_mid_radius = floor64(2.0 * s);
    p.theta_out_radius = floor64(3.0 * s);
    p.n_r = 121 * d * ceil64(std::pow(r, -(1.0 + 2.0 * p.epsilon)));
    p.sowing_budget = floor64(std::pow(r, -(1.0 + 3.0 * p.epsilon)));

    p.lambda_radius = floor64(std::pow(r, -0.25 * (d + 1)));
    p.v_radius = floor64(std::pow(r, -(0.25 * (d - 1) - 2.0 * p.epsilon)));
    p.w_budget = floor64(2.0 * std::pow(r, -0.5 * (d + 1)));
    p.hit_budget = floor64(4.0 * d * std::pow(r, -0.5 * (d + 1)));
    p.act_budget = floor64(5.0 * d * std::pow(r, -0.5 * (d + 1)));
    p.w_lower = std::pow(r, -d * (0.25 * (d - 1) - 2.0 * p.epsilon));

    p.nu = 100 * d * ceil64(p.psi);
    p.q_radius = ceil64(std::sqrt(p.psi));
    p.q_spacing = 3 * p.q_radius;
    p.gamma_threshold = 2.0 * d * std::abs(std::log(r)) / c_ckn;
    p.sigma_index_bound = p.psi > 0.0
                              ? std::pow(r, -0.5 * d) / std::sqrt(p.psi)
                              : std::numeric_limits<double>::infinity();
    return p;
}

void validate(const RenormParams& p) {
    if (p.d < 2 || p.d > kMaxDim) throw std::invalid_argument("renorm params: need 2 <= d <= 8");
    if (!(p.r > 0.0) || p.r > 1.0) throw std::invalid_argument("renorm params: need 0 < r <= 1");
    if (p.scale < 1) throw std::invalid_argument("renorm params: scale must be >= 1");
    if (p.good_box_radius < 0 || p.good_restrict_radius < p.good_box_radius)
        throw std::invalid_argument("renorm params: good-box radii out of order");
    if (p.good_budget < 0 || p.sowing_budget < 0 || p.w_budget < 0 || p.hit_budget < 0 ||
        p.act_budget < 0 || p.n_r < 0 || p.nu < 0)
        throw std::invalid_argument("renorm params: budgets must be nonnegative");
    if (p.theta_spacing < 1) throw std::invalid_argument("renorm params: theta_spacing must be >= 1");
    if (p.theta_in_radius < 0 || p.theta_mid_radius < p.theta_in_radius ||
        p.theta_out_radius < p.theta_mid_radius)
        throw std::invalid_argument("renorm params: theta radii must be ordered in <= mid <= out");
    if (p.lambda_radius < 0 || p.v_radius < 0)
        throw std::invalid_argument("renorm params: lambda/v radii must be nonnegative");
    if (p.q_radius < 0 || p.q_spacing < 1)
        throw std::invalid_argument("renorm params: recursion box geometry invalid");
}

ThetaBoxes theta_boxes(const RenormParams& p, const Site& v) {
    Site center = v.scaled(p.theta_spacing);
    return ThetaBoxes{Box{center, p.theta_in_radius, Norm::LInf},
                      Box{center, p.theta_mid_radius, Norm::LInf},
                      Box{center, p.theta_out_radius, Norm::LInf}};
}

bool in_theta_out(const RenormParams& p, const Site& v, const Site& x) {
    std::int64_t dist = linf_dist(x, v.scaled(p.theta_spacing));
    return dist > p.theta_mid_radius && dist <= p.theta_out_radius;
}

bool theta_annuli_disjoint(const RenormParams& p) {
    // annuli of blocks u != u' live within LInf distance theta_out_radius
    // of centers >= theta_spacing apart
    return p.theta_spacing >= 2 * p.theta_out_radius + 1;
}

Box lambda_box(const RenormParams& p) {
    return Box{Site::zero(p.d), p.lambda_radius, Norm::LInf};
}

Box q_box(const RenormParams& p, const Site& xi, std::int64_t i) {
    return Box{xi.scaled(p.q_spacing * i), p.q_radius, Norm::LInf};
}

std::vector<Site> v_blocks(const RenormParams& p) {
    return Box{Site::zero(p.d), p.v_radius, Norm::LInf}.enumerate();
}

GoodWitness is_r_good(const Configuration& c, const WalkOracle& o, const Site& v,
                      const RenormParams& p) {
    validate(p);
    check_dims(c, o, p);
    if (v.dim != p.d) throw std::invalid_argument("is_r_good: block index dimension mismatch");

    const Site center = v.scaled(p.scale);
    const Box center_box{center, p.good_box_radius, Norm::LInf};
    const Box restrict_box{center, p.good_restrict_radius, Norm::LInf};
    require_in_domain(c, restrict_box, "is_r_good: restriction box");

    std::vector<Site> nbr = lattice_neighbors(v);
    std::vector<Box> nbr_boxes;
    nbr_boxes.reserve(nbr.size());
    for (const Site& u : nbr) {
        nbr_boxes.push_back(Box{u.scaled(p.scale), p.good_box_radius, Norm::LInf});
        require_in_domain(c, nbr_boxes.back(), "is_r_good: neighbor box");
    }

    GoodWitness w;
    std::vector<Site> seeds = c.occupied_in(center_box);
    w.center_occupied = !seeds.empty();
    w.good = w.center_occupied;
    if (seeds.empty()) return w;

    FrontOptions opt;
    opt.domain = Region::of(restrict_box);
    opt.leg_horizon = p.good_budget;
    opt.global_cap = p.good_budget;
    opt.record_all = nbr_boxes;

    for (const Site& x : seeds) {
        FrontResult fr = run_front(c, o, x, opt);
        for (std::size_t i = 0; i < nbr.size(); ++i) {
            OccupiedHit hit = best_occupied_hit(c, fr, nbr_boxes[i], p.good_budget);
            GoodLink link;
            link.x = x;
            link.u = nbr[i];
            link.y = hit.found ? hit.site : x;
            link.time = hit.found ? hit.time : 0;
            link.ok = hit.found;
            if (!hit.found) w.good = false;
            w.links.push_back(link);
        }
    }
    return w;
}

std::optional<std::int64_t> good_distance(
    const std::unordered_map<Site, bool, SiteHash>& goodmap, const Site& u, const Site& v) {
    auto good = [&](const Site& s) {
        auto it = goodmap.find(s);
        return it != goodmap.end() && it->second;
    };
    if (!good(u) || !good(v)) return std::nullopt;
    if (u == v) return 0;

    std::unordered_map<Site, std::int64_t, SiteHash> dist;
    std::deque<Site> queue;
    dist.emplace(u, 0);
    queue.push_back(u);
    while (!queue.empty()) {
        Site cur = queue.front();
        queue.pop_front();
        std::int64_t dcur = dist.at(cur);
        for (const Site& nxt : lattice_neighbors(cur)) {
            if (!good(nxt) || dist.count(nxt)) continue;
            if (nxt == v) return dcur + 1;
            dist.emplace(nxt, dcur + 1);
            queue.push_back(nxt);
        }
    }
    return std::nullopt;
}

namespace {

// Walk-range target masks for the sowing sub-events: per launch site z,
// which of the star-neighbor seed boxes (bits 0..K-1) and the annulus of
// v (bit K) does the n_r-step range of S^z touch in an occupied site?
struct SowingTargets {
    const RenormParams& p;
    Site v;
    std::vector<Site> star;           // star neighbors of v, lex order
    std::vector<Site> star_centers;   // their seed-box centers
    Site v_center;

    explicit SowingTargets(const RenormParams& p_, const Site& v_) : p(p_), v(v_) {
        star = star_neighbors(v);
        star_centers.reserve(star.size());
        for (const Site& u : star) star_centers.push_back(u.scaled(p.theta_spacing));
        v_center = v.scaled(p.theta_spacing);
    }

    std::size_t bits() const { return star.size() + 1; }

    // mark every target whose box the site x falls in (occupancy is the
    // caller's concern)
    void mark(const Site& x, std::vector<std::uint8_t>& mask) const {
        for (std::size_t i = 0; i < star.size(); ++i)
            if (linf_dist(x, star_centers[i]) <= p.theta_in_radius) mask[i] = 1;
        std::int64_t dv = linf_dist(x, v_center);
        if (dv > p.theta_mid_radius && dv <= p.theta_out_radius) mask[star.size()] = 1;
    }
};

}  // namespace

SowingReport sowing_event(const Configuration& c, const WalkOracle& o, const Site& v,
                          const RenormParams& p) {
    validate(p);
    check_dims(c, o, p);
    if (v.dim != p.d) throw std::invalid_argument("sowing_event: block index dimension mismatch");

    ThetaBoxes tb = theta_boxes(p, v);
    require_in_domain(c, tb.box, "sowing_event: chain box");
    require_in_domain(c, tb.out_hull, "sowing_event: annulus hull");
    std::vector<Site> star = star_neighbors(v);
    std::vector<Box> star_in_boxes;
    star_in_boxes.reserve(star.size());
    for (const Site& u : star) {
        star_in_boxes.push_back(theta_boxes(p, u).in_box);
        require_in_domain(c, star_in_boxes.back(), "sowing_event: neighbor seed box");
    }

    SowingReport rep;
    rep.premise = 2 * p.n_r <= p.sowing_budget;

    std::vector<Site> seeds = c.occupied_in(tb.in_box);
    rep.occupied_in = seeds.size();
    rep.s1 = !seeds.empty();

    // --- the sowing event itself, via restricted passage fronts ---
    rep.event = rep.s1;
    if (rep.s1) {
        FrontOptions opt;
        opt.domain = Region::of(tb.box);
        opt.leg_horizon = p.sowing_budget;
        opt.global_cap = p.sowing_budget;
        opt.record_all = star_in_boxes;
        opt.record_all.push_back(tb.out_hull);
        for (const Site& x : seeds) {
            if (!rep.event) break;
            FrontResult fr = run_front(c, o, x, opt);
            for (std::size_t i = 0; i < star.size() && rep.event; ++i)
                if (!best_occupied_hit(c, fr, star_in_boxes[i], p.sowing_budget).found)
                    rep.event = false;
            if (rep.event) {
                bool annulus_hit = false;
                for (const auto& [z, t] : fr.recorded()) {
                    if (t > p.sowing_budget) continue;
                    if (in_theta_out(p, v, z) && c.is_occupied(z)) {
                        annulus_hit = true;
                        break;
                    }
                }
                if (!annulus_hit) rep.event = false;
            }
        }
    }

    // --- sub-events from raw n_r-step walk ranges ---
    SowingTargets targets(p, v);
    std::unordered_map<Site, std::vector<std::uint8_t>, SiteHash> memo;
    auto range_mask = [&](const Site& z) -> const std::vector<std::uint8_t>& {
        auto it = memo.find(z);
        if (it != memo.end()) return it->second;
        std::vector<std::uint8_t> mask(targets.bits(), 0);
        if (c.is_occupied(z)) targets.mark(z, mask);  // k = 0 counts
        WalkCursor cur(o, z);
        std::vector<std::uint8_t> here(targets.bits(), 0);
        for (std::int64_t k = 0; k < p.n_r; ++k) {
            cur.step();
            // occupancy may only be read inside the sampled domain; the
            // target boxes were all validated above, so gate on them
            std::fill(here.begin(), here.end(), 0);
            targets.mark(cur.pos, here);
            bool any = false;
            for (std::size_t i = 0; i < here.size(); ++i) any = any || (here[i] && !mask[i]);
            if (any && c.is_occupied(cur.pos))
                for (std::size_t i = 0; i < here.size(); ++i)
                    if (here[i]) mask[i] = 1;
        }
        return memo.emplace(z, std::move(mask)).first->second;
    };

    // s2/s3 quantify over every site of the seed box, occupied or not,
    // so they are meaningful (and checked) even when s1 fails
    rep.s2 = true;
    rep.s3 = true;
    {
        for (const Site& x : tb.in_box.enumerate()) {
            if (!rep.s2 && !rep.s3) break;
            // G(x): occupied sites of the chain box visited by the walk
            // from x within n_r steps, x itself excluded
            std::vector<Site> g_sites;
            {
                std::unordered_set<Site, SiteHash> seen;
                WalkCursor cur(o, x);
                for (std::int64_t k = 0; k < p.n_r; ++k) {
                    cur.step();
                    const Site& pos = cur.pos;
                    if (pos == x || !tb.box.contains(pos)) continue;
                    if (seen.insert(pos).second && c.is_occupied(pos)) g_sites.push_back(pos);
                }
            }
            std::vector<std::uint8_t> reach(targets.bits(), 0);
            for (const Site& z : g_sites) {
                const auto& mask = range_mask(z);
                for (std::size_t i = 0; i < mask.size(); ++i)
                    if (mask[i]) reach[i] = 1;
            }
            for (std::size_t i = 0; i < targets.star.size(); ++i)
                if (!reach[i]) rep.s2 = false;
            if (!reach[targets.star.size()]) rep.s3 = false;
        }
    }

    if (rep.premise && rep.s1 && rep.s2 && rep.s3 && !rep.event) rep.implication_ok = false;
    return rep;
}

ActivatingReport activating_event(const Configuration& c, const WalkOracle& o,
                                  const RenormParams& p) {
    validate(p);
    check_dims(c, o, p);

    const Box lam = lambda_box(p);
    require_in_domain(c, lam, "activating_event: lambda box");

    const std::vector<Site> blocks = v_blocks(p);
    ActivatingReport rep;
    rep.v_count = blocks.size();
    rep.w_lower = p.w_lower;

    // premises of the audited lemmas
    rep.out_in_lambda = true;
    for (const Site& v : blocks) {
        ThetaBoxes tb = theta_boxes(p, v);
        bool inside = true;
        for (int i = 0; i < p.d; ++i)
            if (std::llabs(tb.out_hull.center.c[i]) + p.theta_out_radius > p.lambda_radius)
                inside = false;
        if (!inside) {
            rep.out_in_lambda = false;
            break;
        }
    }
    rep.annuli_disjoint = theta_annuli_disjoint(p);
    rep.w_chain_premise = (p.v_radius + 1) * p.sowing_budget <= p.w_budget;
    rep.budget_premise = p.w_budget + p.hit_budget <= p.act_budget;

    // A_1: sowing on every block of the seed neighborhood
    rep.a1 = true;
    for (const Site& v : blocks) {
        if (!sowing_event(c, o, v, p).event) {
            rep.a1 = false;
            break;
        }
    }

    const ThetaBoxes tb0 = theta_boxes(p, Site::zero(p.d));
    std::vector<Site> seeds = c.occupied_in(tb0.in_box);

    // the chain region of the W sets: all mid boxes of the neighborhood
    Region w_region;
    std::vector<Box> w_record;
    for (const Site& v : blocks) {
        ThetaBoxes tb = theta_boxes(p, v);
        w_region.boxes.push_back(tb.box);
        w_record.push_back(tb.out_hull);
    }

    // Lambda coverage by a single walker within the hitting budget,
    // memoized per launch site
    const std::vector<Site> lam_sites = lam.enumerate();
    std::unordered_map<Site, std::size_t, SiteHash> lam_index;
    for (std::size_t i = 0; i < lam_sites.size(); ++i) lam_index.emplace(lam_sites[i], i);
    std::unordered_map<Site, std::vector<std::uint8_t>, SiteHash> cover_memo;
    auto coverage = [&](const Site& w) -> const std::vector<std::uint8_t>& {
        auto it = cover_memo.find(w);
        if (it != cover_memo.end()) return it->second;
        std::vector<std::uint8_t> cov(lam_sites.size(), 0);
        auto mark = [&](const Site& pos) {
            auto jt = lam_index.find(pos);
            if (jt != lam_index.end()) cov[jt->second] = 1;
        };
        mark(w);  // hitting time zero counts
        WalkCursor cur(o, w);
        for (std::int64_t k = 0; k < p.hit_budget; ++k) {
            cur.step();
            mark(cur.pos);
        }
        return cover_memo.emplace(w, std::move(cov)).first->second;
    };

    rep.a2 = true;
    bool have_seed = !seeds.empty();
    rep.event = have_seed;
    for (const Site& x : seeds) {
        // W(x): occupied annulus sites reached from x within w_budget by
        // chains through the neighborhood's mid boxes
        std::vector<Site> w_set;
        if (w_region.contains(x)) {
            FrontOptions wopt;
            wopt.domain = w_region;
            wopt.leg_horizon = p.w_budget;
            wopt.global_cap = p.w_budget;
            wopt.record_all = w_record;
            FrontResult fr = run_front(c, o, x, wopt);
            for (const auto& [z, t] : fr.recorded()) {
                if (t > p.w_budget || !c.is_occupied(z)) continue;
                bool in_annulus = false;
                for (const Site& v : blocks)
                    if (in_theta_out(p, v, z)) {
                        in_annulus = true;
                        break;
                    }
                if (in_annulus) w_set.push_back(z);
            }
        }
        rep.w_sizes.push_back(w_set.size());

        // A_2 for this seed: the walkers of W(x) jointly cover Lambda
        if (rep.a2) {
            std::vector<std::uint8_t> covered(lam_sites.size(), 0);
            for (const Site& w : w_set) {
                const auto& cov = coverage(w);
                for (std::size_t i = 0; i < cov.size(); ++i)
                    if (cov[i]) covered[i] = 1;
            }
            for (std::size_t i = 0; i < covered.size() && rep.a2; ++i)
                if (!covered[i]) rep.a2 = false;
        }

        // the activating event for this seed: every Lambda site reached
        // within act_budget by chains inside Lambda
        if (rep.event) {
            if (!lam.contains(x)) {
                rep.event = false;
            } else {
                FrontOptions aopt;
                aopt.domain = Region::of(lam);
                aopt.leg_horizon = p.act_budget;
                aopt.global_cap = p.act_budget;
                aopt.record_all = {lam};
                FrontResult fr = run_front(c, o, x, aopt);
                for (const Site& y : lam_sites) {
                    ExtendedTime t = fr.time_at(y);
                    if (!t.is_finite() || t.value > p.act_budget) {
                        rep.event = false;
                        break;
                    }
                }
            }
        }
    }

    const bool w_premises = rep.out_in_lambda && rep.annuli_disjoint && rep.w_chain_premise;
    if (w_premises && rep.a1)
        for (std::uint64_t sz : rep.w_sizes)
            if (sz < rep.v_count) rep.w_lemma_ok = false;
    if (rep.out_in_lambda && rep.budget_premise && rep.a1 && rep.a2 && !rep.event)
        rep.implication_ok = false;
    return rep;
}

RecursionResult run_recursion(const Configuration& c, const WalkOracle& o, const Site& xi,
                              const RenormParams& p, std::int64_t max_index) {
    validate(p);
    check_dims(c, o, p);
    if (xi.dim != p.d || l1_norm(xi) != 1)
        throw std::invalid_argument("run_recursion: xi must be a lattice unit vector");
    if (max_index < 0) throw std::invalid_argument("run_recursion: max_index must be >= 0");

    RecursionResult res;
    res.xi = xi;
    res.threshold = p.gamma_threshold;
    res.index_bound = p.sigma_index_bound;

    for (std::int64_t i = 0; i <= max_index; ++i)
        require_in_domain(c, q_box(p, xi, i), "run_recursion: box");

    std::vector<Site> gamma = c.occupied_in(q_box(p, xi, 0));
    for (std::int64_t i = 0;; ++i) {
        res.gamma_sizes.push_back(gamma.size());
        if ((double)gamma.size() < p.gamma_threshold) {
            res.sigma = i;
            return res;
        }
        if (i == max_index) {
            res.max_index_reached = true;
            return res;
        }
        // Gamma_{i+1}: occupied sites of the next box visited by the raw
        // nu-step walks launched from Gamma_i
        Box next = q_box(p, xi, i + 1);
        std::unordered_set<Site, SiteHash> hit;
        for (const Site& z : gamma) {
            if (next.contains(z) && c.is_occupied(z)) hit.insert(z);
            WalkCursor cur(o, z);
            for (std::int64_t k = 0; k < p.nu; ++k) {
                cur.step();
                const Site& pos = cur.pos;
                if (next.contains(pos) && !hit.count(pos) && c.is_occupied(pos)) hit.insert(pos);
            }
        }
        gamma.assign(hit.begin(), hit.end());
        std::sort(gamma.begin(), gamma.end());
    }
}

GoodProbRow estimate_good_probability(const RenormParams& p, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads) {
    validate(p);
    if (trials == 0) throw std::invalid_argument("estimate_good_probability: need trials >= 1");

    const std::int64_t need =
        std::max(p.good_restrict_radius, p.scale + p.good_box_radius);
    const Box domain{Site::zero(p.d), need, Norm::LInf};
    const Site origin = Site::zero(p.d);

    std::vector<std::uint8_t> good(trials, 0);
    parallel_for(trials, threads, [&](std::uint64_t t) {
        std::uint64_t tseed = substream(seed, kTagTrial, t);
        Configuration c(tseed, p.d, p.r, domain, false);
        WalkOracle o(tseed, p.d);
        good[t] = is_r_good(c, o, origin, p).good ? 1 : 0;
    });

    GoodProbRow row;
    row.d = p.d;
    row.r = p.r;
    row.c_ckn = p.c_ckn;
    row.override_mode = p.override_mode;
    row.trials = trials;
    for (std::uint8_t g : good) row.good_count += g;
    row.p_hat = (double)row.good_count / (double)trials;
    row.ci = wilson_ci(row.good_count, trials);
    return row;
}

}  // namespace frog

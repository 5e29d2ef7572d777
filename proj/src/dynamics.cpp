#include "frog/dynamics.hpp"

#include <algorithm>
#include <cstring>

namespace frog {

// ---------------------------------------------------------------- region

Box Region::hull() const {
    if (boxes.empty()) throw std::invalid_argument("Region::hull: empty region");
    int d = boxes[0].center.dim;
    std::array<std::int64_t, kMaxDim> lo{}, hi{};
    for (int i = 0; i < d; ++i) {
        lo[i] = INT64_MAX;
        hi[i] = INT64_MIN;
    }
    for (const auto& b : boxes) {
        if (b.center.dim != d) throw std::invalid_argument("Region::hull: mixed dimensions");
        for (int i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], b.center.c[i] - b.radius);
            hi[i] = std::max(hi[i], b.center.c[i] + b.radius);
        }
    }
    Box out;
    out.center = Site::zero(d);
    out.norm = Norm::LInf;
    out.radius = 0;
    for (int i = 0; i < d; ++i) {
        out.center.c[i] = (lo[i] + hi[i]) / 2;
        out.radius = std::max({out.radius, hi[i] - out.center.c[i], out.center.c[i] - lo[i]});
    }
    return out;
}

// ------------------------------------------------------------------- tau

ExtendedTime tau(const Configuration& c, const WalkOracle& o, const Site& u, const Site& v,
                 std::int64_t horizon) {
    if (!c.in_domain(u)) throw DomainTooSmall("tau: start site outside sampled domain");
    if (horizon < 0) throw std::invalid_argument("tau: negative horizon");
    if (!c.is_occupied(u)) return ExtendedTime::infinite();
    WalkCursor cur(o, u);
    if (cur.pos == v) return ExtendedTime::finite(0);
    for (std::int64_t k = 1; k <= horizon; ++k) {
        cur.step();
        if (cur.pos == v) return ExtendedTime::finite(k);
    }
    return ExtendedTime::censored(horizon);
}

// -------------------------------------------------------------- VisitMap

void FrontResult::VisitMap::init(std::size_t cap) {
    std::size_t n = 16;
    while (n < cap) n <<= 1;
    keys.assign(n, kEmpty);
    vals.assign(n, Visit{0, 0});
    mask = n - 1;
    count = 0;
}

void FrontResult::VisitMap::grow() {
    std::vector<std::uint64_t> ok = std::move(keys);
    std::vector<Visit> ov = std::move(vals);
    keys.assign(ok.size() * 2, kEmpty);
    vals.assign(ok.size() * 2, Visit{0, 0});
    mask = keys.size() - 1;
    for (std::size_t i = 0; i < ok.size(); ++i) {
        if (ok[i] == kEmpty) continue;
        std::size_t j = (std::size_t)mix64(ok[i]) & mask;
        while (keys[j] != kEmpty) j = (j + 1) & mask;
        keys[j] = ok[i];
        vals[j] = ov[i];
    }
}

FrontResult::Visit* FrontResult::VisitMap::find(std::uint64_t key) {
    std::size_t j = (std::size_t)mix64(key) & mask;
    while (keys[j] != kEmpty) {
        if (keys[j] == key) return &vals[j];
        j = (j + 1) & mask;
    }
    return nullptr;
}

const FrontResult::Visit* FrontResult::VisitMap::find(std::uint64_t key) const {
    return const_cast<VisitMap*>(this)->find(key);
}

std::pair<FrontResult::Visit*, bool> FrontResult::VisitMap::insert(std::uint64_t key, Visit v) {
    if ((count + 1) * 10 >= keys.size() * 7) grow();
    std::size_t j = (std::size_t)mix64(key) & mask;
    while (keys[j] != kEmpty) {
        if (keys[j] == key) return {&vals[j], false};
        j = (j + 1) & mask;
    }
    keys[j] = key;
    vals[j] = v;
    ++count;
    return {&vals[j], true};
}

// ----------------------------------------------------------- FrontResult

std::uint64_t FrontResult::pack(const Site& s) const {
    std::uint64_t key = 0;
    for (int i = 0; i < dim_; ++i)
        key = (key << bits_) | (std::uint64_t)(s.c[i] + offset_);
    return key;
}

Site FrontResult::unpack(std::uint64_t key) const {
    Site s = Site::zero(dim_);
    std::uint64_t m = ((std::uint64_t)1 << bits_) - 1;
    for (int i = dim_ - 1; i >= 0; --i) {
        s.c[i] = (std::int64_t)(key & m) - offset_;
        key >>= bits_;
    }
    return s;
}

bool FrontResult::packable(const Site& s) const {
    for (int i = 0; i < dim_; ++i)
        if (s.c[i] < -offset_ || s.c[i] >= offset_) return false;
    return true;
}

ExtendedTime FrontResult::time_at(const Site& z) const {
    if (z.dim == dim_ && packable(z)) {
        const Visit* v = map_.find(pack(z));
        if (v) return ExtendedTime::finite(v->time);
    }
    return unvisited_;
}

bool FrontResult::was_visited(const Site& z) const {
    return z.dim == dim_ && packable(z) && map_.find(pack(z)) != nullptr;
}

void FrontResult::chain_to(const Site& z, std::vector<Site>& path,
                           std::vector<std::int64_t>& legs) const {
    path.clear();
    legs.clear();
    if (z == source_) {
        path.push_back(source_);
        return;
    }
    const Visit* v = (z.dim == dim_ && packable(z)) ? map_.find(pack(z)) : nullptr;
    if (!v) throw std::invalid_argument("chain_to: site was never visited");
    // walk the activation tree upward
    std::int32_t w = v->walker;
    path.push_back(z);
    legs.push_back(v->time - walkers_[w].t0);
    while (w > 0) {
        path.push_back(walkers_[w].origin);
        legs.push_back(walkers_[w].leg_time);
        w = walkers_[w].parent;
    }
    path.push_back(walkers_[0].origin);
    std::reverse(path.begin(), path.end());
    std::reverse(legs.begin(), legs.end());
}

std::vector<std::pair<Site, std::int64_t>> FrontResult::recorded() const {
    std::vector<std::pair<Site, std::int64_t>> out;
    out.reserve(map_.count);
    for (std::size_t i = 0; i < map_.keys.size(); ++i)
        if (map_.keys[i] != VisitMap::kEmpty)
            out.emplace_back(unpack(map_.keys[i]), map_.vals[i].time);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ------------------------------------------------------------ the engine

namespace {

struct HotWalker {
    std::int32_t pos[kMaxDim];
    std::uint64_t base;  // keyed-walk stream base
    std::int64_t t0;
    bool alive;
};

// is the inner box certainly contained in the outer one?  exact for
// LInf/LInf pairs, corner test (valid by convexity) otherwise
bool box_inside(const Box& inner, const Box& outer) {
    int d = inner.center.dim;
    Box hull = inner.linf_hull();
    std::vector<Site> corners;
    Site cur = Site::zero(d);
    for (std::uint64_t bits = 0; bits < (1ULL << d); ++bits) {
        for (int i = 0; i < d; ++i)
            cur.c[i] = hull.center.c[i] + ((bits >> i) & 1 ? hull.radius : -hull.radius);
        if (!outer.contains(cur)) return false;
    }
    return true;
}

}  // namespace

FrontResult run_front(const Configuration& c, const WalkOracle& o, const Site& source,
                      const FrontOptions& opt) {
    const int d = c.dim();
    if (source.dim != d || o.dim() != d)
        throw std::invalid_argument("run_front: dimension mismatch");
    if (opt.leg_horizon < 0 || opt.leg_horizon > 1000000000LL)
        throw std::invalid_argument("run_front: leg horizon out of range");
    if (opt.domain.boxes.empty()) throw std::invalid_argument("run_front: empty domain");
    if (!opt.domain.contains(source))
        throw std::invalid_argument("run_front: source outside query domain");
    for (const auto& b : opt.domain.boxes)
        if (!box_inside(b, c.domain()))
            throw DomainTooSmall("run_front: query domain exceeds sampled domain");
    for (const auto& b : opt.record_all)
        if (!box_inside(b, c.domain()))
            throw DomainTooSmall("run_front: record region exceeds sampled domain");

    FrontResult res;
    res.dim_ = d;
    res.bits_ = 63 / d;
    res.offset_ = (std::int64_t)1 << (res.bits_ - 1);
    res.source_ = source;

    // interest hull: activation domain + record boxes + targets; walks may
    // leave it, but nothing outside it is ever recorded or activated
    std::array<std::int64_t, kMaxDim> lo{}, hi{};
    {
        Region all = opt.domain;
        for (const auto& b : opt.record_all) all.boxes.push_back(b);
        for (const auto& t : opt.stop_targets) all.boxes.push_back(Box{t, 0, Norm::LInf});
        Box h = all.hull();
        for (int i = 0; i < d; ++i) {
            lo[i] = h.center.c[i] - h.radius;
            hi[i] = h.center.c[i] + h.radius;
            if (lo[i] < -res.offset_ || hi[i] >= res.offset_)
                throw std::invalid_argument("run_front: domain too large for coordinate packing");
            if (lo[i] < -1000000000LL || hi[i] > 1000000000LL)
                throw std::invalid_argument("run_front: domain coordinates out of range");
        }
    }

    res.map_.init(1 << 12);
    res.source_occupied_ = c.is_occupied(source);

    const std::int64_t H = opt.leg_horizon;
    const std::int64_t cap = opt.global_cap;
    const unsigned __int128 twod = (unsigned __int128)(2 * d);

    std::vector<HotWalker> hot;
    std::vector<std::uint32_t> live;
    std::uint64_t alive_count = 0;

    auto spawn = [&](const Site& origin, std::int64_t t0, std::int32_t parent,
                     std::int64_t leg_time) {
        FrontResult::WalkerInfo wi;
        wi.origin = origin;
        wi.t0 = t0;
        wi.parent = parent;
        wi.leg_time = leg_time;
        res.walkers_.push_back(wi);
        HotWalker hw;
        for (int i = 0; i < d; ++i) hw.pos[i] = (std::int32_t)origin.c[i];
        hw.base = o.walk_base(origin);
        hw.t0 = t0;
        hw.alive = true;
        hot.push_back(hw);
        live.push_back((std::uint32_t)(hot.size() - 1));
        ++alive_count;
        // domain-boundary contact of an awake site: restricted and
        // unrestricted passage values may part ways beyond this point
        for (const Site& nb : lattice_neighbors(origin))
            if (!opt.domain.contains(nb)) {
                res.boundary_touch_ = true;
                break;
            }
    };

    // stop targets (deduplicated, packed)
    std::vector<std::uint64_t> target_keys;
    for (const Site& tsite : opt.stop_targets) {
        if (tsite.dim != d) throw std::invalid_argument("run_front: target dimension mismatch");
        if (!res.packable(tsite))
            throw std::invalid_argument("run_front: target outside packable range");
        target_keys.push_back(res.pack(tsite));
    }
    std::sort(target_keys.begin(), target_keys.end());
    target_keys.erase(std::unique(target_keys.begin(), target_keys.end()), target_keys.end());
    std::size_t targets_left = target_keys.size();
    auto is_target = [&](std::uint64_t key) {
        return std::binary_search(target_keys.begin(), target_keys.end(), key);
    };

    // seed the source visit (time 0); contributes a walker only if awake
    {
        std::uint64_t skey = res.pack(source);
        res.map_.insert(skey, FrontResult::Visit{0, 0});
        if (is_target(skey)) --targets_left;
        if (res.source_occupied_) spawn(source, 0, -1, 0);
    }

    bool stopped_by_cap = false;
    std::int64_t completed_t = 0;
    std::uint64_t dead_since_compact = 0;

    const bool has_targets = !target_keys.empty();
    std::int64_t t = 0;
    while (alive_count > 0 && (!has_targets || targets_left > 0)) {
        ++t;
        if (cap >= 0 && t > cap) {
            stopped_by_cap = true;
            break;
        }
        const std::size_t n_now = live.size();  // walkers spawned below start at t+1
        for (std::size_t li = 0; li < n_now; ++li) {
            const std::uint32_t wi = live[li];
            HotWalker& w = hot[wi];
            if (!w.alive) continue;
            const std::int64_t k = t - w.t0;
            if (k > H) {
                w.alive = false;
                --alive_count;
                ++dead_since_compact;
                continue;
            }
            // advance one keyed step
            std::uint64_t z = mix64(w.base + (std::uint64_t)k * kGolden);
            int dir = (int)((((unsigned __int128)z) * twod) >> 64);
            w.pos[dir >> 1] += 1 - 2 * (dir & 1);
            ++res.total_steps_;

            if ((k & 63) == 0) {
                // a walker too far from the interest hull to ever return
                // within its remaining steps can be dropped exactly
                std::int64_t dist = 0;
                for (int i = 0; i < d; ++i) {
                    std::int64_t p = w.pos[i];
                    if (p < lo[i]) dist += lo[i] - p;
                    else if (p > hi[i]) dist += p - hi[i];
                }
                std::int64_t remain = H - k;
                if (cap >= 0) remain = std::min(remain, cap - t);
                if (dist > remain) {
                    w.alive = false;
                    --alive_count;
                    ++dead_since_compact;
                    continue;
                }
            }

            bool in_hull = true;
            for (int i = 0; i < d; ++i)
                if (w.pos[i] < lo[i] || w.pos[i] > hi[i]) {
                    in_hull = false;
                    break;
                }
            if (!in_hull) continue;

            Site s = Site::zero(d);
            for (int i = 0; i < d; ++i) s.c[i] = w.pos[i];
            std::uint64_t key = res.pack(s);
            if (res.map_.find(key)) continue;  // not a first visit

            bool activate = opt.domain.contains(s) && c.is_occupied(s);
            bool record = activate;
            if (!record)
                for (const auto& b : opt.record_all)
                    if (b.contains(s)) {
                        record = true;
                        break;
                    }
            if (!record && targets_left && is_target(key)) record = true;
            if (!record) continue;
            res.map_.insert(key, FrontResult::Visit{t, (std::int32_t)wi});
            if (targets_left && is_target(key)) --targets_left;
            if (activate) spawn(s, t, (std::int32_t)wi, k);
        }
        completed_t = t;
        if (opt.step_budget >= 0 && res.total_steps_ >= (std::uint64_t)opt.step_budget) {
            res.budget_hit_ = true;
            break;
        }
        if (dead_since_compact > 64 && dead_since_compact * 4 > live.size()) {
            live.erase(std::remove_if(live.begin(), live.end(),
                                      [&](std::uint32_t i) { return !hot[i].alive; }),
                       live.end());
            dead_since_compact = 0;
        }
    }

    if (!res.source_occupied_)
        res.unvisited_ = ExtendedTime::infinite();
    else if (res.budget_hit_)
        res.unvisited_ = ExtendedTime::censored(completed_t);
    else if (stopped_by_cap)
        res.unvisited_ = ExtendedTime::censored(cap);
    else if (targets_left == 0 && !target_keys.empty())
        res.unvisited_ = ExtendedTime::censored(completed_t);
    else
        res.unvisited_ = ExtendedTime::censored(H);  // exhausted every leg <= H
    return res;
}

// ---------------------------------------------------------- passage time

PassageResult passage_time(const Configuration& c, const WalkOracle& o, const Site& x,
                           const Site& y, const Region& domain, std::int64_t leg_horizon,
                           const PassageOptions& popt) {
    if (!domain.contains(x)) throw std::invalid_argument("passage_time: source outside domain");
    PassageResult out;
    if (x == y) {
        // literal chain definition: the one-leg chain (x, x) costs tau(x, x)
        if (c.is_occupied(x)) {
            out.value = ExtendedTime::finite(0);
            out.realized_path = {x, x};
            out.per_leg_times = {0};
        } else {
            out.value = ExtendedTime::infinite();
        }
        return out;
    }
    if (!c.is_occupied(x)) {
        out.value = ExtendedTime::infinite();
        return out;
    }

    FrontOptions opt;
    opt.domain = domain;
    opt.leg_horizon = leg_horizon;
    opt.global_cap = popt.global_cap;
    opt.step_budget = popt.step_budget;
    opt.stop_targets = {y};
    FrontResult res = run_front(c, o, x, opt);

    out.boundary_touch = res.boundary_touch();
    out.budget_hit = res.budget_hit();
    out.activated = res.activated_count();
    out.total_steps = res.total_steps();
    ExtendedTime ty = res.time_at(y);
    out.value = ty;
    if (ty.is_finite()) res.chain_to(y, out.realized_path, out.per_leg_times);
    return out;
}

ActivationFront activation_front(const Configuration& c, const WalkOracle& o, const Site& source,
                                 const Box& area, std::int64_t leg_horizon,
                                 std::int64_t global_cap) {
    if (!area.contains(source))
        throw std::invalid_argument("activation_front: source outside area");
    FrontOptions opt;
    opt.domain = Region::of(area);
    opt.leg_horizon = leg_horizon;
    opt.global_cap = global_cap;
    opt.record_all = {area};
    FrontResult res = run_front(c, o, source, opt);
    return ActivationFront(std::move(res), area, source);
}

std::vector<Site> visited_region(const ActivationFront& f, std::int64_t t) {
    std::vector<Site> out;
    if (t < 0) return out;
    for (const auto& [site, time] : f.raw().recorded())
        if (time <= t && f.area().contains(site)) out.push_back(site);
    return out;  // recorded() is already lexicographically sorted
}

}  // namespace frog

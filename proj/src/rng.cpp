#include "frog/rng.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace frog {

Site WalkOracle::walk_position(const Site& x, std::uint64_t k) const {
    if (x.dim != d_) throw std::invalid_argument("walk_position: dimension mismatch");
    WalkCursor cur(*this, x);
    for (std::uint64_t i = 0; i < k; ++i) cur.step();
    return cur.pos;
}

std::vector<Site> WalkOracle::range_set(const Site& x, std::uint64_t n) const {
    if (x.dim != d_) throw std::invalid_argument("range_set: dimension mismatch");
    std::unordered_set<Site, SiteHash> seen;
    seen.reserve((std::size_t)std::min<std::uint64_t>(n + 1, 1u << 20));
    WalkCursor cur(*this, x);
    seen.insert(cur.pos);
    for (std::uint64_t i = 0; i < n; ++i) {
        cur.step();
        seen.insert(cur.pos);
    }
    std::vector<Site> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t bernoulli_threshold(double r) {
    if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("density must lie in (0, 1]");
    double scaled = std::ldexp(r, 53);
    if (scaled >= 9007199254740992.0) return 9007199254740992ULL;  // r == 1
    std::uint64_t t = (std::uint64_t)std::llround(scaled);
    return t == 0 ? 1 : t;  // never a.s. empty for r > 0
}

Configuration::Configuration(std::uint64_t seed, int d, double r, Box domain, bool force_origin)
    : seed_(seed), d_(d), r_(r), threshold_(bernoulli_threshold(r)), domain_(std::move(domain)),
      force_origin_(force_origin) {
    Site::check_dim(d);
    if (domain_.center.dim != d) throw std::invalid_argument("Configuration: domain dimension mismatch");
}

bool Configuration::is_occupied(const Site& x) const {
    if (force_origin_ && l1_norm(x) == 0) return true;
    return (site_key(seed_, kTagOmega, x) >> 11) < threshold_;
}

std::vector<Site> Configuration::occupied_sites() const { return occupied_in(domain_); }

std::vector<Site> Configuration::occupied_in(const Box& region) const {
    std::vector<Site> out;
    for (const Site& x : region.enumerate())
        if (in_domain(x) && is_occupied(x)) out.push_back(x);
    return out;
}

namespace {

// enumerate the L1 sphere {|z - t|_1 == rho} in lexicographic order
void shell_rec(const Site& t, std::int64_t rho, int axis, Site& cur, std::vector<Site>& out) {
    int d = t.dim;
    if (axis == d - 1) {
        // last coordinate must absorb exactly rho
        if (rho == 0) {
            cur.c[axis] = t.c[axis];
            out.push_back(cur);
        } else {
            cur.c[axis] = t.c[axis] - rho;
            out.push_back(cur);
            cur.c[axis] = t.c[axis] + rho;
            out.push_back(cur);
        }
        return;
    }
    for (std::int64_t v = t.c[axis] - rho; v <= t.c[axis] + rho; ++v) {
        cur.c[axis] = v;
        shell_rec(t, rho - std::llabs(v - t.c[axis]), axis + 1, cur, out);
    }
}

}  // namespace

std::optional<Site> Configuration::closest_occupied(const Site& target, std::int64_t max_radius) const {
    for (std::int64_t rho = 0; rho <= max_radius; ++rho) {
        Site cur = Site::zero(d_);
        std::vector<Site> shell;
        shell_rec(target, rho, 0, cur, shell);
        // shell is lexicographically ordered, so the first hit is the
        // lexicographically smallest occupied site at this distance
        for (const Site& z : shell)
            if (in_domain(z) && is_occupied(z)) return z;
    }
    return std::nullopt;
}

}  // namespace frog

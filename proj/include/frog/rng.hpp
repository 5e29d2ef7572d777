#pragma once
// Counter-based keyed randomness.  Every random quantity is a pure
// function of (master seed, site, counter), so walks and occupancies can
// be regenerated in any order, from any thread, with identical results.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "frog/lattice.hpp"

namespace frog {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
static inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// k-th output of a splitmix64 stream with the given base state
static inline std::uint64_t stream_at(std::uint64_t base, std::uint64_t k) {
    return mix64(base + k * kGolden);
}

// sign-folding so negative coordinates hash distinctly
static inline std::uint64_t zigzag64(std::int64_t v) {
    return ((std::uint64_t)v << 1) ^ (std::uint64_t)(v >> 63);
}

// purpose tags keep the per-site occupancy and walk streams disjoint
enum : std::uint64_t {
    kTagOmega = 0x6f6d656761ULL,
    kTagWalk = 0x77616c6bULL,
    kTagTrial = 0x747269616cULL,
    kTagDraw = 0x64726177ULL,
};

// key = hash of (seed, purpose, all coordinates incl. sign)
static inline std::uint64_t site_key(std::uint64_t seed, std::uint64_t tag, const Site& x) {
    std::uint64_t h = mix64(seed ^ mix64(tag));
    for (int i = 0; i < x.dim; ++i) h = mix64(h ^ zigzag64(x.c[i]));
    return mix64(h ^ (std::uint64_t)x.dim);
}

// derived seed for an independent substream (per trial / per operation)
static inline std::uint64_t substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return mix64(mix64(seed ^ mix64(tag)) + index * kGolden);
}

// uniform draw in [0,1) with 53 random bits
static inline double u01(std::uint64_t z) { return (double)(z >> 11) * 0x1.0p-53; }

struct MasterSeed {
    std::uint64_t seed = 0;
    std::string run_label;
};

// Walks.  S^x_0 = x and step k >= 1 adds a uniformly chosen unit vector
// keyed by (seed, x, k).  The direction index maps [0, 2d) via a fixed
// single 64-bit draw, so replay is exact and platform independent.
class WalkOracle {
  public:
    WalkOracle(std::uint64_t seed, int d) : seed_(seed), d_(d) { Site::check_dim(d); }

    std::uint64_t seed() const { return seed_; }
    int dim() const { return d_; }

    std::uint64_t walk_base(const Site& x) const { return site_key(seed_, kTagWalk, x); }

    // direction index in [0, 2d) of step k (k >= 1) of the walk from base
    int step_dir(std::uint64_t base, std::uint64_t k) const {
        std::uint64_t z = stream_at(base, k);
        return (int)(((unsigned __int128)z * (unsigned __int128)(2 * d_)) >> 64);
    }

    // position after k steps; O(k) replay
    Site walk_position(const Site& x, std::uint64_t k) const;

    // all sites visited within n steps (the range R_n^x)
    std::vector<Site> range_set(const Site& x, std::uint64_t n) const;

  private:
    std::uint64_t seed_;
    int d_;
};

// Incremental walk replay: cheap step-by-step advance with direction
// lookup identical to WalkOracle::walk_position.
struct WalkCursor {
    const WalkOracle* oracle = nullptr;
    Site pos;
    std::uint64_t base = 0;
    std::uint64_t k = 0;

    WalkCursor() = default;
    WalkCursor(const WalkOracle& o, const Site& x)
        : oracle(&o), pos(x), base(o.walk_base(x)), k(0) {}

    void step() {
        ++k;
        int dir = oracle->step_dir(base, k);
        int axis = dir >> 1;
        pos.c[axis] += (dir & 1) ? -1 : 1;
    }
};

// Bernoulli(r) site occupancy, lazily evaluated over a finite domain.
// Occupancy of a site depends only on (seed, site), never on the domain,
// so extending the domain preserves earlier answers.
class Configuration {
  public:
    Configuration(std::uint64_t seed, int d, double r, Box domain, bool force_origin = false);

    int dim() const { return d_; }
    double density() const { return r_; }
    std::uint64_t seed() const { return seed_; }
    const Box& domain() const { return domain_; }
    bool force_origin() const { return force_origin_; }

    bool in_domain(const Site& x) const { return domain_.contains(x); }

    // omega(x); x must lie in the domain
    bool is_occupied(const Site& x) const;

    // occupied sites of the domain in lexicographic order (materializes
    // the domain; intended for small boxes)
    std::vector<Site> occupied_sites() const;

    // occupied sites of an arbitrary sub-box of the domain
    std::vector<Site> occupied_in(const Box& region) const;

    // nearest occupied site to target in L1 distance, lexicographically
    // smallest on ties; searches outward shell by shell, nullopt if the
    // domain holds no occupied site within max_radius
    std::optional<Site> closest_occupied(const Site& target, std::int64_t max_radius) const;

  private:
    std::uint64_t seed_;
    int d_;
    double r_;
    std::uint64_t threshold_;  // occupied iff top 53 bits of key < threshold
    Box domain_;
    bool force_origin_;
};

// threshold = round(r * 2^53): integer comparison makes the Bernoulli
// draw bit-exact for every platform
std::uint64_t bernoulli_threshold(double r);

}  // namespace frog

#pragma once
// Exact passage times for the frog model.
//
// A site u holding a sleeping particle wakes when first visited by an
// awake one; awake particles perform independent keyed lattice walks.
// passage(x, y) = min over chains x = x_0, ..., x_m = y of the sum of
// first-hitting times tau(x_i, x_{i+1}) of consecutive walks, where each
// intermediate x_i must be occupied and inside the query domain (the
// final vertex y may be anywhere).  The engine realizes this minimum by
// expanding all awake walks in lockstep global time, which processes
// candidate visits in nondecreasing time order (Dijkstra order), so
// every recorded first-visit time is exact.
//
// Horizons: each awake walk is replayed at most `leg_horizon` steps, so
// results are minima over chains whose individual legs stay within the
// horizon; unreached sites report Censored.  An optional `global_cap`
// additionally stops the expansion at that global time.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frog/extended_time.hpp"
#include "frog/lattice.hpp"
#include "frog/rng.hpp"

namespace frog {

// raised when a query needs occupancies outside the sampled domain
struct DomainTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// union of boxes; the activation domain of restricted passage queries
struct Region {
    std::vector<Box> boxes;

    Region() = default;
    explicit Region(Box b) { boxes.push_back(std::move(b)); }
    static Region of(Box b) { return Region(std::move(b)); }

    bool contains(const Site& x) const {
        for (const auto& b : boxes)
            if (b.contains(x)) return true;
        return false;
    }
    // smallest LInf box covering the region
    Box hull() const;
};

// first hitting time of v by the walk from u; Infinite if u is vacant,
// Censored(h) past the horizon.  tau(u, u) = 0 for occupied u.
ExtendedTime tau(const Configuration& c, const WalkOracle& o, const Site& u, const Site& v,
                 std::int64_t horizon);

struct FrontOptions {
    Region domain;                   // activation allowed for occupied sites here
    std::int64_t leg_horizon = 0;    // per-walk step cap H
    std::int64_t global_cap = -1;    // stop past this global time (-1: exhaustion)
    std::int64_t step_budget = -1;   // deterministic total-work cap (-1: none)
    std::vector<Box> record_all;     // also record visits of vacant sites here
    std::vector<Site> stop_targets;  // finish once every target was visited
};

// One wavefront run.  Records, for each relevant site, the exact global
// time of its first visit plus the walker that produced it, which is
// enough to reconstruct a realizing chain.
class FrontResult {
  public:
    struct WalkerInfo {
        Site origin;
        std::int64_t t0 = 0;     // activation time
        std::int32_t parent = -1;
        std::int64_t leg_time = 0;  // tau(parent origin, origin)
    };

    ExtendedTime time_at(const Site& z) const;
    bool was_visited(const Site& z) const;

    // chain realizing time_at(z) for a visited z: path[0] = source,
    // path.back() = z, legs[i] = tau(path[i], path[i+1])
    void chain_to(const Site& z, std::vector<Site>& path, std::vector<std::int64_t>& legs) const;

    // recorded (site, first-visit time), lexicographic site order
    std::vector<std::pair<Site, std::int64_t>> recorded() const;

    bool source_occupied() const { return source_occupied_; }
    bool boundary_touch() const { return boundary_touch_; }
    bool budget_hit() const { return budget_hit_; }
    std::uint64_t total_steps() const { return total_steps_; }
    std::uint64_t activated_count() const { return walkers_.size(); }
    // what unvisited sites report: Censored(leg_horizon or reached cap)
    ExtendedTime unvisited_verdict() const { return unvisited_; }

  private:
    friend FrontResult run_front(const Configuration&, const WalkOracle&, const Site&,
                                 const FrontOptions&);
    struct Visit {
        std::int64_t time;
        std::int32_t walker;
    };
    // open-addressing map over packed coordinates (insert-only)
    struct VisitMap {
        static constexpr std::uint64_t kEmpty = ~0ULL;
        std::vector<std::uint64_t> keys;
        std::vector<Visit> vals;
        std::size_t mask = 0, count = 0;
        void init(std::size_t cap);
        void grow();
        Visit* find(std::uint64_t key);
        const Visit* find(std::uint64_t key) const;
        // returns (slot, inserted)
        std::pair<Visit*, bool> insert(std::uint64_t key, Visit v);
    };

    int dim_ = 0;
    int bits_ = 0;
    std::int64_t offset_ = 0;  // packing: coord + offset per axis
    Site source_;
    bool source_occupied_ = false;
    bool source_visit_seeded_ = false;
    bool boundary_touch_ = false;
    bool budget_hit_ = false;
    std::uint64_t total_steps_ = 0;
    ExtendedTime unvisited_ = ExtendedTime::infinite();
    VisitMap map_;
    std::vector<WalkerInfo> walkers_;

    std::uint64_t pack(const Site& s) const;
    Site unpack(std::uint64_t key) const;
    bool packable(const Site& s) const;
};

// Run the wavefront from `source`.  Occupancies are read through `c`;
// every box of opt.domain and opt.record_all must lie inside c.domain().
FrontResult run_front(const Configuration& c, const WalkOracle& o, const Site& source,
                      const FrontOptions& opt);

struct PassageResult {
    ExtendedTime value = ExtendedTime::infinite();
    std::vector<Site> realized_path;         // x_0 = source .. x_m = target (Finite only)
    std::vector<std::int64_t> per_leg_times;  // m leg durations, sum == value
    bool boundary_touch = false;
    bool budget_hit = false;
    std::uint64_t activated = 0;
    std::uint64_t total_steps = 0;
};

struct PassageOptions {
    std::int64_t global_cap = -1;
    std::int64_t step_budget = -1;
};

// T_A(x, y) with per-leg horizon H; x must lie in the domain region
PassageResult passage_time(const Configuration& c, const WalkOracle& o, const Site& x,
                           const Site& y, const Region& domain, std::int64_t leg_horizon,
                           const PassageOptions& popt = {});

// Simultaneous passage times from `source` to every site of box A
// (activation restricted to A as well); front(source) = 0 by definition.
class ActivationFront {
  public:
    ActivationFront(FrontResult res, Box area, Site source)
        : res_(std::move(res)), area_(std::move(area)), source_(std::move(source)) {}

    ExtendedTime at(const Site& z) const {
        if (z == source_) return ExtendedTime::finite(0);
        return res_.time_at(z);
    }
    const Box& area() const { return area_; }
    const Site& source() const { return source_; }
    const FrontResult& raw() const { return res_; }

  private:
    FrontResult res_;
    Box area_;
    Site source_;
};

ActivationFront activation_front(const Configuration& c, const WalkOracle& o, const Site& source,
                                 const Box& area, std::int64_t leg_horizon,
                                 std::int64_t global_cap = -1);

// B(t): sites of the front's area with Finite time <= t, sorted
std::vector<Site> visited_region(const ActivationFront& f, std::int64_t t);

}  // namespace frog

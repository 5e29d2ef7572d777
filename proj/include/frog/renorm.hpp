#pragma once
// Block renormalization: good blocks, the mesoscopic box hierarchy with
// its sowing and activating events, the directed box recursion, and the
// good-block graph distance.  Every event is evaluated exactly on one
// sampled realization; the asymptotic lemmas behind them are audited as
// per-realization implications under explicit premises.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "frog/dynamics.hpp"
#include "frog/lattice.hpp"
#include "frog/rng.hpp"
#include "frog/stats_util.hpp"

namespace frog {

// All derived quantities are functions of (d, r, c_ckn) in physical
// mode.  Override mode decouples the geometry from r so the event logic
// runs on desk-sized boxes; the audits carry their premises along, so
// they stay meaningful either way.
struct RenormParams {
    int d = 2;
    double r = 0.5;
    double c_ckn = 0.5;  // collective-visit constant, run parameter
    bool override_mode = false;

    double epsilon = 0;    // 1 / (12d)
    double rho = 0;        // 410 d^2 / c_ckn
    double delta_rec = 0;  // (50d)^{-d/2}
    double psi = 0;        // 2d delta_d(r)^2 / c_ckn

    std::int64_t scale = 0;  // R = ceil(r^{-d/2}), block spacing of good sites
    std::int64_t good_box_radius = 0;       // floor(r^{-(1/2+eps)})
    std::int64_t good_restrict_radius = 0;  // 2R
    std::int64_t good_budget = 0;           // floor(rho r^{-d/2} delta_d(r))

    std::int64_t theta_spacing = 0;     // 7 ceil(r^{-(1/2+eps)})
    std::int64_t theta_in_radius = 0;   // floor(r^{-(1/2+eps)})
    std::int64_t theta_mid_radius = 0;  // floor(2 r^{-(1/2+eps)})
    std::int64_t theta_out_radius = 0;  // floor(3 r^{-(1/2+eps)})
    std::int64_t n_r = 0;               // 121 d ceil(r^{-(1+2eps)})
    std::int64_t sowing_budget = 0;     // floor(r^{-(1+3eps)})

    std::int64_t lambda_radius = 0;  // floor(r^{-(d+1)/4})
    std::int64_t v_radius = 0;       // floor(r^{-((d-1)/4 - 2eps)})
    std::int64_t w_budget = 0;       // floor(2 r^{-(d+1)/2})
    std::int64_t hit_budget = 0;     // floor(4d r^{-(d+1)/2})
    std::int64_t act_budget = 0;     // floor(5d r^{-(d+1)/2})
    double w_lower = 0;              // r^{-d((d-1)/4 - 2eps)}

    std::int64_t nu = 0;         // 100 d ceil(psi)
    std::int64_t q_radius = 0;   // ceil(sqrt(psi))
    std::int64_t q_spacing = 0;  // 3 ceil(sqrt(psi))
    double gamma_threshold = 0;  // 2d |log r| / c_ckn
    double sigma_index_bound = 0;  // r^{-d/2} psi^{-1/2}

    static RenormParams physical(int d, double r, double c_ckn = 0.5);
};

// sanity of a parameter set (radius ordering, nonnegative budgets);
// throws std::invalid_argument
void validate(const RenormParams& p);

struct ThetaBoxes {
    Box in_box;    // seeds live here
    Box box;       // chain intermediates restricted here
    Box out_hull;  // the annulus is out_hull minus box
};

ThetaBoxes theta_boxes(const RenormParams& p, const Site& v);
// membership in the annulus out_hull \ box of block v
bool in_theta_out(const RenormParams& p, const Site& v, const Site& x);
// pairwise disjointness of the annuli of distinct blocks (exact box
// arithmetic: spacing must exceed twice the outer radius)
bool theta_annuli_disjoint(const RenormParams& p);

Box lambda_box(const RenormParams& p);
Box q_box(const RenormParams& p, const Site& xi, std::int64_t i);
// block indices of the seed neighborhood, lexicographic
std::vector<Site> v_blocks(const RenormParams& p);

// One relay certificate of the good-block event: from occupied x in the
// center box, direction u, reached occupied y at `time` within budget.
struct GoodLink {
    Site x;
    Site u;  // neighboring block index
    Site y;  // certificate target; equals x on failure
    std::int64_t time = 0;
    bool ok = false;
};

struct GoodWitness {
    bool good = false;
    bool center_occupied = false;  // center box holds an occupied site
    std::vector<GoodLink> links;
};

// Exact evaluation of the good-block event at block v: the center box
// holds an occupied site, and from every occupied x there and every
// lattice-neighbor block u some occupied y in u's box is reached within
// good_budget by chains restricted to B_inf(scale*v, 2*scale).
GoodWitness is_r_good(const Configuration& c, const WalkOracle& o, const Site& v,
                      const RenormParams& p);

// shortest nearest-neighbor path length through good blocks, nullopt if
// none; goodmap has finite support
std::optional<std::int64_t> good_distance(
    const std::unordered_map<Site, bool, SiteHash>& goodmap, const Site& u, const Site& v);

struct SowingReport {
    bool s1 = false;     // the seed box holds an occupied site
    bool s2 = false;     // relayed walk ranges reach every neighbor seed box
    bool s3 = false;     // relayed walk ranges reach the annulus
    bool event = false;  // the sowing event itself
    bool premise = false;         // 2 n_r <= sowing_budget
    bool implication_ok = true;   // premise && s1 && s2 && s3 -> event
    std::uint64_t occupied_in = 0;  // #(seed box cap O)
};

// Sowing event at block v plus its three sub-events and the
// sub-event-implies-event audit.
SowingReport sowing_event(const Configuration& c, const WalkOracle& o, const Site& v,
                          const RenormParams& p);

struct ActivatingReport {
    bool event = false;  // every occupied seed reaches all of Lambda in time
    bool a1 = false;     // sowing holds on every block of the seed neighborhood
    bool a2 = false;     // seeded walkers cover Lambda within the hitting budget
    // premises of the audited implications
    bool out_in_lambda = false;     // every annulus hull sits inside Lambda
    bool annuli_disjoint = false;   // distinct blocks' annuli are disjoint
    bool w_chain_premise = false;   // (v_radius + 1) * sowing_budget <= w_budget
    bool budget_premise = false;    // w_budget + hit_budget <= act_budget
    bool w_lemma_ok = true;      // premises && a1 -> #W(x) >= #V for occupied x
    bool implication_ok = true;  // premises && a1 && a2 -> event
    std::uint64_t v_count = 0;   // #V
    double w_lower = 0;          // the asymptotic lower bound it feeds
    std::vector<std::uint64_t> w_sizes;  // #W(x) per occupied seed x, lex order
};

ActivatingReport activating_event(const Configuration& c, const WalkOracle& o,
                                  const RenormParams& p);

struct RecursionResult {
    Site xi;
    std::int64_t sigma = -1;  // first failing index; -1 when never triggered
    bool max_index_reached = false;
    std::vector<std::uint64_t> gamma_sizes;  // #Gamma_i for i = 0..last computed
    double threshold = 0;    // gamma_threshold the counts are held against
    double index_bound = 0;  // sigma_index_bound target for reporting
};

// Directed box recursion along unit direction xi: Gamma_0 = occupied
// sites of the start box, then Gamma_i = (nu-step ranges from
// Gamma_{i-1}) cap Q_i cap O; sigma = first i with #Gamma_i below
// gamma_threshold.
RecursionResult run_recursion(const Configuration& c, const WalkOracle& o, const Site& xi,
                              const RenormParams& p, std::int64_t max_index);

struct GoodProbRow {
    int d = 0;
    double r = 0;
    double c_ckn = 0;
    bool override_mode = false;
    std::uint64_t trials = 0;
    std::uint64_t good_count = 0;
    double p_hat = 0;
    Interval ci;
};

// Monte Carlo estimate of P(block 0 is good) over fresh realizations.
GoodProbRow estimate_good_probability(const RenormParams& p, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads = 0);

}  // namespace frog

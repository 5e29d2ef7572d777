// frogsim: reproducible passage-time simulation and estimation on Z^d.
//
// Subcommands: passage, mu, sweep, shape, chain-check, good, stats.
// Every run writes UTF-8 CSV (LF endings) plus a JSON manifest next to
// the first output.  Exit codes: 0 success, 2 bad flags/parameters,
// 3 domain too small, 4 estimation failure (all trials censored).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frog/chain.hpp"
#include "frog/dynamics.hpp"
#include "frog/estimator.hpp"
#include "frog/io_util.hpp"
#include "frog/lattice.hpp"
#include "frog/renorm.hpp"
#include "frog/rng.hpp"
#include "frog/walkstats.hpp"

using namespace frog;

namespace {

std::string bcell(bool b) { return b ? "1" : "0"; }

std::string sites_cell(const std::vector<Site>& sites) {
    std::string out;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (i) out += '|';
        out += site_cell(sites[i]);
    }
    return out;
}

double wall_ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// --seed wins; otherwise FROGSIM_SEED; otherwise 1
std::uint64_t resolve_seed(const CLI::App* cmd, std::uint64_t flag_seed) {
    if (cmd->count("--seed")) return flag_seed;
    if (const char* env = std::getenv("FROGSIM_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw std::invalid_argument("FROGSIM_SEED must be a decimal 64-bit integer");
        return (std::uint64_t)v;
    }
    return 1;
}

Site direction_or_default(const std::string& text, int d) {
    return text.empty() ? unit_vector(d, 0) : parse_site_cell(text, d);
}

// ---------------------------------------------------------------- passage

struct PassageOpts {
    int d = 2;
    double r = 0.5;
    std::uint64_t seed = 1;
    std::string source, target;
    std::int64_t box_radius = -1;
    std::int64_t horizon = -1;
    std::int64_t global_cap = -1;
    std::int64_t step_budget = -1;
    bool force_origin = true;
    std::string out = "passage.csv";
};

void run_passage(const PassageOpts& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, o.seed);
    const Site src = o.source.empty() ? Site::zero(o.d) : parse_site_cell(o.source, o.d);
    const Site dst = parse_site_cell(o.target, o.d);

    const std::uint64_t dist = (std::uint64_t)l1_dist(src, dst);
    HorizonPolicy pol;
    const std::int64_t horizon = o.horizon >= 0 ? o.horizon : pol.horizon(o.d, o.r, dist);
    const std::int64_t radius =
        o.box_radius >= 0 ? o.box_radius
                          : (std::int64_t)(2 * dist + 4.0 * std::sqrt((double)horizon) + 8);
    const Box domain{src, radius, Norm::LInf};
    if (!domain.contains(dst))
        throw DomainTooSmall("passage: target outside the sampled box; raise --box-radius");

    Configuration c(seed, o.d, o.r, domain, o.force_origin);
    WalkOracle walks(seed, o.d);
    PassageOptions popt;
    popt.global_cap = o.global_cap;
    popt.step_budget = o.step_budget;
    PassageResult res = passage_time(c, walks, src, dst, Region::of(domain), horizon, popt);

    CsvWriter csv(o.out, {"d", "r", "seed", "source", "target", "box_radius", "horizon", "value",
                          "path_len", "leg_times", "boundary_touch", "budget_hit"});
    std::string value, path_len, leg_times;
    if (res.value.is_finite()) {
        value = fmt_int(res.value.value);
        path_len = fmt_uint(res.per_leg_times.size());
        for (std::size_t i = 0; i < res.per_leg_times.size(); ++i) {
            if (i) leg_times += ';';
            leg_times += fmt_int(res.per_leg_times[i]);
        }
    } else {
        value = res.value.is_censored() ? "CENSORED" : "INF";
    }
    csv.row({fmt_int(o.d), fmt_double(o.r), fmt_uint(seed), site_cell(src), site_cell(dst),
             fmt_int(radius), fmt_int(horizon), value, path_len, leg_times,
             bcell(res.boundary_touch), bcell(res.budget_hit)});
    csv.flush();

    write_manifest("passage",
                   {{"d", fmt_int(o.d)},
                    {"r", fmt_double(o.r)},
                    {"source", site_cell(src)},
                    {"target", site_cell(dst)},
                    {"box_radius", fmt_int(radius)},
                    {"horizon", fmt_int(horizon)},
                    {"global_cap", fmt_int(o.global_cap)},
                    {"step_budget", fmt_int(o.step_budget)},
                    {"force_origin", bcell(o.force_origin)},
                    {"out", o.out}},
                   seed, wall_ms_since(t0), {o.out});
    std::printf("passage: %s -> %s value=%s\n", site_cell(src).c_str(), site_cell(dst).c_str(),
                value.c_str());
}

// --------------------------------------------------------------------- mu

struct MuOpts {
    int d = 2;
    double r = 0.5;
    std::string x;
    std::string n_list = "40";
    std::uint64_t trials = 200;
    std::uint64_t seed = 1;
    double horizon_factor = 50.0;
    std::int64_t fixed_horizon = -1;
    std::int64_t step_budget = 1000000000LL;
    unsigned threads = 0;
    std::string out = "mu.csv";
};

HorizonPolicy policy_from(double factor, std::int64_t fixed, std::int64_t budget) {
    HorizonPolicy pol;
    pol.factor = factor;
    pol.fixed = fixed;
    pol.step_budget = budget;
    return pol;
}

void run_mu(const MuOpts& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, o.seed);
    if (o.trials < 2) throw std::invalid_argument("mu: need --trials >= 2");
    const Site x = direction_or_default(o.x, o.d);
    const std::vector<std::int64_t> n_list = parse_int_list(o.n_list);
    if (n_list.empty()) throw std::invalid_argument("mu: empty --n-list");

    MuEstimate est = estimate_mu(o.d, o.r, x, n_list, o.trials, seed,
                                 policy_from(o.horizon_factor, o.fixed_horizon, o.step_budget),
                                 o.threads);

    CsvWriter csv(o.out, {"d", "r", "x", "n", "trials", "mu_hat", "ci_low", "ci_high", "delta",
                          "ratio", "censor_rate", "seed"});
    for (const MuRow& row : est.rows)
        csv.row({fmt_int(o.d), fmt_double(o.r), site_cell(x), fmt_int(row.n),
                 fmt_uint(row.trials), fmt_double(row.mu_hat), fmt_double(row.mu_hat - row.ci_half),
                 fmt_double(row.mu_hat + row.ci_half), fmt_double(est.delta),
                 fmt_double(row.ratio), fmt_double(row.censor_rate), fmt_uint(seed)});
    csv.flush();

    write_manifest("mu",
                   {{"d", fmt_int(o.d)},
                    {"r", fmt_double(o.r)},
                    {"x", site_cell(x)},
                    {"n_list", o.n_list},
                    {"trials", fmt_uint(o.trials)},
                    {"horizon_factor", fmt_double(o.horizon_factor)},
                    {"fixed_horizon", fmt_int(o.fixed_horizon)},
                    {"step_budget", fmt_int(o.step_budget)},
                    {"threads", fmt_uint(o.threads)},
                    {"out", o.out}},
                   seed, wall_ms_since(t0), {o.out});
    for (const MuRow& row : est.rows)
        std::printf("mu: n=%lld mu_hat=%s censor_rate=%s\n", (long long)row.n,
                    fmt_double(row.mu_hat).c_str(), fmt_double(row.censor_rate).c_str());
}

// ------------------------------------------------------------------ sweep

struct SweepOpts {
    int d = 2;
    std::string r_list;
    std::string x;
    std::int64_t n = 40;
    std::uint64_t trials = 200;
    std::uint64_t seed = 1;
    double horizon_factor = 50.0;
    std::int64_t fixed_horizon = -1;
    std::int64_t step_budget = 1000000000LL;
    unsigned threads = 0;
    std::string out = "sweep.json";
};

void run_sweep(const SweepOpts& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, o.seed);
    const Site x = direction_or_default(o.x, o.d);
    const std::vector<double> r_list = parse_double_list(o.r_list);

    SweepResult res =
        scaling_sweep(o.d, r_list, x, o.n, o.trials, seed,
                      policy_from(o.horizon_factor, o.fixed_horizon, o.step_budget), o.threads);

    nlohmann::json j;
    j["d"] = res.d;
    j["x"] = site_cell(res.x);
    j["n"] = res.n;
    j["trials"] = res.trials;
    j["seed"] = res.seed;
    nlohmann::json cells = nlohmann::json::array();
    for (const SweepCell& cell : res.cells)
        cells.push_back({{"r", cell.r},
                         {"delta", cell.delta},
                         {"mu_hat", cell.row.mu_hat},
                         {"ci_half", cell.row.ci_half},
                         {"ratio", cell.row.ratio},
                         {"censor_rate", cell.row.censor_rate},
                         {"excluded", cell.excluded}});
    j["cells"] = cells;
    j["fit"] = {{"slope", res.slope}, {"intercept", res.intercept}, {"residuals", res.residuals}};
    write_file(o.out, j.dump(2) + "\n");

    write_manifest("sweep",
                   {{"d", fmt_int(o.d)},
                    {"r_list", o.r_list},
                    {"x", site_cell(x)},
                    {"n", fmt_int(o.n)},
                    {"trials", fmt_uint(o.trials)},
                    {"horizon_factor", fmt_double(o.horizon_factor)},
                    {"fixed_horizon", fmt_int(o.fixed_horizon)},
                    {"step_budget", fmt_int(o.step_budget)},
                    {"threads", fmt_uint(o.threads)},
                    {"out", o.out}},
                   seed, wall_ms_since(t0), {o.out});
    std::printf("sweep: slope=%s intercept=%s\n", fmt_double(res.slope).c_str(),
                fmt_double(res.intercept).c_str());
}

// ------------------------------------------------------------------ shape

struct ShapeOpts {
    int d = 2;
    double r = 0.5;
    std::uint64_t seed = 1;
    std::string t_list = "10,20,40";
    std::int64_t box_radius = -1;
    std::int64_t horizon = -1;
    std::string out = "shape.csv";
};

void run_shape(const ShapeOpts& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, o.seed);
    const std::vector<std::int64_t> t_list = parse_int_list(o.t_list);
    if (t_list.empty()) throw std::invalid_argument("shape: empty --t-list");
    std::int64_t t_max = 0;
    for (std::int64_t t : t_list) {
        if (t < 0) throw std::invalid_argument("shape: negative t");
        t_max = std::max(t_max, t);
    }
    // every leg of a chain completing by t_max is itself <= t_max, and
    // walk speed 1 bounds the region: horizon = cap = box = t_max exact
    const std::int64_t radius = o.box_radius >= 0 ? o.box_radius : t_max;
    const std::int64_t horizon = o.horizon >= 0 ? o.horizon : t_max;
    const Site origin = Site::zero(o.d);
    const Box area{origin, radius, Norm::LInf};

    Configuration c(seed, o.d, o.r, area, true);
    WalkOracle walks(seed, o.d);
    ActivationFront front = activation_front(c, walks, origin, area, horizon, t_max);

    std::vector<std::string> header{"t"};
    for (int i = 0; i < o.d; ++i) header.push_back("x_" + std::to_string(i + 1));
    header.push_back("time");
    CsvWriter csv(o.out, header);
    for (std::int64_t t : t_list) {
        for (const Site& z : visited_region(front, t)) {
            std::vector<std::string> cells{fmt_int(t)};
            for (int i = 0; i < o.d; ++i) cells.push_back(fmt_int(z.c[i]));
            cells.push_back(fmt_int(front.at(z).value));
            csv.row(cells);
        }
    }
    csv.flush();

    write_manifest("shape",
                   {{"d", fmt_int(o.d)},
                    {"r", fmt_double(o.r)},
                    {"t_list", o.t_list},
                    {"box_radius", fmt_int(radius)},
                    {"horizon", fmt_int(horizon)},
                    {"out", o.out}},
                   seed, wall_ms_since(t0), {o.out});
    std::printf("shape: %llu rows\n", (unsigned long long)csv.rows_written());
}

// ------------------------------------------------------------ chain-check

struct ChainOpts {
    int d = 2;
    double r = 0.3;
    std::string spec = "1,1,1";
    std::uint64_t trials = 200;
    std::uint64_t seed = 1;
    std::int64_t leg_horizon = 10000;
    std::int64_t box_radius = -1;
    double event_c = 1.0;
    double event_c2 = 0.5;
    double event_t = 100.0;
    std::string out = "chain_stats.csv";
};

void run_chain_check(const ChainOpts& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, o.seed);
    ChainSpec spec;
    for (std::int64_t v : parse_int_list(o.spec)) {
        if (v < 1) throw std::invalid_argument("chain-check: fresh counts must be >= 1");
        spec.fresh_counts.push_back((std::uint64_t)v);
    }
    if (spec.fresh_counts.empty()) throw std::invalid_argument("chain-check: empty --spec");
    const std::int64_t radius =
        o.box_radius >= 0
            ? o.box_radius
            : std::min<std::int64_t>((std::int64_t)spec.fresh_counts.size() * o.leg_horizon + 1,
                                     1000000000000LL);

    ChainStatsReport rep = chain_statistics(o.d, o.r, spec, o.trials, seed, o.leg_horizon, radius,
                                            o.event_c, o.event_c2, o.event_t);

    CsvWriter csv(o.out,
                  {"seed", "d", "r", "nu", "sum_I", "sum_sigma", "max_range", "censored"});
    for (const ChainStatsRow& row : rep.rows)
        csv.row({fmt_uint(row.seed), fmt_int(row.d), fmt_double(row.r), fmt_uint(row.nu),
                 fmt_uint(row.sum_fresh), fmt_int(row.sum_sigma), fmt_uint(row.max_range),
                 bcell(row.censored)});
    csv.flush();

    write_manifest("chain-check",
                   {{"d", fmt_int(o.d)},
                    {"r", fmt_double(o.r)},
                    {"spec", o.spec},
                    {"trials", fmt_uint(o.trials)},
                    {"leg_horizon", fmt_int(o.leg_horizon)},
                    {"box_radius", fmt_int(radius)},
                    {"event_c", fmt_double(o.event_c)},
                    {"event_c2", fmt_double(o.event_c2)},
                    {"event_t", fmt_double(o.event_t)},
                    {"out", o.out}},
                   seed, wall_ms_since(t0), {o.out});
    std::printf("chain-check: uncensored=%llu time_event_freq=%s range_event_freq=%s ks=%s\n",
                (unsigned long long)rep.uncensored, fmt_double(rep.time_event_freq).c_str(),
                fmt_double(rep.range_event_freq).c_str(), fmt_double(rep.ks_distance).c_str());
}

// ------------------------------------------------------------------- good

struct GoodOverrides {
    std::int64_t scale = -1, good_box_radius = -1, good_restrict_radius = -1, good_budget = -1;
    std::int64_t theta_spacing = -1, theta_in = -1, theta_mid = -1, theta_out = -1;
    std::int64_t n_r = -1, sowing_budget = -1;
    std::int64_t lambda_radius = -1, v_radius = -1, w_budget = -1, hit_budget = -1,
                 act_budget = -1;
    std::int64_t nu = -1, q_radius = -1, q_spacing = -1;
    double gamma_threshold = std::nan("");

    bool any() const {
        for (std::int64_t v : {scale, good_box_radius, good_restrict_radius, good_budget,
                               theta_spacing, theta_in, theta_mid, theta_out, n_r, sowing_budget,
                               lambda_radius, v_radius, w_budget, hit_budget, act_budget, nu,
                               q_radius, q_spacing})
            if (v >= 0) return true;
        return !std::isnan(gamma_threshold);
    }

    void apply(RenormParams& p) const {
        auto set = [](std::int64_t& field, std::int64_t v) {
            if (v >= 0) field = v;
        };
        set(p.scale, scale);
        set(p.good_box_radius, good_box_radius);
        set(p.good_restrict_radius, good_restrict_radius);
        set(p.good_budget, good_budget);
        set(p.theta_spacing, theta_spacing);
        set(p.theta_in_radius, theta_in);
        set(p.theta_mid_radius, theta_mid);
        set(p.theta_out_radius, theta_out);
        set(p.n_r, n_r);
        set(p.sowing_budget, sowing_budget);
        set(p.lambda_radius, lambda_radius);
        set(p.v_radius, v_radius);
        set(p.w_budget, w_budget);
        set(p.hit_budget, hit_budget);
        set(p.act_budget, act_budget);
        set(p.nu, nu);
        set(p.q_radius, q_radius);
        set(p.q_spacing, q_spacing);
        if (!std::isnan(gamma_threshold)) p.gamma_threshold = gamma_threshold;
    }
};

struct GoodOpts {
    std::string op = "prob";
    int d = 2;
    double r = 0.3;
    double c_ckn = 0.5;
    bool override_exponents = false;
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string xi;
    std::int64_t max_index = 16;
    std::string out;
    GoodOverrides ov;
};

void run_good(const GoodOpts& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, o.seed);
    if (o.trials == 0) throw std::invalid_argument("good: need --trials >= 1");

    if (!o.override_exponents && o.ov.any())
        throw std::invalid_argument("good: geometry overrides require --override-exponents");
    if (!o.override_exponents && o.r < 0.05)
        throw std::invalid_argument(
            "good: physical mode refuses r < 0.05 (block sizes r^{-d/2} grow intractable; "
            "pass --override-exponents to run the scaled-down test geometry)");

    RenormParams p = RenormParams::physical(o.d, o.r, o.c_ckn);
    if (o.override_exponents) {
        p.override_mode = true;
        o.ov.apply(p);
    }
    validate(p);

    std::map<std::string, std::string> params{
        {"op", o.op},
        {"d", fmt_int(o.d)},
        {"r", fmt_double(o.r)},
        {"c_ckn", fmt_double(o.c_ckn)},
        {"override_exponents", bcell(o.override_exponents)},
        {"trials", fmt_uint(o.trials)},
        {"threads", fmt_uint(o.threads)},
    };

    if (o.op == "prob") {
        const std::string out = o.out.empty() ? "good_prob.csv" : o.out;
        GoodProbRow row = estimate_good_probability(p, o.trials, seed, o.threads);
        CsvWriter csv(out, {"d", "r", "c_ckn", "override_mode", "trials", "p_hat", "ci_low",
                            "ci_high"});
        csv.row({fmt_int(row.d), fmt_double(row.r), fmt_double(row.c_ckn),
                 bcell(row.override_mode), fmt_uint(row.trials), fmt_double(row.p_hat),
                 fmt_double(row.ci.lo), fmt_double(row.ci.hi)});
        csv.flush();
        params["out"] = out;
        write_manifest("good", params, seed, wall_ms_since(t0), {out});
        std::printf("good prob: p_hat=%s [%s, %s]\n", fmt_double(row.p_hat).c_str(),
                    fmt_double(row.ci.lo).c_str(), fmt_double(row.ci.hi).c_str());
        return;
    }

    if (o.op == "sowing" || o.op == "activating") {
        const std::string out = o.out.empty() ? "good_events.csv" : o.out;
        const std::int64_t radius =
            o.op == "sowing"
                ? p.theta_spacing + p.theta_out_radius
                : std::max(p.lambda_radius, (p.v_radius + 1) * p.theta_spacing +
                                                p.theta_out_radius);
        const Box domain{Site::zero(p.d), radius, Norm::LInf};
        std::uint64_t counterexamples = 0;

        std::vector<std::string> header =
            o.op == "sowing"
                ? std::vector<std::string>{"d", "r", "c_ckn", "override_mode", "trial", "seed",
                                           "s1", "s2", "s3", "event", "premise", "implication_ok",
                                           "occupied_in"}
                : std::vector<std::string>{"d", "r", "c_ckn", "override_mode", "trial", "seed",
                                           "a1", "a2", "event", "out_in_lambda", "annuli_disjoint",
                                           "w_chain_premise", "budget_premise", "w_lemma_ok",
                                           "implication_ok", "v_count", "min_w_size"};
        CsvWriter csv(out, header);
        for (std::uint64_t t = 0; t < o.trials; ++t) {
            const std::uint64_t tseed = substream(seed, kTagTrial, t);
            Configuration c(tseed, p.d, p.r, domain, false);
            WalkOracle walks(tseed, p.d);
            if (o.op == "sowing") {
                SowingReport rep = sowing_event(c, walks, Site::zero(p.d), p);
                if (!rep.implication_ok) ++counterexamples;
                csv.row({fmt_int(p.d), fmt_double(p.r), fmt_double(p.c_ckn),
                         bcell(p.override_mode), fmt_uint(t), fmt_uint(tseed), bcell(rep.s1),
                         bcell(rep.s2), bcell(rep.s3), bcell(rep.event), bcell(rep.premise),
                         bcell(rep.implication_ok), fmt_uint(rep.occupied_in)});
            } else {
                ActivatingReport rep = activating_event(c, walks, p);
                if (!rep.implication_ok || !rep.w_lemma_ok) ++counterexamples;
                std::uint64_t min_w = 0;
                for (std::size_t i = 0; i < rep.w_sizes.size(); ++i)
                    min_w = i == 0 ? rep.w_sizes[i] : std::min(min_w, rep.w_sizes[i]);
                csv.row({fmt_int(p.d), fmt_double(p.r), fmt_double(p.c_ckn),
                         bcell(p.override_mode), fmt_uint(t), fmt_uint(tseed), bcell(rep.a1),
                         bcell(rep.a2), bcell(rep.event), bcell(rep.out_in_lambda),
                         bcell(rep.annuli_disjoint), bcell(rep.w_chain_premise),
                         bcell(rep.budget_premise), bcell(rep.w_lemma_ok),
                         bcell(rep.implication_ok), fmt_uint(rep.v_count), fmt_uint(min_w)});
            }
        }
        csv.flush();
        params["out"] = out;
        write_manifest("good", params, seed, wall_ms_since(t0), {out});
        std::printf("good %s: %llu trials, %llu implication counterexamples\n", o.op.c_str(),
                    (unsigned long long)o.trials, (unsigned long long)counterexamples);
        return;
    }

    // op == "recursion"
    const std::string out = o.out.empty() ? "recursion.csv" : o.out;
    const Site xi = direction_or_default(o.xi, p.d);
    const std::int64_t radius = o.max_index * p.q_spacing + p.q_radius;
    const Box domain{Site::zero(p.d), radius, Norm::LInf};
    CsvWriter csv(out, {"d", "r", "xi", "seed", "sigma_index", "censored"});
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const std::uint64_t tseed = substream(seed, kTagTrial, t);
        Configuration c(tseed, p.d, p.r, domain, false);
        WalkOracle walks(tseed, p.d);
        RecursionResult res = run_recursion(c, walks, xi, p, o.max_index);
        const std::int64_t sigma_index = res.max_index_reached ? o.max_index : res.sigma;
        csv.row({fmt_int(p.d), fmt_double(p.r), site_cell(xi), fmt_uint(tseed),
                 fmt_int(sigma_index), bcell(res.max_index_reached)});
    }
    csv.flush();
    params["out"] = out;
    params["xi"] = site_cell(xi);
    params["max_index"] = fmt_int(o.max_index);
    write_manifest("good", params, seed, wall_ms_since(t0), {out});
    std::printf("good recursion: %llu trials written\n", (unsigned long long)o.trials);
}

// ------------------------------------------------------------------ stats

struct StatsCommon {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out = "stats.csv";
};

void emit_stats_manifest(const std::string& op, std::map<std::string, std::string> params,
                         std::uint64_t seed, const std::chrono::steady_clock::time_point& t0,
                         const std::string& out) {
    params["op"] = op;
    params["out"] = out;
    write_manifest("stats", params, seed, wall_ms_since(t0), {out});
}

void run_stats_pz(int d, std::int64_t n, const std::string& gamma_text, const StatsCommon& sc,
                  const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, sc.seed);
    std::vector<Site> gamma = gamma_text.empty()
                                  ? [&] {
                                        std::vector<Site> g;
                                        for (const Site& z :
                                             Box{Site::zero(d), 1, Norm::LInf}.enumerate())
                                            if (z != Site::zero(d)) g.push_back(z);
                                        return g;
                                    }()
                                  : parse_site_list(gamma_text, d);

    EnumerationReport rep = pz_exact_check(d, (int)n, gamma);

    CsvWriter csv(sc.out, {"op", "d", "n", "gamma", "paths", "mean_numerator", "mean_denominator",
                           "second_numerator", "second_denominator", "sup_numerator",
                           "sup_denominator", "lhs_numerator", "lhs_denominator", "chain_holds",
                           "second_moment_holds"});
    csv.row({"pz", fmt_int(d), fmt_int(n), sites_cell(rep.gamma), fmt_uint(rep.paths),
             fmt_uint(rep.mean_num), fmt_uint(rep.paths), fmt_uint(rep.second_num),
             fmt_uint(rep.paths), fmt_uint(rep.sup_num), fmt_uint(rep.paths),
             fmt_uint(rep.half_count), fmt_uint(rep.paths), bcell(rep.chain_holds),
             bcell(rep.second_moment_holds)});
    csv.flush();
    emit_stats_manifest("pz",
                        {{"d", fmt_int(d)}, {"n", fmt_int(n)}, {"gamma", sites_cell(rep.gamma)}},
                        seed, t0, sc.out);
    std::printf("stats pz: mean=%llu/%llu lhs=%llu/%llu chain_holds=%d\n",
                (unsigned long long)rep.mean_num, (unsigned long long)rep.paths,
                (unsigned long long)rep.half_count, (unsigned long long)rep.paths,
                rep.chain_holds ? 1 : 0);
}

void run_stats_range(int d, const std::string& n_list_text, std::uint64_t trials,
                     const StatsCommon& sc, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, sc.seed);
    const std::vector<std::int64_t> n_list = parse_int_list(n_list_text);
    if (n_list.empty()) throw std::invalid_argument("stats range: empty --n-list");

    std::vector<RangeGrowthRow> rows = range_growth(d, n_list, trials, seed, sc.threads);
    CsvWriter csv(sc.out, {"op", "d", "n", "trials", "mean", "ci_half", "phi", "ratio"});
    for (const RangeGrowthRow& row : rows)
        csv.row({"range", fmt_int(d), fmt_int(row.n), fmt_uint(row.trials), fmt_double(row.mean),
                 fmt_double(row.ci_half), fmt_double(row.phi), fmt_double(row.ratio)});
    csv.flush();
    emit_stats_manifest(
        "range",
        {{"d", fmt_int(d)}, {"n_list", n_list_text}, {"trials", fmt_uint(trials)},
         {"threads", fmt_uint(sc.threads)}},
        seed, t0, sc.out);
    for (const RangeGrowthRow& row : rows)
        std::printf("stats range: n=%lld mean=%s ratio=%s\n", (long long)row.n,
                    fmt_double(row.mean).c_str(), fmt_double(row.ratio).c_str());
}

void run_stats_hit(int d, const std::string& z_text, std::int64_t n, std::uint64_t trials,
                   const StatsCommon& sc, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, sc.seed);
    const Site z = z_text.empty() ? unit_vector(d, 0).scaled(5) : parse_site_cell(z_text, d);
    const std::int64_t n_eff = n >= 0 ? n : (std::int64_t)std::ceil((double)l2_norm_sq(z));

    HittingReport rep = hitting_probability(d, z, n_eff, trials, seed, sc.threads);
    if (!rep.regime_ok)
        std::fprintf(stderr, "warning: n < |z|_2^2, outside the hitting-bound regime\n");

    CsvWriter csv(sc.out, {"op", "d", "z", "n", "trials", "hits", "p_hat", "ci_low", "ci_high",
                           "c_hat", "regime_ok"});
    csv.row({"hit", fmt_int(d), site_cell(z), fmt_int(n_eff), fmt_uint(trials),
             fmt_uint(rep.hits), fmt_double(rep.p_hat), fmt_double(rep.ci.lo),
             fmt_double(rep.ci.hi), fmt_double(rep.c_hat), bcell(rep.regime_ok)});
    csv.flush();
    emit_stats_manifest("hit",
                        {{"d", fmt_int(d)},
                         {"z", site_cell(z)},
                         {"n", fmt_int(n_eff)},
                         {"trials", fmt_uint(trials)},
                         {"threads", fmt_uint(sc.threads)}},
                        seed, t0, sc.out);
    std::printf("stats hit: p_hat=%s c_hat=%s\n", fmt_double(rep.p_hat).c_str(),
                fmt_double(rep.c_hat).c_str());
}

void run_stats_range_ball(int d, std::int64_t n, double beta, std::uint64_t trials,
                          const StatsCommon& sc, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, sc.seed);
    RangeBallReport rep = range_ball_deviation(d, n, beta, trials, seed, sc.threads);

    CsvWriter csv(sc.out,
                  {"op", "d", "n", "beta", "trials", "events", "freq", "ci_low", "ci_high",
                   "bound"});
    csv.row({"range-ball", fmt_int(d), fmt_int(n), fmt_double(beta), fmt_uint(trials),
             fmt_uint(rep.events), fmt_double(rep.freq), fmt_double(rep.ci.lo),
             fmt_double(rep.ci.hi), fmt_double(rep.bound)});
    csv.flush();
    emit_stats_manifest("range-ball",
                        {{"d", fmt_int(d)},
                         {"n", fmt_int(n)},
                         {"beta", fmt_double(beta)},
                         {"trials", fmt_uint(trials)},
                         {"threads", fmt_uint(sc.threads)}},
                        seed, t0, sc.out);
    std::printf("stats range-ball: freq=%s bound=%s\n", fmt_double(rep.freq).c_str(),
                fmt_double(rep.bound).c_str());
}

void run_stats_ckn(int d, std::int64_t n, const std::string& a_text, const std::string& b_text,
                   double delta, double r, double c_ckn, std::uint64_t trials,
                   const StatsCommon& sc, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, sc.seed);
    std::vector<Site> a_sites =
        a_text.empty() ? std::vector<Site>{Site::zero(d)} : parse_site_list(a_text, d);
    std::vector<Site> b_sites =
        b_text.empty() ? Box{unit_vector(d, 0).scaled(6), 1, Norm::LInf}.enumerate()
                       : parse_site_list(b_text, d);

    CknReport rep = ckn_event_frequency(d, n, a_sites, b_sites, delta, r, c_ckn, trials, seed,
                                        sc.threads);

    CsvWriter csv(sc.out, {"op",          "d",
                           "n",           "a_size",
                           "b_size",      "delta",
                           "r",           "c_ckn",
                           "trials",      "prop_threshold",
                           "lemma_threshold", "prop_events",
                           "lemma_events",    "prop_freq",
                           "lemma_freq",      "prop_ci_low",
                           "prop_ci_high",    "lemma_ci_low",
                           "lemma_ci_high",   "prop_bound",
                           "lemma_bound",     "c_admissible",
                           "diag_tau_lt",     "diag_event_and_tau_lt",
                           "diag_adapted_high", "diag_mean_y_sum"});
    csv.row({"ckn",
             fmt_int(d),
             fmt_int(n),
             fmt_uint(rep.a_size),
             fmt_uint(rep.b_size),
             fmt_double(delta),
             fmt_double(r),
             fmt_double(c_ckn),
             fmt_uint(trials),
             fmt_double(rep.prop_threshold),
             fmt_double(rep.lemma_threshold),
             fmt_uint(rep.prop_events),
             fmt_uint(rep.lemma_events),
             fmt_double(rep.prop_freq),
             fmt_double(rep.lemma_freq),
             fmt_double(rep.prop_ci.lo),
             fmt_double(rep.prop_ci.hi),
             fmt_double(rep.lemma_ci.lo),
             fmt_double(rep.lemma_ci.hi),
             fmt_double(rep.prop_bound),
             fmt_double(rep.lemma_bound),
             fmt_double(rep.c_admissible),
             fmt_uint(rep.diag_tau_lt),
             fmt_uint(rep.diag_event_and_tau_lt),
             fmt_uint(rep.diag_adapted_high),
             fmt_double(rep.diag_mean_y_sum)});
    csv.flush();
    emit_stats_manifest("ckn",
                        {{"d", fmt_int(d)},
                         {"n", fmt_int(n)},
                         {"a", sites_cell(a_sites)},
                         {"b", sites_cell(b_sites)},
                         {"delta", fmt_double(delta)},
                         {"r", fmt_double(r)},
                         {"c_ckn", fmt_double(c_ckn)},
                         {"trials", fmt_uint(trials)},
                         {"threads", fmt_uint(sc.threads)}},
                        seed, t0, sc.out);
    std::printf("stats ckn: prop_freq=%s lemma_freq=%s c_admissible=%s\n",
                fmt_double(rep.prop_freq).c_str(), fmt_double(rep.lemma_freq).c_str(),
                fmt_double(rep.c_admissible).c_str());
}

void run_stats_chernoff(double q, std::int64_t n, double c, const std::string& schedule,
                        std::uint64_t trials, const StatsCommon& sc, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(cmd, sc.seed);
    ChernoffReport rep = adapted_chernoff_check(q, n, schedule, c, trials, seed, sc.threads);

    CsvWriter csv(sc.out, {"op", "q", "n", "c", "schedule", "trials", "events", "freq", "ci_low",
                           "ci_high", "bound", "holds"});
    csv.row({"chernoff", fmt_double(q), fmt_int(n), fmt_double(c), schedule, fmt_uint(trials),
             fmt_uint(rep.events), fmt_double(rep.freq), fmt_double(rep.ci.lo),
             fmt_double(rep.ci.hi), fmt_double(rep.bound), bcell(rep.holds)});
    csv.flush();
    emit_stats_manifest("chernoff",
                        {{"q", fmt_double(q)},
                         {"n", fmt_int(n)},
                         {"c", fmt_double(c)},
                         {"schedule", schedule},
                         {"trials", fmt_uint(trials)},
                         {"threads", fmt_uint(sc.threads)}},
                        seed, t0, sc.out);
    std::printf("stats chernoff: freq=%s bound=%s holds=%d\n", fmt_double(rep.freq).c_str(),
                fmt_double(rep.bound).c_str(), rep.holds ? 1 : 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frogsim: passage times, range statistics and block renormalization for the "
                 "frog model on Z^d"};
    app.require_subcommand(1);

    // ---- passage
    auto po = std::make_shared<PassageOpts>();
    CLI::App* passage = app.add_subcommand("passage", "restricted passage time between two sites");
    passage->add_option("--dim,--d", po->d, "lattice dimension")->check(CLI::Range(2, 8));
    passage->add_option("--r", po->r, "occupation density")->required();
    passage->add_option("--seed", po->seed, "master seed (else FROGSIM_SEED, else 1)");
    passage->add_option("--source", po->source, "source site, e.g. 0,0 (default origin)");
    passage->add_option("--target", po->target, "target site, e.g. 5,3")->required();
    passage->add_option("--box-radius", po->box_radius, "domain radius (default auto)");
    passage->add_option("--horizon", po->horizon, "per-leg horizon (default auto)");
    passage->add_option("--global-cap", po->global_cap, "prune chains beyond this total time");
    passage->add_option("--step-budget", po->step_budget, "walker-step budget");
    passage->add_option("--force-origin", po->force_origin, "force omega(origin)=1 (default 1)");
    passage->add_option("--out", po->out, "output CSV path");
    passage->callback([po, passage] { run_passage(*po, passage); });

    // ---- mu
    auto mo = std::make_shared<MuOpts>();
    CLI::App* mu = app.add_subcommand("mu", "Monte Carlo time-constant estimate");
    mu->add_option("--dim,--d", mo->d, "lattice dimension")->check(CLI::Range(2, 8));
    mu->add_option("--r", mo->r, "occupation density")->required();
    mu->add_option("--x", mo->x, "direction site (default unit e1)");
    mu->add_option("--n-list", mo->n_list, "comma list of n values");
    mu->add_option("--trials", mo->trials, "trials per n (>= 2)");
    mu->add_option("--seed", mo->seed, "master seed");
    mu->add_option("--horizon-factor", mo->horizon_factor, "per-leg horizon factor");
    mu->add_option("--fixed-horizon", mo->fixed_horizon, "fixed per-leg horizon override");
    mu->add_option("--step-budget", mo->step_budget, "per-trial walker-step budget");
    mu->add_option("--threads", mo->threads, "worker threads (0 = hardware)");
    mu->add_option("--out", mo->out, "output CSV path");
    mu->callback([mo, mu] { run_mu(*mo, mu); });

    // ---- sweep
    auto so = std::make_shared<SweepOpts>();
    CLI::App* sweep = app.add_subcommand("sweep", "density sweep and divergence-rate fit");
    sweep->add_option("--dim,--d", so->d, "lattice dimension")->check(CLI::Range(2, 8));
    sweep->add_option("--r-list", so->r_list, "comma list of densities (>= 3 distinct)")
        ->required();
    sweep->add_option("--x", so->x, "direction site (default unit e1)");
    sweep->add_option("--n", so->n, "chain length scale n");
    sweep->add_option("--trials", so->trials, "trials per density");
    sweep->add_option("--seed", so->seed, "master seed");
    sweep->add_option("--horizon-factor", so->horizon_factor, "per-leg horizon factor");
    sweep->add_option("--fixed-horizon", so->fixed_horizon, "fixed per-leg horizon override");
    sweep->add_option("--step-budget", so->step_budget, "per-trial walker-step budget");
    sweep->add_option("--threads", so->threads, "worker threads (0 = hardware)");
    sweep->add_option("--out", so->out, "output JSON path");
    sweep->callback([so, sweep] { run_sweep(*so, sweep); });

    // ---- shape
    auto sho = std::make_shared<ShapeOpts>();
    CLI::App* shape = app.add_subcommand("shape", "visited-region snapshots B(t)");
    shape->add_option("--dim,--d", sho->d, "lattice dimension")->check(CLI::Range(2, 8));
    shape->add_option("--r", sho->r, "occupation density")->required();
    shape->add_option("--seed", sho->seed, "master seed");
    shape->add_option("--t-list", sho->t_list, "comma list of snapshot times");
    shape->add_option("--box-radius", sho->box_radius, "activation box radius (default max t)");
    shape->add_option("--horizon", sho->horizon, "per-leg horizon (default max t)");
    shape->add_option("--out", sho->out, "output CSV path");
    shape->callback([sho, shape] { run_shape(*sho, shape); });

    // ---- chain-check
    auto co = std::make_shared<ChainOpts>();
    CLI::App* chain = app.add_subcommand("chain-check", "chain decomposition statistics");
    chain->add_option("--dim,--d", co->d, "lattice dimension")->check(CLI::Range(2, 8));
    chain->add_option("--r", co->r, "occupation density")->required();
    chain->add_option("--spec", co->spec, "comma list of per-leg fresh counts");
    chain->add_option("--trials", co->trials, "number of seeded traces");
    chain->add_option("--seed", co->seed, "master seed");
    chain->add_option("--leg-horizon", co->leg_horizon, "steps allowed per fresh-site search");
    chain->add_option("--box-radius", co->box_radius, "domain radius (default auto)");
    chain->add_option("--event-c", co->event_c, "duration-event constant");
    chain->add_option("--event-c2", co->event_c2, "range-event constant");
    chain->add_option("--event-t", co->event_t, "range-event time scale");
    chain->add_option("--out", co->out, "output CSV path");
    chain->callback([co, chain] { run_chain_check(*co, chain); });

    // ---- good
    auto go = std::make_shared<GoodOpts>();
    CLI::App* good = app.add_subcommand("good", "renormalization blocks: good-probability, "
                                                "sowing/activating audits, box recursion");
    good->add_option("--op", go->op, "prob | sowing | activating | recursion")
        ->check(CLI::IsMember({"prob", "sowing", "activating", "recursion"}));
    good->add_option("--dim,--d", go->d, "lattice dimension")->check(CLI::Range(2, 8));
    good->add_option("--r", go->r, "occupation density")->required();
    good->add_option("--c-ckn", go->c_ckn, "collective-visit constant");
    good->add_flag("--override-exponents", go->override_exponents,
                   "test mode: decouple box geometry from r");
    good->add_option("--trials", go->trials, "number of sampled realizations");
    good->add_option("--seed", go->seed, "master seed");
    good->add_option("--threads", go->threads, "worker threads (0 = hardware)");
    good->add_option("--xi", go->xi, "recursion direction (default unit e1)");
    good->add_option("--max-index", go->max_index, "recursion index cap");
    good->add_option("--out", go->out, "output CSV path (default per op)");
    good->add_option("--scale", go->ov.scale, "override: block spacing R");
    good->add_option("--good-box-radius", go->ov.good_box_radius, "override");
    good->add_option("--good-restrict-radius", go->ov.good_restrict_radius, "override");
    good->add_option("--good-budget", go->ov.good_budget, "override");
    good->add_option("--theta-spacing", go->ov.theta_spacing, "override");
    good->add_option("--theta-in-radius", go->ov.theta_in, "override");
    good->add_option("--theta-mid-radius", go->ov.theta_mid, "override");
    good->add_option("--theta-out-radius", go->ov.theta_out, "override");
    good->add_option("--n-r", go->ov.n_r, "override: relay walk length");
    good->add_option("--sowing-budget", go->ov.sowing_budget, "override");
    good->add_option("--lambda-radius", go->ov.lambda_radius, "override");
    good->add_option("--v-radius", go->ov.v_radius, "override");
    good->add_option("--w-budget", go->ov.w_budget, "override");
    good->add_option("--hit-budget", go->ov.hit_budget, "override");
    good->add_option("--act-budget", go->ov.act_budget, "override");
    good->add_option("--nu", go->ov.nu, "override: recursion walk length");
    good->add_option("--q-radius", go->ov.q_radius, "override");
    good->add_option("--q-spacing", go->ov.q_spacing, "override");
    good->add_option("--gamma-threshold", go->ov.gamma_threshold, "override");
    good->callback([go, good] { run_good(*go, good); });

    // ---- stats with sub-operations
    CLI::App* stats = app.add_subcommand("stats", "exact and Monte Carlo random-walk statistics");
    stats->require_subcommand(1);

    struct PzOpts {
        int d = 2;
        std::int64_t n = 4;
        std::string gamma;
        StatsCommon sc;
    };
    auto pzo = std::make_shared<PzOpts>();
    CLI::App* pz = stats->add_subcommand("pz", "exact second-moment hitting audit by full "
                                               "path enumeration");
    pz->add_option("--dim,--d", pzo->d, "lattice dimension")->check(CLI::Range(2, 8));
    pz->add_option("--n", pzo->n, "walk length (<= 7)");
    pz->add_option("--gamma", pzo->gamma, "target sites '1,0;0,1' (default LInf shell box)");
    pz->add_option("--seed", pzo->sc.seed, "master seed (recorded only)");
    pz->add_option("--out", pzo->sc.out, "output CSV path");
    pz->callback([pzo, pz] { run_stats_pz(pzo->d, pzo->n, pzo->gamma, pzo->sc, pz); });

    struct RangeOpts {
        int d = 2;
        std::string n_list = "100,1000";
        std::uint64_t trials = 1000;
        StatsCommon sc;
    };
    auto rgo = std::make_shared<RangeOpts>();
    CLI::App* range = stats->add_subcommand("range", "Monte Carlo range growth vs phi_d");
    range->add_option("--dim,--d", rgo->d, "lattice dimension")->check(CLI::Range(2, 8));
    range->add_option("--n-list", rgo->n_list, "comma list of walk lengths");
    range->add_option("--trials", rgo->trials, "Monte Carlo trials");
    range->add_option("--seed", rgo->sc.seed, "master seed");
    range->add_option("--threads", rgo->sc.threads, "worker threads");
    range->add_option("--out", rgo->sc.out, "output CSV path");
    range->callback(
        [rgo, range] { run_stats_range(rgo->d, rgo->n_list, rgo->trials, rgo->sc, range); });

    struct HitOpts {
        int d = 2;
        std::string z;
        std::int64_t n = -1;
        std::uint64_t trials = 10000;
        StatsCommon sc;
    };
    auto hio = std::make_shared<HitOpts>();
    CLI::App* hit = stats->add_subcommand("hit", "hitting probability of a site within n steps");
    hit->add_option("--dim,--d", hio->d, "lattice dimension")->check(CLI::Range(2, 8));
    hit->add_option("--z", hio->z, "target site (default 5,0,...)");
    hit->add_option("--n", hio->n, "step budget (default ceil |z|^2)");
    hit->add_option("--trials", hio->trials, "Monte Carlo trials");
    hit->add_option("--seed", hio->sc.seed, "master seed");
    hit->add_option("--threads", hio->sc.threads, "worker threads");
    hit->add_option("--out", hio->sc.out, "output CSV path");
    hit->callback([hio, hit] { run_stats_hit(hio->d, hio->z, hio->n, hio->trials, hio->sc, hit); });

    struct BallOpts {
        int d = 2;
        std::int64_t n = 10000;
        double beta = 0.1;
        std::uint64_t trials = 1000;
        StatsCommon sc;
    };
    auto bao = std::make_shared<BallOpts>();
    CLI::App* ball = stats->add_subcommand("range-ball",
                                           "range shortfall inside a polynomial ball");
    ball->add_option("--dim,--d", bao->d, "lattice dimension")->check(CLI::Range(2, 8));
    ball->add_option("--n", bao->n, "walk length (>= 2)");
    ball->add_option("--beta", bao->beta, "exponent in (0, 1/2]");
    ball->add_option("--trials", bao->trials, "Monte Carlo trials");
    ball->add_option("--seed", bao->sc.seed, "master seed");
    ball->add_option("--threads", bao->sc.threads, "worker threads");
    ball->add_option("--out", bao->sc.out, "output CSV path");
    ball->callback([bao, ball] {
        run_stats_range_ball(bao->d, bao->n, bao->beta, bao->trials, bao->sc, ball);
    });

    struct CknOpts {
        int d = 2;
        std::int64_t n = 100;
        std::string a, b;
        double delta = 0.05;
        double r = 0.5;
        double c_ckn = 0.5;
        std::uint64_t trials = 1000;
        StatsCommon sc;
    };
    auto cko = std::make_shared<CknOpts>();
    CLI::App* ckn = stats->add_subcommand("ckn", "collective range shortfall frequencies");
    ckn->add_option("--dim,--d", cko->d, "lattice dimension")->check(CLI::Range(2, 8));
    ckn->add_option("--n", cko->n, "walk length");
    ckn->add_option("--a", cko->a, "launch sites '0,0;1,0' (default origin)");
    ckn->add_option("--b", cko->b, "target sites (default 3^d box at 6 e1)");
    ckn->add_option("--delta", cko->delta, "target-coverage fraction");
    ckn->add_option("--r", cko->r, "occupation density for the occupied variant");
    ckn->add_option("--c-ckn", cko->c_ckn, "configured constant in the threshold");
    ckn->add_option("--trials", cko->trials, "Monte Carlo trials");
    ckn->add_option("--seed", cko->sc.seed, "master seed");
    ckn->add_option("--threads", cko->sc.threads, "worker threads");
    ckn->add_option("--out", cko->sc.out, "output CSV path");
    ckn->callback([cko, ckn] {
        run_stats_ckn(cko->d, cko->n, cko->a, cko->b, cko->delta, cko->r, cko->c_ckn, cko->trials,
                      cko->sc, ckn);
    });

    struct ChernoffOpts {
        double q = 0.5;
        std::int64_t n = 100;
        double c = 0.1;
        std::string schedule = "iid";
        std::uint64_t trials = 10000;
        StatsCommon sc;
    };
    auto cho = std::make_shared<ChernoffOpts>();
    CLI::App* chern = stats->add_subcommand("chernoff", "adapted indicator-sum tail check");
    chern->add_option("--q", cho->q, "conditional success cap in [0, 1]");
    chern->add_option("--n", cho->n, "number of indicators");
    chern->add_option("--c", cho->c, "tail constant in (0, 1)");
    chern->add_option("--schedule", cho->schedule,
                      "iid | alternating | adaptive | custom:p1,p2,...");
    chern->add_option("--trials", cho->trials, "Monte Carlo trials");
    chern->add_option("--seed", cho->sc.seed, "master seed");
    chern->add_option("--threads", cho->sc.threads, "worker threads");
    chern->add_option("--out", cho->sc.out, "output CSV path");
    chern->callback([cho, chern] {
        run_stats_chernoff(cho->q, cho->n, cho->c, cho->schedule, cho->trials, cho->sc, chern);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DomainTooSmall& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const EstimationFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

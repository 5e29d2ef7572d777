// End-to-end tests for the frogsim command-line tool.  The binary path
// arrives via the FROGSIM_BIN environment variable (set by ctest); every
// run writes into a per-process scratch directory with absolute --out
// paths so nothing lands in the build tree.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

#include "frog/io_util.hpp"
#include "frog/rng.hpp"

namespace fs = std::filesystem;
using namespace frog;

namespace {

std::string tool_path() {
    const char* p = std::getenv("FROGSIM_BIN");
    REQUIRE(p != nullptr);
    return std::string(p);
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("frogsim_cli_test_" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string out_path(const std::string& name) { return (scratch_dir() / name).string(); }

// Runs the tool through the shell, returns the exit status.  env_prefix
// lets a test set variables for just that invocation ("FROGSIM_SEED=9 ").
int run_tool(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + "'" + tool_path() + "' " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

// Site coordinates inside a cell use ';', so splitting rows on ',' is safe.
std::vector<std::string> cells_of(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    REQUIRE_MESSAGE(false, "missing column " << name);
    return 0;
}

std::string digest_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(bytes));
    return std::string(buf);
}

const std::string kTunedOverrides =
    " --d 2 --c-ckn 0.5 --override-exponents"
    " --scale 3 --good-box-radius 1 --good-restrict-radius 6 --good-budget 30"
    " --theta-spacing 7 --theta-in-radius 1 --theta-mid-radius 2 --theta-out-radius 3"
    " --n-r 6000 --sowing-budget 12000 --lambda-radius 10 --v-radius 1"
    " --w-budget 24000 --hit-budget 4000 --act-budget 28000"
    " --nu 400 --q-radius 2 --q-spacing 6 --gamma-threshold 8";

}  // namespace

TEST_CASE("passage: reruns are byte-identical and the manifest describes the artifact") {
    const std::string out_a = out_path("pass_a.csv");
    const std::string out_b = out_path("pass_b.csv");
    const std::string base = "passage --d 2 --r 0.4 --seed 7 --target 4,3 --out ";

    CHECK(run_tool(base + "'" + out_a + "'") == 0);
    CHECK(run_tool(base + "'" + out_b + "'") == 0);

    const std::string bytes_a = slurp_file(out_a);
    CHECK(bytes_a == slurp_file(out_b));
    CHECK(bytes_a.find('\r') == std::string::npos);

    auto lines = lines_of(bytes_a);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "d,r,seed,source,target,box_radius,horizon,value,path_len,leg_times,boundary_touch,"
          "budget_hit");
    auto header = cells_of(lines[0]);
    auto row = cells_of(lines[1]);
    REQUIRE(row.size() == header.size());
    CHECK(row[column_index(header, "seed")] == "7");
    CHECK(row[column_index(header, "source")] == "0;0");
    CHECK(row[column_index(header, "target")] == "4;3");

    nlohmann::json man = nlohmann::json::parse(slurp_file(out_a + ".manifest.json"));
    CHECK(man["subcommand"] == "passage");
    CHECK(man["seed"] == 7);
    CHECK(man["version"] == kVersion);
    REQUIRE(man["outputs"].size() == 1);
    CHECK(man["outputs"][0]["file"] == out_a);
    CHECK(man["outputs"][0]["digest"] == digest_hex(bytes_a));
}

TEST_CASE("seed resolution: flag beats environment beats the default of 1") {
    const std::string args = "passage --d 2 --r 0.4 --target 3,2 --out ";
    auto seed_cell = [&](const std::string& path) {
        auto lines = lines_of(slurp_file(path));
        REQUIRE(lines.size() == 2);
        auto header = cells_of(lines[0]);
        return cells_of(lines[1])[column_index(header, "seed")];
    };

    const std::string def = out_path("seed_default.csv");
    const std::string env = out_path("seed_env.csv");
    const std::string both = out_path("seed_both.csv");
    const std::string flag = out_path("seed_flag.csv");

    CHECK(run_tool(args + "'" + def + "'") == 0);
    CHECK(seed_cell(def) == "1");

    CHECK(run_tool(args + "'" + env + "'", "FROGSIM_SEED=99 ") == 0);
    CHECK(seed_cell(env) == "99");

    CHECK(run_tool(args + "'" + both + "' --seed 7", "FROGSIM_SEED=99 ") == 0);
    CHECK(run_tool(args + "'" + flag + "' --seed 7") == 0);
    CHECK(seed_cell(both) == "7");
    CHECK(slurp_file(both) == slurp_file(flag));
    CHECK(slurp_file(env) != slurp_file(def));

    // A malformed environment seed is a usage error, caught before output.
    const std::string bad = out_path("seed_bad.csv");
    CHECK(run_tool(args + "'" + bad + "'", "FROGSIM_SEED=notanumber ") == 2);
    CHECK(!fs::exists(bad));
}

TEST_CASE("exit codes separate usage errors, domain errors and estimation failure") {
    CHECK(run_tool("passage --target 2,0") == 2);  // missing required --r
    CHECK(run_tool("frobnicate") == 2);            // unknown subcommand
    CHECK(run_tool("") == 2);                      // a subcommand is required
    CHECK(run_tool("passage --d 9 --r 0.4 --target 2,0") == 2);
    CHECK(run_tool("passage --d 2 --r 1.5 --target 2,0 --out '" + out_path("junk.csv") + "'") ==
          2);

    // Target outside the explicit simulation box.
    CHECK(run_tool("passage --d 2 --r 0.4 --seed 3 --target 30,0 --box-radius 5 --out '" +
                   out_path("junk2.csv") + "'") == 3);

    // Horizon zero censors every trial, which is an estimation failure.
    CHECK(run_tool("mu --d 2 --r 0.5 --n-list 8 --trials 2 --fixed-horizon 0 --out '" +
                   out_path("junk3.csv") + "'") == 4);

    // Physically derived block sizes are refused at tiny r ...
    CHECK(run_tool("good --op prob --r 0.01 --trials 1 --out '" + out_path("junk4.csv") + "'") ==
          2);
    // ... and geometry overrides demand the explicit opt-in flag.
    CHECK(run_tool("good --op prob --r 0.3 --scale 3 --trials 1 --out '" + out_path("junk5.csv") +
                   "'") == 2);

    CHECK(run_tool("stats pz --d 2 --n 2 --gamma 1,0 --out '" + out_path("pz_ok.csv") + "'") == 0);
}

TEST_CASE("thread count never changes artifact bytes") {
    const std::string m1 = out_path("mu_t1.csv");
    const std::string m3 = out_path("mu_t3.csv");
    const std::string mu_args = "mu --d 2 --r 0.5 --x 1,0 --n-list 6,10 --trials 12 --seed 5";
    CHECK(run_tool(mu_args + " --threads 1 --out '" + m1 + "'") == 0);
    CHECK(run_tool(mu_args + " --threads 3 --out '" + m3 + "'") == 0);
    const std::string mu_bytes = slurp_file(m1);
    CHECK(mu_bytes == slurp_file(m3));
    CHECK(lines_of(mu_bytes).size() == 3);  // header + one row per n

    const std::string h1 = out_path("hit_t1.csv");
    const std::string h3 = out_path("hit_t3.csv");
    const std::string hit_args = "stats hit --d 2 --z 2,1 --n 9 --trials 2000 --seed 6";
    CHECK(run_tool(hit_args + " --threads 1 --out '" + h1 + "'") == 0);
    CHECK(run_tool(hit_args + " --threads 3 --out '" + h3 + "'") == 0);
    CHECK(slurp_file(h1) == slurp_file(h3));

    const std::string g1 = out_path("good_t1.csv");
    const std::string g3 = out_path("good_t3.csv");
    const std::string good_args = "good --op prob --r 0.4" + kTunedOverrides +
                                  " --trials 10 --seed 11";
    CHECK(run_tool(good_args + " --threads 1 --out '" + g1 + "'") == 0);
    CHECK(run_tool(good_args + " --threads 2 --out '" + g3 + "'") == 0);
    CHECK(slurp_file(g1) == slurp_file(g3));
}

TEST_CASE("stats pz: the exact rational table for a pinned instance") {
    const std::string out = out_path("pz_exact.csv");
    CHECK(run_tool("stats pz --d 2 --n 2 --gamma 1,0 --out '" + out + "'") == 0);
    CHECK(slurp_file(out) ==
          "op,d,n,gamma,paths,mean_numerator,mean_denominator,second_numerator,"
          "second_denominator,sup_numerator,sup_denominator,lhs_numerator,lhs_denominator,"
          "chain_holds,second_moment_holds\n"
          "pz,2,2,1;0,16,4,16,4,16,16,16,4,16,1,1\n");

    nlohmann::json man = nlohmann::json::parse(slurp_file(out + ".manifest.json"));
    CHECK(man["subcommand"] == "stats");
    CHECK(man["params"]["op"] == "pz");

    // Omitting --gamma targets the full unit shell around the origin.
    const std::string shell = out_path("pz_shell.csv");
    CHECK(run_tool("stats pz --d 2 --n 3 --out '" + shell + "'") == 0);
    auto lines = lines_of(slurp_file(shell));
    REQUIRE(lines.size() == 2);
    auto header = cells_of(lines[0]);
    CHECK(cells_of(lines[1])[column_index(header, "gamma")] ==
          "-1;-1|-1;0|-1;1|0;-1|0;1|1;-1|1;0|1;1");
}

TEST_CASE("good: override geometry audits cleanly from the command line") {
    const std::string sow = out_path("cli_sow.csv");
    CHECK(run_tool("good --op sowing --r 0.5" + kTunedOverrides + " --trials 6 --seed 1 --out '" +
                   sow + "'") == 0);
    auto sow_lines = lines_of(slurp_file(sow));
    REQUIRE(sow_lines.size() == 7);
    auto sow_header = cells_of(sow_lines[0]);
    const std::size_t c_trial = column_index(sow_header, "trial");
    const std::size_t c_seed = column_index(sow_header, "seed");
    const std::size_t c_impl = column_index(sow_header, "implication_ok");
    for (std::size_t t = 0; t + 1 < sow_lines.size(); ++t) {
        auto row = cells_of(sow_lines[t + 1]);
        REQUIRE(row.size() == sow_header.size());
        CHECK(row[c_trial] == fmt_uint(t));
        CHECK(row[c_seed] == fmt_uint(substream(1, kTagTrial, t)));
        CHECK(row[c_impl] == "1");
        CHECK(row[column_index(sow_header, "override_mode")] == "1");
    }

    const std::string act = out_path("cli_act.csv");
    CHECK(run_tool("good --op activating --r 0.5" + kTunedOverrides +
                   " --trials 2 --seed 1 --out '" + act + "'") == 0);
    auto act_lines = lines_of(slurp_file(act));
    REQUIRE(act_lines.size() == 3);
    auto act_header = cells_of(act_lines[0]);
    for (std::size_t t = 0; t + 1 < act_lines.size(); ++t) {
        auto row = cells_of(act_lines[t + 1]);
        CHECK(row[column_index(act_header, "implication_ok")] == "1");
        CHECK(row[column_index(act_header, "annuli_disjoint")] == "1");
        CHECK(row[column_index(act_header, "w_lemma_ok")] == "1");
    }

    const std::string rec = out_path("cli_rec.csv");
    CHECK(run_tool("good --op recursion --r 0.5" + kTunedOverrides +
                   " --xi 1,0 --max-index 4 --trials 3 --seed 2 --out '" + rec + "'") == 0);
    auto rec_lines = lines_of(slurp_file(rec));
    REQUIRE(rec_lines.size() == 4);
    auto rec_header = cells_of(rec_lines[0]);
    for (std::size_t t = 0; t + 1 < rec_lines.size(); ++t) {
        auto row = cells_of(rec_lines[t + 1]);
        const long sigma = std::stol(row[column_index(rec_header, "sigma_index")]);
        CHECK(sigma >= 0);
        CHECK(sigma <= 4);
        const std::string cen = row[column_index(rec_header, "censored")];
        CHECK((cen == "0" || cen == "1"));
    }
}

TEST_CASE("every remaining subcommand produces its artifact and manifest") {
    const std::string sweep = out_path("cli_sweep.json");
    CHECK(run_tool("sweep --d 2 --r-list 1.0,0.5,0.25,0.125 --n 6 --trials 8 --seed 3 --out '" +
                   sweep + "'") == 0);
    nlohmann::json sj = nlohmann::json::parse(slurp_file(sweep));
    CHECK(sj["cells"].size() == 4);
    CHECK(sj["cells"][0]["excluded"] == true);  // r = 1 has zero divergence rate
    CHECK(sj["fit"].contains("slope"));
    CHECK(fs::exists(sweep + ".manifest.json"));

    const std::string shape = out_path("cli_shape.csv");
    CHECK(run_tool("shape --d 2 --r 0.5 --t-list 4,8 --box-radius 24 --horizon 64 --seed 2 "
                   "--out '" +
                   shape + "'") == 0);
    CHECK(lines_of(slurp_file(shape)).size() >= 2);
    CHECK(fs::exists(shape + ".manifest.json"));

    const std::string chain = out_path("cli_chain.csv");
    CHECK(run_tool("chain-check --d 2 --r 0.4 --spec 3,2,2 --trials 40 --seed 4 "
                   "--leg-horizon 400 --box-radius 12 --out '" +
                   chain + "'") == 0);
    CHECK(lines_of(slurp_file(chain)).size() == 41);  // header + one row per trial
    CHECK(fs::exists(chain + ".manifest.json"));
}

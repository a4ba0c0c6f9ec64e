#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "roughsig/gen.hpp"
#include "roughsig/io.hpp"
#include "roughsig/signature.hpp"

using namespace roughsig;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("roughsig_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Runs the tool through the shell so env-var prefixes and quoting work.
CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    fs::path out_file = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    fs::path err_file = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = env_prefix + " " + std::string(ROUGHSIG_CLI_PATH) + " " + args +
                      " >" + out_file.string() + " 2>" + err_file.string();
    int status = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

std::string fixture(const char* name) {
    return std::string(ROUGHSIG_FIXTURES_DIR) + "/" + name;
}

} // namespace

TEST_CASE("line segment signature is the exponential series", "[cli]") {
    fs::path csv = scratch_dir() / "line.csv";
    {
        std::ofstream f(csv);
        f << "0,0,0\n1,1,0\n";
    }
    auto r = run_cli("sig --input " + csv.string() + " --level 3");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["dimension"] == 2);
    const auto& c = j["coefficients"];
    REQUIRE(c[""].get<double>() == 1.0);
    REQUIRE(c["1"].get<double>() == 1.0);
    REQUIRE(c["1,1"].get<double>() == 0.5);
    REQUIRE(c["1,1,1"].get<double>() == 1.0 / 6.0);
    REQUIRE(c["2"].get<double>() == 0.0);
    REQUIRE(c["1,2"].get<double>() == 0.0);
    REQUIRE(j["metadata"]["grouplike_defect"].get<double>() < 1e-12);
}

TEST_CASE("constant path has a trivial signature", "[cli]") {
    fs::path csv = scratch_dir() / "const.csv";
    {
        std::ofstream f(csv);
        f << "0,2,3\n0.5,2,3\n1,2,3\n";
    }
    auto r = run_cli("sig --input " + csv.string() + " --level 3");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    for (const auto& [word, value] : j["coefficients"].items()) {
        if (word.empty())
            REQUIRE(value.get<double>() == 1.0);
        else
            REQUIRE(value.get<double>() == 0.0);
    }
}

TEST_CASE("spiral fixture accumulates area pi", "[cli]") {
    auto r = run_cli("sig --input " + fixture("spiral.csv") + " --level 2");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    double anti = 0.5 * (j["coefficients"]["1,2"].get<double>() -
                         j["coefficients"]["2,1"].get<double>());
    REQUIRE(std::abs(anti - std::acos(-1.0)) < 1e-2);
}

TEST_CASE("gen output feeds back into sig with exact coefficients", "[cli]") {
    fs::path dir = scratch_dir() / "roundtrip";
    auto g = run_cli("gen bm --d 2 --n 32 --T 1 --seed 77 --count 1 --out " + dir.string());
    REQUIRE(g.exit_code == 0);
    auto summary = nlohmann::json::parse(g.out);
    REQUIRE(summary["files"][0] == "bm_0000.csv");

    GenSpec spec;
    spec.d = 2;
    spec.n = 32;
    spec.T = 1.0;
    spec.seed = 77;
    spec.kind = GenKind::bm;
    Signature expected = signature(sample_bm(spec), 3);

    auto r = run_cli("sig --input " + (dir / "bm_0000.csv").string() + " --level 3");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    for (int k = 0; k <= 3; ++k) {
        const auto& lvl = expected.levels[static_cast<std::size_t>(k)];
        for (std::size_t idx = 0; idx < lvl.size(); ++idx) {
            std::string key = format_word(index_to_word(idx, k, 2));
            REQUIRE(j["coefficients"][key].get<double>() == lvl[idx]);
        }
    }
}

TEST_CASE("seed comes from the environment unless the flag wins", "[cli]") {
    fs::path d1 = scratch_dir() / "seed_env";
    fs::path d2 = scratch_dir() / "seed_flag";
    fs::path d3 = scratch_dir() / "seed_both";
    REQUIRE(run_cli("gen bm --d 1 --n 8 --seed 31 --count 1 --out " + d1.string()).exit_code == 0);
    REQUIRE(run_cli("gen bm --d 1 --n 8 --count 1 --out " + d2.string(),
                    "ROUGHSIG_SEED=31").exit_code == 0);
    REQUIRE(run_cli("gen bm --d 1 --n 8 --seed 31 --count 1 --out " + d3.string(),
                    "ROUGHSIG_SEED=99").exit_code == 0);
    REQUIRE(slurp(d1 / "bm_0000.csv") == slurp(d2 / "bm_0000.csv"));
    REQUIRE(slurp(d1 / "bm_0000.csv") == slurp(d3 / "bm_0000.csv"));
}

TEST_CASE("canonical lift endpoint matches the signature report", "[cli]") {
    auto lift = run_cli("lift --input " + fixture("l_path.csv") + " --level 2");
    REQUIRE(lift.exit_code == 0);
    auto jl = nlohmann::json::parse(lift.out);
    REQUIRE(jl["metadata"]["chen_defect"].get<double>() <= 1e-10);

    auto sig = run_cli("sig --input " + fixture("l_path.csv") + " --level 2");
    auto js = nlohmann::json::parse(sig.out);
    const auto& endpoint = jl["group"].back();
    for (const auto& [word, value] : js["coefficients"].items())
        REQUIRE(endpoint[word].get<double>() == value.get<double>());
}

TEST_CASE("ito and strat lifts differ only in the symmetric level-2 part", "[cli]") {
    std::string input = fixture("brownian/bm_0000.csv");
    auto ji = nlohmann::json::parse(run_cli("lift --input " + input + " --variant ito").out);
    auto js = nlohmann::json::parse(run_cli("lift --input " + input + " --variant strat").out);
    const auto& gi = ji["group"].back();
    const auto& gs = js["group"].back();
    for (const char* w : {"1", "2"})
        REQUIRE(gi[w].get<double>() == gs[w].get<double>());
    double anti_i = gi["1,2"].get<double>() - gi["2,1"].get<double>();
    double anti_s = gs["1,2"].get<double>() - gs["2,1"].get<double>();
    REQUIRE(std::abs(anti_i - anti_s) < 1e-12);
    double sym_gap = (gs["1,2"].get<double>() + gs["2,1"].get<double>()) -
                     (gi["1,2"].get<double>() + gi["2,1"].get<double>());
    REQUIRE(std::abs(sym_gap) > 1e-3);
}

TEST_CASE("pvar subcommand reports the staircase total rise", "[cli]") {
    auto r = run_cli("pvar --input " + fixture("staircase.csv") + " --p 1");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["p_variation"].get<double>() == Catch::Approx(3.0).margin(1e-12));

    auto rough = run_cli("pvar --input " + fixture("l_path.csv") +
                         " --p 2.5 --rough --level 2");
    REQUIRE(rough.exit_code == 0);
    auto jr = nlohmann::json::parse(rough.out);
    REQUIRE(jr["p_variation"].get<double>() > 0.0);
}

TEST_CASE("expected_sig averages an identical ensemble to its member", "[cli]") {
    fs::path dir = scratch_dir() / "ensemble";
    fs::create_directories(dir);
    for (const char* name : {"a.csv", "b.csv"}) {
        std::ofstream f(dir / name);
        f << "0,0,0\n0.5,1,0\n1,1,1\n";
    }
    auto r = run_cli("expected_sig --glob '" + (dir / "*.csv").string() + "' --level 2");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["count"] == 2);
    REQUIRE(j["coefficients"]["1,2"].get<double>() == 1.0);
    REQUIRE(j["coefficients"]["2,1"].get<double>() == 0.0);
    REQUIRE(j["radius"].size() == 2);

    auto empty = run_cli("expected_sig --glob '" + (dir / "nope_*.csv").string() +
                         "' --level 2");
    REQUIRE(empty.exit_code == 2);
}

TEST_CASE("rde subcommand solves the rotation field", "[cli]") {
    fs::path driver = scratch_dir() / "driver.csv";
    {
        std::ofstream f(driver);
        for (int k = 0; k <= 512; ++k) {
            double t = static_cast<double>(k) / 512.0;
            f << format_double(t) << "," << format_double(t) << "\n";
        }
    }
    fs::path field = scratch_dir() / "rot.json";
    {
        std::ofstream f(field);
        f << R"({"kind":"linear","state_dim":2,"driver_dim":1,)"
          << R"("matrices":[[[0,-1],[1,0]]]})";
    }
    fs::path y0 = scratch_dir() / "y0.csv";
    {
        std::ofstream f(y0);
        f << "1,0\n";
    }
    for (const char* method : {"euler", "picard"}) {
        auto r = run_cli("rde --driver " + driver.string() + " --field " + field.string() +
                         " --y0 " + y0.string() + " --method " + method + " --level 2");
        REQUIRE(r.exit_code == 0);
        auto j = nlohmann::json::parse(r.out);
        auto term = j["terminal"].get<std::vector<double>>();
        REQUIRE(std::abs(term[0] - std::cos(1.0)) < 1e-5);
        REQUIRE(std::abs(term[1] - std::sin(1.0)) < 1e-5);
        // rotation preserves the norm; the geometric lift keeps that exact
        REQUIRE(std::abs(term[0] * term[0] + term[1] * term[1] - 1.0) < 1e-6);
    }
}

TEST_CASE("exit codes separate input and numerical failures", "[cli]") {
    REQUIRE(run_cli("sig --input does_not_exist.csv --level 2").exit_code == 2);
    REQUIRE(run_cli("sig --input " + fixture("l_path.csv") + " --level 0").exit_code == 2);
    REQUIRE(run_cli("nonsense_subcommand").exit_code == 2);

    fs::path bad = scratch_dir() / "bad.csv";
    {
        std::ofstream f(bad);
        f << "t,x\n0,1\n1,oops\n";
    }
    auto r = run_cli("sig --input " + bad.string() + " --level 2 --json-errors");
    REQUIRE(r.exit_code == 2);
    auto j = nlohmann::json::parse(r.err);
    REQUIRE(j["error"]["type"] == "input");
    REQUIRE(j["error"]["row"] == 3);
    REQUIRE(j["error"]["col"] == 2);

    // y' = y^2 against a long linear driver passes its blow-up time
    fs::path driver = scratch_dir() / "blow_driver.csv";
    {
        std::ofstream f(driver);
        for (int k = 0; k <= 64; ++k) {
            double t = 2.0 * static_cast<double>(k) / 64.0;
            f << format_double(t) << "," << format_double(t) << "\n";
        }
    }
    fs::path field = scratch_dir() / "square.json";
    {
        std::ofstream f(field);
        f << R"({"kind":"polynomial","state_dim":1,"driver_dim":1,)"
          << R"("terms":[{"out":0,"coord":0,"c":1.0,"powers":[2]}]})";
    }
    fs::path y0 = scratch_dir() / "one.csv";
    {
        std::ofstream f(y0);
        f << "1\n";
    }
    auto blow = run_cli("rde --driver " + driver.string() + " --field " + field.string() +
                        " --y0 " + y0.string() + " --method euler --level 1 --json-errors");
    REQUIRE(blow.exit_code == 3);
    auto je = nlohmann::json::parse(blow.err);
    REQUIRE(je["error"]["type"] == "numerical");
}

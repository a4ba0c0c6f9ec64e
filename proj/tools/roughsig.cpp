#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <fnmatch.h>

#include <CLI11.hpp>

#include "roughsig/roughsig.hpp"

using namespace roughsig;
namespace fs = std::filesystem;

namespace {

nlohmann::json coefficients_json(const TruncatedTensor& g) {
    nlohmann::json out = nlohmann::json::object();
    for (int k = 0; k <= g.level; ++k) {
        const auto& lvl = g.levels[static_cast<std::size_t>(k)];
        for (std::size_t idx = 0; idx < lvl.size(); ++idx)
            out[format_word(index_to_word(idx, k, g.dim))] = lvl[idx];
    }
    return out;
}

void emit_report(const std::string& out_path, const nlohmann::json& report) {
    if (out_path.empty())
        std::cout << dump_json(report) << "\n";
    else
        write_json_file(out_path, report);
}

void check_level(int level, int cap = kDefaultLevelCap) {
    if (level < 1 || level > cap)
        throw InputError("level must lie in [1, " + std::to_string(cap) + "]");
}

void cmd_sig(const std::string& input, int level, bool do_log, bool no_time,
             const std::string& out) {
    check_level(level);
    PathSamples x = read_path_csv_file(input, !no_time);
    Signature sig = signature(x, level);

    nlohmann::json report;
    report["dimension"] = sig.dim;
    report["level"] = level;
    nlohmann::json meta;
    meta["grid_size"] = x.size();
    meta["grouplike_defect"] = grouplike_defect(sig);
    if (do_log) {
        LyndonBasis basis(sig.dim, level);
        LogSignature ls = log_signature(sig, basis);
        nlohmann::json coords = nlohmann::json::object();
        for (int k = 1; k <= level; ++k)
            for (const auto& [w, c] : ls.coords[static_cast<std::size_t>(k)])
                coords[format_word(w)] = c;
        report["coefficients"] = std::move(coords);
        meta["residual"] = ls.residual;
    } else {
        report["coefficients"] = coefficients_json(sig);
    }
    report["metadata"] = std::move(meta);
    emit_report(out, report);
}

// The Chen identity is checked on a stride subsample: the full triple scan is
// cubic in the grid size, and subsampled points keep their exact increments.
double trajectory_chen_defect(const RoughPathGrid& rp, std::size_t max_points = 80) {
    if (rp.size() <= max_points) return chen_defect(rp);
    RoughPathGrid sub;
    sub.dim = rp.dim;
    sub.level = rp.level;
    const std::size_t stride = (rp.size() - 1 + max_points - 1) / max_points;
    for (std::size_t i = 0; i < rp.size(); i += stride) {
        sub.times.push_back(rp.times[i]);
        sub.g.push_back(rp.g[i]);
    }
    if (sub.times.back() != rp.times.back()) {
        sub.times.push_back(rp.times.back());
        sub.g.push_back(rp.g.back());
    }
    return chen_defect(sub);
}

void cmd_lift(const std::string& input, int level, const std::string& variant,
              bool no_time, const std::string& out) {
    PathSamples x = read_path_csv_file(input, !no_time);
    RoughPathGrid rp;
    if (variant == "canonical") {
        check_level(level);
        rp = lift_piecewise_linear(x, level);
    } else {
        if (level != 2)
            throw InputError("ito and strat lifts are level-2 constructions");
        rp = brownian_lift(x, variant == "ito" ? BrownianVariant::ito
                                               : BrownianVariant::stratonovich);
    }

    nlohmann::json report;
    report["dimension"] = rp.dim;
    report["level"] = rp.level;
    report["variant"] = variant;
    report["times"] = rp.times;
    nlohmann::json group = nlohmann::json::array();
    for (const auto& g : rp.g) group.push_back(coefficients_json(g));
    report["group"] = std::move(group);
    report["metadata"] = {{"grid_size", rp.size()},
                          {"chen_defect", trajectory_chen_defect(rp)}};
    emit_report(out, report);
}

void cmd_rde(const std::string& driver, const std::string& field_file,
             const std::string& y0_file, const std::string& method, int level,
             bool no_time, const std::string& out) {
    check_level(level);
    PathSamples x = read_path_csv_file(driver, !no_time);
    auto f = vector_field_from_json(parse_json_file(field_file));
    std::vector<double> y0 = read_vector_csv_file(y0_file);
    RoughPathGrid X = lift_piecewise_linear(x, level);

    nlohmann::json report;
    report["method"] = method;
    report["level"] = level;
    if (method == "euler") {
        RDESolution sol = solve_rde_euler(*f, X, y0, level);
        if (sol.blew_up())
            throw NumericalError("euler solution blew up at step " +
                                 std::to_string(sol.blow_up_step));
        report["times"] = sol.times;
        report["values"] = sol.y;
        report["terminal"] = sol.y.back();
    } else {
        PicardSolution sol = solve_rde_picard(*f, X, y0, 50, 1e-12);
        report["times"] = sol.path.times;
        report["values"] = sol.path.comps[0];
        report["terminal"] = sol.path.comps[0].back();
        report["iterations"] = sol.iterations;
        report["last_delta"] = sol.last_delta;
    }
    emit_report(out, report);
}

void cmd_pvar(const std::string& input, double p, bool rough, int level, bool no_time,
              const std::string& out) {
    PathSamples x = read_path_csv_file(input, !no_time);
    nlohmann::json report;
    report["p"] = p;
    if (rough) {
        check_level(level);
        report["level"] = level;
        report["p_variation"] = rough_pvar(lift_piecewise_linear(x, level), p);
    } else {
        report["p_variation"] = p_variation(x, p);
    }
    emit_report(out, report);
}

std::vector<std::string> glob_files(const std::string& pattern) {
    const std::size_t slash = pattern.find_last_of('/');
    const std::string dir = slash == std::string::npos ? "." : pattern.substr(0, slash);
    const std::string base = slash == std::string::npos ? pattern : pattern.substr(slash + 1);
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (fnmatch(base.c_str(), name.c_str(), 0) == 0)
            files.push_back(entry.path().string());
    }
    if (ec) throw InputError("cannot read directory " + dir + ": " + ec.message());
    std::sort(files.begin(), files.end());
    return files;
}

void cmd_expected_sig(const std::string& pattern, int level, bool no_time,
                      const std::string& out) {
    check_level(level);
    std::vector<std::string> files = glob_files(pattern);
    if (files.empty()) throw InputError("glob '" + pattern + "' matched no files");

    std::vector<Signature> sigs(files.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mtx;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            try {
                sigs[i] = signature(read_path_csv_file(files[i], !no_time), level);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mtx);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    const std::size_t n_threads =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), files.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    for (const auto& s : sigs)
        if (s.dim != sigs.front().dim)
            throw InputError("ensemble members have mixed dimensions");

    ExpectedSignature es = expected_signature(sigs);
    nlohmann::json report;
    report["dimension"] = es.mean.dim;
    report["level"] = level;
    report["count"] = files.size();
    report["files"] = files;
    report["coefficients"] = coefficients_json(es.mean);
    report["radius"] = es.radius;
    emit_report(out, report);
}

void cmd_gen(const std::string& kind, int d, int n, double T, double H,
             std::uint64_t seed, int count, const std::string& out_dir) {
    if (count < 1) throw InputError("count must be positive");
    GenSpec spec;
    spec.d = d;
    spec.n = n;
    spec.T = T;
    spec.seed = seed;
    spec.H = H;
    spec.kind = kind == "bm" ? GenKind::bm : GenKind::fbm;
    spec.validate();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw InputError("cannot create directory " + out_dir + ": " + ec.message());

    nlohmann::json files = nlohmann::json::array();
    for (int c = 0; c < count; ++c) {
        char name[32];
        std::snprintf(name, sizeof(name), "%s_%04d.csv", kind.c_str(), c);
        PathSamples p = sample_path(spec, static_cast<std::uint64_t>(c));
        write_path_csv_file(out_dir + "/" + name, p);
        files.push_back(std::string(name));
    }

    nlohmann::json report;
    report["kind"] = kind;
    report["d"] = d;
    report["n"] = n;
    report["T"] = T;
    if (spec.kind == GenKind::fbm) report["H"] = H;
    report["seed"] = seed;
    report["count"] = count;
    report["dir"] = out_dir;
    report["files"] = std::move(files);
    std::cout << dump_json(report) << "\n";
}

void emit_error(bool json_errors, const char* type, const std::string& message,
                long row = -1, long col = -1) {
    if (json_errors) {
        nlohmann::json e;
        e["type"] = type;
        e["message"] = message;
        if (row >= 0) e["row"] = row;
        if (col >= 0) e["col"] = col;
        std::cerr << nlohmann::json{{"error", e}}.dump() << "\n";
    } else {
        std::cerr << "roughsig: " << message << "\n";
    }
}

int run(int argc, char** argv, bool json_errors) {
    CLI::App app{"rough-path and path-signature toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json_errors_flag = false;
    app.add_flag("--json-errors", json_errors_flag, "emit errors as JSON on stderr");

    auto* sig = app.add_subcommand("sig", "signature of a CSV path");
    std::string sig_input, sig_out;
    int sig_level = 0;
    bool sig_log = false, sig_no_time = false;
    sig->add_option("--input", sig_input, "CSV path file")->required();
    sig->add_option("--level", sig_level, "truncation level")->required();
    sig->add_flag("--log", sig_log, "log-signature in Lyndon coordinates");
    sig->add_flag("--no-time", sig_no_time, "no time column; uniform grid on [0,1]");
    sig->add_option("--out", sig_out, "output JSON file (default stdout)");
    sig->callback([&] { cmd_sig(sig_input, sig_level, sig_log, sig_no_time, sig_out); });

    auto* lift = app.add_subcommand("lift", "lift a CSV path to a rough-path trajectory");
    std::string lift_input, lift_variant = "canonical", lift_out;
    int lift_level = 2;
    bool lift_no_time = false;
    lift->add_option("--input", lift_input, "CSV path file")->required();
    lift->add_option("--level", lift_level, "truncation level (2 for ito/strat)");
    lift->add_option("--variant", lift_variant, "canonical, ito, or strat")
        ->check(CLI::IsMember({"canonical", "ito", "strat"}));
    lift->add_flag("--no-time", lift_no_time, "no time column; uniform grid on [0,1]");
    lift->add_option("--out", lift_out, "output JSON file (default stdout)");
    lift->callback(
        [&] { cmd_lift(lift_input, lift_level, lift_variant, lift_no_time, lift_out); });

    auto* rde = app.add_subcommand("rde", "solve dY = f(Y) dX along a lifted driver");
    std::string rde_driver, rde_field, rde_y0, rde_method = "euler", rde_out;
    int rde_level = 2;
    bool rde_no_time = false;
    rde->add_option("--driver", rde_driver, "CSV driver path")->required();
    rde->add_option("--field", rde_field, "vector field JSON file")->required();
    rde->add_option("--y0", rde_y0, "CSV initial condition")->required();
    rde->add_option("--method", rde_method, "euler or picard")
        ->check(CLI::IsMember({"euler", "picard"}));
    rde->add_option("--level", rde_level, "lift level and scheme order");
    rde->add_flag("--no-time", rde_no_time, "no time column; uniform grid on [0,1]");
    rde->add_option("--out", rde_out, "output JSON file (default stdout)");
    rde->callback([&] {
        cmd_rde(rde_driver, rde_field, rde_y0, rde_method, rde_level, rde_no_time, rde_out);
    });

    auto* pvar = app.add_subcommand("pvar", "p-variation of a CSV path");
    std::string pvar_input, pvar_out;
    double pvar_p = 1.0;
    bool pvar_rough = false, pvar_no_time = false;
    int pvar_level = 2;
    pvar->add_option("--input", pvar_input, "CSV path file")->required();
    pvar->add_option("--p", pvar_p, "variation exponent")->required();
    pvar->add_flag("--rough", pvar_rough, "rough-path p-variation of the lift");
    pvar->add_option("--level", pvar_level, "lift level with --rough");
    pvar->add_flag("--no-time", pvar_no_time, "no time column; uniform grid on [0,1]");
    pvar->add_option("--out", pvar_out, "output JSON file (default stdout)");
    pvar->callback([&] {
        cmd_pvar(pvar_input, pvar_p, pvar_rough, pvar_level, pvar_no_time, pvar_out);
    });

    auto* esig = app.add_subcommand("expected_sig", "ensemble mean signature over a glob");
    std::string esig_glob, esig_out;
    int esig_level = 0;
    bool esig_no_time = false;
    esig->add_option("--glob", esig_glob, "filename pattern, wildcards in the basename")
        ->required();
    esig->add_option("--level", esig_level, "truncation level")->required();
    esig->add_flag("--no-time", esig_no_time, "no time column; uniform grid on [0,1]");
    esig->add_option("--out", esig_out, "output JSON file (default stdout)");
    esig->callback([&] { cmd_expected_sig(esig_glob, esig_level, esig_no_time, esig_out); });

    auto* gen = app.add_subcommand("gen", "sample Brownian or fractional Brownian paths");
    std::string gen_kind, gen_out_dir;
    int gen_d = 1, gen_n = 1, gen_count = 1;
    double gen_T = 1.0, gen_H = 0.5;
    std::uint64_t gen_seed = 0;
    gen->add_option("kind", gen_kind, "bm or fbm")
        ->required()
        ->check(CLI::IsMember({"bm", "fbm"}));
    gen->add_option("--d", gen_d, "dimension");
    gen->add_option("--n", gen_n, "number of steps")->required();
    gen->add_option("--T", gen_T, "time horizon");
    gen->add_option("--H", gen_H, "Hurst index (fbm)");
    auto* seed_opt = gen->add_option("--seed", gen_seed, "base RNG seed");
    gen->add_option("--count", gen_count, "number of trajectories");
    gen->add_option("--out", gen_out_dir, "output directory")->required();
    gen->callback([&] {
        if (seed_opt->count() == 0) {
            if (const char* env = std::getenv("ROUGHSIG_SEED")) {
                try {
                    gen_seed = std::stoull(env);
                } catch (const std::exception&) {
                    throw InputError("ROUGHSIG_SEED is not an integer");
                }
            }
        }
        cmd_gen(gen_kind, gen_d, gen_n, gen_T, gen_H, gen_seed, gen_count, gen_out_dir);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_error(json_errors, "input", e.what());
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    bool json_errors = false;
    for (int i = 1; i < argc; ++i)
        if (std::string_view(argv[i]) == "--json-errors") json_errors = true;
    try {
        return run(argc, argv, json_errors);
    } catch (const InputError& e) {
        emit_error(json_errors, "input", e.what(), e.row, e.col);
        return 2;
    } catch (const NumericalError& e) {
        emit_error(json_errors, "numerical", e.what());
        return 3;
    } catch (const nlohmann::json::exception& e) {
        emit_error(json_errors, "input", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(json_errors, "input", e.what());
        return 2;
    }
}

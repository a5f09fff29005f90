#include "swts/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swts/config.hpp"
#include "swts/errors.hpp"
#include "swts/harness.hpp"
#include "swts/selftest.hpp"
#include "swts/structure_report.hpp"
#include "swts/svg_plot.hpp"
#include "swts/trajectory_io.hpp"

namespace swts::cli {

namespace fs = std::filesystem;

namespace {

using nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

fs::path resolve_out(const ExperimentConfig& cfg, const std::optional<fs::path>& out_dir) {
    if (out_dir) return *out_dir;
    if (cfg.output_dir) return *cfg.output_dir;
    throw ConfigError("no output directory: pass --out or set output_dir in the config");
}

std::string file_stem_for(const PolicyConfig& p, std::size_t index, std::size_t count) {
    if (count == 1) return "regret";
    return "regret_" + std::to_string(index + 1) + "_" + std::string(to_string(p.kind));
}

// Loads, overrides, builds and validates; prints warnings.
std::pair<ExperimentConfig, RewardTrajectory> prepare(const fs::path& config_path, const char* seed_override,
                                                      Streams io) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_seed_override(cfg, seed_override);
    RewardTrajectory traj = build_environment(cfg);
    for (const auto& w : validate_experiment(cfg, traj)) io.err << "warning: " << w << '\n';
    return {std::move(cfg), std::move(traj)};
}

template <class F>
int guarded(Streams io, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        io.err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const ParameterError& e) {
        io.err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const ContractError& e) {
        io.err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const IoError& e) {
        io.err << "I/O error: " << e.what() << '\n';
        return exit_io_error;
    }
}

}  // namespace

int cmd_simulate(const fs::path& config_path, const std::optional<fs::path>& out_dir, std::size_t jobs, Streams io,
                 const char* seed_override) {
    return guarded(io, [&] {
        auto [cfg, traj] = prepare(config_path, seed_override, io);
        if (cfg.policies.empty()) throw ConfigError("config.policies must list at least one policy");
        const fs::path out = resolve_out(cfg, out_dir);
        ensure_dir(out);

        ordered_json summary;
        summary["command"] = "simulate";
        summary["timestamp"] = cfg.timestamp;
        summary["seed"] = cfg.seed;
        summary["replications"] = cfg.replications;
        summary["horizon"] = traj.horizon();
        summary["arms"] = traj.arms();
        summary["family"] = ordered_json::parse(family_json(traj.family()));
        summary["policies"] = ordered_json::array();

        std::vector<PlotSeries> series;
        for (std::size_t k = 0; k < cfg.policies.size(); ++k) {
            const PolicyConfig& p = cfg.policies[k];
            const Aggregate agg = run_replications(p, traj, cfg.replications, cfg.seed, jobs);
            const std::string file = file_stem_for(p, k, cfg.policies.size()) + ".csv";
            std::ostringstream csv;
            write_regret_csv(csv, agg);
            write_file(out / file, csv.str());

            ordered_json entry;
            entry["policy"] = describe(p);
            if (p.kind == PolicyKind::gamma_swgts || p.kind == PolicyKind::stationary_gts) {
                entry["gamma"] = resolve_gamma(p, traj.family());
            }
            entry["fingerprint"] = hex64(agg.fingerprint);
            entry["file"] = file;
            entry["final_regret"] = agg.final_regret();
            entry["final_stderr"] = agg.final_stderr();
            entry["mean_pulls"] = agg.mean_pulls;
            entry["mean_suboptimal_pulls"] = agg.mean_suboptimal_pulls;
            summary["policies"].push_back(std::move(entry));

            PlotSeries s;
            s.label = describe(p);
            std::vector<double> band;
            for (std::size_t t : decimated_rounds(traj.horizon(), 512)) {
                s.x.push_back(static_cast<double>(t));
                s.y.push_back(agg.mean_regret[t - 1]);
                band.push_back(agg.stderr_regret[t - 1]);
            }
            s.band = std::move(band);
            series.push_back(std::move(s));
            io.out << describe(p) << ": final regret " << agg.final_regret() << " +/- " << agg.final_stderr()
                   << " -> " << (out / file).string() << '\n';
        }
        write_file(out / "summary.json", summary.dump(2) + "\n");
        PlotSpec spec{"Mean cumulative dynamic regret (n=" + std::to_string(cfg.replications) + ")", "round t",
                      "regret", cfg.plot.log_x, cfg.plot.log_y};
        write_file(out / "regret.svg", render_svg(spec, series));
        return static_cast<int>(exit_ok);
    });
}

int cmd_sweep(const fs::path& config_path, const std::optional<fs::path>& out_dir, std::size_t jobs, Streams io,
              const char* seed_override) {
    return guarded(io, [&] {
        auto [cfg, traj] = prepare(config_path, seed_override, io);
        if (!cfg.sweep) throw ConfigError("config.sweep is required for the sweep command");
        const fs::path out = resolve_out(cfg, out_dir);
        ensure_dir(out);
        const auto rows = tau_sweep(cfg.sweep->policy, traj, cfg.sweep->taus, cfg.replications, cfg.seed, jobs);

        std::ostringstream csv;
        write_sweep_csv(csv, rows, traj.arms());
        write_file(out / "sweep.csv", csv.str());

        ordered_json summary;
        summary["command"] = "sweep";
        summary["timestamp"] = cfg.timestamp;
        summary["seed"] = cfg.seed;
        summary["replications"] = cfg.replications;
        summary["horizon"] = traj.horizon();
        summary["arms"] = traj.arms();
        summary["policy"] = std::string(to_string(cfg.sweep->policy.kind));
        summary["rows"] = ordered_json::array();
        PlotSeries s;
        s.label = std::string(to_string(cfg.sweep->policy.kind));
        s.markers = true;
        std::vector<double> band;
        for (const SweepRow& r : rows) {
            summary["rows"].push_back({{"tau", r.tau},
                                       {"final_regret", r.final_regret},
                                       {"stderr", r.stderr_regret},
                                       {"fingerprint", hex64(r.fingerprint)}});
            s.x.push_back(static_cast<double>(r.tau));
            s.y.push_back(r.final_regret);
            band.push_back(r.stderr_regret);
            io.out << "tau=" << r.tau << ": final regret " << r.final_regret << " +/- " << r.stderr_regret << '\n';
        }
        s.band = std::move(band);
        write_file(out / "summary.json", summary.dump(2) + "\n");
        PlotSpec spec{"Final regret vs window length", "tau", "final regret", true, cfg.plot.log_y};
        write_file(out / "sweep.svg", render_svg(spec, {s}));
        return static_cast<int>(exit_ok);
    });
}

int cmd_analyze(const AnalyzeOptions& options, Streams io) {
    return guarded(io, [&] {
        if (options.taus.empty()) throw ConfigError("--tau needs at least one window length");
        if (!fs::exists(options.trajectory)) {
            throw ConfigError("trajectory file not found: " + options.trajectory.string());
        }
        RewardTrajectory traj = [&] {
            try {
                return load_trajectory(options.trajectory);
            } catch (const IoError& e) {
                throw ConfigError(e.what());
            }
        }();
        ReportOptions ro;
        ro.delta_prime = options.delta_prime;
        if (options.cap_scale || options.cap_exponent) {
            ro.cap = PolynomialCap{options.cap_scale.value_or(1.0), options.cap_exponent.value_or(1.0)};
        }
        ro.gamma = default_gamma(traj.family());
        ensure_dir(options.out_dir);
        for (std::size_t tau : options.taus) {
            if (tau < 1) throw ConfigError("window lengths must be at least 1");
            const StructureReport report = build_structure_report(traj, tau, ro);
            const fs::path file = options.out_dir / ("structure_tau_" + std::to_string(tau) + ".json");
            write_file(file, to_json(report) + "\n");
            io.out << "tau=" << tau << ": upsilon_T=" << report.breakpoints.upsilon
                   << " |F'_tau|=" << mask_count(report.f_tau_prime) << " delta_tau="
                   << (report.delta_tau ? std::to_string(*report.delta_tau) : std::string("undefined")) << " -> "
                   << file.string() << '\n';
        }
        return static_cast<int>(exit_ok);
    });
}

int cmd_validate(const fs::path& config_path, Streams io, const char* seed_override) {
    return guarded(io, [&] {
        auto [cfg, traj] = prepare(config_path, seed_override, io);
        io.out << "config OK: K=" << traj.arms() << " T=" << traj.horizon() << " policies=" << cfg.policies.size()
               << (cfg.sweep ? " sweep=" + std::to_string(cfg.sweep->taus.size()) + " windows" : std::string()) << '\n';
        return static_cast<int>(exit_ok);
    });
}

int cmd_selftest(Streams io) {
    bool ok = true;
    for (const SelfCheck& c : run_selftest()) {
        io.out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        ok = ok && c.passed;
    }
    return ok ? exit_ok : exit_selftest_failed;
}

int run(int argc, const char* const* argv, Streams io) {
    CLI::App app{"Sliding-window Thompson sampling experiments for restless bandits"};
    app.require_subcommand(1);
    std::size_t jobs = 0;
    app.add_option("--jobs", jobs, "Worker threads for replications (0 = logical cores)");

    fs::path config;
    std::optional<fs::path> out;
    auto* simulate = app.add_subcommand("simulate", "Run replications of every configured policy");
    simulate->add_option("--config", config, "Experiment config (JSON)")->required();
    simulate->add_option("--out", out, "Output directory");

    auto* sweep = app.add_subcommand("sweep", "Sweep the window length of one policy");
    sweep->add_option("--config", config, "Experiment config (JSON)")->required();
    sweep->add_option("--out", out, "Output directory");

    AnalyzeOptions analyze_opts;
    std::string tau_list;
    auto* analyze = app.add_subcommand("analyze", "Structural analysis of a trajectory file");
    analyze->add_option("--traj", analyze_opts.trajectory, "Trajectory CSV (family sidecar alongside)")->required();
    analyze->add_option("--tau", tau_list, "Comma-separated window lengths")->required();
    analyze->add_option("--delta-prime", analyze_opts.delta_prime, "Gap threshold for the smooth-setting checks");
    analyze->add_option("--cap-scale", analyze_opts.cap_scale, "F in the |F_{Delta',T}| <= F T^beta check");
    analyze->add_option("--cap-exponent", analyze_opts.cap_exponent, "beta in the |F_{Delta',T}| <= F T^beta check");
    analyze->add_option("--out", analyze_opts.out_dir, "Output directory")->required();

    auto* validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("--config", config, "Experiment config (JSON)")->required();

    app.add_subcommand("selftest", "Run the fast invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            io.out << app.help();
            return exit_ok;
        }
        io.err << e.what() << '\n';
        return exit_config_error;
    }

    const char* seed_override = std::getenv("BANDIT_SEED");
    if (*simulate) return cmd_simulate(config, out, jobs, io, seed_override);
    if (*sweep) return cmd_sweep(config, out, jobs, io, seed_override);
    if (*validate) return cmd_validate(config, io, seed_override);
    if (*analyze) {
        std::stringstream ss(tau_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                const long long v = std::stoll(item, &pos);
                if (pos != item.size() || v < 1) throw std::invalid_argument(item);
                analyze_opts.taus.push_back(static_cast<std::size_t>(v));
            } catch (const std::exception&) {
                io.err << "config error: bad window length '" << item << "' in --tau\n";
                return exit_config_error;
            }
        }
        return cmd_analyze(analyze_opts, io);
    }
    return cmd_selftest(io);
}

}  // namespace swts::cli

// Command-line front end: runs regulation-game experiments from JSON configs
// and writes plot-ready CSV traces plus JSON summaries. Every command echoes
// its fully-resolved config into the output directory; rerunning from that
// echo reproduces the outputs byte for byte.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "specgame/calibration.hpp"
#include "specgame/config.hpp"
#include "specgame/engine.hpp"
#include "specgame/io.hpp"
#include "specgame/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace specgame;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::int64_t seed = -1;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "Path to a JSON experiment config");
    cmd->add_option("--preset", o.preset, "Named preset to start from");
    cmd->add_option("--out", o.out_dir, "Output directory (created if missing)");
    cmd->add_option("--seed", o.seed, "Override the experiment seed");
    cmd->add_flag("--quiet", o.quiet, "Suppress progress output");
}

ExperimentConfig resolve_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        json j;
        try {
            j = json::parse(read_file(o.config_path));
        } catch (const json::exception& e) {
            throw ConfigError("config: cannot parse '" + o.config_path + "': " + e.what());
        }
        if (!o.preset.empty()) j["preset"] = o.preset;
        const std::string base = fs::path(o.config_path).parent_path().string();
        cfg = ExperimentConfig::from_json(j, base.empty() ? "." : base);
    } else if (!o.preset.empty()) {
        cfg = ExperimentConfig::from_preset(o.preset);
    }
    if (o.seed >= 0) cfg.game.rng_seed = static_cast<std::uint64_t>(o.seed);
    return cfg;
}

std::string echo_config(const ExperimentConfig& cfg, const CommonOpts& o) {
    fs::create_directories(o.out_dir);
    const std::string text = cfg.canonical_text();
    write_file((fs::path(o.out_dir) / "config.json").string(), text);
    return fnv1a64_hex(text);
}

void say(const CommonOpts& o, const std::string& line) {
    if (!o.quiet) std::cout << line << "\n";
}

json strategy_json(const Strategy& s) { return json::array({s.fairness_param, s.privacy_param}); }

json violation_json(const ViolationSummary& v) {
    return json{{"fairness", v.fairness}, {"privacy", v.privacy}};
}

json objectives_json(const AchievedObjectives& o) {
    return json{{"acc", o.accuracy},
                {"cov", o.coverage},
                {"gamma_ach", o.disparity_achieved},
                {"eps_ach", o.privacy_achieved}};
}

json equilibrium_json(const EquilibriumReport& r) {
    auto agent = [](const AgentProbeReport& a) {
        return json{{"max_improvement", a.max_improvement},
                    {"best_probe", json::array({a.best_probe.fairness_param,
                                                a.best_probe.privacy_param})}};
    };
    return json{{"verified", r.verified},
                {"tol", r.tol},
                {"builder", agent(r.builder)},
                {"fairness", agent(r.fairness)},
                {"privacy", agent(r.privacy)}};
}

json trace_summary(const GameTrace& trace, const ExperimentConfig& cfg, bool with_equilibrium) {
    json j;
    j["targets"] = strategy_json(trace.targets);
    j["converged"] = trace.converged;
    j["rounds"] = trace.records.size();
    j["final_strategy"] = strategy_json(trace.final_strategy);
    j["final_objectives"] = objectives_json(trace.records.back().objectives);
    j["violation"] = violation_json(trace.violation);
    j["builder_view"] = violation_json(trace.builder_view);
    j["regulator_view"] = violation_json(trace.regulator_view);
    if (with_equilibrium && trace.converged) {
        j["equilibrium"] = equilibrium_json(
            check_equilibrium(trace, cfg.game, cfg.equilibrium.n_probes,
                              cfg.equilibrium.probe_radius, cfg.equilibrium.tol));
    } else {
        j["equilibrium"] = nullptr;
    }
    return j;
}

void write_summary(const CommonOpts& o, const json& summary) {
    write_file((fs::path(o.out_dir) / "summary.json").string(), summary.dump(2) + "\n");
}

int cmd_gen_frontier(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    const auto& box = cfg.game.box;
    const auto rs = sample_grid(cfg.game.builder_oracle, box.gamma_min, box.gamma_max, box.eps_min,
                                box.eps_max, cfg.game.seeding.n_gamma, cfg.game.seeding.n_eps);
    const auto path = (fs::path(o.out_dir) / "frontier.csv").string();
    write_frontier_csv(path, rs);
    say(o, "wrote " + std::to_string(rs.size()) + " rows to " + path + " (config " + hash + ")");
    return 0;
}

int cmd_run(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    json summary;
    summary["command"] = "run";
    summary["config_hash"] = hash;
    summary["preset"] = cfg.preset;
    summary["runs"] = json::array();
    double mean_fair = 0.0;
    double mean_priv = 0.0;
    int violating = 0;
    bool all_converged = true;
    for (std::size_t i = 0; i < cfg.game.initial_specs.size(); ++i) {
        const auto trace = run_game(cfg.game, cfg.game.initial_specs[i]);
        const std::string name = "trace_spec" + std::to_string(i) + ".csv";
        write_trace_csv((fs::path(o.out_dir) / name).string(), trace);
        auto j = trace_summary(trace, cfg, true);
        j["trace_file"] = name;
        summary["runs"].push_back(j);
        mean_fair += trace.violation.fairness / cfg.game.initial_specs.size();
        mean_priv += trace.violation.privacy / cfg.game.initial_specs.size();
        if (trace.violation.any()) ++violating;
        all_converged = all_converged && trace.converged;
        say(o, name + ": converged=" + (trace.converged ? "yes" : "no") +
                   " violation=(" + dtos(trace.violation.fairness) + ", " +
                   dtos(trace.violation.privacy) + ")");
    }
    summary["aggregate"] = {{"mean_fair_violation", mean_fair},
                            {"mean_priv_violation", mean_priv},
                            {"runs_with_violation", violating},
                            {"all_converged", all_converged}};
    write_summary(o, summary);
    return 0;
}

int cmd_phases(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    if (cfg.game.phase_schedule.empty()) {
        throw ConfigError("config: 'phases' must be nonempty for the phases command");
    }
    // The multi-phase experiment follows the first configured spec; reorder
    // initial_specs to study another one.
    const auto traces = run_phases(cfg.game, cfg.game.initial_specs.front());
    json summary;
    summary["command"] = "phases";
    summary["config_hash"] = hash;
    summary["preset"] = cfg.preset;
    summary["phases"] = json::array();
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const std::string name = "trace_phase" + std::to_string(i + 1) + ".csv";
        write_trace_csv((fs::path(o.out_dir) / name).string(), traces[i]);
        auto j = trace_summary(traces[i], cfg, false);
        j["trace_file"] = name;
        j["c_fair"] = cfg.game.phase_schedule[i].first;
        j["c_priv"] = cfg.game.phase_schedule[i].second;
        summary["phases"].push_back(j);
        say(o, name + ": violation=(" + dtos(traces[i].violation.fairness) + ", " +
                   dtos(traces[i].violation.privacy) + ")");
    }
    write_summary(o, summary);
    return 0;
}

int cmd_sweep(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    const auto rows = sweep_penalties(cfg.game, cfg.sweep.c_fair_grid, cfg.sweep.c_priv_grid);
    std::string csv = "c_fair,c_priv,mean_fair_violation,mean_priv_violation,mean_acc,mean_cov,"
                      "n_runs\n";
    for (const auto& r : rows) {
        csv += dtos(r.c_fair) + "," + dtos(r.c_priv) + "," + dtos(r.mean_fair_violation) + "," +
               dtos(r.mean_priv_violation) + "," + dtos(r.mean_acc) + "," + dtos(r.mean_cov) +
               "," + std::to_string(r.n_runs) + "\n";
    }
    const auto path = (fs::path(o.out_dir) / "sweep.csv").string();
    write_file(path, csv);

    // Knee of the privacy-violation curve per fairness-penalty level.
    json knees = json::array();
    for (const double cf : cfg.sweep.c_fair_grid) {
        std::vector<std::pair<double, double>> curve;
        for (const auto& r : rows) {
            if (r.c_fair == cf) curve.emplace_back(r.c_priv, r.mean_priv_violation);
        }
        if (curve.size() < 3) continue;
        const auto knee = knee_point(curve);
        knees.push_back({{"c_fair", cf},
                         {"knee_c_priv", knee.x},
                         {"degenerate", knee.degenerate}});
    }
    json summary;
    summary["command"] = "sweep";
    summary["config_hash"] = hash;
    summary["preset"] = cfg.preset;
    summary["rows"] = rows.size();
    summary["knees"] = knees;
    write_summary(o, summary);
    say(o, "wrote " + std::to_string(rows.size()) + " sweep rows to " + path);
    return 0;
}

int cmd_compare_leadership(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    const auto summary = compare_leadership(cfg.game);
    std::string csv =
        "gamma0,eps0,acc_reg_led,cov_reg_led,gamma_ach_reg_led,eps_ach_reg_led,"
        "builder_loss_reg_led,acc_builder_led,cov_builder_led,gamma_ach_builder_led,"
        "eps_ach_builder_led,builder_loss_builder_led\n";
    for (const auto& row : summary.rows) {
        const auto& r = row.regulator_led.records.back();
        const auto& b = row.builder_led.records.back();
        csv += dtos(row.targets.fairness_param) + "," + dtos(row.targets.privacy_param) + "," +
               dtos(r.objectives.accuracy) + "," + dtos(r.objectives.coverage) + "," +
               dtos(r.objectives.disparity_achieved) + "," + dtos(r.objectives.privacy_achieved) +
               "," + dtos(r.loss_builder) + "," + dtos(b.objectives.accuracy) + "," +
               dtos(b.objectives.coverage) + "," + dtos(b.objectives.disparity_achieved) + "," +
               dtos(b.objectives.privacy_achieved) + "," + dtos(b.loss_builder) + "\n";
    }
    write_file((fs::path(o.out_dir) / "leadership.csv").string(), csv);
    json j;
    j["command"] = "compare-leadership";
    j["config_hash"] = hash;
    j["preset"] = cfg.preset;
    j["rows"] = summary.rows.size();
    j["mean_diff"] = {{"accuracy", summary.mean_diff_accuracy},
                      {"coverage", summary.mean_diff_coverage},
                      {"disparity", summary.mean_diff_disparity},
                      {"privacy", summary.mean_diff_privacy},
                      {"builder_loss", summary.mean_diff_builder_loss}};
    write_summary(o, j);
    say(o, "builder-led minus regulator-led mean accuracy diff: " +
               dtos(summary.mean_diff_accuracy));
    return 0;
}

int cmd_calibrate_lambda(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    ResultSet rs;
    if (!cfg.lambda_calibration.source.empty()) {
        rs = read_frontier_csv(cfg.lambda_calibration.source);
    } else {
        const auto& box = cfg.game.box;
        rs = sample_grid(cfg.game.builder_oracle, box.gamma_min, box.gamma_max, box.eps_min,
                         box.eps_max, cfg.game.seeding.n_gamma, cfg.game.seeding.n_eps);
    }
    const auto& lc = cfg.lambda_calibration;
    const double lp = estimate_lambda(rs, lc.c_priv, lc.binning, LambdaKind::priv, lc.targets,
                                      cfg.game.builder.lambda_b);
    const double lf = estimate_lambda(rs, lc.c_fair, lc.binning, LambdaKind::fair, lc.targets,
                                      cfg.game.builder.lambda_b);
    char line[128];
    std::snprintf(line, sizeof(line), "lambda_priv_hat %.4f", lp);
    std::cout << line << "\n";
    std::snprintf(line, sizeof(line), "lambda_fair_hat %.4f", lf);
    std::cout << line << "\n";
    json j;
    j["command"] = "calibrate-lambda";
    j["config_hash"] = hash;
    j["lambda_priv_hat"] = lp;
    j["lambda_fair_hat"] = lf;
    j["points"] = rs.size();
    write_file((fs::path(o.out_dir) / "lambda.json").string(), j.dump(2) + "\n");
    return 0;
}

int cmd_check_equilibrium(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    json j;
    j["command"] = "check-equilibrium";
    j["config_hash"] = hash;
    j["runs"] = json::array();
    bool all_verified = true;
    for (const auto& targets : cfg.game.initial_specs) {
        const auto trace = run_game(cfg.game, targets);
        json entry;
        entry["targets"] = strategy_json(targets);
        entry["converged"] = trace.converged;
        if (trace.converged) {
            const auto report =
                check_equilibrium(trace, cfg.game, cfg.equilibrium.n_probes,
                                  cfg.equilibrium.probe_radius, cfg.equilibrium.tol);
            entry["equilibrium"] = equilibrium_json(report);
            all_verified = all_verified && report.verified;
        } else {
            entry["equilibrium"] = nullptr;
            all_verified = false;
        }
        j["runs"].push_back(entry);
    }
    j["all_verified"] = all_verified;
    write_file((fs::path(o.out_dir) / "equilibrium.json").string(), j.dump(2) + "\n");
    say(o, std::string("equilibrium verified for all runs: ") + (all_verified ? "yes" : "no"));
    return 0;
}

int cmd_metrics(const CommonOpts& o) {
    const auto cfg = resolve_config(o);
    const auto hash = echo_config(cfg, o);
    if (cfg.metrics.predictions_csv.empty()) {
        throw ConfigError("config: 'metrics.predictions_csv' is required for the metrics command");
    }
    const auto recs = read_prediction_csv(cfg.metrics.predictions_csv);
    const auto res = demographic_disparity(recs, cfg.metrics.n_classes, cfg.metrics.n_groups);
    std::string csv = "subgroup";
    for (int k = 0; k < cfg.metrics.n_classes; ++k) csv += ",class_" + std::to_string(k);
    csv += "\n";
    for (int z = 0; z < cfg.metrics.n_groups; ++z) {
        csv += std::to_string(z);
        for (int k = 0; k < cfg.metrics.n_classes; ++k) {
            csv += "," + dtos(res.matrix[static_cast<std::size_t>(z)][static_cast<std::size_t>(k)]);
        }
        csv += "\n";
    }
    write_file((fs::path(o.out_dir) / "disparity.csv").string(), csv);
    json j;
    j["command"] = "metrics";
    j["config_hash"] = hash;
    j["records"] = recs.size();
    j["max_signed_disparity"] = res.max_signed;
    j["max_abs_disparity"] = res.max_abs;
    j["gamma"] = cfg.metrics.gamma;
    j["gamma_dem_parity"] = gamma_dem_parity_check(res.matrix, cfg.metrics.gamma);
    write_file((fs::path(o.out_dir) / "metrics.json").string(), j.dump(2) + "\n");
    say(o, "max |disparity| = " + dtos(res.max_abs));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for repeated builder/regulator specification games on a shared "
                 "Pareto frontier"};
    app.require_subcommand(1);

    CommonOpts opts;
    int (*handler)(const CommonOpts&) = nullptr;

    auto add = [&](const char* name, const char* help, int (*fn)(const CommonOpts&)) {
        auto* cmd = app.add_subcommand(name, help);
        add_common(cmd, opts);
        cmd->callback([&, fn]() { handler = fn; });
        return cmd;
    };
    add("gen-frontier", "Sample the oracle on a grid and write a frontier CSV", cmd_gen_frontier);
    add("run", "Play one game per configured initial spec", cmd_run);
    add("phases", "Play a multi-phase game with per-phase penalty scalars", cmd_phases);
    add("sweep", "Grid-sweep the penalty scalars", cmd_sweep);
    add("compare-leadership", "Run regulator-led and builder-led arms per spec",
        cmd_compare_leadership);
    add("calibrate-lambda", "Estimate the builder's penalty scalars from results",
        cmd_calibrate_lambda);
    add("check-equilibrium", "Run games and probe the converged points for deviations",
        cmd_check_equilibrium);
    add("metrics", "Compute demographic disparity from a prediction table", cmd_metrics);

    try {
        app.parse(argc, argv);
        return handler(opts);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}

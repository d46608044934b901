#include "specgame/config.hpp"

#include <filesystem>
#include <set>

#include "specgame/io.hpp"

namespace specgame {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("config: unknown key '" + where + (where.empty() ? "" : ".") + key +
                              "'");
        }
    }
}

template <typename T>
void get_if_present(const json& obj, const std::string& key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        obj.at(key).get_to(out);
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value for '" + where + (where.empty() ? "" : ".") + key +
                          "': " + e.what());
    }
}

json oracle_to_json(const OracleSpec& spec) {
    json j;
    if (const auto* a = std::get_if<AnalyticSurfaceSpec>(&spec)) {
        j["kind"] = "analytic";
        j["base_acc"] = a->base_acc;
        j["priv_gain"] = a->priv_gain;
        j["priv_scale"] = a->priv_scale;
        j["fair_gain"] = a->fair_gain;
        j["cov_base"] = a->cov_base;
        j["cov_gain"] = a->cov_gain;
        j["disparity_cap_base"] = a->disparity_cap_base;
        j["disparity_cap_gain"] = a->disparity_cap_gain;
        j["noise_sd"] = a->noise_sd;
        j["seed"] = a->seed;
    } else {
        const auto& t = std::get<TabularOracleSpec>(spec);
        j["kind"] = "tabular";
        j["source"] = t.source_path;
        j["lookup_mode"] = t.lookup_mode == TabularLookup::nearest ? "nearest" : "interpolated";
    }
    return j;
}

OracleSpec oracle_from_json(const json& j, const Box& box, const std::string& base_dir,
                            const std::string& where) {
    std::string kind = "analytic";
    get_if_present(j, "kind", kind, where);
    if (kind == "analytic") {
        reject_unknown_keys(j,
                            {"kind", "base_acc", "priv_gain", "priv_scale", "fair_gain",
                             "cov_base", "cov_gain", "disparity_cap_base", "disparity_cap_gain",
                             "noise_sd", "seed"},
                            where);
        AnalyticSurfaceSpec a;
        get_if_present(j, "base_acc", a.base_acc, where);
        get_if_present(j, "priv_gain", a.priv_gain, where);
        get_if_present(j, "priv_scale", a.priv_scale, where);
        get_if_present(j, "fair_gain", a.fair_gain, where);
        get_if_present(j, "cov_base", a.cov_base, where);
        get_if_present(j, "cov_gain", a.cov_gain, where);
        get_if_present(j, "disparity_cap_base", a.disparity_cap_base, where);
        get_if_present(j, "disparity_cap_gain", a.disparity_cap_gain, where);
        get_if_present(j, "noise_sd", a.noise_sd, where);
        get_if_present(j, "seed", a.seed, where);
        if (a.priv_scale <= 0.0) throw ConfigError("config: '" + where + ".priv_scale' must be > 0");
        if (a.noise_sd < 0.0) throw ConfigError("config: '" + where + ".noise_sd' must be >= 0");
        return a;
    }
    if (kind == "tabular") {
        reject_unknown_keys(j, {"kind", "source", "lookup_mode"}, where);
        TabularOracleSpec t;
        t.box = box;
        std::string source;
        get_if_present(j, "source", source, where);
        if (source.empty()) throw ConfigError("config: '" + where + ".source' is required");
        std::filesystem::path p(source);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        t.source_path = std::filesystem::weakly_canonical(p).string();
        t.points = read_frontier_csv(t.source_path);
        if (t.points.empty()) {
            throw ConfigError("config: '" + where + ".source' holds no data rows");
        }
        std::string mode = "nearest";
        get_if_present(j, "lookup_mode", mode, where);
        if (mode == "nearest") {
            t.lookup_mode = TabularLookup::nearest;
        } else if (mode == "interpolated") {
            t.lookup_mode = TabularLookup::interpolated;
        } else {
            throw ConfigError("config: bad value for '" + where + ".lookup_mode'");
        }
        return t;
    }
    throw ConfigError("config: '" + where + ".kind' must be 'analytic' or 'tabular'");
}

std::string sense_name(Sense s) { return s == Sense::minimize ? "min" : "max"; }

Sense sense_from(const std::string& s, const std::string& where) {
    if (s == "min") return Sense::minimize;
    if (s == "max") return Sense::maximize;
    throw ConfigError("config: '" + where + "' entries must be 'min' or 'max'");
}

}  // namespace

json ExperimentConfig::to_json() const {
    json j;
    j["preset"] = preset;
    j["seed"] = game.rng_seed;
    j["box"] = {{"gamma_min", game.box.gamma_min},
                {"gamma_max", game.box.gamma_max},
                {"eps_min", game.box.eps_min},
                {"eps_max", game.box.eps_max}};
    j["oracle"] = oracle_to_json(game.builder_oracle);
    j["regulator_oracle"] = game.two_oracle ? oracle_to_json(game.regulator_oracle) : json(nullptr);
    j["game"] = {
        {"leadership",
         game.leadership == Leadership::regulator_led ? "regulator_led" : "builder_led"},
        {"t_max", game.t_max},
        {"convergence_tol", game.convergence_tol},
        {"convergence_cycles", game.convergence_cycles},
        {"gradient_h", game.gradient_h},
        {"interpolation",
         game.interpolation == InterpolationMode::knn_idw ? "knn_idw" : "grid_bilinear"},
        {"frontier_senses",
         json::array({sense_name(game.frontier_senses[0]), sense_name(game.frontier_senses[1]),
                      sense_name(game.frontier_senses[2])})},
        {"seed_grid", {{"n_gamma", game.seeding.n_gamma}, {"n_eps", game.seeding.n_eps}}}};
    j["builder"] = {
        {"lambda_fair", game.builder.lambda_fair},
        {"lambda_priv", game.builder.lambda_priv},
        {"lambda_b", game.builder.lambda_b},
        {"eta", game.builder.eta},
        {"decay", game.builder.decay},
        {"loss_variant",
         game.builder.loss_variant == BuilderLossVariant::fairpate ? "fairpate" : "dpsgd"}};
    j["fairness_regulator"] = {{"penalty_scalar", game.fairness_reg.penalty_scalar},
                               {"eta", game.fairness_reg.eta},
                               {"decay", game.fairness_reg.decay}};
    j["privacy_regulator"] = {{"penalty_scalar", game.privacy_reg.penalty_scalar},
                              {"eta", game.privacy_reg.eta},
                              {"decay", game.privacy_reg.decay}};
    j["initial_specs"] = json::array();
    for (const auto& s : game.initial_specs) {
        j["initial_specs"].push_back(json::array({s.fairness_param, s.privacy_param}));
    }
    j["phases"] = json::array();
    for (const auto& [cf, cp] : game.phase_schedule) {
        j["phases"].push_back(json::array({cf, cp}));
    }
    j["sweep"] = {{"c_fair_grid", sweep.c_fair_grid}, {"c_priv_grid", sweep.c_priv_grid}};
    j["equilibrium"] = {{"n_probes", equilibrium.n_probes},
                        {"probe_radius", equilibrium.probe_radius},
                        {"tol", equilibrium.tol}};
    j["lambda_calibration"] = {
        {"c_fair", lambda_calibration.c_fair},
        {"c_priv", lambda_calibration.c_priv},
        {"bin_width", lambda_calibration.binning.bin_width},
        {"min_pair_denominator", lambda_calibration.binning.min_pair_denominator},
        {"targets", json::array({lambda_calibration.targets.fairness_param,
                                 lambda_calibration.targets.privacy_param})},
        {"source", lambda_calibration.source}};
    j["metrics"] = {{"predictions_csv", metrics.predictions_csv},
                    {"n_classes", metrics.n_classes},
                    {"n_groups", metrics.n_groups},
                    {"gamma", metrics.gamma}};
    return j;
}

std::string ExperimentConfig::canonical_text() const { return to_json().dump(2) + "\n"; }

ExperimentConfig ExperimentConfig::from_json(const json& j, const std::string& base_dir) {
    reject_unknown_keys(j,
                        {"preset", "seed", "box", "oracle", "regulator_oracle", "game", "builder",
                         "fairness_regulator", "privacy_regulator", "initial_specs", "phases",
                         "sweep", "equilibrium", "lambda_calibration", "metrics"},
                        "");

    ExperimentConfig cfg;
    if (j.contains("preset") && j.at("preset").is_string() &&
        !j.at("preset").get<std::string>().empty()) {
        cfg = from_preset(j.at("preset").get<std::string>());
    }

    get_if_present(j, "seed", cfg.game.rng_seed, "");

    if (j.contains("box")) {
        const auto& b = j.at("box");
        reject_unknown_keys(b, {"gamma_min", "gamma_max", "eps_min", "eps_max"}, "box");
        get_if_present(b, "gamma_min", cfg.game.box.gamma_min, "box");
        get_if_present(b, "gamma_max", cfg.game.box.gamma_max, "box");
        get_if_present(b, "eps_min", cfg.game.box.eps_min, "box");
        get_if_present(b, "eps_max", cfg.game.box.eps_max, "box");
        if (!cfg.game.box.valid()) throw ConfigError("config: 'box' bounds are not an interval");
    }

    if (j.contains("oracle")) {
        cfg.game.builder_oracle = oracle_from_json(j.at("oracle"), cfg.game.box, base_dir, "oracle");
        if (!cfg.game.two_oracle) cfg.game.regulator_oracle = cfg.game.builder_oracle;
    }
    if (j.contains("regulator_oracle")) {
        if (j.at("regulator_oracle").is_null()) {
            // Explicit null: force single-oracle play even over a two-oracle preset.
            cfg.game.two_oracle = false;
            cfg.game.regulator_oracle = cfg.game.builder_oracle;
        } else {
            cfg.game.regulator_oracle = oracle_from_json(j.at("regulator_oracle"), cfg.game.box,
                                                         base_dir, "regulator_oracle");
            cfg.game.two_oracle = true;
        }
    }

    if (j.contains("game")) {
        const auto& g = j.at("game");
        reject_unknown_keys(g,
                            {"leadership", "t_max", "convergence_tol", "convergence_cycles",
                             "gradient_h", "interpolation", "frontier_senses", "seed_grid"},
                            "game");
        std::string leadership;
        get_if_present(g, "leadership", leadership, "game");
        if (!leadership.empty()) {
            if (leadership == "regulator_led") {
                cfg.game.leadership = Leadership::regulator_led;
            } else if (leadership == "builder_led") {
                cfg.game.leadership = Leadership::builder_led;
            } else {
                throw ConfigError("config: bad value for 'game.leadership'");
            }
        }
        get_if_present(g, "t_max", cfg.game.t_max, "game");
        get_if_present(g, "convergence_tol", cfg.game.convergence_tol, "game");
        get_if_present(g, "convergence_cycles", cfg.game.convergence_cycles, "game");
        get_if_present(g, "gradient_h", cfg.game.gradient_h, "game");
        std::string interp;
        get_if_present(g, "interpolation", interp, "game");
        if (!interp.empty()) {
            if (interp == "knn_idw") {
                cfg.game.interpolation = InterpolationMode::knn_idw;
            } else if (interp == "grid_bilinear") {
                cfg.game.interpolation = InterpolationMode::grid_bilinear;
            } else {
                throw ConfigError("config: bad value for 'game.interpolation'");
            }
        }
        if (g.contains("frontier_senses")) {
            std::vector<std::string> senses;
            get_if_present(g, "frontier_senses", senses, "game");
            if (senses.size() != 3) {
                throw ConfigError("config: 'game.frontier_senses' must have 3 entries");
            }
            for (int i = 0; i < 3; ++i) {
                cfg.game.frontier_senses[static_cast<std::size_t>(i)] =
                    sense_from(senses[static_cast<std::size_t>(i)], "game.frontier_senses");
            }
        }
        if (g.contains("seed_grid")) {
            const auto& sg = g.at("seed_grid");
            reject_unknown_keys(sg, {"n_gamma", "n_eps"}, "game.seed_grid");
            get_if_present(sg, "n_gamma", cfg.game.seeding.n_gamma, "game.seed_grid");
            get_if_present(sg, "n_eps", cfg.game.seeding.n_eps, "game.seed_grid");
        }
        if (cfg.game.t_max < 1) throw ConfigError("config: 'game.t_max' must be >= 1");
        if (cfg.game.convergence_tol <= 0.0) {
            throw ConfigError("config: 'game.convergence_tol' must be > 0");
        }
        if (cfg.game.gradient_h <= 0.0) throw ConfigError("config: 'game.gradient_h' must be > 0");
    }

    if (j.contains("builder")) {
        const auto& b = j.at("builder");
        reject_unknown_keys(
            b, {"lambda_fair", "lambda_priv", "lambda_b", "eta", "decay", "loss_variant"},
            "builder");
        get_if_present(b, "lambda_fair", cfg.game.builder.lambda_fair, "builder");
        get_if_present(b, "lambda_priv", cfg.game.builder.lambda_priv, "builder");
        get_if_present(b, "lambda_b", cfg.game.builder.lambda_b, "builder");
        get_if_present(b, "eta", cfg.game.builder.eta, "builder");
        get_if_present(b, "decay", cfg.game.builder.decay, "builder");
        std::string variant;
        get_if_present(b, "loss_variant", variant, "builder");
        if (!variant.empty()) {
            if (variant == "fairpate") {
                cfg.game.builder.loss_variant = BuilderLossVariant::fairpate;
            } else if (variant == "dpsgd") {
                cfg.game.builder.loss_variant = BuilderLossVariant::dpsgd;
            } else {
                throw ConfigError("config: bad value for 'builder.loss_variant'");
            }
        }
        if (cfg.game.builder.lambda_b < 0.0 || cfg.game.builder.lambda_b > 1.0) {
            throw ConfigError("config: 'builder.lambda_b' must lie in [0, 1]");
        }
        if (cfg.game.builder.lambda_fair < 0.0 || cfg.game.builder.lambda_priv < 0.0) {
            throw ConfigError("config: builder lambda scalars must be >= 0");
        }
        if (cfg.game.builder.eta <= 0.0 || cfg.game.builder.decay <= 0.0) {
            throw ConfigError("config: 'builder.eta' and 'builder.decay' must be > 0");
        }
    }

    auto parse_regulator = [&](const char* key, RegulatorConfig& reg) {
        if (!j.contains(key)) return;
        const auto& r = j.at(key);
        reject_unknown_keys(r, {"penalty_scalar", "eta", "decay"}, key);
        get_if_present(r, "penalty_scalar", reg.penalty_scalar, key);
        get_if_present(r, "eta", reg.eta, key);
        get_if_present(r, "decay", reg.decay, key);
        if (reg.penalty_scalar < 0.0) {
            throw ConfigError(std::string("config: '") + key + ".penalty_scalar' must be >= 0");
        }
        if (reg.eta <= 0.0 || reg.decay <= 0.0) {
            throw ConfigError(std::string("config: '") + key + ".eta' and '.decay' must be > 0");
        }
    };
    parse_regulator("fairness_regulator", cfg.game.fairness_reg);
    parse_regulator("privacy_regulator", cfg.game.privacy_reg);
    cfg.game.fairness_reg.kind = RegulatorKind::fairness;
    cfg.game.privacy_reg.kind = RegulatorKind::privacy;

    if (j.contains("initial_specs")) {
        std::vector<std::vector<double>> specs;
        get_if_present(j, "initial_specs", specs, "");
        cfg.game.initial_specs.clear();
        for (const auto& s : specs) {
            if (s.size() != 2) {
                throw ConfigError("config: 'initial_specs' entries must be [gamma_0, eps_0]");
            }
            cfg.game.initial_specs.push_back({s[0], s[1]});
        }
        if (cfg.game.initial_specs.empty()) {
            throw ConfigError("config: 'initial_specs' must hold at least one spec");
        }
    }

    if (j.contains("phases")) {
        std::vector<std::vector<double>> phases;
        get_if_present(j, "phases", phases, "");
        cfg.game.phase_schedule.clear();
        for (const auto& p : phases) {
            if (p.size() != 2) {
                throw ConfigError("config: 'phases' entries must be [c_fair, c_priv]");
            }
            cfg.game.phase_schedule.emplace_back(p[0], p[1]);
        }
    }

    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        reject_unknown_keys(s, {"c_fair_grid", "c_priv_grid"}, "sweep");
        get_if_present(s, "c_fair_grid", cfg.sweep.c_fair_grid, "sweep");
        get_if_present(s, "c_priv_grid", cfg.sweep.c_priv_grid, "sweep");
    }

    if (j.contains("equilibrium")) {
        const auto& e = j.at("equilibrium");
        reject_unknown_keys(e, {"n_probes", "probe_radius", "tol"}, "equilibrium");
        get_if_present(e, "n_probes", cfg.equilibrium.n_probes, "equilibrium");
        get_if_present(e, "probe_radius", cfg.equilibrium.probe_radius, "equilibrium");
        get_if_present(e, "tol", cfg.equilibrium.tol, "equilibrium");
    }

    if (j.contains("lambda_calibration")) {
        const auto& l = j.at("lambda_calibration");
        reject_unknown_keys(
            l, {"c_fair", "c_priv", "bin_width", "min_pair_denominator", "targets", "source"},
            "lambda_calibration");
        get_if_present(l, "c_fair", cfg.lambda_calibration.c_fair, "lambda_calibration");
        get_if_present(l, "c_priv", cfg.lambda_calibration.c_priv, "lambda_calibration");
        get_if_present(l, "bin_width", cfg.lambda_calibration.binning.bin_width,
                       "lambda_calibration");
        get_if_present(l, "min_pair_denominator",
                       cfg.lambda_calibration.binning.min_pair_denominator, "lambda_calibration");
        if (l.contains("targets")) {
            std::vector<double> t;
            get_if_present(l, "targets", t, "lambda_calibration");
            if (t.size() != 2) {
                throw ConfigError("config: 'lambda_calibration.targets' must be [gamma_0, eps_0]");
            }
            cfg.lambda_calibration.targets = {t[0], t[1]};
        }
        std::string source;
        get_if_present(l, "source", source, "lambda_calibration");
        if (!source.empty()) {
            std::filesystem::path p(source);
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            cfg.lambda_calibration.source = std::filesystem::weakly_canonical(p).string();
        }
    }

    if (j.contains("metrics")) {
        const auto& m = j.at("metrics");
        reject_unknown_keys(m, {"predictions_csv", "n_classes", "n_groups", "gamma"}, "metrics");
        std::string csv;
        get_if_present(m, "predictions_csv", csv, "metrics");
        if (!csv.empty()) {
            std::filesystem::path p(csv);
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            cfg.metrics.predictions_csv = std::filesystem::weakly_canonical(p).string();
        }
        get_if_present(m, "n_classes", cfg.metrics.n_classes, "metrics");
        get_if_present(m, "n_groups", cfg.metrics.n_groups, "metrics");
        get_if_present(m, "gamma", cfg.metrics.gamma, "metrics");
    }

    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("config: cannot parse '" + path + "': " + e.what());
    }
    const std::string base = std::filesystem::path(path).parent_path().string();
    return from_json(j, base.empty() ? "." : base);
}

namespace {

// The drift surface family: accuracy saturating in the privacy budget,
// coverage increasing with the achieved disparity, disparity cap well above
// the operating range so the fairness parameter binds everywhere.
AnalyticSurfaceSpec drift_surface() {
    AnalyticSurfaceSpec a;
    a.base_acc = 0.45;
    a.priv_gain = 0.35;
    a.priv_scale = 4.0;
    a.fair_gain = 0.15;
    a.cov_base = 0.5;
    a.cov_gain = 0.8;
    a.disparity_cap_base = 0.5;
    a.disparity_cap_gain = 0.3;
    a.noise_sd = 0.0;
    a.seed = 11;
    return a;
}

ExperimentConfig drift_base() {
    ExperimentConfig cfg;
    cfg.game.builder_oracle = drift_surface();
    cfg.game.regulator_oracle = cfg.game.builder_oracle;
    cfg.game.builder = {0.2, 0.01, 0.7, 1.0, 0.67, BuilderLossVariant::fairpate};
    cfg.game.fairness_reg = {RegulatorKind::fairness, 0.0, 0.0, 0.1, 0.67};
    cfg.game.privacy_reg = {RegulatorKind::privacy, 0.0, 0.0, 10.0, 0.67};
    cfg.game.initial_specs = {{0.04, 2.0}, {0.06, 2.5}, {0.08, 3.0}, {0.10, 3.5}, {0.12, 4.0}};
    cfg.game.rng_seed = 1;
    return cfg;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_preset(const std::string& name) {
    if (name == "no-penalty-drift") {
        ExperimentConfig cfg = drift_base();
        cfg.preset = name;
        return cfg;
    }
    if (name == "phase-enforcement") {
        ExperimentConfig cfg = drift_base();
        cfg.preset = name;
        cfg.game.phase_schedule = {{1.0, 1.0}, {3.0, 3.0}, {3.0, 4.5}};
        return cfg;
    }
    if (name == "penalty-sweep") {
        ExperimentConfig cfg;
        cfg.preset = name;
        AnalyticSurfaceSpec a;
        a.base_acc = 0.3;
        a.priv_gain = 0.9;
        a.priv_scale = 3.0;
        a.fair_gain = 0.1;
        a.cov_base = 0.55;
        a.cov_gain = 0.25;
        a.disparity_cap_base = 0.5;
        a.disparity_cap_gain = 0.3;
        a.seed = 12;
        cfg.game.builder_oracle = a;
        cfg.game.regulator_oracle = a;
        cfg.game.builder = {0.15, 0.1, 0.7, 2.0, 0.67, BuilderLossVariant::fairpate};
        cfg.game.fairness_reg = {RegulatorKind::fairness, 0.0, 0.0, 0.02, 0.67};
        cfg.game.privacy_reg = {RegulatorKind::privacy, 0.0, 0.0, 0.05, 0.67};
        cfg.game.initial_specs = {
            {0.05, 1.3}, {0.07, 1.5}, {0.09, 1.7}, {0.11, 1.9}, {0.13, 2.1}};
        cfg.game.t_max = 120;
        cfg.game.rng_seed = 2;
        cfg.sweep.c_fair_grid = {0.25, 0.75, 1.5, 3.0};
        cfg.sweep.c_priv_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
        return cfg;
    }
    if (name == "convex-enforced") {
        ExperimentConfig cfg;
        cfg.preset = name;
        AnalyticSurfaceSpec a;
        a.base_acc = 0.2;
        a.priv_gain = 0.75;
        a.priv_scale = 3.0;
        a.fair_gain = 0.04;
        a.cov_base = 0.6;
        a.cov_gain = 0.04;
        a.disparity_cap_base = 1.0;  // requested disparity always binds
        a.disparity_cap_gain = 0.0;
        a.seed = 13;
        cfg.game.builder_oracle = a;
        cfg.game.regulator_oracle = a;
        cfg.game.builder = {0.05, 0.1, 0.7, 4.0, 0.67, BuilderLossVariant::fairpate};
        cfg.game.fairness_reg = {RegulatorKind::fairness, 0.0, 2.0, 0.005, 0.67};
        cfg.game.privacy_reg = {RegulatorKind::privacy, 0.0, 2.0, 0.05, 0.67};
        cfg.game.initial_specs = {
            {0.08, 1.65}, {0.10, 1.7}, {0.12, 1.75}, {0.14, 1.8}, {0.16, 1.85}};
        cfg.game.rng_seed = 3;
        return cfg;
    }
    if (name == "two-dataset") {
        ExperimentConfig cfg = from_preset("convex-enforced");
        cfg.preset = name;
        auto builder_side = std::get<AnalyticSurfaceSpec>(cfg.game.builder_oracle);
        // Steeper fairness utility so the gradient signal clears the noise
        // floor of the sampled surfaces.
        builder_side.fair_gain = 0.15;
        builder_side.cov_gain = 0.15;
        builder_side.noise_sd = 0.01;
        builder_side.seed = 202;
        auto regulator_side = builder_side;
        regulator_side.seed = 101;
        cfg.game.builder_oracle = builder_side;
        cfg.game.regulator_oracle = regulator_side;
        cfg.game.two_oracle = true;
        cfg.game.builder.lambda_fair = 0.2;
        cfg.game.builder.eta = 2.0;
        cfg.game.initial_specs = {
            {0.08, 1.3}, {0.10, 1.35}, {0.12, 1.4}, {0.14, 1.45}, {0.16, 1.5}};
        return cfg;
    }
    if (name == "regulator-blindspot") {
        ExperimentConfig cfg = drift_base();
        cfg.preset = name;
        auto builder_side = drift_surface();
        auto regulator_side = drift_surface();
        // Regulators sample a dataset whose disparity saturates below their
        // own threshold, so their measurements never trip the hinge.
        regulator_side.disparity_cap_base = 0.02;
        regulator_side.disparity_cap_gain = 0.05;
        regulator_side.seed = 14;
        cfg.game.builder_oracle = builder_side;
        cfg.game.regulator_oracle = regulator_side;
        cfg.game.two_oracle = true;
        cfg.game.fairness_reg.penalty_scalar = 3.0;
        cfg.game.privacy_reg.penalty_scalar = 3.0;
        cfg.game.initial_specs = {{0.10, 2.0}, {0.11, 2.2}, {0.12, 2.4}, {0.13, 2.6}, {0.14, 2.8}};
        return cfg;
    }
    throw ConfigError("config: unknown preset '" + name + "'");
}

std::vector<std::string> ExperimentConfig::preset_names() {
    return {"no-penalty-drift", "phase-enforcement", "penalty-sweep",
            "convex-enforced",  "two-dataset",       "regulator-blindspot"};
}

}  // namespace specgame

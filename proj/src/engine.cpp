#include "specgame/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

namespace specgame {

const char* mover_name(Mover m) {
    switch (m) {
        case Mover::init: return "init";
        case Mover::builder: return "builder";
        case Mover::fairness_reg: return "fairness_reg";
        case Mover::privacy_reg: return "privacy_reg";
    }
    return "unknown";
}

FrontierOptions GameConfig::frontier_options() const {
    FrontierOptions opts;
    opts.objective.lambda_b = builder.lambda_b;
    opts.objective.senses = frontier_senses;
    opts.mode = interpolation;
    opts.box = box;
    return opts;
}

namespace {

Mover scheduled_mover(Leadership leadership, int t) {
    if (t == 0) return Mover::init;
    const int slot = t % 3;
    if (leadership == Leadership::regulator_led) {
        // Leader announced at t = 0; the builder responds first.
        if (slot == 1) return Mover::builder;
        if (slot == 2) return Mover::fairness_reg;
        return Mover::privacy_reg;
    }
    // Builder announced at t = 0; the regulators respond first.
    if (slot == 1) return Mover::fairness_reg;
    if (slot == 2) return Mover::privacy_reg;
    return Mover::builder;
}

const OracleSpec& oracle_for(const GameConfig& cfg, Mover mover) {
    if (!cfg.two_oracle) return cfg.builder_oracle;
    switch (mover) {
        case Mover::builder: return cfg.builder_oracle;
        case Mover::fairness_reg:
        case Mover::privacy_reg: return cfg.regulator_oracle;
        case Mover::init:
            return cfg.leadership == Leadership::regulator_led ? cfg.regulator_oracle
                                                               : cfg.builder_oracle;
    }
    return cfg.builder_oracle;
}

ViolationSummary violations_at(const OracleSpec& oracle, const Strategy& s,
                               const Strategy& targets) {
    const AchievedObjectives obj = evaluate(oracle, s);
    return {fairness_loss(obj.disparity_achieved, targets.fairness_param),
            privacy_loss(obj.privacy_achieved, targets.privacy_param)};
}

}  // namespace

EvalPoint choose_spec(const FrontierModel& frontier, Leadership leadership,
                      const Strategy& targets, const BuilderConfig& builder,
                      const RegulatorConfig& fair_reg, const RegulatorConfig& priv_reg) {
    const auto& pts = frontier.efficient_points();
    if (pts.empty()) throw EmptyResultSet("choose_spec: empty frontier");
    const Box& box = frontier.options().box;

    auto key = [&](const EvalPoint& p) {
        const auto& o = p.objectives;
        if (leadership == Leadership::builder_led) {
            RegulatorConfig f = fair_reg;
            RegulatorConfig pr = priv_reg;
            f.target = targets.fairness_param;
            pr.target = targets.privacy_param;
            return std::make_tuple(0.0, builder_total_loss(o, builder, f, pr), 0.0,
                                   p.strategy.fairness_param, p.strategy.privacy_param);
        }
        // Normalized so the two hinge violations are comparable across axes.
        const double viol =
            fairness_loss(o.disparity_achieved, targets.fairness_param) / box.gamma_width() +
            privacy_loss(o.privacy_achieved, targets.privacy_param) / box.eps_width();
        const double reg_losses =
            o.disparity_achieved + (o.privacy_achieved - box.eps_min) / box.eps_width();
        return std::make_tuple(viol, reg_losses, builder_error(o, builder),
                               p.strategy.fairness_param, p.strategy.privacy_param);
    };

    const EvalPoint* best = &pts.front();
    auto best_key = key(*best);
    for (const auto& p : pts) {
        auto k = key(p);
        if (k < best_key) {
            best = &p;
            best_key = k;
        }
    }
    return *best;
}

GameTrace run_game(const GameConfig& cfg, const Strategy& targets,
                   std::optional<Strategy> carried_start,
                   std::optional<ResultSet> carried_results) {
    if (cfg.t_max < 1) throw ConfigError("run_game: t_max must be >= 1");
    if (cfg.convergence_tol <= 0.0) throw ConfigError("run_game: convergence_tol must be > 0");
    if (!cfg.box.valid()) throw ConfigError("run_game: invalid box");

    RegulatorConfig fair = cfg.fairness_reg;
    fair.kind = RegulatorKind::fairness;
    fair.target = targets.fairness_param;
    RegulatorConfig priv = cfg.privacy_reg;
    priv.kind = RegulatorKind::privacy;
    priv.target = targets.privacy_param;

    GameTrace trace;
    trace.targets = targets;

    ResultSet results;
    if (carried_results.has_value()) {
        results = std::move(*carried_results);
    } else {
        results = sample_grid(oracle_for(cfg, Mover::init), cfg.box.gamma_min, cfg.box.gamma_max,
                              cfg.box.eps_min, cfg.box.eps_max, cfg.seeding.n_gamma,
                              cfg.seeding.n_eps);
    }
    for (const auto& p : results.points()) {
        if (!p.objectives.finite()) {
            throw NonFiniteLoss("non-finite oracle output while seeding the frontier at (" +
                                std::to_string(p.strategy.fairness_param) + ", " +
                                std::to_string(p.strategy.privacy_param) + ")");
        }
    }
    FrontierModel frontier = FrontierModel::build(results, cfg.frontier_options());

    double eta_fair = fair.eta;
    double eta_priv = priv.eta;
    double eta_build = cfg.builder.eta;

    Strategy s{};
    int consecutive_small = 0;
    const int needed_small = 3 * std::max(1, cfg.convergence_cycles);

    for (int t = 0; t <= cfg.t_max; ++t) {
        const Mover mover = scheduled_mover(cfg.leadership, t);
        const Strategy prev = s;
        double used_eta_fair = eta_fair;
        double used_eta_priv = eta_priv;
        double used_eta_build = eta_build;

        switch (mover) {
            case Mover::init:
                s = carried_start.has_value()
                        ? cfg.box.clamp(*carried_start)
                        : choose_spec(frontier, cfg.leadership, targets, cfg.builder, fair, priv)
                              .strategy;
                break;
            case Mover::fairness_reg:
                if (cfg.choose_penalty_scale) {
                    fair.penalty_scalar = cfg.choose_penalty_scale(RegulatorKind::fairness,
                                                                   fair.penalty_scalar, t, s);
                }
                s = regulator_step(frontier, s, fair, eta_fair, cfg.gradient_h).strategy;
                eta_fair *= fair.decay;
                break;
            case Mover::privacy_reg:
                if (cfg.choose_penalty_scale) {
                    priv.penalty_scalar = cfg.choose_penalty_scale(RegulatorKind::privacy,
                                                                   priv.penalty_scalar, t, s);
                }
                s = regulator_step(frontier, s, priv, eta_priv, cfg.gradient_h).strategy;
                eta_priv *= priv.decay;
                break;
            case Mover::builder:
                s = builder_step(frontier, s, cfg.builder, fair, priv, eta_build, cfg.gradient_h)
                        .strategy;
                eta_build *= cfg.builder.decay;
                break;
        }

        // Calibrate: evaluate the new strategy with the mover's oracle, add
        // the result, and refilter the shared frontier.
        const AchievedObjectives obj = evaluate(oracle_for(cfg, mover), s);
        if (!s.finite() || !obj.finite()) {
            std::ostringstream msg;
            msg << "non-finite state at round " << t << " (mover " << mover_name(mover)
                << "), strategy (" << s.fairness_param << ", " << s.privacy_param << ")";
            throw NonFiniteLoss(msg.str());
        }
        const EvalPoint point{s, obj, t};
        const bool replaced = results.add(point);
        frontier = replaced ? FrontierModel::build(results, cfg.frontier_options())
                            : frontier.with_added(point);

        RoundRecord rec;
        rec.t = t;
        rec.mover = mover;
        rec.strategy = s;
        rec.objectives = obj;
        rec.loss_fair = fairness_loss(obj.disparity_achieved, fair.target);
        rec.loss_priv = privacy_loss(obj.privacy_achieved, priv.target);
        rec.penalty_fair = penalty(fair.penalty_scalar, rec.loss_fair);
        rec.penalty_priv = penalty(priv.penalty_scalar, rec.loss_priv);
        rec.loss_builder = builder_total_loss(obj, cfg.builder, fair, priv);
        rec.eta_fair = used_eta_fair;
        rec.eta_priv = used_eta_priv;
        rec.eta_build = used_eta_build;
        trace.records.push_back(rec);

        if (!std::isfinite(rec.loss_builder)) {
            std::ostringstream msg;
            msg << "non-finite builder loss at round " << t << " (mover " << mover_name(mover)
                << ")";
            throw NonFiniteLoss(msg.str());
        }

        if (t >= 1) {
            const double d = cfg.box.normalized_inf_dist(s, prev);
            consecutive_small = d < cfg.convergence_tol ? consecutive_small + 1 : 0;
            if (consecutive_small >= needed_small) {
                trace.converged = true;
                break;
            }
        }
    }

    trace.final_strategy = s;
    trace.results = std::move(results);
    trace.builder_view = violations_at(cfg.builder_oracle, s, targets);
    trace.regulator_view =
        cfg.two_oracle ? violations_at(cfg.regulator_oracle, s, targets) : trace.builder_view;
    trace.violation = trace.regulator_view;
    return trace;
}

GameTrace run_game(const GameConfig& cfg) {
    if (cfg.initial_specs.empty()) throw ConfigError("run_game: no initial specs configured");
    return run_game(cfg, cfg.initial_specs.front());
}

std::vector<GameTrace> run_phases(const GameConfig& cfg, const Strategy& targets) {
    if (cfg.phase_schedule.empty()) throw ConfigError("run_phases: empty phase schedule");
    std::vector<GameTrace> traces;
    std::optional<Strategy> start;
    std::optional<ResultSet> carried;
    for (const auto& [c_fair, c_priv] : cfg.phase_schedule) {
        GameConfig phase = cfg;
        phase.fairness_reg.penalty_scalar = c_fair;
        phase.privacy_reg.penalty_scalar = c_priv;
        GameTrace t = run_game(phase, targets, start, std::move(carried));
        start = t.final_strategy;
        carried = t.results;
        traces.push_back(std::move(t));
    }
    return traces;
}

std::vector<GameTrace> run_phases(const GameConfig& cfg) {
    if (cfg.initial_specs.empty()) throw ConfigError("run_phases: no initial specs configured");
    return run_phases(cfg, cfg.initial_specs.front());
}

EquilibriumReport check_equilibrium(const FrontierModel& frontier, const Strategy& s_star,
                                    const Strategy& targets, const BuilderConfig& builder,
                                    const RegulatorConfig& fair_reg,
                                    const RegulatorConfig& priv_reg, int n_probes,
                                    double probe_radius, double tol, std::uint64_t seed) {
    if (n_probes < 0 || probe_radius < 0.0) {
        throw InvalidRange("check_equilibrium: probes and radius must be nonnegative");
    }
    RegulatorConfig fair = fair_reg;
    fair.target = targets.fairness_param;
    RegulatorConfig priv = priv_reg;
    priv.target = targets.privacy_param;

    const Box& box = frontier.options().box;
    auto builder_loss = [&](const Strategy& s) {
        return builder_total_loss(frontier.interpolate(s), builder, fair, priv);
    };
    auto fair_loss = [&](const Strategy& s) {
        return fairness_loss(frontier.interpolate(s).disparity_achieved, fair.target);
    };
    auto priv_loss = [&](const Strategy& s) {
        return privacy_loss(frontier.interpolate(s).privacy_achieved, priv.target);
    };

    std::uint64_t state = detail::splitmix64(seed ^ 0x7f4a7c15ULL);
    auto uniform = [&]() {
        state = detail::splitmix64(state);
        return (static_cast<double>(state >> 11)) * 0x1.0p-53;  // [0, 1)
    };
    // axis: 0 = fairness parameter, 1 = privacy parameter, 2 = alternate both.
    auto probe_agent = [&](const auto& loss, int axis) {
        AgentProbeReport rep;
        rep.best_probe = s_star;
        const double base = loss(s_star);
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n_probes; ++i) {
            const int a = axis == 2 ? (i % 2) : axis;
            const double u = (2.0 * uniform() - 1.0) * probe_radius;
            Strategy probe = s_star;
            if (a == 0) {
                probe.fairness_param += u * box.gamma_width();
            } else {
                probe.privacy_param += u * box.eps_width();
            }
            probe = box.clamp(probe);
            const double improvement = base - loss(probe);
            if (improvement > best) {
                best = improvement;
                rep.best_probe = probe;
            }
        }
        rep.max_improvement = n_probes > 0 ? best : 0.0;
        return rep;
    };

    EquilibriumReport report;
    report.tol = tol;
    report.fairness = probe_agent(fair_loss, 0);
    report.privacy = probe_agent(priv_loss, 1);
    report.builder = probe_agent(builder_loss, 2);
    report.verified = report.fairness.max_improvement <= tol &&
                      report.privacy.max_improvement <= tol &&
                      report.builder.max_improvement <= tol;
    return report;
}

EquilibriumReport check_equilibrium(const GameTrace& trace, const GameConfig& cfg, int n_probes,
                                    double probe_radius, double tol) {
    if (!trace.converged) throw NotConverged("check_equilibrium: trace did not converge");
    FrontierModel frontier = FrontierModel::build(trace.results, cfg.frontier_options());
    return check_equilibrium(frontier, trace.final_strategy, trace.targets, cfg.builder,
                             cfg.fairness_reg, cfg.privacy_reg, n_probes, probe_radius, tol,
                             cfg.rng_seed);
}

LeadershipSummary compare_leadership(const GameConfig& cfg) {
    if (cfg.initial_specs.empty()) throw ConfigError("compare_leadership: no initial specs");
    LeadershipSummary summary;
    for (const auto& targets : cfg.initial_specs) {
        GameConfig reg_cfg = cfg;
        reg_cfg.leadership = Leadership::regulator_led;
        GameConfig bld_cfg = cfg;
        bld_cfg.leadership = Leadership::builder_led;
        LeadershipRow row;
        row.targets = targets;
        row.regulator_led = run_game(reg_cfg, targets);
        row.builder_led = run_game(bld_cfg, targets);
        summary.rows.push_back(std::move(row));
    }
    const auto n = static_cast<double>(summary.rows.size());
    for (const auto& row : summary.rows) {
        const auto& r = row.regulator_led.records.back();
        const auto& b = row.builder_led.records.back();
        summary.mean_diff_accuracy += (b.objectives.accuracy - r.objectives.accuracy) / n;
        summary.mean_diff_coverage += (b.objectives.coverage - r.objectives.coverage) / n;
        summary.mean_diff_disparity +=
            (b.objectives.disparity_achieved - r.objectives.disparity_achieved) / n;
        summary.mean_diff_privacy +=
            (b.objectives.privacy_achieved - r.objectives.privacy_achieved) / n;
        summary.mean_diff_builder_loss += (b.loss_builder - r.loss_builder) / n;
    }
    return summary;
}

}  // namespace specgame

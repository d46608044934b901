#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specgame/agents.hpp"
#include "specgame/frontier.hpp"
#include "specgame/oracle.hpp"
#include "specgame/types.hpp"

namespace specgame {

enum class Leadership { regulator_led, builder_led };
enum class Mover { init, builder, fairness_reg, privacy_reg };

const char* mover_name(Mover m);

/// Pre-game frontier seeding: a tensor grid over the box sampled from the
/// leader's oracle.
struct SeedingSpec {
    int n_gamma = 21;
    int n_eps = 21;
};

/// Programmatic hook letting a regulator adjust its penalty scalar right
/// before its move; receives the regulator, its current scalar, the round,
/// and the current strategy, and returns the scalar to use from then on. The
/// default policy (no hook) keeps the configured constants; penalty changes
/// between converged phases go through the phase schedule instead.
using PenaltyScalePolicy = std::function<double(RegulatorKind, double, int, const Strategy&)>;

struct GameConfig {
    Leadership leadership = Leadership::regulator_led;
    int t_max = 200;
    double convergence_tol = 1e-4;  // normalized inf-norm per round
    int convergence_cycles = 3;     // consecutive full 3-round cycles below tol
    double gradient_h = 0.15;       // finite-difference step for agent moves (normalized)
    Box box;
    std::vector<Strategy> initial_specs;  // (gamma_0, eps_0) target pairs
    BuilderConfig builder;
    RegulatorConfig fairness_reg{RegulatorKind::fairness, 0.0, 0.0, 0.1, 0.67};
    RegulatorConfig privacy_reg{RegulatorKind::privacy, 0.0, 0.0, 10.0, 0.67};
    OracleSpec builder_oracle = AnalyticSurfaceSpec{};
    OracleSpec regulator_oracle = AnalyticSurfaceSpec{};
    bool two_oracle = false;  // calibrate with the mover's own oracle
    SeedingSpec seeding;
    InterpolationMode interpolation = InterpolationMode::knn_idw;
    std::array<Sense, 3> frontier_senses = {Sense::minimize, Sense::minimize, Sense::minimize};
    std::uint64_t rng_seed = 0;
    std::vector<std::pair<double, double>> phase_schedule;  // (C_fair, C_priv) overrides
    PenaltyScalePolicy choose_penalty_scale;                // optional, not serialized

    [[nodiscard]] FrontierOptions frontier_options() const;
};

struct RoundRecord {
    int t = 0;
    Mover mover = Mover::init;
    Strategy strategy;
    AchievedObjectives objectives;
    double loss_builder = 0.0;  // total builder loss, error-space utility
    double loss_fair = 0.0;     // fairness hinge at the target
    double loss_priv = 0.0;     // privacy hinge at the target
    double penalty_fair = 0.0;
    double penalty_priv = 0.0;
    double eta_fair = 0.0;  // step sizes in effect when this round's move was taken
    double eta_priv = 0.0;
    double eta_build = 0.0;
};

struct ViolationSummary {
    double fairness = 0.0;
    double privacy = 0.0;

    [[nodiscard]] bool any() const { return fairness > 0.0 || privacy > 0.0; }
};

struct GameTrace {
    Strategy targets;  // the (gamma_0, eps_0) pair this game enforced
    std::vector<RoundRecord> records;
    bool converged = false;
    Strategy final_strategy;
    /// Hinge violations at the final strategy as the regulators measure them
    /// (regulator oracle); in single-oracle games this equals the builder view.
    ViolationSummary violation;
    ViolationSummary builder_view;
    ViolationSummary regulator_view;
    ResultSet results;  // accumulated result set at the end of the run
};

/// First-round specification choice. Regulator-led picks the most protective
/// feasible frontier point (ordered by feasibility, then the sum of achieved
/// disparity and box-normalized achieved privacy cost, then builder error);
/// with no feasible point the minimal-violation point wins. Builder-led picks
/// the frontier point minimizing the total builder loss. Ties break toward
/// the lowest fairness parameter, then the lowest privacy parameter.
EvalPoint choose_spec(const FrontierModel& frontier, Leadership leadership,
                      const Strategy& targets, const BuilderConfig& builder,
                      const RegulatorConfig& fair_reg, const RegulatorConfig& priv_reg);

/// Plays one game for the given targets: round 0 chooses the spec (or resumes
/// from `carried_start`), then regulators and builder alternate on the
/// 3-round schedule, recalibrating and refiltering the shared frontier after
/// every move, decaying the mover's step size, until convergence or t_max.
GameTrace run_game(const GameConfig& cfg, const Strategy& targets,
                   std::optional<Strategy> carried_start = std::nullopt,
                   std::optional<ResultSet> carried_results = std::nullopt);

/// Game for the first configured initial spec.
GameTrace run_game(const GameConfig& cfg);

/// One game per phase-schedule entry, applying that phase's (C_fair, C_priv)
/// and carrying the final strategy and the accumulated result set forward.
std::vector<GameTrace> run_phases(const GameConfig& cfg, const Strategy& targets);
std::vector<GameTrace> run_phases(const GameConfig& cfg);

struct AgentProbeReport {
    double max_improvement = 0.0;
    Strategy best_probe;
};

struct EquilibriumReport {
    bool verified = false;
    double tol = 0.0;
    AgentProbeReport builder;
    AgentProbeReport fairness;
    AgentProbeReport privacy;
};

/// Samples single-coordinate deviations around s_star for every agent and
/// reports the best loss improvement each could gain; verified when no agent
/// improves by more than tol. probe_radius is in box-normalized units.
EquilibriumReport check_equilibrium(const FrontierModel& frontier, const Strategy& s_star,
                                    const Strategy& targets, const BuilderConfig& builder,
                                    const RegulatorConfig& fair_reg,
                                    const RegulatorConfig& priv_reg, int n_probes,
                                    double probe_radius, double tol, std::uint64_t seed);

/// Convenience wrapper over a finished game; throws NotConverged unless the
/// trace converged.
EquilibriumReport check_equilibrium(const GameTrace& trace, const GameConfig& cfg, int n_probes,
                                    double probe_radius, double tol);

struct LeadershipRow {
    Strategy targets;
    GameTrace regulator_led;
    GameTrace builder_led;
};

struct LeadershipSummary {
    std::vector<LeadershipRow> rows;
    // Mean (builder-led minus regulator-led) differences at the final points.
    double mean_diff_accuracy = 0.0;
    double mean_diff_coverage = 0.0;
    double mean_diff_disparity = 0.0;
    double mean_diff_privacy = 0.0;
    double mean_diff_builder_loss = 0.0;
};

/// Runs both leadership arms for every configured initial spec.
LeadershipSummary compare_leadership(const GameConfig& cfg);

}  // namespace specgame

#pragma once

#include <utility>
#include <vector>

#include "specgame/agents.hpp"
#include "specgame/engine.hpp"
#include "specgame/frontier.hpp"
#include "specgame/types.hpp"

namespace specgame {

/// Nonnegative weights of the scalarized objective
/// a1*err + a2*fair_hinge + a3*priv_hinge; at least one must be positive.
struct ScalarizationWeights {
    double a1 = 1.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

/// Binning for the level sets used by estimate_lambda: points sharing (up to
/// bin width) the other objective's loss level form one level set; pair
/// ratios with denominators below min_pair_denominator are discarded.
struct LevelSetBinning {
    double bin_width = 0.02;
    double min_pair_denominator = 1e-6;
};

enum class LambdaKind { priv, fair };

/// Recovers the builder's private penalty scalar from a result set: within
/// each level set of the *other* objective's loss, averages the pairwise
/// (delta builder error) / (delta own loss) ratios, averages over level sets,
/// and divides by the penalty scalar C in force. Targets default to zero so
/// the loss levels are the achieved values themselves.
double estimate_lambda(const ResultSet& results, double penalty_scalar,
                       const LevelSetBinning& binning, LambdaKind which,
                       const Strategy& targets = {0.0, 0.0}, double lambda_b = 0.7);

/// The frontier point minimizing the weighted scalarized objective; hinge
/// losses are taken at `targets`. Tie-break: lowest fairness parameter, then
/// lowest privacy parameter.
EvalPoint scalarize(const FrontierModel& frontier, const ScalarizationWeights& w,
                    const BuilderConfig& builder, const Strategy& targets);

struct SweepRow {
    double c_fair = 0.0;
    double c_priv = 0.0;
    double mean_fair_violation = 0.0;
    double mean_priv_violation = 0.0;
    double mean_acc = 0.0;
    double mean_cov = 0.0;
    int n_runs = 0;
};

/// One game per (C_fair, C_priv) cell per configured initial spec; rows
/// report the mean final violations and utilities over the specs.
std::vector<SweepRow> sweep_penalties(const GameConfig& cfg, const std::vector<double>& c_fair_grid,
                                      const std::vector<double>& c_priv_grid);

struct KneeResult {
    double x = 0.0;
    std::size_t index = 0;
    bool degenerate = false;  // curve collinear; x is the middle sample
};

/// Maximum-distance-from-chord knee of a trade-off curve, both axes min-max
/// normalized first. x values must be strictly increasing, n >= 3.
KneeResult knee_point(const std::vector<std::pair<double, double>>& curve);

}  // namespace specgame

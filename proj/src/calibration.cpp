#include "specgame/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace specgame {

double estimate_lambda(const ResultSet& results, double penalty_scalar,
                       const LevelSetBinning& binning, LambdaKind which, const Strategy& targets,
                       double lambda_b) {
    if (results.empty()) throw EmptyResultSet("estimate_lambda: empty result set");
    if (penalty_scalar <= 0.0) throw InvalidRange("estimate_lambda: C must be positive");
    if (binning.bin_width <= 0.0) throw InvalidRange("estimate_lambda: bin width must be positive");

    BuilderConfig err_cfg;
    err_cfg.lambda_b = lambda_b;

    struct Entry {
        double err;
        double own_loss;
    };
    // Keyed by the other objective's loss level, discretized to bins.
    std::map<long long, std::vector<Entry>> bins;
    for (const auto& p : results.points()) {
        const double fair = fairness_loss(p.objectives.disparity_achieved, targets.fairness_param);
        const double priv = privacy_loss(p.objectives.privacy_achieved, targets.privacy_param);
        const double own = which == LambdaKind::priv ? priv : fair;
        const double other = which == LambdaKind::priv ? fair : priv;
        const auto bin = static_cast<long long>(std::floor(other / binning.bin_width));
        bins[bin].push_back({builder_error(p.objectives, err_cfg), own});
    }

    double sum_over_bins = 0.0;
    int n_bins = 0;
    for (const auto& [bin, entries] : bins) {
        if (entries.size() < 2) continue;
        double sum_ratio = 0.0;
        int n_pairs = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = i + 1; j < entries.size(); ++j) {
                const double denom = entries[i].own_loss - entries[j].own_loss;
                if (std::abs(denom) < binning.min_pair_denominator) continue;
                sum_ratio += (entries[j].err - entries[i].err) / denom;
                ++n_pairs;
            }
        }
        if (n_pairs == 0) continue;
        sum_over_bins += sum_ratio / n_pairs;
        ++n_bins;
    }
    if (n_bins == 0) {
        throw InsufficientLevelSetPairs(
            "estimate_lambda: no level-set bin holds a pair with a usable denominator");
    }
    return sum_over_bins / n_bins / penalty_scalar;
}

EvalPoint scalarize(const FrontierModel& frontier, const ScalarizationWeights& w,
                    const BuilderConfig& builder, const Strategy& targets) {
    const auto& pts = frontier.efficient_points();
    if (pts.empty()) throw EmptyResultSet("scalarize: empty frontier");
    if (w.a1 < 0.0 || w.a2 < 0.0 || w.a3 < 0.0 || (w.a1 == 0.0 && w.a2 == 0.0 && w.a3 == 0.0)) {
        throw InvalidRange("scalarize: weights must be nonnegative with at least one positive");
    }
    auto key = [&](const EvalPoint& p) {
        const auto& o = p.objectives;
        const double score = w.a1 * builder_error(o, builder) +
                             w.a2 * fairness_loss(o.disparity_achieved, targets.fairness_param) +
                             w.a3 * privacy_loss(o.privacy_achieved, targets.privacy_param);
        return std::make_tuple(score, p.strategy.fairness_param, p.strategy.privacy_param);
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

std::vector<SweepRow> sweep_penalties(const GameConfig& cfg, const std::vector<double>& c_fair_grid,
                                      const std::vector<double>& c_priv_grid) {
    if (c_fair_grid.empty() || c_priv_grid.empty()) {
        throw InvalidRange("sweep_penalties: penalty grids must be nonempty");
    }
    if (cfg.initial_specs.empty()) throw ConfigError("sweep_penalties: no initial specs");

    std::vector<SweepRow> rows;
    for (const double cf : c_fair_grid) {
        for (const double cp : c_priv_grid) {
            GameConfig cell = cfg;
            cell.fairness_reg.penalty_scalar = cf;
            cell.privacy_reg.penalty_scalar = cp;
            SweepRow row;
            row.c_fair = cf;
            row.c_priv = cp;
            for (const auto& targets : cfg.initial_specs) {
                const GameTrace trace = run_game(cell, targets);
                const auto& last = trace.records.back();
                row.mean_fair_violation += trace.violation.fairness;
                row.mean_priv_violation += trace.violation.privacy;
                row.mean_acc += last.objectives.accuracy;
                row.mean_cov += last.objectives.coverage;
                ++row.n_runs;
            }
            row.mean_fair_violation /= row.n_runs;
            row.mean_priv_violation /= row.n_runs;
            row.mean_acc /= row.n_runs;
            row.mean_cov /= row.n_runs;
            rows.push_back(row);
        }
    }
    return rows;
}

KneeResult knee_point(const std::vector<std::pair<double, double>>& curve) {
    if (curve.size() < 3) throw InvalidRange("knee_point: need at least 3 points");
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (!(curve[i].first > curve[i - 1].first)) {
            throw InvalidRange("knee_point: x values must be strictly increasing");
        }
    }
    const auto [x_lo, x_hi] = std::pair{curve.front().first, curve.back().first};
    double y_lo = curve.front().second;
    double y_hi = y_lo;
    for (const auto& [x, y] : curve) {
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    }
    const double y_span = y_hi - y_lo;

    auto norm = [&](const std::pair<double, double>& p) {
        const double nx = (p.first - x_lo) / (x_hi - x_lo);
        const double ny = y_span > 0.0 ? (p.second - y_lo) / y_span : 0.0;
        return std::pair{nx, ny};
    };
    const auto a = norm(curve.front());
    const auto b = norm(curve.back());
    const double cx = b.first - a.first;
    const double cy = b.second - a.second;
    const double chord = std::sqrt(cx * cx + cy * cy);

    KneeResult out;
    double best = -1.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto p = norm(curve[i]);
        const double d = std::abs((p.first - a.first) * cy - (p.second - a.second) * cx) / chord;
        if (d > best) {
            best = d;
            out.index = i;
            out.x = curve[i].first;
        }
    }
    if (best < 1e-12) {
        out.degenerate = true;
        out.index = (curve.size() - 1) / 2;
        out.x = curve[out.index].first;
    }
    return out;
}

}  // namespace specgame

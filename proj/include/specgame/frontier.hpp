#pragma once

#include <array>
#include <functional>
#include <vector>

#include "specgame/types.hpp"

namespace specgame {

enum class Sense { minimize, maximize };

/// The objective tuple dominance is decided on. Objective 0 is the builder
/// error 1 - (lambda_b*acc + (1-lambda_b)*cov), objectives 1 and 2 are the
/// achieved disparity and achieved privacy cost. All three minimized by
/// default; senses are configurable per objective.
struct ObjectiveSpec {
    double lambda_b = 0.7;
    std::array<Sense, 3> senses = {Sense::minimize, Sense::minimize, Sense::minimize};

    [[nodiscard]] std::array<double, 3> values(const EvalPoint& p) const {
        const auto& o = p.objectives;
        return {1.0 - (lambda_b * o.accuracy + (1.0 - lambda_b) * o.coverage),
                o.disparity_achieved, o.privacy_achieved};
    }

    /// Objective values with maximize axes negated, so that smaller-is-better
    /// holds uniformly.
    [[nodiscard]] std::array<double, 3> oriented(const EvalPoint& p) const {
        auto v = values(p);
        for (int i = 0; i < 3; ++i) {
            if (senses[static_cast<std::size_t>(i)] == Sense::maximize) {
                v[static_cast<std::size_t>(i)] = -v[static_cast<std::size_t>(i)];
            }
        }
        return v;
    }

    /// Weak dominance with at least one strict inequality.
    [[nodiscard]] bool dominates(const EvalPoint& a, const EvalPoint& b) const {
        const auto va = oriented(a);
        const auto vb = oriented(b);
        bool strict = false;
        for (int i = 0; i < 3; ++i) {
            const auto k = static_cast<std::size_t>(i);
            if (va[k] > vb[k]) return false;
            if (va[k] < vb[k]) strict = true;
        }
        return strict;
    }
};

enum class InterpolationMode { grid_bilinear, knn_idw };

struct FrontierOptions {
    ObjectiveSpec objective;
    InterpolationMode mode = InterpolationMode::knn_idw;
    Box box;
    int knn_k = 4;
    double idw_power = 2.0;
};

/// Per-axis gradient estimate; degenerate axes (fewer than two distinct
/// strategy values available) report 0 with the flag set.
struct GradientEstimate {
    std::array<double, 2> value = {0.0, 0.0};
    std::array<bool, 2> degenerate = {false, false};
};

/// Pareto-filtered view over a result set plus an interpolator for the
/// achieved-objective surfaces over strategy space. Immutable after
/// construction; updates produce new values.
class FrontierModel {
public:
    /// Filters `source` down to its non-dominated subset. Equal objective
    /// vectors keep only the earliest-inserted point. In grid mode the full
    /// sample set is additionally indexed as a rectangular grid when it forms
    /// one (bilinear interpolation falls back to nearest-neighbor weighting
    /// when it does not).
    static FrontierModel build(const ResultSet& source, const FrontierOptions& opts);

    /// Incremental rebuild with one more point appended to the source set.
    /// Equivalent to build(source + p, opts) provided p's strategy does not
    /// collide with an existing sample (collisions require a full rebuild
    /// from the updated result set).
    [[nodiscard]] FrontierModel with_added(const EvalPoint& p) const;

    [[nodiscard]] const std::vector<EvalPoint>& efficient_points() const { return efficient_; }
    [[nodiscard]] const std::vector<EvalPoint>& samples() const { return samples_; }
    [[nodiscard]] const FrontierOptions& options() const { return opts_; }
    [[nodiscard]] bool grid_detected() const { return grid_valid_; }

    /// Achieved objectives at an arbitrary strategy. Grid mode: bilinear on
    /// the sample grid, OutOfDomain outside the sampled bounding box. kNN
    /// mode: inverse-distance-weighted average of the k nearest efficient
    /// points in box-normalized space; exact pass-through at coincident
    /// samples; never errors.
    [[nodiscard]] AchievedObjectives interpolate(const Strategy& s) const;

    /// Central finite differences of selector(interpolate(.)) per coordinate,
    /// one-sided at box edges. h is the step in box-normalized units; the
    /// returned derivatives are with respect to the raw coordinates.
    [[nodiscard]] GradientEstimate estimate_gradient(
        const Strategy& s, const std::function<double(const AchievedObjectives&)>& selector,
        double h = 1e-3) const;

private:
    FrontierModel() = default;

    void index_grid();
    [[nodiscard]] AchievedObjectives interpolate_grid(const Strategy& s) const;
    [[nodiscard]] AchievedObjectives interpolate_knn(const Strategy& s) const;

    std::vector<EvalPoint> samples_;
    std::vector<EvalPoint> efficient_;
    FrontierOptions opts_;

    // Grid index over samples_ (valid only when grid_valid_).
    bool grid_valid_ = false;
    std::vector<double> grid_gammas_;
    std::vector<double> grid_eps_;
    std::vector<int> grid_cells_;  // row-major [i_gamma * n_eps + i_eps] -> sample index
};

/// Spec-level entry point: the non-dominated subset of `points`.
FrontierModel pareto_filter(const ResultSet& points, const FrontierOptions& opts);

}  // namespace specgame

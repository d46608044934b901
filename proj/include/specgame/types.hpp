#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "specgame/errors.hpp"

namespace specgame {

/// The trustworthy-parameter pair every agent negotiates over: a fairness
/// parameter (maximum tolerable disparity, or threshold in the accuracy-parity
/// variant) and a privacy budget.
struct Strategy {
    double fairness_param = 0.0;
    double privacy_param = 0.0;

    [[nodiscard]] bool finite() const {
        return std::isfinite(fairness_param) && std::isfinite(privacy_param);
    }

    friend bool operator==(const Strategy& a, const Strategy& b) {
        return a.fairness_param == b.fairness_param && a.privacy_param == b.privacy_param;
    }
};

/// Rectangular box constraints on strategies. All game dynamics clamp to it.
struct Box {
    double gamma_min = 0.01;
    double gamma_max = 1.0;
    double eps_min = 1.0;
    double eps_max = 10.0;

    [[nodiscard]] double gamma_width() const { return gamma_max - gamma_min; }
    [[nodiscard]] double eps_width() const { return eps_max - eps_min; }

    [[nodiscard]] bool valid() const {
        return gamma_min < gamma_max && eps_min < eps_max && std::isfinite(gamma_min) &&
               std::isfinite(gamma_max) && std::isfinite(eps_min) && std::isfinite(eps_max);
    }

    [[nodiscard]] bool contains(const Strategy& s) const {
        return s.fairness_param >= gamma_min && s.fairness_param <= gamma_max &&
               s.privacy_param >= eps_min && s.privacy_param <= eps_max;
    }

    [[nodiscard]] Strategy clamp(const Strategy& s) const {
        auto clip = [](double x, double lo, double hi) { return x < lo ? lo : (x > hi ? hi : x); };
        return {clip(s.fairness_param, gamma_min, gamma_max), clip(s.privacy_param, eps_min, eps_max)};
    }

    /// Maps into [0,1]^2; used for distances, step tolerances, and gradients.
    [[nodiscard]] Strategy normalize(const Strategy& s) const {
        return {(s.fairness_param - gamma_min) / gamma_width(), (s.privacy_param - eps_min) / eps_width()};
    }

    [[nodiscard]] Strategy denormalize(const Strategy& u) const {
        return {gamma_min + u.fairness_param * gamma_width(), eps_min + u.privacy_param * eps_width()};
    }

    /// Infinity-norm distance between two strategies in normalized coordinates.
    [[nodiscard]] double normalized_inf_dist(const Strategy& a, const Strategy& b) const {
        const double dg = std::abs(a.fairness_param - b.fairness_param) / gamma_width();
        const double de = std::abs(a.privacy_param - b.privacy_param) / eps_width();
        return dg > de ? dg : de;
    }
};

/// What one calibration (model training, here: oracle call) actually achieved.
struct AchievedObjectives {
    double accuracy = 0.0;
    double coverage = 0.0;
    double disparity_achieved = 0.0;
    double privacy_achieved = 0.0;

    [[nodiscard]] bool finite() const {
        return std::isfinite(accuracy) && std::isfinite(coverage) &&
               std::isfinite(disparity_achieved) && std::isfinite(privacy_achieved);
    }
};

/// One calibration result: strategy plus achieved objectives. round_tag is the
/// game round that produced it, -1 for pre-game frontier seeding.
struct EvalPoint {
    Strategy strategy;
    AchievedObjectives objectives;
    int round_tag = -1;
};

/// Ordered collection of calibration results. Inserting a point whose strategy
/// exactly matches an existing one replaces that point in place.
class ResultSet {
public:
    ResultSet() = default;
    explicit ResultSet(std::vector<EvalPoint> points) : points_(std::move(points)) {}

    [[nodiscard]] const std::vector<EvalPoint>& points() const { return points_; }
    [[nodiscard]] bool empty() const { return points_.empty(); }
    [[nodiscard]] std::size_t size() const { return points_.size(); }

    /// Returns true if an existing point was replaced rather than appended.
    bool add(const EvalPoint& p) {
        for (auto& q : points_) {
            if (q.strategy == p.strategy) {
                q = p;
                return true;
            }
        }
        points_.push_back(p);
        return false;
    }

private:
    std::vector<EvalPoint> points_;
};

/// Appends p to r (replacing any identical-strategy point) and returns the
/// updated set.
inline ResultSet add_result(ResultSet r, const EvalPoint& p) {
    r.add(p);
    return r;
}

}  // namespace specgame

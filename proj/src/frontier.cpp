#include "specgame/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace specgame {

namespace {

// Keeps the earliest-inserted point of each identical-objective group: the
// incremental insert below rejects exact ties against already-kept points.
bool ties_or_dominates(const ObjectiveSpec& obj, const EvalPoint& a, const EvalPoint& b) {
    const auto va = obj.oriented(a);
    const auto vb = obj.oriented(b);
    for (int i = 0; i < 3; ++i) {
        if (va[static_cast<std::size_t>(i)] > vb[static_cast<std::size_t>(i)]) return false;
    }
    return true;  // weakly dominates, possibly an exact tie
}

void insert_efficient(std::vector<EvalPoint>& kept, const ObjectiveSpec& obj, const EvalPoint& p) {
    for (const auto& q : kept) {
        if (ties_or_dominates(obj, q, p)) return;
    }
    std::erase_if(kept, [&](const EvalPoint& q) { return obj.dominates(p, q); });
    kept.push_back(p);
}

}  // namespace

FrontierModel FrontierModel::build(const ResultSet& source, const FrontierOptions& opts) {
    if (source.empty()) throw EmptyResultSet("pareto_filter: empty result set");
    for (const auto& p : source.points()) {
        if (!p.strategy.finite() || !p.objectives.finite()) {
            throw Error("pareto_filter: non-finite point in result set");
        }
    }
    FrontierModel m;
    m.opts_ = opts;
    m.samples_ = source.points();
    for (const auto& p : m.samples_) insert_efficient(m.efficient_, opts.objective, p);
    if (opts.mode == InterpolationMode::grid_bilinear) m.index_grid();
    return m;
}

FrontierModel FrontierModel::with_added(const EvalPoint& p) const {
    for (const auto& q : samples_) {
        if (q.strategy == p.strategy) {
            ResultSet rs(samples_);
            rs.add(p);
            return build(rs, opts_);
        }
    }
    FrontierModel m;
    m.opts_ = opts_;
    m.samples_ = samples_;
    m.samples_.push_back(p);
    m.efficient_ = efficient_;
    insert_efficient(m.efficient_, opts_.objective, p);
    if (opts_.mode == InterpolationMode::grid_bilinear) m.index_grid();
    return m;
}

void FrontierModel::index_grid() {
    grid_valid_ = false;
    grid_gammas_.clear();
    grid_eps_.clear();
    grid_cells_.clear();

    for (const auto& p : samples_) {
        grid_gammas_.push_back(p.strategy.fairness_param);
        grid_eps_.push_back(p.strategy.privacy_param);
    }
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(grid_gammas_);
    uniq(grid_eps_);
    const std::size_t ng = grid_gammas_.size();
    const std::size_t ne = grid_eps_.size();
    if (ng < 2 || ne < 2 || ng * ne != samples_.size()) return;

    grid_cells_.assign(ng * ne, -1);
    std::map<double, std::size_t> gidx;
    std::map<double, std::size_t> eidx;
    for (std::size_t i = 0; i < ng; ++i) gidx[grid_gammas_[i]] = i;
    for (std::size_t j = 0; j < ne; ++j) eidx[grid_eps_[j]] = j;
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        const std::size_t i = gidx.at(samples_[k].strategy.fairness_param);
        const std::size_t j = eidx.at(samples_[k].strategy.privacy_param);
        if (grid_cells_[i * ne + j] != -1) return;  // duplicate cell; not a grid
        grid_cells_[i * ne + j] = static_cast<int>(k);
    }
    grid_valid_ = true;
}

AchievedObjectives FrontierModel::interpolate(const Strategy& s) const {
    if (opts_.mode == InterpolationMode::grid_bilinear && grid_valid_) {
        return interpolate_grid(s);
    }
    return interpolate_knn(s);
}

AchievedObjectives FrontierModel::interpolate_grid(const Strategy& s) const {
    const double g = s.fairness_param;
    const double e = s.privacy_param;
    if (g < grid_gammas_.front() || g > grid_gammas_.back() || e < grid_eps_.front() ||
        e > grid_eps_.back()) {
        throw OutOfDomain("interpolate: query outside the sampled grid bounding box");
    }
    auto locate = [](const std::vector<double>& axis, double x) {
        // Cell index i such that axis[i] <= x <= axis[i+1].
        auto it = std::upper_bound(axis.begin(), axis.end(), x);
        std::size_t i = static_cast<std::size_t>(it - axis.begin());
        if (i > 0) --i;
        if (i >= axis.size() - 1) i = axis.size() - 2;
        return i;
    };
    const std::size_t i = locate(grid_gammas_, g);
    const std::size_t j = locate(grid_eps_, e);
    const double tg = (g - grid_gammas_[i]) / (grid_gammas_[i + 1] - grid_gammas_[i]);
    const double te = (e - grid_eps_[j]) / (grid_eps_[j + 1] - grid_eps_[j]);
    const std::size_t ne = grid_eps_.size();
    const auto& p00 = samples_[static_cast<std::size_t>(grid_cells_[i * ne + j])].objectives;
    const auto& p10 = samples_[static_cast<std::size_t>(grid_cells_[(i + 1) * ne + j])].objectives;
    const auto& p01 = samples_[static_cast<std::size_t>(grid_cells_[i * ne + j + 1])].objectives;
    const auto& p11 =
        samples_[static_cast<std::size_t>(grid_cells_[(i + 1) * ne + j + 1])].objectives;

    auto blend = [&](auto field) {
        const double v0 = (1.0 - tg) * (p00.*field) + tg * (p10.*field);
        const double v1 = (1.0 - tg) * (p01.*field) + tg * (p11.*field);
        return (1.0 - te) * v0 + te * v1;
    };
    AchievedObjectives out;
    out.accuracy = blend(&AchievedObjectives::accuracy);
    out.coverage = blend(&AchievedObjectives::coverage);
    out.disparity_achieved = blend(&AchievedObjectives::disparity_achieved);
    out.privacy_achieved = blend(&AchievedObjectives::privacy_achieved);
    return out;
}

AchievedObjectives FrontierModel::interpolate_knn(const Strategy& s) const {
    const Strategy u = opts_.box.normalize(s);
    struct Neighbor {
        double d2;
        std::size_t idx;
    };
    std::vector<Neighbor> near;
    near.reserve(efficient_.size());
    for (std::size_t i = 0; i < efficient_.size(); ++i) {
        const Strategy v = opts_.box.normalize(efficient_[i].strategy);
        const double dg = u.fairness_param - v.fairness_param;
        const double de = u.privacy_param - v.privacy_param;
        near.push_back({dg * dg + de * de, i});
    }
    const std::size_t k =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(1, opts_.knn_k)), near.size());
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(k), near.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                          return a.d2 != b.d2 ? a.d2 < b.d2 : a.idx < b.idx;
                      });
    // Exact pass-through at a coincident sample.
    if (!near.empty() && near.front().d2 < 1e-30) return efficient_[near.front().idx].objectives;

    double wsum = 0.0;
    AchievedObjectives out;
    for (std::size_t n = 0; n < k; ++n) {
        const double d = std::sqrt(near[n].d2);
        const double w = 1.0 / std::pow(d, opts_.idw_power);
        const auto& o = efficient_[near[n].idx].objectives;
        out.accuracy += w * o.accuracy;
        out.coverage += w * o.coverage;
        out.disparity_achieved += w * o.disparity_achieved;
        out.privacy_achieved += w * o.privacy_achieved;
        wsum += w;
    }
    out.accuracy /= wsum;
    out.coverage /= wsum;
    out.disparity_achieved /= wsum;
    out.privacy_achieved /= wsum;
    return out;
}

GradientEstimate FrontierModel::estimate_gradient(
    const Strategy& s, const std::function<double(const AchievedObjectives&)>& selector,
    double h) const {
    if (h <= 0.0) throw InvalidRange("estimate_gradient: h must be positive");

    // Distinct strategy values available along each axis.
    auto distinct_along = [&](bool gamma_axis) {
        if (opts_.mode == InterpolationMode::grid_bilinear && grid_valid_) {
            return gamma_axis ? grid_gammas_.size() : grid_eps_.size();
        }
        std::vector<double> vals;
        vals.reserve(efficient_.size());
        for (const auto& p : efficient_) {
            vals.push_back(gamma_axis ? p.strategy.fairness_param : p.strategy.privacy_param);
        }
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals.size();
    };

    GradientEstimate est;
    const Box& box = opts_.box;
    const std::array<double, 2> widths = {box.gamma_width(), box.eps_width()};
    for (int axis = 0; axis < 2; ++axis) {
        if (distinct_along(axis == 0) < 2) {
            est.degenerate[static_cast<std::size_t>(axis)] = true;
            continue;
        }
        const double delta = h * widths[static_cast<std::size_t>(axis)];
        Strategy hi = s;
        Strategy lo = s;
        if (axis == 0) {
            hi.fairness_param += delta;
            lo.fairness_param -= delta;
        } else {
            hi.privacy_param += delta;
            lo.privacy_param -= delta;
        }
        hi = box.clamp(hi);
        lo = box.clamp(lo);
        const double span = axis == 0 ? hi.fairness_param - lo.fairness_param
                                      : hi.privacy_param - lo.privacy_param;
        if (span <= 0.0) {
            est.degenerate[static_cast<std::size_t>(axis)] = true;
            continue;
        }
        const double fhi = selector(interpolate(hi));
        const double flo = selector(interpolate(lo));
        est.value[static_cast<std::size_t>(axis)] = (fhi - flo) / span;
    }
    return est;
}

FrontierModel pareto_filter(const ResultSet& points, const FrontierOptions& opts) {
    return FrontierModel::build(points, opts);
}

}  // namespace specgame

#include "specgame/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace specgame {

namespace detail {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {
double to_unit(std::uint64_t h) {
    // (0, 1]: avoids log(0) in the Box-Muller transform below.
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}
}  // namespace

double gaussian_noise(std::uint64_t seed, const Strategy& s, std::uint64_t channel, double sd) {
    if (sd <= 0.0) return 0.0;
    std::uint64_t k = splitmix64(seed ^ 0x5bf03635e3a1c63bULL);
    k = splitmix64(k ^ std::bit_cast<std::uint64_t>(s.fairness_param));
    k = splitmix64(k ^ std::bit_cast<std::uint64_t>(s.privacy_param));
    k = splitmix64(k ^ channel);
    const double u1 = to_unit(k);
    const double u2 = to_unit(splitmix64(k));
    return sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

namespace {

double clip01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

AchievedObjectives evaluate_analytic(const AnalyticSurfaceSpec& a, const Strategy& s) {
    const double eps = s.privacy_param;
    const double saturation = 1.0 - std::exp(-eps / a.priv_scale);
    const double cap = a.disparity_cap_base + a.disparity_cap_gain * saturation;
    const double disparity = std::min(s.fairness_param, cap);

    AchievedObjectives out;
    out.disparity_achieved = disparity;
    out.privacy_achieved = eps;
    out.accuracy = clip01(a.base_acc + a.priv_gain * saturation + a.fair_gain * disparity +
                          detail::gaussian_noise(a.seed, s, 0, a.noise_sd));
    out.coverage = clip01(a.cov_base + a.cov_gain * disparity +
                          detail::gaussian_noise(a.seed, s, 1, a.noise_sd));
    return out;
}

AchievedObjectives evaluate_tabular(const TabularOracleSpec& t, const Strategy& s) {
    if (t.points.empty()) throw OracleDomainError("tabular oracle: no points loaded");
    const auto& pts = t.points.points();
    const Strategy u = t.box.normalize(s);

    struct Neighbor {
        double d2;
        std::size_t idx;
    };
    std::vector<Neighbor> near;
    near.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Strategy v = t.box.normalize(pts[i].strategy);
        const double dg = u.fairness_param - v.fairness_param;
        const double de = u.privacy_param - v.privacy_param;
        near.push_back({dg * dg + de * de, i});
    }
    const std::size_t k = t.lookup_mode == TabularLookup::nearest
                              ? 1
                              : std::min<std::size_t>(4, near.size());
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(k), near.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                          return a.d2 != b.d2 ? a.d2 < b.d2 : a.idx < b.idx;
                      });
    if (t.lookup_mode == TabularLookup::nearest || near.front().d2 < 1e-30) {
        return pts[near.front().idx].objectives;
    }
    double wsum = 0.0;
    AchievedObjectives out;
    for (std::size_t n = 0; n < k; ++n) {
        const double w = 1.0 / near[n].d2;  // inverse squared distance
        const auto& o = pts[near[n].idx].objectives;
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

struct EvaluateVisitor {
    const Strategy& s;
    AchievedObjectives operator()(const AnalyticSurfaceSpec& a) const {
        return evaluate_analytic(a, s);
    }
    AchievedObjectives operator()(const TabularOracleSpec& t) const {
        return evaluate_tabular(t, s);
    }
};

}  // namespace

AchievedObjectives evaluate(const OracleSpec& spec, const Strategy& s) {
    if (!s.finite()) throw OracleDomainError("oracle evaluate: non-finite strategy");
    return std::visit(EvaluateVisitor{s}, spec);
}

ResultSet sample_grid(const OracleSpec& spec, double gamma_lo, double gamma_hi, double eps_lo,
                      double eps_hi, int n_gamma, int n_eps) {
    if (!(gamma_lo < gamma_hi) || !(eps_lo < eps_hi)) {
        throw InvalidRange("sample_grid: range minimum must be below maximum");
    }
    if (n_gamma < 2 || n_eps < 2) throw InvalidRange("sample_grid: need at least 2 points per axis");

    ResultSet out;
    for (int i = 0; i < n_gamma; ++i) {
        const double g =
            gamma_lo + (gamma_hi - gamma_lo) * static_cast<double>(i) / (n_gamma - 1);
        for (int j = 0; j < n_eps; ++j) {
            const double e = eps_lo + (eps_hi - eps_lo) * static_cast<double>(j) / (n_eps - 1);
            const Strategy s{g, e};
            out.add(EvalPoint{s, evaluate(spec, s), -1});
        }
    }
    return out;
}

}  // namespace specgame

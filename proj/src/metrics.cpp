#include "specgame/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace specgame {

DisparityResult demographic_disparity(const std::vector<PredictionRecord>& records, int n_classes,
                                      int n_groups) {
    if (n_classes < 1 || n_groups < 1) throw InvalidRange("demographic_disparity: empty domains");
    for (const auto& r : records) {
        if (r.predicted_class < 0 || r.predicted_class >= n_classes || r.subgroup < 0 ||
            r.subgroup >= n_groups) {
            throw InvalidRange("demographic_disparity: record outside declared cardinalities");
        }
    }

    const auto nz = static_cast<std::size_t>(n_groups);
    const auto nk = static_cast<std::size_t>(n_classes);
    std::vector<std::vector<double>> joint(nz, std::vector<double>(nk, 0.0));
    std::vector<double> group_count(nz, 0.0);
    for (const auto& r : records) {
        joint[static_cast<std::size_t>(r.subgroup)][static_cast<std::size_t>(r.predicted_class)] +=
            1.0;
        group_count[static_cast<std::size_t>(r.subgroup)] += 1.0;
    }
    const double total = static_cast<double>(records.size());
    for (std::size_t z = 0; z < nz; ++z) {
        if (group_count[z] == 0.0) {
            throw EmptyGroup("demographic_disparity: subgroup " + std::to_string(z) +
                             " has no records");
        }
        if (total - group_count[z] == 0.0) {
            throw EmptyGroup("demographic_disparity: subgroup " + std::to_string(z) +
                             " has an empty complement");
        }
    }

    DisparityResult out;
    out.matrix.assign(nz, std::vector<double>(nk, 0.0));
    bool first = true;
    for (std::size_t z = 0; z < nz; ++z) {
        for (std::size_t k = 0; k < nk; ++k) {
            double in_class_elsewhere = 0.0;
            for (std::size_t z2 = 0; z2 < nz; ++z2) {
                if (z2 != z) in_class_elsewhere += joint[z2][k];
            }
            const double rate_in = joint[z][k] / group_count[z];
            const double rate_out = in_class_elsewhere / (total - group_count[z]);
            const double gap = rate_in - rate_out;
            out.matrix[z][k] = gap;
            if (first || gap > out.max_signed) out.max_signed = gap;
            if (first || std::abs(gap) > out.max_abs) out.max_abs = std::abs(gap);
            first = false;
        }
    }
    return out;
}

bool gamma_dem_parity_check(const std::vector<std::vector<double>>& matrix, double gamma) {
    for (const auto& row : matrix) {
        for (const double v : row) {
            if (!(v <= gamma)) return false;
        }
    }
    return true;
}

double disparate_impact_gap(const DisparateImpactInput& input, int group_a, int group_b) {
    auto impact = [&](int g) {
        const auto base = input.baseline_accuracy.find(g);
        const auto priv = input.private_accuracy.find(g);
        if (base == input.baseline_accuracy.end() || priv == input.private_accuracy.end()) {
            throw MissingGroup("disparate_impact_gap: group " + std::to_string(g) +
                               " missing from one of the accuracy maps");
        }
        return base->second - priv->second;
    };
    return std::abs(impact(group_a) - impact(group_b));
}

}  // namespace specgame

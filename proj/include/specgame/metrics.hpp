#pragma once

#include <map>
#include <vector>

#include "specgame/errors.hpp"

namespace specgame {

/// One labeled prediction: the predicted class and the sensitive subgroup of
/// the record it was made on.
struct PredictionRecord {
    int predicted_class = 0;
    int subgroup = 0;
};

struct DisparityResult {
    /// matrix[z][k]: rate of class k among subgroup z minus its rate among
    /// the complement of z (signed).
    std::vector<std::vector<double>> matrix;
    double max_signed = 0.0;
    double max_abs = 0.0;
};

/// Multi-class demographic disparity over a prediction table. Every subgroup
/// must appear at least once and have a nonempty complement.
DisparityResult demographic_disparity(const std::vector<PredictionRecord>& records, int n_classes,
                                      int n_groups);

/// True iff every signed matrix entry is at most gamma (non-strict).
bool gamma_dem_parity_check(const std::vector<std::vector<double>>& matrix, double gamma);

/// Per-group accuracy drop caused by private training, keyed by group id.
struct DisparateImpactInput {
    std::map<int, double> baseline_accuracy;
    std::map<int, double> private_accuracy;
};

/// | (base_a - priv_a) - (base_b - priv_b) |: the between-group gap of the
/// per-group accuracy cost of privacy.
double disparate_impact_gap(const DisparateImpactInput& input, int group_a, int group_b);

}  // namespace specgame

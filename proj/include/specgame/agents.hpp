#pragma once

#include "specgame/frontier.hpp"
#include "specgame/types.hpp"

namespace specgame {

enum class RegulatorKind { fairness, privacy };

struct RegulatorConfig {
    RegulatorKind kind = RegulatorKind::fairness;
    double target = 0.0;          // gamma_0 or eps_0
    double penalty_scalar = 0.0;  // C >= 0
    double eta = 0.1;             // step size > 0
    double decay = 0.67;          // step-size decay factor
};

enum class BuilderLossVariant { fairpate, dpsgd };

struct BuilderConfig {
    double lambda_fair = 0.3;
    double lambda_priv = 0.01;
    double lambda_b = 0.7;  // accuracy vs coverage weight, in [0,1]
    double eta = 0.5;
    double decay = 0.67;
    BuilderLossVariant loss_variant = BuilderLossVariant::fairpate;
};

/// max(0, achieved - target): the regulator's violation measure.
double fairness_loss(double disparity_achieved, double gamma_target);
double privacy_loss(double privacy_achieved, double eps_target);

/// Linear penalty C * hinge.
double penalty(double penalty_scalar, double hinge_loss);

/// The builder's utility loss: -(lambda_b*acc + (1-lambda_b)*cov) for the
/// reject-option variant, -acc for the accuracy-only variant.
double builder_utility_error(const AchievedObjectives& obj, const BuilderConfig& cfg);

/// Same quantity shifted into error space (1 + utility loss, in [0,1]);
/// this is what traces report and what dominance/scalarization use.
double builder_error(const AchievedObjectives& obj, const BuilderConfig& cfg);

/// err + lambda_priv*C_priv*hinge_priv + lambda_fair*C_fair*hinge_fair, with
/// err supplied directly (error-space form).
double builder_total_loss_from_error(double err, double fair_hinge, double priv_hinge,
                                     const BuilderConfig& builder, const RegulatorConfig& fair_reg,
                                     const RegulatorConfig& priv_reg);

/// Full builder loss at achieved objectives, error-space utility.
double builder_total_loss(const AchievedObjectives& obj, const BuilderConfig& builder,
                          const RegulatorConfig& fair_reg, const RegulatorConfig& priv_reg);

struct StepResult {
    Strategy strategy;
    bool degenerate = false;  // gradient unavailable along the moved axis
};

/// One regulator move: a gradient step on the regulator's own coordinate of
/// its step objective (the achieved disparity for the fairness regulator, the
/// achieved privacy cost for the privacy regulator), estimated on the
/// frontier, clamped to the box. h is the finite-difference step in
/// box-normalized units.
StepResult regulator_step(const FrontierModel& frontier, const Strategy& s,
                          const RegulatorConfig& reg, double eta, double h = 1e-3);

/// One builder move: a gradient step on the full builder loss composed with
/// the frontier interpolation, both coordinates, clamped to the box. The
/// gradient is assembled term by term — utility error plus each penalty's
/// weighted achieved-surface gradient, the latter only while that hinge is
/// active at the current point (the subgradient is taken as zero on the
/// compliant side of the kink).
StepResult builder_step(const FrontierModel& frontier, const Strategy& s,
                        const BuilderConfig& builder, const RegulatorConfig& fair_reg,
                        const RegulatorConfig& priv_reg, double eta, double h = 1e-3);

}  // namespace specgame

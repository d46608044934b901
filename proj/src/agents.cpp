#include "specgame/agents.hpp"

#include <algorithm>

namespace specgame {

double fairness_loss(double disparity_achieved, double gamma_target) {
    return std::max(0.0, disparity_achieved - gamma_target);
}

double privacy_loss(double privacy_achieved, double eps_target) {
    return std::max(0.0, privacy_achieved - eps_target);
}

double penalty(double penalty_scalar, double hinge_loss) { return penalty_scalar * hinge_loss; }

double builder_utility_error(const AchievedObjectives& obj, const BuilderConfig& cfg) {
    if (cfg.loss_variant == BuilderLossVariant::dpsgd) return -obj.accuracy;
    return -(cfg.lambda_b * obj.accuracy + (1.0 - cfg.lambda_b) * obj.coverage);
}

double builder_error(const AchievedObjectives& obj, const BuilderConfig& cfg) {
    return 1.0 + builder_utility_error(obj, cfg);
}

double builder_total_loss_from_error(double err, double fair_hinge, double priv_hinge,
                                     const BuilderConfig& builder, const RegulatorConfig& fair_reg,
                                     const RegulatorConfig& priv_reg) {
    return err + builder.lambda_priv * penalty(priv_reg.penalty_scalar, priv_hinge) +
           builder.lambda_fair * penalty(fair_reg.penalty_scalar, fair_hinge);
}

double builder_total_loss(const AchievedObjectives& obj, const BuilderConfig& builder,
                          const RegulatorConfig& fair_reg, const RegulatorConfig& priv_reg) {
    return builder_total_loss_from_error(
        builder_error(obj, builder), fairness_loss(obj.disparity_achieved, fair_reg.target),
        privacy_loss(obj.privacy_achieved, priv_reg.target), builder, fair_reg, priv_reg);
}

StepResult regulator_step(const FrontierModel& frontier, const Strategy& s,
                          const RegulatorConfig& reg, double eta, double h) {
    const bool fairness = reg.kind == RegulatorKind::fairness;
    const auto selector = fairness
                              ? +[](const AchievedObjectives& o) { return o.disparity_achieved; }
                              : +[](const AchievedObjectives& o) { return o.privacy_achieved; };
    const GradientEstimate g = frontier.estimate_gradient(s, selector, h);
    const std::size_t axis = fairness ? 0 : 1;

    StepResult out{s, g.degenerate[axis]};
    if (g.degenerate[axis]) return out;  // degenerate frontier: zero step
    if (fairness) {
        out.strategy.fairness_param -= eta * g.value[0];
    } else {
        out.strategy.privacy_param -= eta * g.value[1];
    }
    out.strategy = frontier.options().box.clamp(out.strategy);
    return out;
}

StepResult builder_step(const FrontierModel& frontier, const Strategy& s,
                        const BuilderConfig& builder, const RegulatorConfig& fair_reg,
                        const RegulatorConfig& priv_reg, double eta, double h) {
    // The update sums per-term gradients: the utility error and each achieved
    // surface are differenced separately, and a penalty term contributes only
    // while its hinge is active at the current point. Differencing the
    // composite loss instead would smear the hinge kink across the stencil
    // width and stall the builder up to h short of the compliance boundary.
    const auto err = [&](const AchievedObjectives& o) { return builder_error(o, builder); };
    const GradientEstimate g_err = frontier.estimate_gradient(s, err, h);

    const AchievedObjectives here = frontier.interpolate(s);
    const double fair_weight =
        fairness_loss(here.disparity_achieved, fair_reg.target) > 0.0
            ? builder.lambda_fair * fair_reg.penalty_scalar
            : 0.0;
    const double priv_weight = privacy_loss(here.privacy_achieved, priv_reg.target) > 0.0
                                   ? builder.lambda_priv * priv_reg.penalty_scalar
                                   : 0.0;

    GradientEstimate g_disp;
    if (fair_weight > 0.0) {
        g_disp = frontier.estimate_gradient(
            s, [](const AchievedObjectives& o) { return o.disparity_achieved; }, h);
    }
    GradientEstimate g_priv;
    if (priv_weight > 0.0) {
        g_priv = frontier.estimate_gradient(
            s, [](const AchievedObjectives& o) { return o.privacy_achieved; }, h);
    }

    StepResult out{s, g_err.degenerate[0] && g_err.degenerate[1]};
    const double gx = g_err.value[0] + fair_weight * g_disp.value[0] + priv_weight * g_priv.value[0];
    const double ge = g_err.value[1] + fair_weight * g_disp.value[1] + priv_weight * g_priv.value[1];
    out.strategy.fairness_param -= eta * gx;
    out.strategy.privacy_param -= eta * ge;
    out.strategy = frontier.options().box.clamp(out.strategy);
    return out;
}

}  // namespace specgame

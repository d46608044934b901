#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specgame/agents.hpp"
#include "test_util.hpp"

using namespace specgame;
using testutil::Rng;

namespace {

FrontierModel affine_frontier(const Box& box, double acc_g, double acc_e, double acc_0,
                              int n = 21) {
    ResultSet rs;
    for (int i = 0; i < n; ++i) {
        const double g = box.gamma_min + box.gamma_width() * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double e = box.eps_min + box.eps_width() * j / (n - 1);
            EvalPoint p;
            p.strategy = {g, e};
            p.objectives.accuracy = acc_0 + acc_g * g + acc_e * e;
            p.objectives.coverage = 0.5;
            p.objectives.disparity_achieved = g;  // unit slope in gamma
            p.objectives.privacy_achieved = e;    // unit slope in eps
            rs.add(p);
        }
    }
    FrontierOptions opts;
    opts.mode = InterpolationMode::grid_bilinear;
    opts.box = box;
    return pareto_filter(rs, opts);
}

}  // namespace

TEST_CASE("hinge losses") {
    CHECK(fairness_loss(0.15, 0.10) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(fairness_loss(0.05, 0.10) == 0.0);
    CHECK(fairness_loss(0.3, 0.3) == 0.0);
    CHECK(privacy_loss(8.0, 5.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(privacy_loss(4.0, 5.0) == 0.0);
    CHECK(privacy_loss(5.0, 5.0) == 0.0);
}

TEST_CASE("penalty products") {
    CHECK(penalty(1.5, 2.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(penalty(0.0, 123.0) == 0.0);
    CHECK(penalty(3.0, 0.04) == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("builder utility forms") {
    AchievedObjectives obj;
    obj.accuracy = 0.9;
    obj.coverage = 0.8;
    BuilderConfig cfg;
    cfg.lambda_b = 0.7;
    CHECK(builder_utility_error(obj, cfg) == doctest::Approx(-0.87).epsilon(1e-12));
    CHECK(builder_error(obj, cfg) == doctest::Approx(0.13).epsilon(1e-12));

    cfg.loss_variant = BuilderLossVariant::dpsgd;
    obj.accuracy = 0.95;
    CHECK(builder_utility_error(obj, cfg) == doctest::Approx(-0.95).epsilon(1e-12));

    cfg.loss_variant = BuilderLossVariant::fairpate;
    cfg.lambda_b = 1.0;
    CHECK(builder_utility_error(obj, cfg) == doctest::Approx(-obj.accuracy).epsilon(1e-12));
}

TEST_CASE("builder total loss composition") {
    BuilderConfig builder;
    builder.lambda_priv = 0.01;
    builder.lambda_fair = 0.3;
    RegulatorConfig fair{RegulatorKind::fairness, 0.0, 3.0, 0.1, 0.67};
    RegulatorConfig priv{RegulatorKind::privacy, 0.0, 1.5, 10.0, 0.67};
    const double total = builder_total_loss_from_error(0.2, 0.04, 2.0, builder, fair, priv);
    CHECK(total == doctest::Approx(0.266).epsilon(1e-12));

    SUBCASE("no violations reduce to the utility error") {
        AchievedObjectives obj{0.9, 0.8, 0.05, 4.0};
        fair.target = 0.1;
        priv.target = 5.0;
        CHECK(builder_total_loss(obj, builder, fair, priv) ==
              doctest::Approx(builder_error(obj, builder)).epsilon(1e-12));
    }
    SUBCASE("doubling an active privacy penalty strictly increases the loss") {
        AchievedObjectives obj{0.9, 0.8, 0.05, 8.0};
        fair.target = 0.1;
        priv.target = 5.0;
        const double before = builder_total_loss(obj, builder, fair, priv);
        priv.penalty_scalar *= 2.0;
        CHECK(builder_total_loss(obj, builder, fair, priv) > before);
    }
    SUBCASE("inactive hinge leaves the loss independent of its scalars") {
        AchievedObjectives obj{0.9, 0.8, 0.05, 4.0};
        fair.target = 0.1;
        priv.target = 5.0;
        const double before = builder_total_loss(obj, builder, fair, priv);
        priv.penalty_scalar = 99.0;
        builder.lambda_priv = 7.0;
        CHECK(builder_total_loss(obj, builder, fair, priv) ==
              doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("scaling the loss preserves the argmin over candidate sets") {
    BuilderConfig builder;
    RegulatorConfig fair{RegulatorKind::fairness, 0.05, 2.0, 0.1, 0.67};
    RegulatorConfig priv{RegulatorKind::privacy, 3.0, 1.0, 10.0, 0.67};
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<AchievedObjectives> candidates;
        for (int i = 0; i < 12; ++i) {
            candidates.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                                  rng.uniform(0.0, 0.4), rng.uniform(1.0, 10.0)});
        }
        const double scale = rng.uniform(0.1, 50.0);
        std::size_t best_raw = 0;
        std::size_t best_scaled = 0;
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            const auto loss = [&](std::size_t k) {
                return builder_total_loss(candidates[k], builder, fair, priv);
            };
            if (loss(i) < loss(best_raw)) best_raw = i;
            if (scale * loss(i) < scale * loss(best_scaled)) best_scaled = i;
        }
        CHECK(best_raw == best_scaled);
    }
}

TEST_CASE("fairness regulator steps only its own coordinate at unit slope") {
    const Box box{0.01, 1.0, 1.0, 10.0};
    const auto fm = affine_frontier(box, 0.0, 0.0, 0.5);
    RegulatorConfig fair{RegulatorKind::fairness, 0.1, 0.0, 0.1, 0.67};
    const Strategy s{0.5, 5.0};
    const auto r = regulator_step(fm, s, fair, 0.1);
    CHECK(r.strategy.fairness_param == doctest::Approx(0.4).epsilon(1e-6));
    CHECK(r.strategy.privacy_param == 5.0);
}

TEST_CASE("privacy regulator step clamps to the box floor") {
    const Box box{0.01, 1.0, 1.0, 10.0};
    const auto fm = affine_frontier(box, 0.0, 0.0, 0.5);
    RegulatorConfig priv{RegulatorKind::privacy, 5.0, 0.0, 10.0, 0.67};
    const auto r = regulator_step(fm, Strategy{0.5, 5.0}, priv, 10.0);
    CHECK(r.strategy.privacy_param == box.eps_min);
    CHECK(r.strategy.fairness_param == 0.5);
}

TEST_CASE("flat achieved surface leaves the strategy unchanged") {
    const Box box{0.01, 1.0, 1.0, 10.0};
    ResultSet rs;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            EvalPoint p;
            p.strategy = {0.01 + 0.2 * i, 1.0 + 2.0 * j};
            p.objectives = {0.7, 0.6, 0.2, 3.0};  // constant in the strategy
            rs.add(p);
        }
    }
    FrontierOptions opts;
    opts.mode = InterpolationMode::grid_bilinear;
    opts.box = box;
    const auto fm = pareto_filter(rs, opts);
    RegulatorConfig fair{RegulatorKind::fairness, 0.1, 0.0, 0.1, 0.67};
    const Strategy s{0.41, 5.0};
    CHECK(regulator_step(fm, s, fair, 0.1).strategy.fairness_param == s.fairness_param);
}

TEST_CASE("builder step climbs both coordinates when unpenalized accuracy rises in both") {
    const Box box{0.01, 1.0, 1.0, 10.0};
    const auto fm = affine_frontier(box, 0.2, 0.03, 0.2);
    BuilderConfig builder;
    RegulatorConfig fair{RegulatorKind::fairness, 1.0, 0.0, 0.1, 0.67};   // hinge never active
    RegulatorConfig priv{RegulatorKind::privacy, 20.0, 0.0, 10.0, 0.67};  // hinge never active
    const Strategy s{0.5, 5.0};
    const auto r = builder_step(fm, s, builder, fair, priv, 0.5);
    CHECK(r.strategy.fairness_param > s.fairness_param);
    CHECK(r.strategy.privacy_param > s.privacy_param);
}

TEST_CASE("a large active penalty reverses the builder's direction on the violated axis") {
    const Box box{0.01, 1.0, 1.0, 10.0};
    const auto fm = affine_frontier(box, 0.2, 0.03, 0.2);
    BuilderConfig builder;  // lambda_fair = 0.3
    RegulatorConfig fair{RegulatorKind::fairness, 0.05, 50.0, 0.1, 0.67};  // deep violation
    RegulatorConfig priv{RegulatorKind::privacy, 20.0, 0.0, 10.0, 0.67};
    const Strategy s{0.5, 5.0};
    const auto r = builder_step(fm, s, builder, fair, priv, 0.5);
    CHECK(r.strategy.fairness_param < s.fairness_param);
    CHECK(r.strategy.privacy_param > s.privacy_param);  // privacy hinge still inactive
}

TEST_CASE("zero step size is the identity") {
    const Box box{0.01, 1.0, 1.0, 10.0};
    const auto fm = affine_frontier(box, 0.2, 0.03, 0.2);
    BuilderConfig builder;
    RegulatorConfig fair{RegulatorKind::fairness, 0.1, 1.0, 0.1, 0.67};
    RegulatorConfig priv{RegulatorKind::privacy, 5.0, 1.0, 10.0, 0.67};
    const Strategy s{0.37, 6.1};
    const auto r = builder_step(fm, s, builder, fair, priv, 0.0);
    CHECK(r.strategy.fairness_param == s.fairness_param);
    CHECK(r.strategy.privacy_param == s.privacy_param);
}

TEST_CASE("steps never leave the box") {
    const Box box{0.01, 1.0, 1.0, 10.0};
    const auto fm = affine_frontier(box, 0.3, 0.05, 0.1);
    BuilderConfig builder;
    RegulatorConfig fair{RegulatorKind::fairness, 0.05, 10.0, 0.1, 0.67};
    RegulatorConfig priv{RegulatorKind::privacy, 2.0, 10.0, 10.0, 0.67};
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const Strategy s = box.clamp({rng.uniform(0.0, 1.1), rng.uniform(0.5, 11.0)});
        const double eta = rng.uniform(0.0, 50.0);
        CHECK(box.contains(builder_step(fm, s, builder, fair, priv, eta).strategy));
        CHECK(box.contains(regulator_step(fm, s, fair, eta).strategy));
        CHECK(box.contains(regulator_step(fm, s, priv, eta).strategy));
    }
}

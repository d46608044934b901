#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specgame/frontier.hpp"
#include "test_util.hpp"

using namespace specgame;
using testutil::Rng;

namespace {

EvalPoint make_point(double err_proxy_acc, double disparity, double privacy, int tag = -1,
                     double gamma = 0.5, double eps = 5.0) {
    EvalPoint p;
    p.strategy = {gamma, eps};
    p.objectives.accuracy = err_proxy_acc;
    p.objectives.coverage = err_proxy_acc;  // builder error = 1 - acc regardless of lambda_b
    p.objectives.disparity_achieved = disparity;
    p.objectives.privacy_achieved = privacy;
    p.round_tag = tag;
    return p;
}

FrontierOptions knn_opts(const Box& box) {
    FrontierOptions o;
    o.mode = InterpolationMode::knn_idw;
    o.box = box;
    return o;
}

FrontierOptions grid_opts(const Box& box) {
    FrontierOptions o;
    o.mode = InterpolationMode::grid_bilinear;
    o.box = box;
    return o;
}

ResultSet random_set(Rng& rng, int n) {
    ResultSet rs;
    for (int i = 0; i < n; ++i) {
        EvalPoint p;
        p.strategy = {rng.uniform(0.01, 1.0), rng.uniform(1.0, 10.0)};
        p.objectives.accuracy = rng.uniform(0.0, 1.0);
        p.objectives.coverage = rng.uniform(0.0, 1.0);
        p.objectives.disparity_achieved = rng.uniform(0.0, 0.5);
        p.objectives.privacy_achieved = rng.uniform(0.5, 10.0);
        p.round_tag = i;
        rs.add(p);
    }
    return rs;
}

}  // namespace

TEST_CASE("dominated point is filtered out") {
    ResultSet rs;
    rs.add(make_point(1.0 - 1.0 + 0.9, 1.0, 1.0, 0, 0.2, 2.0));  // objectives (0.1, 1, 1)
    rs.add(make_point(0.8, 2.0, 2.0, 1, 0.4, 4.0));              // objectives (0.2, 2, 2)
    const auto fm = pareto_filter(rs, knn_opts(Box{}));
    REQUIRE(fm.efficient_points().size() == 1);
    CHECK(fm.efficient_points()[0].round_tag == 0);
}

TEST_CASE("incomparable pair both stay on the frontier") {
    ResultSet rs;
    rs.add(make_point(0.9, 1.0, 2.0, 0, 0.2, 2.0));
    rs.add(make_point(0.9, 2.0, 1.0, 1, 0.4, 4.0));
    const auto fm = pareto_filter(rs, knn_opts(Box{}));
    CHECK(fm.efficient_points().size() == 2);
}

TEST_CASE("empty result set rejected") {
    CHECK_THROWS_AS(pareto_filter(ResultSet{}, knn_opts(Box{})), EmptyResultSet);
}

TEST_CASE("random sets match the all-pairs dominance oracle") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(1, 200);
        const ResultSet rs = random_set(rng, n);
        const auto fm = pareto_filter(rs, knn_opts(Box{}));
        const auto ref = testutil::ref_pareto(rs.points(), 0.7);
        CHECK(testutil::same_points(fm.efficient_points(), ref));
    }
}

TEST_CASE("filter is idempotent and removed points are dominated by kept ones") {
    Rng rng(7);
    const ResultSet rs = random_set(rng, 150);
    const auto fm = pareto_filter(rs, knn_opts(Box{}));
    const auto twice = pareto_filter(ResultSet(fm.efficient_points()), knn_opts(Box{}));
    CHECK(testutil::same_points(fm.efficient_points(), twice.efficient_points()));

    const auto& obj = fm.options().objective;
    for (const auto& p : rs.points()) {
        bool kept = false;
        for (const auto& q : fm.efficient_points()) {
            if (q.strategy == p.strategy) kept = true;
        }
        if (kept) continue;
        bool covered = false;
        for (const auto& q : fm.efficient_points()) {
            if (obj.dominates(q, p) || obj.oriented(q) == obj.oriented(p)) covered = true;
        }
        CHECK(covered);
    }
}

TEST_CASE("identical objective vectors keep the earliest point") {
    ResultSet rs;
    rs.add(make_point(0.9, 1.0, 1.0, 0, 0.2, 2.0));
    rs.add(make_point(0.9, 1.0, 1.0, 1, 0.4, 4.0));
    const auto fm = pareto_filter(rs, knn_opts(Box{}));
    REQUIRE(fm.efficient_points().size() == 1);
    CHECK(fm.efficient_points()[0].round_tag == 0);
}

TEST_CASE("maximize orientation flips dominance") {
    FrontierOptions opts = knn_opts(Box{});
    opts.objective.senses = {Sense::maximize, Sense::maximize, Sense::maximize};
    ResultSet rs;
    rs.add(make_point(0.9, 1.0, 1.0, 0, 0.2, 2.0));
    rs.add(make_point(0.8, 2.0, 2.0, 1, 0.4, 4.0));
    const auto fm = pareto_filter(rs, opts);
    // Under maximize, higher error/disparity/privacy wins; point 1 has higher
    // error (0.2 > 0.1) and higher disparity/privacy, so it dominates.
    REQUIRE(fm.efficient_points().size() == 1);
    CHECK(fm.efficient_points()[0].round_tag == 1);
}

TEST_CASE("add_result semantics: dominated, dominating, duplicate") {
    const Box box{};
    ResultSet rs;
    rs.add(make_point(0.9, 1.0, 1.0, 0, 0.2, 2.0));
    rs.add(make_point(0.85, 1.5, 1.5, 1, 0.4, 4.0));
    auto before = pareto_filter(rs, knn_opts(box));

    SUBCASE("dominated point leaves the frontier unchanged") {
        rs = add_result(rs, make_point(0.5, 3.0, 3.0, 2, 0.6, 6.0));
        const auto after = pareto_filter(rs, knn_opts(box));
        CHECK(testutil::same_points(before.efficient_points(), after.efficient_points()));
    }
    SUBCASE("dominating point displaces the dominated one") {
        rs = add_result(rs, make_point(0.95, 0.5, 0.5, 2, 0.6, 6.0));
        const auto after = pareto_filter(rs, knn_opts(box));
        REQUIRE(after.efficient_points().size() == 1);
        CHECK(after.efficient_points()[0].round_tag == 2);
    }
    SUBCASE("duplicate strategy replaces in place") {
        const auto n = rs.size();
        rs = add_result(rs, make_point(0.2, 9.0, 9.0, 7, 0.2, 2.0));
        CHECK(rs.size() == n);
        CHECK(rs.points()[0].round_tag == 7);
        CHECK(rs.points()[0].objectives.disparity_achieved == 9.0);
    }
}

TEST_CASE("with_added matches a full rebuild over random insertion sequences") {
    Rng rng(99);
    const Box box{};
    for (int trial = 0; trial < 10; ++trial) {
        ResultSet rs = random_set(rng, 5);
        FrontierModel incremental = pareto_filter(rs, knn_opts(box));
        for (int step = 0; step < 60; ++step) {
            EvalPoint p;
            p.strategy = {rng.uniform(0.01, 1.0), rng.uniform(1.0, 10.0)};
            p.objectives.accuracy = rng.uniform(0.0, 1.0);
            p.objectives.coverage = rng.uniform(0.0, 1.0);
            p.objectives.disparity_achieved = rng.uniform(0.0, 0.5);
            p.objectives.privacy_achieved = rng.uniform(0.5, 10.0);
            p.round_tag = step;
            rs.add(p);
            incremental = incremental.with_added(p);
            const auto batch = pareto_filter(rs, knn_opts(box));
            REQUIRE(testutil::same_points(incremental.efficient_points(),
                                          batch.efficient_points()));
        }
    }
}

TEST_CASE("bilinear interpolation is exact for affine surfaces") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    auto f = [](double g, double e) { return 0.1 + 0.25 * g + 0.04 * e; };
    const auto rs = testutil::surface_grid(f, box, 11, 11);
    const auto fm = pareto_filter(rs, grid_opts(box));
    REQUIRE(fm.grid_detected());

    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const double g = rng.uniform(0.0, 1.0);
        const double e = rng.uniform(0.0, 10.0);
        const auto obj = fm.interpolate({g, e});
        CHECK(obj.accuracy == doctest::Approx(f(g, e)).epsilon(0).scale(1).epsilon(1e-12));
    }
}

TEST_CASE("interpolation passes through sample points exactly") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    auto f = [](double g, double e) { return 0.3 + 0.2 * std::sin(g * 3) + 0.01 * e * e; };
    const auto rs = testutil::surface_grid(f, box, 9, 9);
    for (const auto& mode : {grid_opts(box), knn_opts(box)}) {
        const auto fm = pareto_filter(rs, mode);
        for (const auto& p : fm.efficient_points()) {
            const auto obj = fm.interpolate(p.strategy);
            CHECK(obj.accuracy == p.objectives.accuracy);
        }
    }
    // Grid mode passes through every sample, efficient or not.
    const auto fm = pareto_filter(rs, grid_opts(box));
    for (const auto& p : fm.samples()) {
        CHECK(fm.interpolate(p.strategy).accuracy == p.objectives.accuracy);
    }
}

TEST_CASE("bilinear error on a smooth saturating surface stays below 5e-3") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    auto f = [](double g, double e) { return 0.6 + 0.3 * (1.0 - std::exp(-e / 3.0)) + 0.1 * g; };
    const auto rs = testutil::surface_grid(f, box, 21, 21);
    const auto fm = pareto_filter(rs, grid_opts(box));
    Rng rng(17);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double g = rng.uniform(0.0, 1.0);
        const double e = rng.uniform(0.0, 10.0);
        worst = std::max(worst, std::abs(fm.interpolate({g, e}).accuracy - f(g, e)));
    }
    CHECK(worst < 5e-3);
}

TEST_CASE("grid interpolation rejects queries outside the sampled box") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    const auto rs = testutil::surface_grid([](double g, double e) { return g + e; }, box, 5, 5);
    const auto fm = pareto_filter(rs, grid_opts(box));
    CHECK_THROWS_AS((void)fm.interpolate({-0.1, 5.0}), OutOfDomain);
    CHECK_THROWS_AS((void)fm.interpolate({0.5, 10.5}), OutOfDomain);
}

TEST_CASE("knn interpolation extrapolates instead of erroring and stays in neighbor hull") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    const auto rs = testutil::surface_grid([](double g, double e) { return 0.2 + 0.05 * g + 0.01 * e; },
                                           box, 6, 6);
    const auto fm = pareto_filter(rs, knn_opts(box));
    double lo = 1e300;
    double hi = -1e300;
    for (const auto& p : fm.efficient_points()) {
        lo = std::min(lo, p.objectives.accuracy);
        hi = std::max(hi, p.objectives.accuracy);
    }
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        // Includes out-of-box queries: kNN mode never throws.
        const double g = rng.uniform(-0.5, 1.5);
        const double e = rng.uniform(-2.0, 12.0);
        const double v = fm.interpolate({g, e}).accuracy;
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("grid interpolation stays within the cell's corner values") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    auto f = [](double g, double e) { return 0.2 + 0.3 * std::sin(5 * g) * std::cos(e); };
    const auto rs = testutil::surface_grid(f, box, 8, 8);
    const auto fm = pareto_filter(rs, grid_opts(box));
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const double g = rng.uniform(0.0, 1.0);
        const double e = rng.uniform(0.0, 10.0);
        // Corner values of the enclosing cell bound the bilinear blend.
        double lo = 1e300;
        double hi = -1e300;
        for (const auto& p : fm.samples()) {
            if (std::abs(p.strategy.fairness_param - g) <= 1.0 / 7 + 1e-9 &&
                std::abs(p.strategy.privacy_param - e) <= 10.0 / 7 + 1e-9) {
                lo = std::min(lo, p.objectives.accuracy);
                hi = std::max(hi, p.objectives.accuracy);
            }
        }
        const double v = fm.interpolate({g, e}).accuracy;
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("gradient of gamma^2 + eps^2 at an interior node") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    auto f = [](double g, double e) { return g * g + e * e; };
    const auto rs = testutil::surface_grid(f, box, 41, 41);
    const auto fm = pareto_filter(rs, grid_opts(box));
    REQUIRE(fm.grid_detected());
    const auto sel = [](const AchievedObjectives& o) { return o.accuracy; };
    const auto g = fm.estimate_gradient({0.5, 5.0}, sel, 1e-3);
    CHECK(g.value[0] == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(g.value[1] == doctest::Approx(10.0).epsilon(1e-2));
    CHECK_FALSE(g.degenerate[0]);
    CHECK_FALSE(g.degenerate[1]);
}

TEST_CASE("gradient of a constant surface is zero") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    const auto rs = testutil::surface_grid([](double, double) { return 0.25; }, box, 11, 11);
    const auto fm = pareto_filter(rs, grid_opts(box));
    const auto g = fm.estimate_gradient(
        {0.3, 4.0}, [](const AchievedObjectives& o) { return o.accuracy; }, 1e-3);
    CHECK(g.value[0] == doctest::Approx(0.0).scale(1));
    CHECK(g.value[1] == doctest::Approx(0.0).scale(1));
}

TEST_CASE("one-sided differences at the box boundary recover affine slopes") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    auto f = [](double g, double e) { return 3.0 * g + 0.2 * e; };
    const auto rs = testutil::surface_grid(f, box, 21, 21);
    const auto fm = pareto_filter(rs, grid_opts(box));
    const auto sel = [](const AchievedObjectives& o) { return o.accuracy; };
    const auto g = fm.estimate_gradient({0.0, 5.0}, sel, 1e-3);
    CHECK(g.value[0] == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(g.value[1] == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("affine slopes away from boundaries are exact to 1e-6 relative") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    auto f = [](double g, double e) { return 0.5 + 0.8 * g - 0.03 * e; };
    const auto rs = testutil::surface_grid(f, box, 15, 15);
    const auto fm = pareto_filter(rs, grid_opts(box));
    const auto sel = [](const AchievedObjectives& o) { return o.accuracy; };
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        const Strategy s{rng.uniform(0.1, 0.9), rng.uniform(1.0, 9.0)};
        const auto g = fm.estimate_gradient(s, sel, 1e-3);
        CHECK(g.value[0] == doctest::Approx(0.8).epsilon(1e-6));
        CHECK(g.value[1] == doctest::Approx(-0.03).epsilon(1e-6));
    }
}

TEST_CASE("nonpositive difference steps are rejected") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    const auto rs = testutil::surface_grid([](double g, double e) { return g + e; }, box, 5, 5);
    const auto fm = pareto_filter(rs, grid_opts(box));
    const auto sel = [](const AchievedObjectives& o) { return o.accuracy; };
    CHECK_THROWS_AS((void)fm.estimate_gradient({0.5, 5.0}, sel, 0.0), InvalidRange);
    CHECK_THROWS_AS((void)fm.estimate_gradient({0.5, 5.0}, sel, -0.1), InvalidRange);
}

TEST_CASE("degenerate axis reports zero with a flag") {
    const Box box{0.0, 1.0, 0.0, 10.0};
    ResultSet rs;
    for (int j = 0; j < 5; ++j) {
        EvalPoint p;
        p.strategy = {0.5, 1.0 + j};  // single gamma value
        p.objectives.accuracy = 0.1 * j;
        p.objectives.coverage = 0.9;
        p.objectives.disparity_achieved = 0.5;
        p.objectives.privacy_achieved = 1.0 + j;
        rs.add(p);
    }
    const auto fm = pareto_filter(rs, knn_opts(box));
    const auto g = fm.estimate_gradient(
        {0.5, 3.0}, [](const AchievedObjectives& o) { return o.accuracy; }, 1e-3);
    CHECK(g.degenerate[0]);
    CHECK(g.value[0] == 0.0);
    CHECK_FALSE(g.degenerate[1]);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "specgame/oracle.hpp"
#include "test_util.hpp"

using namespace specgame;
using testutil::Rng;

namespace {

AnalyticSurfaceSpec reference_spec() {
    AnalyticSurfaceSpec a;
    a.base_acc = 0.6;
    a.priv_gain = 0.3;
    a.priv_scale = 3.0;
    a.fair_gain = 0.1;
    a.cov_base = 0.6;
    a.cov_gain = 0.5;
    a.disparity_cap_base = 0.02;
    a.disparity_cap_gain = 0.2;
    return a;
}

// Independent evaluation of the documented closed form.
AchievedObjectives ref_eval(const AnalyticSurfaceSpec& a, double gamma, double eps) {
    const double sat = 1.0 - std::exp(-eps / a.priv_scale);
    const double cap = a.disparity_cap_base + a.disparity_cap_gain * sat;
    const double disp = std::min(gamma, cap);
    AchievedObjectives o;
    o.disparity_achieved = disp;
    o.privacy_achieved = eps;
    o.accuracy = std::min(1.0, std::max(0.0, a.base_acc + a.priv_gain * sat + a.fair_gain * disp));
    o.coverage = std::min(1.0, std::max(0.0, a.cov_base + a.cov_gain * disp));
    return o;
}

}  // namespace

TEST_CASE("closed form at a large privacy budget") {
    const auto spec = reference_spec();
    const Strategy s{0.1, 10.0};
    const auto got = evaluate(spec, s);
    const auto want = ref_eval(spec, 0.1, 10.0);
    CHECK(got.disparity_achieved == doctest::Approx(want.disparity_achieved).epsilon(1e-15));
    CHECK(got.accuracy == doctest::Approx(want.accuracy).epsilon(1e-15));
    CHECK(got.coverage == doctest::Approx(want.coverage).epsilon(1e-15));
    CHECK(got.privacy_achieved == 10.0);
    // The requested disparity binds: the cap at eps = 10 is ~0.213.
    CHECK(got.disparity_achieved == 0.1);
    // Near the saturation limit the accuracy approaches 0.6 + 0.3 + 0.01.
    CHECK(got.accuracy == doctest::Approx(0.91).epsilon(0.02));
}

TEST_CASE("disparity saturates at the privacy-dependent cap") {
    const auto spec = reference_spec();
    const double cap_at_1 = 0.02 + 0.2 * (1.0 - std::exp(-1.0 / 3.0));
    SUBCASE("request below the cap binds") {
        const auto o = evaluate(spec, Strategy{0.05, 1.0});
        CHECK(o.disparity_achieved == doctest::Approx(std::min(0.05, cap_at_1)).epsilon(1e-15));
    }
    SUBCASE("request above the cap saturates") {
        const auto o = evaluate(spec, Strategy{0.9, 1.0});
        CHECK(o.disparity_achieved == doctest::Approx(cap_at_1).epsilon(1e-15));
    }
}

TEST_CASE("noisy evaluation is deterministic in (seed, strategy)") {
    auto spec = reference_spec();
    spec.noise_sd = 0.05;
    spec.seed = 1234;
    const Strategy s{0.3, 4.2};
    const auto a = evaluate(spec, s);
    const auto b = evaluate(spec, s);
    CHECK(a.accuracy == b.accuracy);
    CHECK(a.coverage == b.coverage);
    CHECK(a.disparity_achieved == b.disparity_achieved);
    CHECK(a.privacy_achieved == b.privacy_achieved);

    auto other_seed = spec;
    other_seed.seed = 77;
    CHECK(evaluate(other_seed, s).accuracy != a.accuracy);

    const auto near = evaluate(spec, Strategy{0.3, 4.2000001});
    CHECK(near.accuracy != a.accuracy);  // stream keyed by the strategy bits
}

TEST_CASE("privacy achieved equals the requested budget, noise notwithstanding") {
    auto spec = reference_spec();
    spec.noise_sd = 0.1;
    spec.seed = 5;
    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        const Strategy s{rng.uniform(0.01, 1.0), rng.uniform(1.0, 10.0)};
        const auto o = evaluate(spec, s);
        CHECK(o.privacy_achieved == s.privacy_param);
        CHECK(o.disparity_achieved <= s.fairness_param);
        CHECK(o.accuracy >= 0.0);
        CHECK(o.accuracy <= 1.0);
        CHECK(o.coverage >= 0.0);
        CHECK(o.coverage <= 1.0);
    }
}

TEST_CASE("noiseless accuracy is monotone in both strategy coordinates") {
    const auto spec = reference_spec();
    const auto rs = sample_grid(spec, 0.01, 0.5, 1.0, 10.0, 9, 9);
    // Row-major over gamma then eps: along eps at fixed gamma.
    const auto& pts = rs.points();
    for (int i = 0; i < 9; ++i) {
        for (int j = 1; j < 9; ++j) {
            const auto& prev = pts[static_cast<std::size_t>(i * 9 + j - 1)];
            const auto& cur = pts[static_cast<std::size_t>(i * 9 + j)];
            CHECK(cur.objectives.accuracy >= prev.objectives.accuracy - 1e-15);
        }
    }
    for (int j = 0; j < 9; ++j) {
        for (int i = 1; i < 9; ++i) {
            const auto& prev = pts[static_cast<std::size_t>((i - 1) * 9 + j)];
            const auto& cur = pts[static_cast<std::size_t>(i * 9 + j)];
            CHECK(cur.objectives.accuracy >= prev.objectives.accuracy - 1e-15);
        }
    }
}

TEST_CASE("sample_grid shape, determinism, and validation") {
    const auto spec = reference_spec();
    const auto rs = sample_grid(spec, 0.01, 1.0, 1.0, 10.0, 3, 3);
    CHECK(rs.size() == 9);
    CHECK(rs.points().front().round_tag == -1);

    const auto again = sample_grid(spec, 0.01, 1.0, 1.0, 10.0, 3, 3);
    CHECK(testutil::same_points(rs.points(), again.points()));

    CHECK_THROWS_AS(sample_grid(spec, 1.0, 0.01, 1.0, 10.0, 3, 3), InvalidRange);
    CHECK_THROWS_AS(sample_grid(spec, 0.01, 1.0, 1.0, 10.0, 1, 3), InvalidRange);
}

TEST_CASE("non-finite strategies are rejected") {
    const auto spec = reference_spec();
    CHECK_THROWS_AS((void)evaluate(spec, Strategy{std::nan(""), 5.0}), OracleDomainError);
    CHECK_THROWS_AS(
        (void)evaluate(spec, Strategy{0.1, std::numeric_limits<double>::infinity()}),
        OracleDomainError);
}

TEST_CASE("tabular oracle lookups") {
    TabularOracleSpec tab;
    tab.box = Box{0.0, 1.0, 0.0, 10.0};
    EvalPoint a;
    a.strategy = {0.2, 2.0};
    a.objectives = {0.8, 0.7, 0.1, 2.0};
    EvalPoint b;
    b.strategy = {0.8, 8.0};
    b.objectives = {0.9, 0.6, 0.3, 8.0};
    tab.points.add(a);
    tab.points.add(b);

    SUBCASE("nearest lookup snaps to the closest row") {
        tab.lookup_mode = TabularLookup::nearest;
        const auto o = evaluate(OracleSpec{tab}, Strategy{0.25, 2.5});
        CHECK(o.accuracy == 0.8);
        const auto o2 = evaluate(OracleSpec{tab}, Strategy{0.75, 7.0});
        CHECK(o2.accuracy == 0.9);
    }
    SUBCASE("interpolated lookup passes through sample rows") {
        tab.lookup_mode = TabularLookup::interpolated;
        const auto o = evaluate(OracleSpec{tab}, a.strategy);
        CHECK(o.accuracy == 0.8);
        const auto mid = evaluate(OracleSpec{tab}, Strategy{0.5, 5.0});
        CHECK(mid.accuracy > 0.8);
        CHECK(mid.accuracy < 0.9);
    }
    SUBCASE("empty table errors") {
        TabularOracleSpec empty;
        empty.box = tab.box;
        CHECK_THROWS_AS(evaluate(OracleSpec{empty}, Strategy{0.5, 5.0}), OracleDomainError);
    }
}

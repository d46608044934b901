#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "specgame/frontier.hpp"
#include "specgame/types.hpp"

namespace specgame {

/// Closed-form trade-off surface standing in for model training. The achieved
/// disparity saturates at a privacy-dependent cap, accuracy grows with the
/// privacy budget and with the achieved disparity, coverage grows with the
/// achieved disparity. Noise (when enabled) is zero-mean gaussian drawn from a
/// deterministic stream keyed by (seed, strategy).
struct AnalyticSurfaceSpec {
    double base_acc = 0.6;        // a0
    double priv_gain = 0.3;       // a1
    double priv_scale = 3.0;      // tau_eps > 0
    double fair_gain = 0.1;       // a2
    double cov_base = 0.6;        // b0
    double cov_gain = 0.5;        // b1
    double disparity_cap_base = 0.02;  // g0
    double disparity_cap_gain = 0.2;   // g1
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
};

enum class TabularLookup { nearest, interpolated };

/// Lookup oracle over a precomputed result set (e.g. a frontier CSV produced
/// by real training runs).
struct TabularOracleSpec {
    ResultSet points;
    TabularLookup lookup_mode = TabularLookup::nearest;
    Box box;
    std::string source_path;  // provenance only
};

using OracleSpec = std::variant<AnalyticSurfaceSpec, TabularOracleSpec>;

/// Maps a strategy to achieved objectives. Deterministic: equal (spec,
/// strategy) give equal output, including in noisy mode.
AchievedObjectives evaluate(const OracleSpec& spec, const Strategy& s);

/// Tensor-grid sampling used for pre-game frontier seeding; all points carry
/// round_tag = -1.
ResultSet sample_grid(const OracleSpec& spec, double gamma_lo, double gamma_hi, double eps_lo,
                      double eps_hi, int n_gamma, int n_eps);

namespace detail {
/// One N(0, sd) draw from the (seed, strategy, channel)-keyed stream.
double gaussian_noise(std::uint64_t seed, const Strategy& s, std::uint64_t channel, double sd);
std::uint64_t splitmix64(std::uint64_t x);
}  // namespace detail

}  // namespace specgame

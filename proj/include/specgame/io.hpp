#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specgame/engine.hpp"
#include "specgame/metrics.hpp"
#include "specgame/types.hpp"

namespace specgame {

/// Shortest round-trip decimal representation; stable across runs.
std::string dtos(double v);

/// Strict double parse of a full token.
double parse_double(const std::string& token);

/// FNV-1a 64-bit over the bytes of `data`, as fixed-width hex.
std::string fnv1a64_hex(const std::string& data);

// Frontier CSV: gamma,epsilon,acc,cov,gamma_ach,eps_ach,round_tag
std::string frontier_csv(const ResultSet& points);
ResultSet parse_frontier_csv(const std::string& text);
void write_frontier_csv(const std::string& path, const ResultSet& points);
ResultSet read_frontier_csv(const std::string& path);

// Trace CSV: round,mover,gamma,epsilon,acc,cov,gamma_ach,eps_ach,
//            loss_builder,loss_fair,loss_priv,penalty_fair,penalty_priv,
//            eta_fair,eta_priv,eta_build
std::string trace_csv(const GameTrace& trace);
void write_trace_csv(const std::string& path, const GameTrace& trace);

// Prediction-table CSV: predicted_class,subgroup
std::vector<PredictionRecord> parse_prediction_csv(const std::string& text);
std::vector<PredictionRecord> read_prediction_csv(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace specgame

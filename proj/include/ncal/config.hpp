// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <json.hpp>

#include "ncal/alm.hpp"
#include "ncal/instances.hpp"

namespace ncal {

enum class InnerMethod { descent, grid };

/// Solver options decoded from the "outer" / "inner" sections of a run
/// config. The grid fields apply when the inner method is the global grid
/// oracle.
struct SolverSettings {
  OuterConfig outer;
  InnerConfig inner;
  InnerMethod method = InnerMethod::descent;
  Vec grid_lo, grid_hi;
  double grid_resolution = 1e-3;
  bool log_vectors_forced = false;

  /// Inner oracle to hand to solve(); null for the descent method.
  InnerOracle make_oracle() const;
};

/// Decode {"outer": {...}, "inner": {...}, "output": {...}} with per-problem
/// defaults (mu0 clipped to the prox threshold, Y = [-1e6, 1e6]^m).
SolverSettings solver_settings_from_json(const nlohmann::json& j, const Problem& p);

/// Iteration record as streamed to JSONL logs. Vectors are included when
/// n + m <= 16 or when forced.
nlohmann::json record_to_json(const IterationRecord& rec, bool include_vectors);

/// Run summary: status, final triplet, objective split, rate estimate.
nlohmann::json summary_to_json(const SolveReport& report, const Problem& p);

}  // namespace ncal

// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncal/regularizers.hpp"

namespace ncal {

/// Brute-force minimum of g(z) + ||z - v||^2 / (2 mu) over the grid
/// [lo, hi]^m at the given step. Works through g.value() only: separable
/// kinds decompose into per-coordinate scans, indicator kinds scan the grid
/// restricted to their domain. Independent of the prox implementation.
double grid_prox_min(const Regularizer& g, double mu, const Vec& v, double lo, double hi,
                     double step);

struct ProxMismatch {
  double mu = 0.0;
  Vec v;
  double point_objective = 0.0;
  double grid_min = 0.0;
  double attained = 0.0;
  std::string what;
};

struct ProxCheckReport {
  std::string kind;
  int cases = 0;
  int prox_points_checked = 0;
  double max_point_vs_grid_gap = 0.0;  // max over cases of obj(point) - grid_min
  double max_grid_vs_attained_gap = 0.0;  // max over cases of attained - grid_min
  std::vector<ProxMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Randomized prox-vs-grid equivalence check for one regularizer:
/// `cases` draws of (mu, v) in the valid range, each prox point must not be
/// worse than the grid minimum by more than `tol`, and no grid point may beat
/// the attained value by more than `tol`. Also cross-checks the Moreau
/// envelope against the prox set and the Fermat multiplier (v - z)/mu against
/// the subdifferential formula.
ProxCheckReport check_prox_against_grid(const Regularizer& g, int cases, std::uint64_t seed,
                                        double tol = 1e-6, double grid_step = 1e-3);

/// Run the check across all built-in regularizer kinds (m <= 2).
std::vector<ProxCheckReport> check_all_kinds(int cases, std::uint64_t seed);

}  // namespace ncal

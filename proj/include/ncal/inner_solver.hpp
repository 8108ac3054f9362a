// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <vector>

#include "ncal/composite.hpp"

namespace ncal {

/// Options for the nonmonotone descent method on the AL subproblem.
struct InnerConfig {
  int max_iters = 5000;
  double sufficient_decrease = 1e-4;  // sigma in (0,1)
  double step_shrink = 0.5;           // beta in (0,1)
  double initial_step = 1.0;
  int nonmonotone_window = 5;         // history length of the acceptance envelope
  double grad_tol = 1e-8;             // default epsilon when none is handed down
  double unbounded_floor = -1e12;     // AL values below this raise unbounded-below

  void validate() const;
};

/// Certificate of eps-stationarity for min_x L_mu(x, y_hat): a pair (x, z)
/// with z in prox_{mu g}(c(x) + mu y_hat) and a small Lagrangian gradient at
/// the implied multiplier y_tilde = y_hat + (c(x) - z)/mu.
struct Certificate {
  Vec x;
  Vec z;
  Vec y_tilde;
  double grad_norm = 0.0;  // ||grad f(x) + c'(x)^T y_tilde||
  int inner_iters = 0;
  ProxSet prox_set;               // full prox set at c(x) + mu y_hat
  std::vector<double> al_values;  // accepted L_mu values, first entry is at x0
};

/// Raised when the descent loop exhausts max_iters; carries the best iterate.
class MaxInnerIterationsError : public Error {
 public:
  MaxInnerIterationsError(std::string what, Certificate best)
      : Error(ErrorCode::max_inner_iterations, std::move(what)), best_(std::move(best)) {}

  const Certificate& best() const { return best_; }

 private:
  Certificate best_;
};

/// One trial of the nonmonotone descent step from x with the given step size.
/// The candidate is x - step * d where d is the Lagrangian gradient at the
/// deterministically selected prox point; it is accepted iff
///   L_mu(x_next, y_hat) <= envelope - sigma * step * ||d||^2,
/// where `envelope` is the max of the last window of accepted AL values.
struct StepResult {
  Vec x_next;
  bool accepted = false;
  double al_value = 0.0;  // L_mu(x_next, y_hat), filled for accepted trials
};

StepResult subproblem_descent_step(const Problem& p, const Vec& y_hat, double mu,
                                   const Vec& x, double step, double envelope,
                                   double sigma);

/// Solve min_x L_mu(x, y_hat) to eps-stationarity starting from x0.
///
/// Spectral (Barzilai-Borwein) steps safeguarded by a nonmonotone Armijo rule
/// on the true AL value; the prox certificate z is re-selected after every
/// accepted step. If the line search stalls (step below 1e-16 without
/// acceptance) the current certificate is returned as locally stationary at
/// the achievable tolerance.
Certificate solve_subproblem(const Problem& p, const Vec& y_hat, double mu,
                             double eps, const Vec& x0, const InnerConfig& cfg);

/// Test oracle: grid point minimizing L_mu(., y_hat) over a box, n <= 2.
Vec solve_subproblem_global_grid(const Problem& p, const Vec& y_hat, double mu,
                                 const Vec& lo, const Vec& hi, double resolution);

}  // namespace ncal

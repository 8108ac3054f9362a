// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ncal/inner_solver.hpp"

namespace ncal {

enum class SafeguardMode { project, reset_on_escape };

/// How the penalty parameter evolves across outer iterations.
///   monitor      - keep mu while V_k <= theta * V_{k-1}, else mu <- kappa * mu
///   fixed        - never change mu (rate experiments at a prescribed mu)
///   force_shrink - mu <- kappa * mu every iteration (drives mu to zero)
enum class PenaltyMode { monitor, fixed, force_shrink };

enum class EpsRule { geometric, fixed_sequence };

struct OuterConfig {
  double mu0 = 1.0;     // clipped to 0.9 * prox threshold when that is finite
  double theta = 0.5;   // sufficient infeasibility decrease factor
  double kappa = 0.1;   // penalty shrink factor
  Vec y_lo, y_hi;       // safeguarding box Y; defaults to [-1e6, 1e6]^m
  double eps0 = 1e-3;   // initial inner tolerance
  EpsRule eps_rule = EpsRule::geometric;
  double nu0 = 0.1;     // geometric rule: eps_k = min(eps0, nu0 * shrink^k * Theta_{k-1})
  double nu_shrink = 0.5;
  std::vector<double> eps_sequence;  // fixed rule entries; last entry repeats
  double theta_tol = 1e-8;           // outer stop: Theta_k <= tol and V_k <= tol
  int max_outer = 100;
  SafeguardMode safeguard_mode = SafeguardMode::project;
  PenaltyMode penalty_mode = PenaltyMode::monitor;

  void validate(const Problem& p) const;
};

struct IterationRecord {
  int k = 0;
  double mu = 0.0;
  double eps = 0.0;
  Vec x, z, y, y_hat;
  double V = 0.0;       // ||c(x_k) - z_k||
  double theta = 0.0;   // residual Theta(x_k, z_k, y_k)
  double f_value = 0.0;
  double g_value = 0.0; // g(z_k), finite along iterates
  double grad_norm = 0.0;  // certificate gradient norm
  int inner_iters = 0;
};

enum class SolveStatus { stationary, max_outer, unbounded_below, shrunk_penalty_floor };

const char* status_name(SolveStatus s);

/// CLI exit code convention: 0 stationary, 2 max-outer, 3 unbounded, 4 floor.
int status_exit_code(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::max_outer;
  std::vector<IterationRecord> records;
  std::vector<double> q_factors;  // Theta_k / Theta_{k-1} over the positive prefix
  Vec x, z, y;                    // final triplet
  double domain_dist = 0.0;       // dist(c(x), dom g) at the final iterate
};

/// Replacement for the descent inner solver (the global grid oracle in tests
/// and benchmarks). Receives (problem, y_hat, mu, eps, x_start).
using InnerOracle =
    std::function<Certificate(const Problem&, const Vec&, double, double, const Vec&)>;

/// Invoked with each record as soon as the outer iteration completes, so
/// iteration logs stream rather than buffer.
using RecordObserver = std::function<void(const IterationRecord&)>;

/// Safeguarded implicit AL loop. Each outer iteration safeguards the
/// multiplier estimate, solves the AL subproblem to eps_k-stationarity, takes
/// the dual step y_k = y_hat_k + (c(x_k) - z_k)/mu_k, and monitors V_k to
/// drive the penalty. Terminates when Theta_k and V_k fall below theta_tol,
/// on max_outer, when mu drops below the 1e-12 floor, or when the subproblem
/// is detected to be unbounded below.
SolveReport solve(const Problem& p, const OuterConfig& cfg, const Vec& x0, const Vec& y0,
                  const InnerConfig& inner = InnerConfig{},
                  const InnerOracle& oracle = nullptr,
                  const RecordObserver& observer = nullptr);

/// Default outer options for a problem: mu0 = 1 clipped to 0.9 times the prox
/// threshold when that is finite, Y = [-1e6, 1e6]^m.
OuterConfig make_default_outer(const Problem& p);

/// Safeguarded multiplier estimate: clamp into the box Y, or keep/reset to
/// zero depending on the mode.
Vec safeguard(const Vec& y_prev, const OuterConfig& cfg);

/// Step 4 penalty rule; k = 0 always keeps mu.
double update_penalty(double V_k, double V_prev, double mu, int k, const OuterConfig& cfg);

/// eps_k from the configured rule. theta_prev is ignored at k = 0.
double tolerance_next(double theta_prev, int k, const OuterConfig& cfg);

enum class RateClass { sublinear, linear, superlinear };

struct RateEstimate {
  std::vector<double> q_factors;
  RateClass classification = RateClass::sublinear;
  double q_hat = 0.0;  // max of the last three factors (linear estimate)
};

const char* rate_name(RateClass c);

/// Empirical Q-rate classification from a residual history. Requires at
/// least 4 positive Theta values before the tail.
RateEstimate estimate_rates(const std::vector<double>& thetas);
RateEstimate estimate_rates(const SolveReport& report);

}  // namespace ncal

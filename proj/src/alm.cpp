// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/alm.hpp"

#include <algorithm>
#include <cmath>

namespace ncal {

namespace {
constexpr double kPenaltyFloor = 1e-12;
}

void OuterConfig::validate(const Problem& p) const {
  if (!(theta > 0.0 && theta < 1.0))
    throw Error(ErrorCode::config, "theta must lie in (0,1)");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw Error(ErrorCode::config, "kappa must lie in (0,1)");
  if (!(mu0 > 0.0)) throw Error(ErrorCode::config, "mu0 must be positive");
  if (mu0 >= p.g.prox_threshold())
    throw Error(ErrorCode::prox_unbounded,
                "prox-unbounded: mu0 = " + std::to_string(mu0) +
                    " is not below the prox-boundedness threshold " +
                    std::to_string(p.g.prox_threshold()));
  if (y_lo.size() != 0 || y_hi.size() != 0) {
    if (y_lo.size() != p.m || y_hi.size() != p.m)
      throw Error(ErrorCode::dimension, "safeguard box must have length m");
    if (!y_lo.allFinite() || !y_hi.allFinite())
      throw Error(ErrorCode::config, "safeguard box Y must be bounded");
    for (int i = 0; i < p.m; ++i)
      if (!(y_lo[i] <= y_hi[i]))
        throw Error(ErrorCode::config, "safeguard box requires y_lo <= y_hi");
  }
  if (!(eps0 >= 0.0)) throw Error(ErrorCode::config, "eps0 must be nonnegative");
  if (eps_rule == EpsRule::geometric) {
    if (!(nu0 > 0.0) || !(nu_shrink > 0.0 && nu_shrink < 1.0))
      throw Error(ErrorCode::config, "geometric eps rule requires nu0 > 0 and nu_shrink in (0,1)");
  } else if (eps_sequence.empty()) {
    throw Error(ErrorCode::config, "fixed eps rule requires a nonempty sequence");
  }
  if (!(theta_tol > 0.0)) throw Error(ErrorCode::config, "theta_tol must be positive");
  if (max_outer < 1) throw Error(ErrorCode::config, "max_outer must be >= 1");
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::stationary: return "stationary";
    case SolveStatus::max_outer: return "max-outer";
    case SolveStatus::unbounded_below: return "unbounded-below";
    case SolveStatus::shrunk_penalty_floor: return "shrunk-penalty-floor";
  }
  return "?";
}

int status_exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::stationary: return 0;
    case SolveStatus::max_outer: return 2;
    case SolveStatus::unbounded_below: return 3;
    case SolveStatus::shrunk_penalty_floor: return 4;
  }
  return 2;
}

Vec safeguard(const Vec& y_prev, const OuterConfig& cfg) {
  const Vec& lo = cfg.y_lo;
  const Vec& hi = cfg.y_hi;
  if (cfg.safeguard_mode == SafeguardMode::project)
    return y_prev.cwiseMax(lo).cwiseMin(hi);
  for (Eigen::Index i = 0; i < y_prev.size(); ++i)
    if (y_prev[i] < lo[i] || y_prev[i] > hi[i]) return Vec::Zero(y_prev.size());
  return y_prev;
}

double update_penalty(double V_k, double V_prev, double mu, int k, const OuterConfig& cfg) {
  if (!(mu > 0.0)) throw Error(ErrorCode::invalid_argument, "mu must be positive");
  switch (cfg.penalty_mode) {
    case PenaltyMode::fixed:
      return mu;
    case PenaltyMode::force_shrink:
      return cfg.kappa * mu;
    case PenaltyMode::monitor:
      break;
  }
  if (k == 0 || V_k <= cfg.theta * V_prev) return mu;
  return cfg.kappa * mu;
}

double tolerance_next(double theta_prev, int k, const OuterConfig& cfg) {
  if (k == 0) return cfg.eps0;
  if (cfg.eps_rule == EpsRule::fixed_sequence) {
    const size_t i = std::min(static_cast<size_t>(k), cfg.eps_sequence.size() - 1);
    return cfg.eps_sequence[i];
  }
  if (theta_prev < 0.0)
    throw Error(ErrorCode::invalid_argument, "theta_prev must be nonnegative");
  return std::min(cfg.eps0, cfg.nu0 * std::pow(cfg.nu_shrink, k) * theta_prev);
}

OuterConfig make_default_outer(const Problem& p) {
  OuterConfig cfg;
  const double threshold = p.g.prox_threshold();
  if (std::isfinite(threshold)) cfg.mu0 = std::min(cfg.mu0, 0.9 * threshold);
  cfg.y_lo = Vec::Constant(p.m, -1e6);
  cfg.y_hi = Vec::Constant(p.m, 1e6);
  return cfg;
}

SolveReport solve(const Problem& p, const OuterConfig& cfg_in, const Vec& x0, const Vec& y0,
                  const InnerConfig& inner, const InnerOracle& oracle,
                  const RecordObserver& observer) {
  OuterConfig cfg = cfg_in;
  if (cfg.y_lo.size() == 0) cfg.y_lo = Vec::Constant(p.m, -1e6);
  if (cfg.y_hi.size() == 0) cfg.y_hi = Vec::Constant(p.m, 1e6);
  cfg.validate(p);
  inner.validate();
  require_length(x0, p.n, "x0");
  require_finite(x0, "x0");
  require_length(y0, p.m, "y0");
  require_finite(y0, "y0");

  SolveReport report;
  Vec x = x0, y = y0;
  double mu = cfg.mu0;
  double theta_prev = 0.0, V_prev = 0.0;

  for (int k = 0; k < cfg.max_outer; ++k) {
    const Vec y_hat = safeguard(y, cfg);
    const double eps = tolerance_next(theta_prev, k, cfg);

    Certificate cert;
    try {
      cert = oracle ? oracle(p, y_hat, mu, eps, x)
                    : solve_subproblem(p, y_hat, mu, eps, x, inner);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::unbounded_below) {
        report.status = SolveStatus::unbounded_below;
        report.x = x;
        report.z = report.records.empty() ? p.eval_c(x) : report.records.back().z;
        report.y = y;
        report.domain_dist = p.g.domain_dist(p.eval_c(report.x));
        return report;
      }
      throw Error(e.code(), std::string(e.what()) + " (outer iteration " +
                                std::to_string(k) + ", mu = " + std::to_string(mu) + ")");
    }

    x = cert.x;
    const Vec c_x = p.eval_c(x);
    y = y_hat + (c_x - cert.z) / mu;
    const double V = (c_x - cert.z).norm();
    const double theta = residual_theta(p, x, cert.z, y);

    IterationRecord rec;
    rec.k = k;
    rec.mu = mu;
    rec.eps = eps;
    rec.x = x;
    rec.z = cert.z;
    rec.y = y;
    rec.y_hat = y_hat;
    rec.V = V;
    rec.theta = theta;
    rec.f_value = p.eval_f(x);
    rec.g_value = p.g.value(cert.z).value();
    rec.grad_norm = cert.grad_norm;
    rec.inner_iters = cert.inner_iters;
    if (observer) observer(rec);
    report.records.push_back(std::move(rec));

    report.x = x;
    report.z = cert.z;
    report.y = y;

    if (theta <= cfg.theta_tol && V <= cfg.theta_tol) {
      report.status = SolveStatus::stationary;
      break;
    }

    const double mu_next = update_penalty(V, V_prev, mu, k, cfg);
    if (mu_next < kPenaltyFloor) {
      report.status = SolveStatus::shrunk_penalty_floor;
      break;
    }
    mu = mu_next;
    theta_prev = theta;
    V_prev = V;
  }

  report.domain_dist = p.g.domain_dist(p.eval_c(report.x));
  for (size_t i = 1; i < report.records.size(); ++i) {
    const double prev = report.records[i - 1].theta;
    if (prev <= 0.0) break;
    report.q_factors.push_back(report.records[i].theta / prev);
  }
  return report;
}

const char* rate_name(RateClass c) {
  switch (c) {
    case RateClass::sublinear: return "sublinear";
    case RateClass::linear: return "linear";
    case RateClass::superlinear: return "superlinear";
  }
  return "?";
}

RateEstimate estimate_rates(const std::vector<double>& thetas_in) {
  std::vector<double> thetas = thetas_in;
  while (!thetas.empty() && thetas.back() <= 0.0) thetas.pop_back();
  if (thetas.size() < 4)
    throw Error(ErrorCode::insufficient_history,
                "insufficient-history: need at least 4 positive residuals, got " +
                    std::to_string(thetas.size()));

  RateEstimate est;
  for (size_t i = 1; i < thetas.size(); ++i) {
    if (thetas[i - 1] <= 0.0) break;
    est.q_factors.push_back(thetas[i] / thetas[i - 1]);
  }
  const size_t nf = est.q_factors.size();
  if (nf < 3)
    throw Error(ErrorCode::insufficient_history,
                "insufficient-history: need at least 3 q-factors");
  const double f1 = est.q_factors[nf - 3];
  const double f2 = est.q_factors[nf - 2];
  const double f3 = est.q_factors[nf - 1];
  if (f1 > f2 && f2 > f3 && f3 < 0.1) {
    est.classification = RateClass::superlinear;
    est.q_hat = f3;
  } else if (f1 <= 0.95 && f2 <= 0.95 && f3 <= 0.95) {
    est.classification = RateClass::linear;
    est.q_hat = std::max({f1, f2, f3});
  } else {
    est.classification = RateClass::sublinear;
    est.q_hat = std::max({f1, f2, f3});
  }
  return est;
}

RateEstimate estimate_rates(const SolveReport& report) {
  std::vector<double> thetas;
  thetas.reserve(report.records.size());
  for (const auto& r : report.records) thetas.push_back(r.theta);
  return estimate_rates(thetas);
}

}  // namespace ncal

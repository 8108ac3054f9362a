// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/inner_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace ncal {

namespace {

constexpr double kStallStep = 1e-16;

double window_max(const std::deque<double>& hist) {
  return *std::max_element(hist.begin(), hist.end());
}

struct IterateData {
  Vec z;
  Vec y_tilde;
  Vec direction;  // grad f(x) + c'(x)^T y_tilde
  double grad_norm;
  ProxSet prox_set;
};

IterateData evaluate_iterate(const Problem& p, const Vec& y_hat, double mu, const Vec& x) {
  IterateData d;
  d.prox_set = p.g.prox(mu, p.eval_c(x) + mu * y_hat);
  d.z = select_prox_point(d.prox_set);
  d.y_tilde = y_hat + (p.eval_c(x) - d.z) / mu;
  d.direction = eval_lagrangian_grad(p, x, d.y_tilde);
  d.grad_norm = d.direction.norm();
  return d;
}

Certificate make_certificate(const Vec& x, IterateData&& d, int iters,
                             std::vector<double> al_values) {
  Certificate c;
  c.x = x;
  c.z = std::move(d.z);
  c.y_tilde = std::move(d.y_tilde);
  c.grad_norm = d.grad_norm;
  c.inner_iters = iters;
  c.prox_set = std::move(d.prox_set);
  c.al_values = std::move(al_values);
  return c;
}

}  // namespace

void InnerConfig::validate() const {
  if (max_iters < 1) throw Error(ErrorCode::config, "inner max_iters must be >= 1");
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0))
    throw Error(ErrorCode::config, "sufficient_decrease must lie in (0,1)");
  if (!(step_shrink > 0.0 && step_shrink < 1.0))
    throw Error(ErrorCode::config, "step_shrink must lie in (0,1)");
  if (!(initial_step > 0.0))
    throw Error(ErrorCode::config, "initial_step must be positive");
  if (nonmonotone_window < 1)
    throw Error(ErrorCode::config, "nonmonotone_window must be >= 1");
  if (!(grad_tol >= 0.0))
    throw Error(ErrorCode::config, "grad_tol must be nonnegative");
}

StepResult subproblem_descent_step(const Problem& p, const Vec& y_hat, double mu,
                                   const Vec& x, double step, double envelope,
                                   double sigma) {
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "step must be positive");
  IterateData cur = evaluate_iterate(p, y_hat, mu, x);
  StepResult r;
  if (cur.grad_norm == 0.0) {
    r.x_next = x;
    r.accepted = true;
    r.al_value = eval_aug_lagrangian(p, x, y_hat, mu).value;
    return r;
  }
  r.x_next = x - step * cur.direction;
  const double trial = eval_aug_lagrangian(p, r.x_next, y_hat, mu).value;
  r.accepted = trial <= envelope - sigma * step * cur.direction.squaredNorm();
  r.al_value = trial;
  return r;
}

Certificate solve_subproblem(const Problem& p, const Vec& y_hat, double mu,
                             double eps, const Vec& x0, const InnerConfig& cfg) {
  cfg.validate();
  require_length(y_hat, p.m, "y_hat");
  require_finite(y_hat, "y_hat");
  if (eps < 0.0) throw Error(ErrorCode::invalid_argument, "eps must be >= 0");

  Vec x = x0;
  IterateData cur = evaluate_iterate(p, y_hat, mu, x);
  double al = eval_aug_lagrangian(p, x, y_hat, mu).value;
  std::vector<double> trace{al};
  if (cur.grad_norm <= eps) return make_certificate(x, std::move(cur), 0, std::move(trace));

  std::deque<double> hist{al};
  const double sigma = cfg.sufficient_decrease;
  double step = cfg.initial_step;
  Vec prev_x, prev_d;
  bool have_prev = false;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    // spectral trial step from the previous displacement pair
    if (have_prev) {
      const Vec dx = x - prev_x;
      const Vec dg = cur.direction - prev_d;
      const double sy = dx.dot(dg);
      step = sy > 1e-30 ? dx.squaredNorm() / sy : cfg.initial_step;
      step = std::clamp(step, 1e-20, 1e20);
    }

    const double envelope = window_max(hist);
    double t = step;
    Vec x_next;
    double al_next = 0.0;
    bool accepted = false;
    while (t >= kStallStep) {
      x_next = x - t * cur.direction;
      al_next = eval_aug_lagrangian(p, x_next, y_hat, mu).value;
      if (al_next <= envelope - sigma * t * cur.direction.squaredNorm()) {
        accepted = true;
        break;
      }
      t *= cfg.step_shrink;
    }
    if (!accepted) {
      // flat to machine precision: locally stationary at the achievable tolerance
      return make_certificate(x, std::move(cur), it - 1, std::move(trace));
    }

    prev_x = x;
    prev_d = cur.direction;
    have_prev = true;
    x = std::move(x_next);
    al = al_next;
    trace.push_back(al);
    hist.push_back(al);
    if (static_cast<int>(hist.size()) > cfg.nonmonotone_window) hist.pop_front();

    if (al < cfg.unbounded_floor)
      throw Error(ErrorCode::unbounded_below,
                  "subproblem appears unbounded below (AL value " + std::to_string(al) +
                      "); Assumption inf phi > -inf is likely violated");

    cur = evaluate_iterate(p, y_hat, mu, x);
    if (cur.grad_norm <= eps) return make_certificate(x, std::move(cur), it, std::move(trace));
  }

  Certificate best = make_certificate(x, std::move(cur), cfg.max_iters, std::move(trace));
  throw MaxInnerIterationsError(
      "inner solver reached max_iters = " + std::to_string(cfg.max_iters) +
          " with grad_norm = " + std::to_string(best.grad_norm) + " > eps = " +
          std::to_string(eps),
      std::move(best));
}

Vec solve_subproblem_global_grid(const Problem& p, const Vec& y_hat, double mu,
                                 const Vec& lo, const Vec& hi, double resolution) {
  if (p.n > 2)
    throw Error(ErrorCode::unsupported, "global grid oracle supports n <= 2 only");
  require_length(lo, p.n, "lo");
  require_length(hi, p.n, "hi");
  require_finite(lo, "lo");
  require_finite(hi, "hi");
  if (!(resolution > 0.0))
    throw Error(ErrorCode::invalid_argument, "resolution must be positive");
  for (int i = 0; i < p.n; ++i)
    if (!(lo[i] <= hi[i])) throw Error(ErrorCode::invalid_argument, "grid requires lo <= hi");

  std::vector<Eigen::Index> counts(p.n);
  for (int i = 0; i < p.n; ++i)
    counts[i] = static_cast<Eigen::Index>(std::floor((hi[i] - lo[i]) / resolution)) + 1;

  Vec best;
  double best_value = std::numeric_limits<double>::infinity();
  Vec x(p.n);
  const Eigen::Index rows = counts[0];
  const Eigen::Index cols = p.n == 2 ? counts[1] : 1;
  for (Eigen::Index i = 0; i < rows; ++i) {
    x[0] = std::min(lo[0] + static_cast<double>(i) * resolution, hi[0]);
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (p.n == 2) x[1] = std::min(lo[1] + static_cast<double>(j) * resolution, hi[1]);
      const double v = eval_aug_lagrangian(p, x, y_hat, mu).value;
      if (v < best_value) {
        best_value = v;
        best = x;
      }
    }
  }
  return best;
}

}  // namespace ncal

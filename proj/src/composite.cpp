// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/composite.hpp"

namespace ncal {

Vec Problem::eval_c(const Vec& x) const {
  require_length(x, n, "x");
  require_finite(x, "x");
  Vec v = c.value(x);
  require_length(v, m, "c(x)");
  require_finite(v, "c(x)");
  return v;
}

Mat Problem::eval_jacobian(const Vec& x) const {
  require_length(x, n, "x");
  Mat J = c.jacobian(x);
  if (J.rows() != m || J.cols() != n)
    throw Error(ErrorCode::dimension, "c.jacobian returned a matrix of wrong shape");
  return J;
}

double Problem::eval_f(const Vec& x) const {
  require_length(x, n, "x");
  require_finite(x, "x");
  const double v = f.value(x);
  if (!std::isfinite(v))
    throw Error(ErrorCode::invalid_argument, "f(x) evaluated to a non-finite value");
  return v;
}

Vec Problem::eval_f_grad(const Vec& x) const {
  require_length(x, n, "x");
  Vec gr = f.gradient(x);
  require_length(gr, n, "grad f(x)");
  require_finite(gr, "grad f(x)");
  return gr;
}

ExtReal eval_phi(const Problem& p, const Vec& x) {
  return p.eval_f(x) + p.g.value(p.eval_c(x));
}

double eval_lagrangian(const Problem& p, const Vec& x, const Vec& y) {
  require_length(y, p.m, "y");
  return p.eval_f(x) + y.dot(p.eval_c(x));
}

Vec eval_lagrangian_grad(const Problem& p, const Vec& x, const Vec& y) {
  require_length(y, p.m, "y");
  return p.eval_f_grad(x) + p.eval_jacobian(x).transpose() * y;
}

AugLagValue eval_aug_lagrangian(const Problem& p, const Vec& x, const Vec& y, double mu) {
  require_length(y, p.m, "y");
  require_finite(y, "y");
  ProxSet cert = p.g.prox(mu, p.eval_c(x) + mu * y);
  const double value = p.eval_f(x) + cert.attained - 0.5 * mu * y.squaredNorm();
  return {value, std::move(cert)};
}

double residual_theta(const Problem& p, const Vec& x, const Vec& z, const Vec& y) {
  require_length(z, p.m, "z");
  if (!p.g.value(z).is_finite())
    throw Error(ErrorCode::domain, "residual_theta: z is outside dom g");
  return eval_lagrangian_grad(p, x, y).norm() + (p.eval_c(x) - z).norm() +
         p.g.subdiff_dist(z, y);
}

}  // namespace ncal

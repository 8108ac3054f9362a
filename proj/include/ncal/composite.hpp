// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include "ncal/problem.hpp"

namespace ncal {

/// phi(x) = f(x) + g(c(x)); +inf exactly when c(x) is outside dom g.
ExtReal eval_phi(const Problem& p, const Vec& x);

/// Lagrangian L(x, y) = f(x) + <y, c(x)>.
double eval_lagrangian(const Problem& p, const Vec& x, const Vec& y);

/// grad_x L(x, y) = grad f(x) + c'(x)^T y.
Vec eval_lagrangian_grad(const Problem& p, const Vec& x, const Vec& y);

struct AugLagValue {
  double value;  // L_mu(x, y), always finite for mu below the prox threshold
  ProxSet cert;  // prox_{mu g}(c(x) + mu y) attaining the envelope
};

/// Augmented Lagrangian L_mu(x, y) = f(x) + g^mu(c(x) + mu y) - (mu/2)||y||^2,
/// together with the prox set certifying the envelope value.
AugLagValue eval_aug_lagrangian(const Problem& p, const Vec& x, const Vec& y, double mu);

/// Stationarity residual
///   Theta(x, z, y) = ||grad_x L(x,y)|| + ||c(x) - z|| + dist(y, dg(z)).
/// Zero exactly at M-stationary pairs with z = c(x). Requires z in dom g.
double residual_theta(const Problem& p, const Vec& x, const Vec& z, const Vec& y);

}  // namespace ncal

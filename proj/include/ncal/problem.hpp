// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <functional>

#include "ncal/regularizers.hpp"
#include "ncal/types.hpp"

namespace ncal {

/// Smooth scalar oracle: value and gradient, optional Hessian.
/// Oracles must be deterministic and side-effect free.
struct SmoothFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;  // optional, diagnostics only

  bool has_hessian() const { return static_cast<bool>(hessian); }
};

/// Smooth map oracle c : R^n -> R^m with dense m x n Jacobian.
/// `hessian_combination(x, y)` returns sum_i y_i * Hess c_i(x); it is optional
/// and used by second-order diagnostics only.
struct SmoothMap {
  std::function<Vec(const Vec&)> value;
  std::function<Mat(const Vec&)> jacobian;
  std::function<Mat(const Vec&, const Vec&)> hessian_combination;

  bool has_hessian() const { return static_cast<bool>(hessian_combination); }
};

/// Composite problem min_x f(x) + g(c(x)).
struct Problem {
  int n = 0;
  int m = 0;
  SmoothFunction f;
  SmoothMap c;
  Regularizer g;

  Problem(int n_, int m_, SmoothFunction f_, SmoothMap c_, Regularizer g_)
      : n(n_), m(m_), f(std::move(f_)), c(std::move(c_)), g(std::move(g_)) {
    if (n <= 0 || m <= 0)
      throw Error(ErrorCode::config, "problem dimensions must be positive");
    if (g.dim() != m)
      throw Error(ErrorCode::dimension, "regularizer dimension does not match m");
    if (!f.value || !f.gradient || !c.value || !c.jacobian)
      throw Error(ErrorCode::config, "problem requires f value/gradient and c value/jacobian");
  }

  /// c(x) with dimension checks on both ends.
  Vec eval_c(const Vec& x) const;

  /// Jacobian c'(x), checked to be m x n.
  Mat eval_jacobian(const Vec& x) const;

  double eval_f(const Vec& x) const;
  Vec eval_f_grad(const Vec& x) const;
};

}  // namespace ncal

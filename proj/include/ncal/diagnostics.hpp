// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <vector>

#include "ncal/composite.hpp"

namespace ncal {

struct MStationarityResult {
  bool feasible = false;     // c(x) in dom g
  bool is_stationary = false;
  double theta = 0.0;        // residual when feasible, dist(c(x), dom g) otherwise
};

/// Check the M-stationarity system at (x, y) with z = c(x).
MStationarityResult check_m_stationarity(const Problem& p, const Vec& x, const Vec& y,
                                         double tol);

/// Activity pattern of the l0 case: I0 holds the indices with c_i(x) ~ 0,
/// split into I00 (y_i ~ 0) and I0pm; Ipm is the support complement.
struct SparseIndexSets {
  std::vector<int> I0, Ipm, I00, I0pm;
};

SparseIndexSets sparse_index_sets(const Problem& p, const Vec& x, const Vec& y, double tol);

/// Activity pattern over complementarity pairs; the three sets partition
/// {0, ..., p-1}.
struct MpccIndexSets {
  std::vector<int> Ip0, I0p, I00;
};

MpccIndexSets mpcc_index_sets(const Problem& p, const Vec& x, double tol);

struct SparseConditionResult {
  bool licq = false;                // the I0 Jacobian rows are linearly independent
  bool reduced_hessian_pd = false;  // Hess_xx L positive definite on ker of the I0pm rows
};

/// Sparse-case sufficient condition for the primal-dual error bound: LICQ of
/// the active rows plus positive definiteness of the Lagrangian Hessian on
/// the null space of the I0pm rows. Requires the l0 regularizer and Hessian
/// oracles.
SparseConditionResult check_sparse_error_bound_condition(const Problem& p, const Vec& x,
                                                         const Vec& y, double tol);

/// Sample the second-order growth inequality
///   phi(x) - phi(x_bar) >= (beta/2) ||x - x_bar||^2
/// on quasi-random points of the closed ball around x_bar. Infinite phi(x)
/// satisfies the inequality trivially.
bool check_growth(const Problem& p, const Vec& x_bar, double radius, int samples,
                  double beta);

struct FdCheckResult {
  double grad_err = 0.0;  // max relative error of grad f vs central differences
  double jac_err = 0.0;   // max relative error of c' vs central differences
};

FdCheckResult fd_check(const Problem& p, const Vec& x, double h);

}  // namespace ncal

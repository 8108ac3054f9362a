// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/diagnostics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace ncal {

namespace {

constexpr double kSvdCutoff = 1e-10;  // singular value cutoff for rank / null space

// Van der Corput radical inverse; bases 2, 3, 5 give the Halton points used
// for deterministic ball sampling.
double radical_inverse(int base, int index) {
  double result = 0.0, f = 1.0 / base;
  int i = index;
  while (i > 0) {
    result += f * (i % base);
    i /= base;
    f /= base;
  }
  return result;
}

Mat lagrangian_hessian(const Problem& p, const Vec& x, const Vec& y) {
  if (!p.f.has_hessian() || !p.c.has_hessian())
    throw Error(ErrorCode::config,
                "second-order diagnostics require f and c Hessian oracles");
  Mat H = p.f.hessian(x);
  if (H.rows() != p.n || H.cols() != p.n)
    throw Error(ErrorCode::dimension, "f.hessian returned a matrix of wrong shape");
  Mat Hc = p.c.hessian_combination(x, y);
  if (Hc.rows() != p.n || Hc.cols() != p.n)
    throw Error(ErrorCode::dimension, "c.hessian_combination returned a matrix of wrong shape");
  return H + Hc;
}

}  // namespace

MStationarityResult check_m_stationarity(const Problem& p, const Vec& x, const Vec& y,
                                         double tol) {
  MStationarityResult r;
  const Vec cx = p.eval_c(x);
  if (!p.g.value(cx).is_finite()) {
    r.feasible = false;
    r.is_stationary = false;
    r.theta = p.g.domain_dist(cx);
    return r;
  }
  r.feasible = true;
  r.theta = residual_theta(p, x, cx, y);
  r.is_stationary = r.theta <= tol;
  return r;
}

SparseIndexSets sparse_index_sets(const Problem& p, const Vec& x, const Vec& y, double tol) {
  if (p.g.kind() != Regularizer::Kind::l0)
    throw Error(ErrorCode::config, "sparse_index_sets requires the l0 regularizer");
  require_length(y, p.m, "y");
  const Vec cx = p.eval_c(x);
  SparseIndexSets s;
  for (int i = 0; i < p.m; ++i) {
    if (std::abs(cx[i]) <= tol) {
      s.I0.push_back(i);
      if (std::abs(y[i]) <= tol) s.I00.push_back(i);
      else s.I0pm.push_back(i);
    } else {
      s.Ipm.push_back(i);
    }
  }
  return s;
}

MpccIndexSets mpcc_index_sets(const Problem& p, const Vec& x, double tol) {
  if (p.g.kind() != Regularizer::Kind::indicator_complementarity)
    throw Error(ErrorCode::config, "mpcc_index_sets requires the complementarity regularizer");
  const Vec cx = p.eval_c(x);
  const int pairs = p.g.pairs();
  MpccIndexSets s;
  for (int i = 0; i < pairs; ++i) {
    const bool a_zero = std::abs(cx[i]) <= tol;
    const bool b_zero = std::abs(cx[pairs + i]) <= tol;
    if (a_zero && b_zero) s.I00.push_back(i);
    else if (a_zero && cx[pairs + i] > tol) s.I0p.push_back(i);
    else if (b_zero && cx[i] > tol) s.Ip0.push_back(i);
    else
      throw Error(ErrorCode::domain,
                  "mpcc_index_sets: pair " + std::to_string(i) +
                      " violates complementarity beyond the activity tolerance");
  }
  return s;
}

SparseConditionResult check_sparse_error_bound_condition(const Problem& p, const Vec& x,
                                                         const Vec& y, double tol) {
  const SparseIndexSets sets = sparse_index_sets(p, x, y, tol);
  const Mat J = p.eval_jacobian(x);
  SparseConditionResult r;

  // LICQ of the active family: rank of the I0 rows equals |I0|
  if (sets.I0.empty()) {
    r.licq = true;
  } else {
    Mat A(static_cast<Eigen::Index>(sets.I0.size()), p.n);
    for (size_t i = 0; i < sets.I0.size(); ++i) A.row(i) = J.row(sets.I0[i]);
    Eigen::JacobiSVD<Mat> svd(A);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > kSvdCutoff) ++rank;
    r.licq = rank == static_cast<int>(sets.I0.size());
  }

  // reduced Hessian on the null space of the I0pm rows
  const Mat H = lagrangian_hessian(p, x, y);
  Mat Z;
  if (sets.I0pm.empty()) {
    Z = Mat::Identity(p.n, p.n);
  } else {
    Mat A(static_cast<Eigen::Index>(sets.I0pm.size()), p.n);
    for (size_t i = 0; i < sets.I0pm.size(); ++i) A.row(i) = J.row(sets.I0pm[i]);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > kSvdCutoff) ++rank;
    if (rank == p.n) {
      r.reduced_hessian_pd = true;  // trivial null space
      return r;
    }
    Z = svd.matrixV().rightCols(p.n - rank);
  }
  const Mat reduced = Z.transpose() * H * Z;
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (reduced + reduced.transpose()));
  r.reduced_hessian_pd = eig.eigenvalues().minCoeff() > tol;
  return r;
}

bool check_growth(const Problem& p, const Vec& x_bar, double radius, int samples,
                  double beta) {
  if (!(radius > 0.0)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
  if (samples < 1) throw Error(ErrorCode::invalid_argument, "samples must be >= 1");
  const ExtReal phi_bar = eval_phi(p, x_bar);

  static const int bases[] = {2, 3, 5};
  int accepted = 0, index = 1;
  Vec delta(p.n);
  while (accepted < samples) {
    for (int j = 0; j < p.n; ++j)
      delta[j] = 2.0 * radical_inverse(bases[j % 3], index) - 1.0;
    ++index;
    if (delta.norm() > 1.0) continue;  // keep the ball, not the cube
    ++accepted;
    const ExtReal phi = eval_phi(p, x_bar + radius * delta);
    if (!phi.is_finite()) continue;  // +inf satisfies the growth inequality
    if (!phi_bar.is_finite()) return false;
    const double rhs = phi_bar.value() + 0.5 * beta * (radius * delta).squaredNorm();
    if (phi.value() < rhs - 1e-14) return false;
  }
  return true;
}

FdCheckResult fd_check(const Problem& p, const Vec& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "h must be positive");
  FdCheckResult r;
  const Vec grad = p.eval_f_grad(x);
  const Mat J = p.eval_jacobian(x);
  Vec e = Vec::Zero(p.n);
  for (int j = 0; j < p.n; ++j) {
    e[j] = h;
    const double df = (p.eval_f(x + e) - p.eval_f(x - e)) / (2.0 * h);
    r.grad_err = std::max(r.grad_err,
                          std::abs(df - grad[j]) / std::max(1.0, std::abs(grad[j])));
    const Vec dc = (p.eval_c(x + e) - p.eval_c(x - e)) / (2.0 * h);
    for (int i = 0; i < p.m; ++i)
      r.jac_err = std::max(r.jac_err,
                           std::abs(dc[i] - J(i, j)) / std::max(1.0, std::abs(J(i, j))));
    e[j] = 0.0;
  }
  return r;
}

}  // namespace ncal

// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <string>
#include <vector>

#include "ncal/types.hpp"

namespace ncal {

/// Finite set of proximal minimizers. All members attain the same optimal
/// value of the prox subproblem; `attained` is that value.
struct ProxSet {
  std::vector<Vec> points;      // nonempty, pairwise distinct
  double attained = 0.0;        // common value of g(z) + ||z - v||^2 / (2 mu)
  std::string selection_rule;   // tag of the deterministic selection order
};

/// Deterministic representative: lexicographically smallest point among those
/// with minimal euclidean norm. Stable across runs.
Vec select_prox_point(const ProxSet& s);

/// Nonsmooth term g of the composite objective f(x) + g(c(x)).
///
/// Five closed-form kinds ship: the weighted l0 quasi-norm, indicators of a
/// box, of the standard complementarity set, and of a single point, and the
/// concave quadratic -a||z||^2. Each kind provides the full oracle the solver
/// and the diagnostics need: value, set-valued prox, Moreau envelope,
/// distance to the limiting subdifferential, distance to the domain, and the
/// prox-boundedness threshold. Regularizers are immutable value objects and
/// all operations are pure.
class Regularizer {
 public:
  enum class Kind { l0, indicator_box, indicator_complementarity, indicator_point, neg_square };

  static Regularizer l0(int m, double weight = 1.0);
  static Regularizer indicator_box(Vec lo, Vec hi);  // entries may be +-inf
  static Regularizer indicator_complementarity(int pairs);
  static Regularizer indicator_point(Vec z0);
  static Regularizer neg_square(int m, double a);

  Kind kind() const { return kind_; }
  int dim() const { return m_; }
  const char* kind_name() const;

  /// g(z); +inf outside dom g.
  ExtReal value(const Vec& z) const;

  /// Complete finite set argmin_{z'} { g(z') + ||z' - v||^2 / (2 mu) }.
  /// Separable kinds are solved per coordinate group; the cartesian product
  /// of tied groups is enumerated in lexicographic order and truncated to
  /// `prox_cap()` points. Requires 0 < mu < prox_threshold().
  ProxSet prox(double mu, const Vec& v) const;

  /// Moreau envelope g^mu(v): the attained value of the prox subproblem.
  double moreau(double mu, const Vec& v) const;

  /// Euclidean distance from y to the limiting subdifferential of g at z,
  /// using the closed form of the kind. Requires z in dom g.
  double subdiff_dist(const Vec& z, const Vec& y) const;

  /// dist(v, dom g); zero for the full-domain kinds.
  double domain_dist(const Vec& v) const;

  /// Threshold of prox-boundedness; +inf when g is minorized by an affine
  /// function, 1/(2a) for the neg_square kind.
  double prox_threshold() const;

  int prox_cap() const { return prox_cap_; }
  void set_prox_cap(int cap);

  // kind parameters
  double l0_weight() const { return weight_; }
  double neg_square_coeff() const { return a_; }
  int pairs() const { return m_ / 2; }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  const Vec& point() const { return z0_; }

 private:
  Regularizer(Kind kind, int m) : kind_(kind), m_(m) {}

  void check_mu(double mu) const;

  Kind kind_;
  int m_;
  int prox_cap_ = 8;
  double weight_ = 1.0;  // l0
  double a_ = 1.0;       // neg_square
  Vec lo_, hi_;          // indicator_box
  Vec z0_;               // indicator_point
};

}  // namespace ncal

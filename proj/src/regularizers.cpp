// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/regularizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncal {

namespace {

constexpr double kTieTol = 1e-12;  // absolute tolerance on tie detection
constexpr double kInf = std::numeric_limits<double>::infinity();

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// One separable coordinate group of the prox subproblem: the candidate
// minimizers (each a small vector over the group's coordinates, sorted
// ascending) and the attained group cost.
struct GroupProx {
  std::vector<Vec> candidates;
  double cost = 0.0;
};

// Cartesian product of per-group candidates in lexicographic order of the
// assembled vector, truncated to `cap` points. Group candidate lists are
// sorted so that group-major enumeration is globally lexicographic.
std::vector<Vec> product_lex(const std::vector<GroupProx>& groups,
                             const std::vector<std::vector<int>>& coords,
                             int m, int cap) {
  std::vector<Vec> out;
  std::vector<size_t> idx(groups.size(), 0);
  while (true) {
    Vec z(m);
    for (size_t gi = 0; gi < groups.size(); ++gi) {
      const Vec& cand = groups[gi].candidates[idx[gi]];
      for (size_t j = 0; j < coords[gi].size(); ++j) z[coords[gi][j]] = cand[j];
    }
    out.push_back(std::move(z));
    if (static_cast<int>(out.size()) >= cap) break;
    // odometer: last group varies fastest
    size_t gi = groups.size();
    while (gi > 0) {
      --gi;
      if (++idx[gi] < groups[gi].candidates.size()) break;
      idx[gi] = 0;
      if (gi == 0) return out;  // wrapped around completely
    }
  }
  return out;
}

GroupProx prox_l0_scalar(double v, double mu, double weight) {
  GroupProx g;
  const double threshold = std::sqrt(2.0 * mu * weight);
  const double av = std::abs(v);
  if (std::abs(av - threshold) <= kTieTol && av > 0.0) {
    g.candidates.push_back(Vec::Constant(1, 0.0));
    g.candidates.push_back(Vec::Constant(1, v));
    std::sort(g.candidates.begin(), g.candidates.end(), lex_less);
    g.cost = weight;  // both branches attain the same cost at the tie
  } else if (av > threshold) {
    g.candidates.push_back(Vec::Constant(1, v));
    g.cost = weight;
  } else {
    g.candidates.push_back(Vec::Constant(1, 0.0));
    g.cost = v * v / (2.0 * mu);
  }
  return g;
}

// Projection of one complementarity pair (a, b) onto {(t,0): t>=0} u {(0,s): s>=0}.
GroupProx prox_cc_pair(double a, double b, double mu) {
  Vec arm1(2), arm2(2);
  arm1 << std::max(a, 0.0), 0.0;
  arm2 << 0.0, std::max(b, 0.0);
  const double d1 = (a - arm1[0]) * (a - arm1[0]) + b * b;
  const double d2 = a * a + (b - arm2[1]) * (b - arm2[1]);
  GroupProx g;
  if (std::abs(d1 - d2) <= kTieTol) {
    g.candidates.push_back(arm1);
    if ((arm2 - arm1).norm() > 0.0) g.candidates.push_back(arm2);
    std::sort(g.candidates.begin(), g.candidates.end(), lex_less);
    g.cost = d1 / (2.0 * mu);
  } else if (d1 < d2) {
    g.candidates.push_back(arm1);
    g.cost = d1 / (2.0 * mu);
  } else {
    g.candidates.push_back(arm2);
    g.cost = d2 / (2.0 * mu);
  }
  return g;
}

double dist_to_interval(double y, double lo, double hi) {
  if (y < lo) return lo - y;
  if (y > hi) return y - hi;
  return 0.0;
}

}  // namespace

Vec select_prox_point(const ProxSet& s) {
  if (s.points.empty())
    throw Error(ErrorCode::invalid_argument, "select_prox_point: empty prox set");
  const Vec* best = &s.points.front();
  for (const Vec& p : s.points) {
    const double pn = p.squaredNorm(), bn = best->squaredNorm();
    if (pn < bn || (pn == bn && lex_less(p, *best))) best = &p;
  }
  return *best;
}

Regularizer Regularizer::l0(int m, double weight) {
  if (m <= 0 || weight <= 0.0)
    throw Error(ErrorCode::config, "l0 regularizer requires m > 0 and weight > 0");
  Regularizer r(Kind::l0, m);
  r.weight_ = weight;
  return r;
}

Regularizer Regularizer::indicator_box(Vec lo, Vec hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw Error(ErrorCode::config, "box bounds must have equal positive length");
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i]))
      throw Error(ErrorCode::config, "box requires lo <= hi componentwise");
  Regularizer r(Kind::indicator_box, static_cast<int>(lo.size()));
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  return r;
}

Regularizer Regularizer::indicator_complementarity(int pairs) {
  if (pairs <= 0)
    throw Error(ErrorCode::config, "complementarity regularizer requires pairs > 0");
  return Regularizer(Kind::indicator_complementarity, 2 * pairs);
}

Regularizer Regularizer::indicator_point(Vec z0) {
  if (z0.size() == 0)
    throw Error(ErrorCode::config, "indicator_point requires a nonempty anchor");
  require_finite(z0, "z0");
  Regularizer r(Kind::indicator_point, static_cast<int>(z0.size()));
  r.z0_ = std::move(z0);
  return r;
}

Regularizer Regularizer::neg_square(int m, double a) {
  if (m <= 0 || a <= 0.0)
    throw Error(ErrorCode::config, "neg_square requires m > 0 and a > 0");
  Regularizer r(Kind::neg_square, m);
  r.a_ = a;
  return r;
}

const char* Regularizer::kind_name() const {
  switch (kind_) {
    case Kind::l0: return "l0";
    case Kind::indicator_box: return "box";
    case Kind::indicator_complementarity: return "complementarity";
    case Kind::indicator_point: return "point";
    case Kind::neg_square: return "neg-square";
  }
  return "?";
}

void Regularizer::set_prox_cap(int cap) {
  if (cap < 1) throw Error(ErrorCode::config, "prox cap must be >= 1");
  prox_cap_ = cap;
}

ExtReal Regularizer::value(const Vec& z) const {
  require_length(z, m_, "z");
  require_finite(z, "z");
  switch (kind_) {
    case Kind::l0: {
      int nonzeros = 0;
      for (Eigen::Index i = 0; i < z.size(); ++i)
        if (z[i] != 0.0) ++nonzeros;
      return ExtReal(weight_ * nonzeros);
    }
    case Kind::indicator_box:
      for (Eigen::Index i = 0; i < z.size(); ++i)
        if (z[i] < lo_[i] || z[i] > hi_[i]) return ExtReal::infinity();
      return ExtReal(0.0);
    case Kind::indicator_complementarity: {
      const int p = pairs();
      for (int i = 0; i < p; ++i) {
        const double a = z[i], b = z[p + i];
        if (a < 0.0 || b < 0.0 || a * b != 0.0) return ExtReal::infinity();
      }
      return ExtReal(0.0);
    }
    case Kind::indicator_point:
      return (z.array() == z0_.array()).all() ? ExtReal(0.0) : ExtReal::infinity();
    case Kind::neg_square:
      return ExtReal(-a_ * z.squaredNorm());
  }
  return ExtReal(0.0);
}

void Regularizer::check_mu(double mu) const {
  if (!(mu > 0.0))
    throw Error(ErrorCode::invalid_argument, "prox parameter mu must be positive");
  if (mu >= prox_threshold())
    throw Error(ErrorCode::prox_unbounded,
                "prox-unbounded: mu = " + std::to_string(mu) +
                    " is not below the prox-boundedness threshold " +
                    std::to_string(prox_threshold()));
}

ProxSet Regularizer::prox(double mu, const Vec& v) const {
  require_length(v, m_, "v");
  require_finite(v, "v");
  check_mu(mu);

  ProxSet out;
  out.selection_rule = "lex-product,min-norm-lex-select";

  switch (kind_) {
    case Kind::l0: {
      std::vector<GroupProx> groups(m_);
      std::vector<std::vector<int>> coords(m_);
      double cost = 0.0;
      for (int i = 0; i < m_; ++i) {
        groups[i] = prox_l0_scalar(v[i], mu, weight_);
        coords[i] = {i};
        cost += groups[i].cost;
      }
      out.points = product_lex(groups, coords, m_, prox_cap_);
      out.attained = cost;
      break;
    }
    case Kind::indicator_box: {
      Vec z = v.cwiseMax(lo_).cwiseMin(hi_);
      out.attained = (z - v).squaredNorm() / (2.0 * mu);
      out.points.push_back(std::move(z));
      break;
    }
    case Kind::indicator_complementarity: {
      const int p = pairs();
      std::vector<GroupProx> groups(p);
      std::vector<std::vector<int>> coords(p);
      double cost = 0.0;
      for (int i = 0; i < p; ++i) {
        groups[i] = prox_cc_pair(v[i], v[p + i], mu);
        coords[i] = {i, p + i};
        cost += groups[i].cost;
      }
      out.points = product_lex(groups, coords, m_, prox_cap_);
      out.attained = cost;
      break;
    }
    case Kind::indicator_point:
      out.attained = (z0_ - v).squaredNorm() / (2.0 * mu);
      out.points.push_back(z0_);
      break;
    case Kind::neg_square: {
      Vec z = v / (1.0 - 2.0 * a_ * mu);
      out.attained = -a_ * z.squaredNorm() + (z - v).squaredNorm() / (2.0 * mu);
      out.points.push_back(std::move(z));
      break;
    }
  }
  return out;
}

double Regularizer::moreau(double mu, const Vec& v) const {
  return prox(mu, v).attained;
}

double Regularizer::subdiff_dist(const Vec& z, const Vec& y) const {
  require_length(z, m_, "z");
  require_length(y, m_, "y");
  require_finite(y, "y");
  if (!value(z).is_finite())
    throw Error(ErrorCode::domain, "subdiff_dist: z is outside dom g");

  switch (kind_) {
    case Kind::l0: {
      // free on the zero set, pinned to 0 on the support of z
      double d2 = 0.0;
      for (Eigen::Index i = 0; i < z.size(); ++i)
        if (z[i] != 0.0) d2 += y[i] * y[i];
      return std::sqrt(d2);
    }
    case Kind::indicator_box: {
      double d2 = 0.0;
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        const bool at_lo = z[i] == lo_[i], at_hi = z[i] == hi_[i];
        double di;
        if (at_lo && at_hi) di = 0.0;                             // pinned interval, N = R
        else if (at_lo) di = dist_to_interval(y[i], -kInf, 0.0);  // N = (-inf, 0]
        else if (at_hi) di = dist_to_interval(y[i], 0.0, kInf);   // N = [0, inf)
        else di = std::abs(y[i]);                                 // interior, N = {0}
        d2 += di * di;
      }
      return std::sqrt(d2);
    }
    case Kind::indicator_complementarity: {
      const int p = pairs();
      double d2 = 0.0;
      for (int i = 0; i < p; ++i) {
        const double za = z[i], zb = z[p + i];
        const double ya = y[i], yb = y[p + i];
        double di2;
        if (za > 0.0) {
          di2 = ya * ya;  // I^{+0}: y_i = 0
        } else if (zb > 0.0) {
          di2 = yb * yb;  // I^{0+}: y_{p+i} = 0
        } else {
          // biactive: union of the two axes and the third quadrant
          const double axis_a = ya * ya;
          const double axis_b = yb * yb;
          const double qa = std::max(ya, 0.0), qb = std::max(yb, 0.0);
          const double quad = qa * qa + qb * qb;
          di2 = std::min({axis_a, axis_b, quad});
        }
        d2 += di2;
      }
      return std::sqrt(d2);
    }
    case Kind::indicator_point:
      return 0.0;  // N_{z0}(z0) = R^m
    case Kind::neg_square:
      return (y + 2.0 * a_ * z).norm();
  }
  return 0.0;
}

double Regularizer::domain_dist(const Vec& v) const {
  require_length(v, m_, "v");
  require_finite(v, "v");
  switch (kind_) {
    case Kind::l0:
    case Kind::neg_square:
      return 0.0;
    case Kind::indicator_box:
      return (v.cwiseMax(lo_).cwiseMin(hi_) - v).norm();
    case Kind::indicator_complementarity: {
      const int p = pairs();
      double d2 = 0.0;
      for (int i = 0; i < p; ++i) {
        const double a = v[i], b = v[p + i];
        const double pa = std::max(a, 0.0), pb = std::max(b, 0.0);
        const double d1 = (a - pa) * (a - pa) + b * b;
        const double dd2 = a * a + (b - pb) * (b - pb);
        d2 += std::min(d1, dd2);
      }
      return std::sqrt(d2);
    }
    case Kind::indicator_point:
      return (v - z0_).norm();
  }
  return 0.0;
}

double Regularizer::prox_threshold() const {
  return kind_ == Kind::neg_square ? 1.0 / (2.0 * a_) : kInf;
}

}  // namespace ncal

// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ncal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double quad(const Vec& z, const Vec& v, double mu) {
  return (z - v).squaredNorm() / (2.0 * mu);
}

// Scan q(t) = g(base with coordinate i set to t) + (t - v_i)^2 / (2 mu) over
// the grid, returning the minimum. Grid points are integer multiples of the
// step so that an exact zero is always on the grid; the interval endpoints
// are added as extra candidates. The base vector supplies feasible values for
// the remaining coordinates.
double scan_coordinate(const Regularizer& g, const Vec& base, int i, double vi, double mu,
                       double lo, double hi, double step) {
  Vec z = base;
  double best = kInf;
  auto probe = [&](double t) {
    z[i] = t;
    const ExtReal gv = g.value(z);
    if (!gv.is_finite()) return;
    best = std::min(best, gv.value() + (t - vi) * (t - vi) / (2.0 * mu));
  };
  const long k_lo = static_cast<long>(std::ceil(lo / step));
  const long k_hi = static_cast<long>(std::floor(hi / step));
  for (long k = k_lo; k <= k_hi; ++k) probe(static_cast<double>(k) * step);
  probe(lo);
  probe(hi);
  return best;
}

}  // namespace

double grid_prox_min(const Regularizer& g, double mu, const Vec& v, double lo, double hi,
                     double step) {
  const int m = g.dim();
  require_length(v, m, "v");

  switch (g.kind()) {
    case Regularizer::Kind::indicator_point: {
      // dom g is a single point
      const Vec& z0 = g.point();
      return g.value(z0).value() + quad(z0, v, mu);
    }
    case Regularizer::Kind::l0:
    case Regularizer::Kind::neg_square: {
      // separable with g_i(t) = g(t * e_i): scan each coordinate around the zero base
      double total = 0.0;
      const Vec base = Vec::Zero(m);
      for (int i = 0; i < m; ++i) total += scan_coordinate(g, base, i, v[i], mu, lo, hi, step);
      return total;
    }
    case Regularizer::Kind::indicator_box: {
      // separable; anchor the other coordinates at a feasible point
      Vec base = v.cwiseMax(g.box_lo()).cwiseMin(g.box_hi());
      double total = 0.0;
      for (int i = 0; i < m; ++i) {
        const double clo = std::max(lo, g.box_lo()[i]);
        const double chi = std::min(hi, g.box_hi()[i]);
        if (clo > chi) return kInf;  // domain misses the grid entirely
        total += scan_coordinate(g, base, i, v[i], mu, clo, chi, step);
      }
      return total;
    }
    case Regularizer::Kind::indicator_complementarity: {
      // per pair, the domain is the union of the two nonnegative axes
      const int p = g.pairs();
      double total = 0.0;
      Vec base = Vec::Zero(m);  // the origin is feasible for every pair
      const long points = static_cast<long>(std::floor(hi / step));
      for (int i = 0; i < p; ++i) {
        double best = kInf;
        // arm (t, 0)
        Vec z = base;
        z[p + i] = 0.0;
        for (long k = 0; k <= points; ++k) {
          const double t = static_cast<double>(k) * step;
          z[i] = t;
          if (!g.value(z).is_finite()) continue;
          best = std::min(best, (t - v[i]) * (t - v[i]) / (2.0 * mu) +
                                    v[p + i] * v[p + i] / (2.0 * mu));
        }
        // arm (0, s)
        z[i] = 0.0;
        for (long k = 0; k <= points; ++k) {
          const double s = static_cast<double>(k) * step;
          z[p + i] = s;
          if (!g.value(z).is_finite()) continue;
          best = std::min(best, (s - v[p + i]) * (s - v[p + i]) / (2.0 * mu) +
                                    v[i] * v[i] / (2.0 * mu));
        }
        z[p + i] = 0.0;
        total += best;
      }
      return total;
    }
  }
  return kInf;
}

ProxCheckReport check_prox_against_grid(const Regularizer& g, int cases, std::uint64_t seed,
                                        double tol, double grid_step) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const bool finite_threshold = std::isfinite(g.prox_threshold());
  // keep the minimizers inside the [-5, 5] grid
  const double v_range = finite_threshold ? 1.5 : 3.0;

  ProxCheckReport report;
  report.kind = g.kind_name();
  report.cases = cases;

  for (int c = 0; c < cases; ++c) {
    const double mu = finite_threshold
                          ? (0.1 + 0.5 * unit(rng)) * g.prox_threshold()
                          : 0.05 + 1.45 * unit(rng);
    Vec v(g.dim());
    for (int i = 0; i < g.dim(); ++i) v[i] = -v_range + 2.0 * v_range * unit(rng);

    const ProxSet set = g.prox(mu, v);
    const double grid_min = grid_prox_min(g, mu, v, -5.0, 5.0, grid_step);
    report.max_grid_vs_attained_gap =
        std::max(report.max_grid_vs_attained_gap, set.attained - grid_min);

    if (set.attained > grid_min + tol) {
      report.mismatches.push_back(
          {mu, v, set.attained, grid_min, set.attained, "attained value is worse than the grid minimum"});
      continue;
    }
    for (const Vec& z : set.points) {
      ++report.prox_points_checked;
      const double obj = g.value(z).value() + quad(z, v, mu);
      report.max_point_vs_grid_gap = std::max(report.max_point_vs_grid_gap, obj - grid_min);
      if (obj > grid_min + tol) {
        report.mismatches.push_back({mu, v, obj, grid_min, set.attained,
                                     "prox point does not attain the grid minimum"});
      }
      if (std::abs(obj - set.attained) > 1e-12) {
        report.mismatches.push_back({mu, v, obj, grid_min, set.attained,
                                     "prox point does not attain the reported value"});
      }
      // Fermat multiplier consistency with the subdifferential formula
      const Vec y = (v - z) / mu;
      const double sd = g.subdiff_dist(z, y);
      if (sd > 1e-9) {
        report.mismatches.push_back(
            {mu, v, sd, 0.0, set.attained, "Fermat multiplier is not in the subdifferential"});
      }
    }
    // Moreau envelope consistency
    if (std::abs(g.moreau(mu, v) - set.attained) > 1e-12) {
      report.mismatches.push_back(
          {mu, v, g.moreau(mu, v), grid_min, set.attained, "moreau disagrees with prox"});
    }
  }
  return report;
}

std::vector<ProxCheckReport> check_all_kinds(int cases, std::uint64_t seed) {
  std::vector<ProxCheckReport> reports;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  reports.push_back(check_prox_against_grid(Regularizer::l0(1, 1.0), cases, seed + 1));
  reports.push_back(check_prox_against_grid(Regularizer::l0(2, 0.7), cases, seed + 2));
  Vec lo(2), hi(2);
  lo << -4.0 + 2.0 * unit(rng), -kInf;
  hi << lo[0] + 4.0 * unit(rng), 2.0;
  reports.push_back(check_prox_against_grid(Regularizer::indicator_box(lo, hi), cases, seed + 3));
  reports.push_back(
      check_prox_against_grid(Regularizer::indicator_complementarity(1), cases, seed + 4));
  Vec z0(2);
  z0 << -1.0 + 2.0 * unit(rng), -1.0 + 2.0 * unit(rng);
  reports.push_back(check_prox_against_grid(Regularizer::indicator_point(z0), cases, seed + 5));
  reports.push_back(check_prox_against_grid(Regularizer::neg_square(1, 1.0), cases, seed + 6));
  reports.push_back(check_prox_against_grid(Regularizer::neg_square(2, 0.8), cases, seed + 7));
  return reports;
}

}  // namespace ncal

// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ncal/oracle.hpp"
#include "ncal/regularizers.hpp"

using namespace ncal;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec vec1(double a) { return Vec::Constant(1, a); }

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// independent 1-D scan of g1(t) + (t - v)^2 / (2 mu), resolution 1e-4; grid
// points are exact multiples of the step so zero is on the grid
template <typename G>
double scan_1d(G&& g1, double v, double mu, double lo = -6.0, double hi = 6.0) {
  double best = kInf;
  for (long k = static_cast<long>(lo / 1e-4); k <= static_cast<long>(hi / 1e-4); ++k) {
    const double t = static_cast<double>(k) * 1e-4;
    best = std::min(best, g1(t) + (t - v) * (t - v) / (2.0 * mu));
  }
  return best;
}

bool contains_point(const ProxSet& s, const Vec& z, double tol = 1e-12) {
  for (const Vec& p : s.points)
    if ((p - z).norm() <= tol) return true;
  return false;
}

bool exact_eq(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

TEST_CASE("regularizer values") {
  const Regularizer l0 = Regularizer::l0(3, 1.0);
  CHECK(l0.value(vec3(0, 2, -3)).value() == 2.0);
  CHECK(l0.value(vec3(0, 0, 0)).value() == 0.0);

  const Regularizer cc = Regularizer::indicator_complementarity(1);
  CHECK(cc.value(vec2(3, 0)).value() == 0.0);
  CHECK(cc.value(vec2(0, 0)).value() == 0.0);
  CHECK(!cc.value(vec2(1, 1)).is_finite());
  CHECK(!cc.value(vec2(-1, 0)).is_finite());

  const Regularizer ns = Regularizer::neg_square(1, 1.0);
  CHECK(ns.value(vec1(2)).value() == -4.0);

  const Regularizer box = Regularizer::indicator_box(vec1(1), vec1(3));
  CHECK(box.value(vec1(2)).value() == 0.0);
  CHECK(!box.value(vec1(0.5)).is_finite());

  const Regularizer pt = Regularizer::indicator_point(vec2(0, 0));
  CHECK(pt.value(vec2(0, 0)).value() == 0.0);
  CHECK(!pt.value(vec2(0, 1e-300)).is_finite());
}

TEST_CASE("l0 prox: hard thresholding with the tie at |v| = sqrt(2 mu lambda)") {
  const Regularizer g = Regularizer::l0(1, 1.0);
  const double mu = 0.5;  // threshold = 1

  ProxSet s = g.prox(mu, vec1(2.0));
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0][0] == 2.0);
  CHECK(s.attained == doctest::Approx(1.0).epsilon(1e-12));

  s = g.prox(mu, vec1(0.5));
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0][0] == 0.0);

  s = g.prox(mu, vec1(1.0));
  REQUIRE(s.points.size() == 2);
  CHECK(contains_point(s, vec1(0.0)));
  CHECK(contains_point(s, vec1(1.0)));

  // brute-force confirmation of the threshold behavior
  auto g1 = [](double t) { return t != 0.0 ? 1.0 : 0.0; };
  for (double v : {2.0, 0.5, 1.0, -1.3, 0.0}) {
    const ProxSet set = g.prox(mu, vec1(v));
    const double grid = scan_1d(g1, v, mu);
    CHECK(set.attained <= grid + 1e-7);
    CHECK(grid <= set.attained + 1e-7);
  }
}

TEST_CASE("complementarity prox: arm projection with ties") {
  const Regularizer g = Regularizer::indicator_complementarity(1);

  ProxSet s = g.prox(1.0, vec2(3, 1));
  REQUIRE(s.points.size() == 1);
  CHECK(exact_eq(s.points[0], vec2(3, 0)));

  s = g.prox(1.0, vec2(1, 1));
  REQUIRE(s.points.size() == 2);
  CHECK(contains_point(s, vec2(1, 0)));
  CHECK(contains_point(s, vec2(0, 1)));

  s = g.prox(1.0, vec2(-1, -2));
  REQUIRE(s.points.size() == 1);
  CHECK(exact_eq(s.points[0], vec2(0, 0)));

  // brute force over the two arms
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec v = vec2(u(rng), u(rng));
    const double mu = 0.1 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    double best = kInf;
    for (double t = 0.0; t <= 6.0; t += 1e-4) {
      best = std::min(best, ((t - v[0]) * (t - v[0]) + v[1] * v[1]) / (2 * mu));
      best = std::min(best, (v[0] * v[0] + (t - v[1]) * (t - v[1])) / (2 * mu));
    }
    const ProxSet set = g.prox(mu, v);
    CHECK(set.attained <= best + 1e-7);
    CHECK(best <= set.attained + 1e-7);
  }
}

TEST_CASE("box and point prox") {
  const Regularizer box = Regularizer::indicator_box(vec1(1), vec1(3));
  for (double mu : {0.1, 0.5, 2.0}) {
    const ProxSet s = box.prox(mu, vec1(0.0));
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0][0] == 1.0);
  }
  const Regularizer pt = Regularizer::indicator_point(vec2(1, -1));
  const ProxSet s = pt.prox(0.3, vec2(5, 5));
  REQUIRE(s.points.size() == 1);
  CHECK(exact_eq(s.points[0], vec2(1, -1)));
}

TEST_CASE("neg_square prox: singleton v/(1 - 2 a mu), guard at the threshold") {
  const Regularizer g = Regularizer::neg_square(1, 1.0);
  CHECK(g.prox_threshold() == 0.5);

  const ProxSet s = g.prox(0.25, vec1(1.0));
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0][0] == doctest::Approx(2.0).epsilon(1e-14));

  auto g1 = [](double t) { return -t * t; };
  const double grid = scan_1d(g1, 1.0, 0.25);
  CHECK(std::abs(grid - s.attained) <= 1e-7);

  CHECK_THROWS_AS(g.prox(0.5, vec1(1.0)), Error);
  CHECK_THROWS_AS(g.prox(0.75, vec1(1.0)), Error);
  try {
    g.prox(0.5, vec1(1.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::prox_unbounded);
    CHECK(std::string(e.what()).find("prox-unbounded") != std::string::npos);
  }

  // singleton for every valid mu
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.49);
  for (int i = 0; i < 100; ++i) {
    const double mu = u(rng);
    const ProxSet set = g.prox(mu, vec1(0.7));
    REQUIRE(set.points.size() == 1);
    CHECK(set.points[0][0] == doctest::Approx(0.7 / (1 - 2 * mu)).epsilon(1e-13));
  }
}

TEST_CASE("moreau envelope values") {
  const Regularizer box = Regularizer::indicator_box(vec1(1), vec1(3));
  CHECK(box.moreau(0.5, vec1(0.0)) == doctest::Approx(1.0).epsilon(1e-14));

  const Regularizer l0 = Regularizer::l0(2, 1.0);
  CHECK(l0.moreau(0.5, vec2(2.0, 0.5)) == doctest::Approx(1.25).epsilon(1e-14));

  const Regularizer ns = Regularizer::neg_square(1, 1.0);
  CHECK(ns.moreau(0.25, vec1(1.0)) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("indicator kinds: mu * moreau equals half the squared domain distance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<Regularizer> kinds;
  kinds.push_back(Regularizer::indicator_box(vec2(-1, 0), vec2(2, kInf)));
  kinds.push_back(Regularizer::indicator_complementarity(1));
  kinds.push_back(Regularizer::indicator_point(vec2(0.5, -0.25)));
  for (const Regularizer& g : kinds) {
    for (int i = 0; i < 200; ++i) {
      const Vec v = vec2(u(rng), u(rng));
      const double d = g.domain_dist(v);
      for (double mu : {1.0, 0.1, 0.01})
        CHECK(std::abs(mu * g.moreau(mu, v) - 0.5 * d * d) <= 1e-12);
    }
  }
}

TEST_CASE("subdifferential distances") {
  const Regularizer l0 = Regularizer::l0(2, 1.0);
  CHECK(l0.subdiff_dist(vec2(0, 2), vec2(-1, 0.7)) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(l0.subdiff_dist(vec2(0, 0), vec2(-9, 4)) == 0.0);

  const Regularizer cc = Regularizer::indicator_complementarity(1);
  CHECK(cc.subdiff_dist(vec2(0, 0), vec2(-1, -1)) == 0.0);
  CHECK(cc.subdiff_dist(vec2(0, 0), vec2(1, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cc.subdiff_dist(vec2(2, 0), vec2(0, 5)) == 0.0);
  CHECK(cc.subdiff_dist(vec2(2, 0), vec2(0.3, 5)) == doctest::Approx(0.3).epsilon(1e-14));

  const Regularizer box = Regularizer::indicator_box(vec1(1), vec1(3));
  CHECK(box.subdiff_dist(vec1(1), vec1(-5)) == 0.0);
  CHECK(box.subdiff_dist(vec1(1), vec1(2)) == 2.0);
  CHECK(box.subdiff_dist(vec1(2), vec1(0.4)) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(box.subdiff_dist(vec1(3), vec1(2)) == 0.0);
  CHECK_THROWS_AS(box.subdiff_dist(vec1(0), vec1(0)), Error);

  const Regularizer pt = Regularizer::indicator_point(vec2(0, 0));
  CHECK(pt.subdiff_dist(vec2(0, 0), vec2(123, -7)) == 0.0);

  const Regularizer ns = Regularizer::neg_square(1, 1.0);
  CHECK(ns.subdiff_dist(vec1(2), vec1(-4)) == 0.0);
  CHECK(ns.subdiff_dist(vec1(2), vec1(0)) == 4.0);
}

TEST_CASE("domain distances") {
  const Regularizer cc = Regularizer::indicator_complementarity(1);
  CHECK(cc.domain_dist(vec2(1, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cc.domain_dist(vec2(3, 0)) == 0.0);

  const Regularizer pt = Regularizer::indicator_point(vec2(0, 0));
  CHECK(pt.domain_dist(vec2(1, -1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  CHECK(Regularizer::l0(3, 1.0).domain_dist(vec3(9, -9, 9)) == 0.0);
  CHECK(Regularizer::neg_square(2, 1.0).domain_dist(vec2(5, 5)) == 0.0);
}

TEST_CASE("prox thresholds") {
  CHECK(Regularizer::l0(1, 1.0).prox_threshold() == kInf);
  CHECK(Regularizer::neg_square(1, 1.0).prox_threshold() == 0.5);
  CHECK(Regularizer::neg_square(1, 2.0).prox_threshold() == 0.25);
  CHECK(Regularizer::indicator_box(vec1(1), vec1(3)).prox_threshold() == kInf);
  CHECK(Regularizer::indicator_point(vec1(0)).prox_threshold() == kInf);
  CHECK(Regularizer::indicator_complementarity(2).prox_threshold() == kInf);
}

TEST_CASE("select_prox_point: smallest norm, then lexicographic") {
  ProxSet s;
  s.points = {vec2(1, 0), vec2(0, 1)};
  CHECK(exact_eq(select_prox_point(s), vec2(0, 1)));

  s.points = {vec1(0), vec1(1)};
  CHECK(exact_eq(select_prox_point(s), vec1(0)));

  s.points = {vec1(2)};
  CHECK(exact_eq(select_prox_point(s), vec1(2)));
}

TEST_CASE("prox cap keeps the lexicographically smallest points") {
  Regularizer g = Regularizer::l0(4, 1.0);
  const double mu = 0.5;  // threshold 1: every coordinate of v ties
  Vec v(4);
  v << 1, 1, 1, 1;
  const ProxSet s = g.prox(mu, v);
  CHECK(s.points.size() == 8);
  for (const Vec& p : s.points) CHECK(p[0] == 0.0);  // the 8 smallest all start with 0
  CHECK(exact_eq(s.points.front(), Vec::Zero(4)));

  g.set_prox_cap(16);
  CHECK(g.prox(mu, v).points.size() == 16);
}

TEST_CASE("prox set invariants: distinct points attaining the reported value") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Regularizer> kinds;
  kinds.push_back(Regularizer::l0(2, 0.8));
  kinds.push_back(Regularizer::indicator_box(vec2(-2, -1), vec2(1, 2)));
  kinds.push_back(Regularizer::indicator_complementarity(1));
  kinds.push_back(Regularizer::indicator_point(vec2(0.3, 0.4)));
  kinds.push_back(Regularizer::neg_square(2, 1.5));

  for (const Regularizer& g : kinds) {
    for (int trial = 0; trial < 100; ++trial) {
      const double cap = std::isfinite(g.prox_threshold()) ? 0.9 * g.prox_threshold() : 2.0;
      const double mu = 0.05 + (cap - 0.05) * std::uniform_real_distribution<double>(0, 1)(rng);
      const Vec v = vec2(u(rng), u(rng));
      const ProxSet s = g.prox(mu, v);
      REQUIRE(!s.points.empty());
      for (size_t i = 0; i < s.points.size(); ++i) {
        const double re = g.value(s.points[i]).value() +
                          (s.points[i] - v).squaredNorm() / (2 * mu);
        CHECK(std::abs(re - s.attained) <= 1e-12);
        for (size_t j = i + 1; j < s.points.size(); ++j)
          CHECK((s.points[i] - s.points[j]).norm() > 0.0);
      }
      // Fermat rule consistency: y = (v - z)/mu lies in the subdifferential
      for (const Vec& z : s.points)
        CHECK(g.subdiff_dist(z, (v - z) / mu) <= 1e-9);
    }
  }
}

TEST_CASE("prox-oracle equivalence against the shipped grid oracle") {
  for (const ProxCheckReport& rep : check_all_kinds(200, 42)) {
    INFO("kind: ", rep.kind);
    CHECK(rep.mismatches.empty());
    CHECK(rep.max_grid_vs_attained_gap <= 1e-6);
  }
}

// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "ncal/composite.hpp"
#include "ncal/instances.hpp"

using namespace ncal;

namespace {

Vec vec1(double a) { return Vec::Constant(1, a); }

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("eval_phi on the built-in instances") {
  const Problem sq = make_instance("sparse-quad").problem;
  CHECK(eval_phi(sq, vec2(0, 0)).value() == 0.0);
  // f = 0, c = (0, 2), one nonzero
  CHECK(eval_phi(sq, vec2(1, 1)).value() == doctest::Approx(1.0).epsilon(1e-14));
  // direct formula evaluation as an independent check
  auto phi_direct = [](double x1, double x2) {
    const double s = x1 - x2;
    double count = 0;
    if (x1 - x2 != 0.0) count += 1;
    if (x1 + x2 != 0.0) count += 1;
    return 0.5 * s * s + s + count;
  };
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng);
    CHECK(eval_phi(sq, vec2(a, b)).value() ==
          doctest::Approx(phi_direct(a, b)).epsilon(1e-13));
  }

  const Problem ie = make_instance("infeasible-eq").problem;
  CHECK(!eval_phi(ie, vec1(1.0)).is_finite());

  CHECK_THROWS_AS(eval_phi(sq, vec1(0.0)), Error);  // dimension mismatch
}

TEST_CASE("Lagrangian value and gradient") {
  const Problem sq = make_instance("sparse-quad").problem;
  CHECK(eval_lagrangian_grad(sq, vec2(0, 0), vec2(-1, 0)).norm() == 0.0);

  const Problem box = make_instance("box-nlp").problem;
  CHECK(eval_lagrangian_grad(box, vec1(1), vec1(-2)).norm() == 0.0);
  CHECK(eval_lagrangian(box, vec1(1), vec1(-2)) == doctest::Approx(-1.0));

  // zero multiplier reduces the gradient to grad f
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const Vec x = vec2(u(rng), u(rng));
    CHECK((eval_lagrangian_grad(sq, x, Vec::Zero(2)) - sq.eval_f_grad(x)).norm() == 0.0);
  }
}

TEST_CASE("Lagrangian gradient matches central differences") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double h = 1e-6;
  for (const char* name : {"sparse-quad", "box-nlp", "mpcc-toy"}) {
    const Problem p = make_instance(name).problem;
    for (int trial = 0; trial < 20; ++trial) {
      Vec x(p.n), y(p.m);
      for (int i = 0; i < p.n; ++i) x[i] = u(rng);
      for (int i = 0; i < p.m; ++i) y[i] = u(rng);
      const Vec grad = eval_lagrangian_grad(p, x, y);
      for (int j = 0; j < p.n; ++j) {
        Vec e = Vec::Zero(p.n);
        e[j] = h;
        const double fd =
            (eval_lagrangian(p, x + e, y) - eval_lagrangian(p, x - e, y)) / (2 * h);
        CHECK(std::abs(fd - grad[j]) / std::max(1.0, std::abs(grad[j])) <= 1e-6);
      }
    }
  }
}

TEST_CASE("augmented Lagrangian values and certificates") {
  const Problem box = make_instance("box-nlp").problem;

  AugLagValue al = eval_aug_lagrangian(box, vec1(2), vec1(0), 0.5);
  CHECK(al.value == doctest::Approx(4.0).epsilon(1e-14));
  REQUIRE(al.cert.points.size() == 1);
  CHECK(al.cert.points[0][0] == 2.0);

  al = eval_aug_lagrangian(box, vec1(0), vec1(0), 0.5);
  CHECK(al.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(al.cert.points[0][0] == 1.0);

  const Problem sq = make_instance("sparse-quad").problem;
  al = eval_aug_lagrangian(sq, vec2(0, 0), vec2(0, 0), 0.5);
  CHECK(al.value == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(al.cert.points[0].norm() == 0.0);

  const Problem ns = make_instance("neg-square").problem;
  CHECK_THROWS_AS(eval_aug_lagrangian(ns, vec1(0), vec1(0), 0.5), Error);
  CHECK_NOTHROW(eval_aug_lagrangian(ns, vec1(0), vec1(0), 0.25));
}

TEST_CASE("AL value never exceeds phi at feasible points") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Problem box = make_instance("box-nlp").problem;
  const Problem cc = make_instance("mpcc-toy").problem;
  for (int i = 0; i < 500; ++i) {
    const double mu = 0.01 + 2.0 * u(rng);
    // box-nlp feasible: x in [1, 3]
    {
      const Vec x = vec1(1.0 + 2.0 * u(rng));
      const Vec y = vec1(-5.0 + 10.0 * u(rng));
      CHECK(eval_aug_lagrangian(box, x, y, mu).value <=
            eval_phi(box, x).value() + 1e-12);
    }
    // mpcc-toy feasible: one arm of the complementarity set
    {
      const Vec x = u(rng) < 0.5 ? vec2(3.0 * u(rng), 0.0) : vec2(0.0, 3.0 * u(rng));
      const Vec y = vec2(-5.0 + 10.0 * u(rng), -5.0 + 10.0 * u(rng));
      CHECK(eval_aug_lagrangian(cc, x, y, mu).value <= eval_phi(cc, x).value() + 1e-12);
    }
  }
}

TEST_CASE("residual theta") {
  const Problem sq = make_instance("sparse-quad").problem;
  CHECK(residual_theta(sq, vec2(0, 0), vec2(0, 0), vec2(-1, 0)) == 0.0);

  const Problem box = make_instance("box-nlp").problem;
  CHECK(residual_theta(box, vec1(1), vec1(1), vec1(-2)) == 0.0);
  CHECK(residual_theta(box, vec1(1), vec1(1), vec1(1)) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(residual_theta(box, vec1(1), vec1(0), vec1(0)), Error);  // z outside dom g
}

TEST_CASE("residual theta is invariant under consistent coordinate relabeling") {
  // sparse-quad with the two constraint components swapped
  Mat Q(2, 2);
  Q << 1, -1, -1, 1;
  Mat A(2, 2);
  A << 1, 1, 1, -1;  // rows of the original instance, swapped
  SmoothFunction f{[Q](const Vec& x) { return 0.5 * x.dot(Q * x) + x[0] - x[1]; },
                   [Q](const Vec& x) { return Vec(Q * x + vec2(1, -1)); },
                   [Q](const Vec&) { return Q; }};
  SmoothMap c{[A](const Vec& x) { return Vec(A * x); }, [A](const Vec&) { return A; },
              [](const Vec&, const Vec&) { return Mat::Zero(2, 2); }};
  const Problem swapped(2, 2, f, c, Regularizer::l0(2, 1.0));
  const Problem original = make_instance("sparse-quad").problem;

  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Vec x = vec2(u(rng), u(rng));
    const Vec z = vec2(u(rng), u(rng));
    const Vec y = vec2(u(rng), u(rng));
    const double t1 = residual_theta(original, x, z, y);
    const double t2 = residual_theta(swapped, x, vec2(z[1], z[0]), vec2(y[1], y[0]));
    CHECK(t1 == doctest::Approx(t2).epsilon(1e-13));
  }
}

TEST_CASE("eval_phi dominates the sampled infimum on each instance") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const char* name : {"sparse-quad", "box-nlp", "mpcc-toy", "neg-square"}) {
    const Problem p = make_instance(name).problem;
    double sampled_inf = std::numeric_limits<double>::infinity();
    std::vector<Vec> samples;
    for (int i = 0; i < 500; ++i) {
      Vec x(p.n);
      for (int j = 0; j < p.n; ++j) x[j] = u(rng);
      samples.push_back(x);
      const ExtReal phi = eval_phi(p, x);
      if (phi.is_finite()) sampled_inf = std::min(sampled_inf, phi.value());
    }
    for (const Vec& x : samples) {
      const ExtReal phi = eval_phi(p, x);
      if (phi.is_finite()) CHECK(phi.value() >= sampled_inf);
    }
  }
}

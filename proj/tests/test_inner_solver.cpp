// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "ncal/inner_solver.hpp"
#include "ncal/instances.hpp"

using namespace ncal;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec vec1(double a) { return Vec::Constant(1, a); }

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// bisection on the derivative of the 1-D penalized box-nlp subproblem,
// 2x + (x - 1)/mu = 0 on [0, 1]
double box_nlp_subproblem_root(double mu) {
  auto deriv = [mu](double x) { return 2 * x + (x - 1) / mu; };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (deriv(mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// re-verify a certificate through the public oracles
void check_certificate(const Problem& p, const Vec& y_hat, double mu,
                       const Certificate& cert) {
  const Vec c_x = p.eval_c(cert.x);
  const ProxSet set = p.g.prox(mu, c_x + mu * y_hat);
  bool member = false;
  for (const Vec& z : set.points)
    if ((z - cert.z).norm() <= 1e-12) member = true;
  CHECK(member);
  const Vec y_re = y_hat + (c_x - cert.z) / mu;
  CHECK((y_re - cert.y_tilde).norm() <= 1e-12);
  CHECK(std::abs(eval_lagrangian_grad(p, cert.x, cert.y_tilde).norm() - cert.grad_norm) <=
        1e-12);
  CHECK(p.g.subdiff_dist(cert.z, cert.y_tilde) <= 1e-9);
}

}  // namespace

TEST_CASE("box-nlp subproblem reaches the penalized minimizer") {
  const Problem p = make_instance("box-nlp").problem;
  InnerConfig cfg;
  const Certificate cert = solve_subproblem(p, vec1(0), 0.1, 1e-8, vec1(5.0), cfg);
  const double x_star = box_nlp_subproblem_root(0.1);  // 5/6
  CHECK(x_star == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
  CHECK(cert.x[0] == doctest::Approx(x_star).epsilon(1e-7));
  CHECK(cert.z[0] == 1.0);
  CHECK(cert.grad_norm <= 1e-8);
  check_certificate(p, vec1(0), 0.1, cert);
}

TEST_CASE("sparse-quad subproblem: certificate contract") {
  const Problem p = make_instance("sparse-quad").problem;
  InnerConfig cfg;
  // x0 = 0 is not stationary for the subproblem (grad f(0) = (1, -1)); the
  // solver must move and deliver the eps-certificate
  const Certificate cert = solve_subproblem(p, vec2(0, 0), 0.5, 1e-8, vec2(0, 0), cfg);
  CHECK(cert.inner_iters > 0);
  CHECK(cert.grad_norm <= 1e-8);
  check_certificate(p, vec2(0, 0), 0.5, cert);
}

TEST_CASE("infinite tolerance returns the start point with zero iterations") {
  const Problem p = make_instance("box-nlp").problem;
  const Certificate cert = solve_subproblem(p, vec1(0), 0.1, kInf, vec1(5.0), InnerConfig{});
  CHECK(cert.inner_iters == 0);
  CHECK(cert.x[0] == 5.0);
  check_certificate(p, vec1(0), 0.1, cert);
}

TEST_CASE("descent step") {
  const Problem p = make_instance("box-nlp").problem;

  SUBCASE("quadratic with step 1/L accepts on the first trial") {
    // with mu = 0.5 and x > 3 the subproblem is 2x^2/2... curvature 2 + 1/mu = 4
    const Vec x = vec1(5.0);
    const double envelope = eval_aug_lagrangian(p, x, vec1(0), 0.5).value;
    const StepResult r = subproblem_descent_step(p, vec1(0), 0.5, x, 1.0 / 4.0, envelope, 1e-4);
    CHECK(r.accepted);
  }

  SUBCASE("zero direction is accepted in place") {
    // box-nlp at the penalized minimizer: gradient vanishes
    const double mu = 0.1;
    const Vec x = vec1(box_nlp_subproblem_root(mu));
    const double envelope = eval_aug_lagrangian(p, x, vec1(0), mu).value;
    const StepResult r = subproblem_descent_step(p, vec1(0), mu, x, 1.0, envelope, 1e-4);
    CHECK(r.accepted);
    CHECK(std::abs(r.x_next[0] - x[0]) <= 1e-9);
  }
}

TEST_CASE("stalled line search exits with the current certificate") {
  // inconsistent oracle: flat value with a nonzero reported gradient makes
  // sufficient decrease impossible at any step size
  SmoothFunction f{[](const Vec&) { return 0.0; },
                   [](const Vec&) { return Vec::Constant(1, 1.0); },
                   [](const Vec&) { return Mat::Zero(1, 1); }};
  SmoothMap c{[](const Vec& x) { return x; },
              [](const Vec&) { return Mat::Identity(1, 1); },
              [](const Vec&, const Vec&) { return Mat::Zero(1, 1); }};
  const Problem p(1, 1, f, c, Regularizer::indicator_box(vec1(-kInf), vec1(kInf)));
  const Certificate cert = solve_subproblem(p, vec1(0), 0.5, 1e-10, vec1(0.0), InnerConfig{});
  CHECK(cert.grad_norm == doctest::Approx(1.0));  // never reached the tolerance
  CHECK(cert.x[0] == 0.0);
}

TEST_CASE("max-inner-iterations carries the best iterate") {
  const Problem p = make_instance("box-nlp").problem;
  InnerConfig cfg;
  cfg.max_iters = 1;
  cfg.initial_step = 1e-6;  // too small to finish in one iteration
  try {
    solve_subproblem(p, vec1(0), 0.1, 1e-12, vec1(5.0), cfg);
    FAIL("expected max-inner-iterations");
  } catch (const MaxInnerIterationsError& e) {
    CHECK(e.code() == ErrorCode::max_inner_iterations);
    CHECK(e.best().x.size() == 1);
    CHECK(e.best().grad_norm > 1e-12);
  }
}

TEST_CASE("unbounded subproblem raises unbounded-below") {
  const Problem p = make_instance("neg-square").problem;
  // at mu = 0.25 the AL is -1.5 x^2 in x: unbounded below
  CHECK_THROWS_AS(solve_subproblem(p, vec1(0), 0.25, 1e-8, vec1(1.0), InnerConfig{}),
                  Error);
  try {
    solve_subproblem(p, vec1(0), 0.25, 1e-8, vec1(1.0), InnerConfig{});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unbounded_below);
  }
}

TEST_CASE("accepted AL values respect the nonmonotone envelope") {
  const Problem p = make_instance("mpcc-toy").problem;
  InnerConfig cfg;
  cfg.nonmonotone_window = 5;
  const Certificate cert = solve_subproblem(p, vec2(0, 0), 0.5, 1e-9, vec2(2, 0.5), cfg);
  const auto& vals = cert.al_values;
  REQUIRE(vals.size() >= 2);
  for (size_t i = 1; i < vals.size(); ++i) {
    double envelope = -kInf;
    for (size_t j = i >= 5 ? i - 5 : 0; j < i; ++j) envelope = std::max(envelope, vals[j]);
    CHECK(vals[i] <= envelope + 1e-12);
  }
}

TEST_CASE("equality-constrained composite reduces to descent on the classical AL") {
  // g = indicator of {0}: L_mu(x, y_hat) = f(x) + <y_hat, c(x)> + ||c(x)||^2/(2 mu)
  // up to a constant, so the certificate direction is its exact gradient
  Mat Q(2, 2);
  Q << 3, 1, 1, 2;
  const Vec q = vec2(-1, 0.5);
  SmoothFunction f{[Q, q](const Vec& x) { return 0.5 * x.dot(Q * x) + q.dot(x); },
                   [Q, q](const Vec& x) { return Vec(Q * x + q); },
                   [Q](const Vec&) { return Q; }};
  Mat A(2, 2);
  A << 1, 2, 0, 1;
  SmoothMap c{[A](const Vec& x) { return Vec(A * x); }, [A](const Vec&) { return A; },
              [](const Vec&, const Vec&) { return Mat::Zero(2, 2); }};
  const Problem p(2, 2, f, c, Regularizer::indicator_point(Vec::Zero(2)));

  const double mu = 0.3;
  const Vec y_hat = vec2(0.4, -0.7);
  const Certificate cert = solve_subproblem(p, y_hat, mu, 1e-12, vec2(1, 1), InnerConfig{});

  // reference: plain gradient descent on f(x) + <y_hat, c(x)> + ||c||^2/(2mu)
  Vec x = vec2(1, 1);
  for (int it = 0; it < 200000; ++it) {
    const Vec grad = Q * x + q + A.transpose() * (y_hat + (A * x) / mu);
    if (grad.norm() <= 1e-13) break;
    x -= 0.05 * grad;
  }
  CHECK((cert.x - x).norm() <= 1e-10);

  // free box (g identically zero): certificate direction reduces to grad f
  const Problem free(2, 2, f, c,
                     Regularizer::indicator_box(vec2(-kInf, -kInf), vec2(kInf, kInf)));
  const Certificate cf = solve_subproblem(free, y_hat, mu, 1e-12, vec2(1, 1), InnerConfig{});
  CHECK((free.eval_f_grad(cf.x)).norm() <= 1e-12);
}

TEST_CASE("global grid oracle") {
  const Problem ie = make_instance("infeasible-eq").problem;
  const Vec x = solve_subproblem_global_grid(ie, Vec::Zero(2), 0.01, vec1(-3), vec1(5), 1e-3);
  CHECK(std::abs(x[0] - 1.0) <= 1.1e-3);

  const Problem box = make_instance("box-nlp").problem;
  const Vec xb = solve_subproblem_global_grid(box, vec1(0), 0.1, vec1(-3), vec1(5), 1e-3);
  CHECK(std::abs(xb[0] - 5.0 / 6.0) <= 1.1e-3);

  // oracle equals an exhaustive scan by construction: constant objective
  // returns the first grid point
  SmoothFunction f0{[](const Vec&) { return 1.0; }, [](const Vec&) { return Vec::Zero(1); },
                    [](const Vec&) { return Mat::Zero(1, 1); }};
  SmoothMap id{[](const Vec& x) { return x; }, [](const Vec&) { return Mat::Identity(1, 1); },
               [](const Vec&, const Vec&) { return Mat::Zero(1, 1); }};
  const Problem pc(1, 1, f0, id, Regularizer::indicator_box(vec1(-kInf), vec1(kInf)));
  const Vec xc = solve_subproblem_global_grid(pc, vec1(0), 0.5, vec1(-1), vec1(1), 0.25);
  CHECK(xc[0] == -1.0);

  // n > 2 unsupported
  SmoothFunction f3{[](const Vec&) { return 0.0; }, [](const Vec&) { return Vec::Zero(3); },
                    [](const Vec&) { return Mat::Zero(3, 3); }};
  SmoothMap id3{[](const Vec& x) { return x; },
                [](const Vec&) { return Mat::Identity(3, 3); },
                [](const Vec&, const Vec&) { return Mat::Zero(3, 3); }};
  const Problem p3(3, 3, f3, id3, Regularizer::l0(3, 1.0));
  CHECK_THROWS_AS(
      solve_subproblem_global_grid(p3, Vec::Zero(3), 0.5, Vec::Zero(3), Vec::Ones(3), 0.5),
      Error);
}

TEST_CASE("inner config validation") {
  InnerConfig cfg;
  cfg.sufficient_decrease = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = InnerConfig{};
  cfg.step_shrink = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = InnerConfig{};
  cfg.nonmonotone_window = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

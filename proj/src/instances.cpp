// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/instances.hpp"

#include <cmath>
#include <limits>

namespace ncal {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec1(double a) { return Vec::Constant(1, a); }

SmoothFunction zero_function(int n) {
  return {[](const Vec&) { return 0.0; },
          [n](const Vec&) { return Vec::Zero(n); },
          [n](const Vec&) { return Mat::Zero(n, n); }};
}

SmoothMap affine_map(Mat A, Vec b) {
  const int n = static_cast<int>(A.cols());
  return {[A, b](const Vec& x) { return Vec(A * x + b); },
          [A](const Vec&) { return A; },
          [n](const Vec&, const Vec&) { return Mat::Zero(n, n); }};
}

SmoothFunction quadratic_function(Mat Q, Vec q, double c0) {
  Mat Qs = 0.5 * (Q + Q.transpose());
  return {[Qs, q, c0](const Vec& x) { return 0.5 * x.dot(Qs * x) + q.dot(x) + c0; },
          [Qs, q](const Vec& x) { return Vec(Qs * x + q); },
          [Qs](const Vec&) { return Qs; }};
}

Instance make_sparse_quad() {
  // f(x) = (x1 - x2)^2 / 2 + x1 - x2, c(x) = (x1 - x2, x1 + x2), g = ||.||_0
  Mat Q(2, 2);
  Q << 1, -1, -1, 1;
  Mat A(2, 2);
  A << 1, -1, 1, 1;
  return {Problem(2, 2, quadratic_function(Q, vec2(1, -1), 0.0),
                  affine_map(A, Vec::Zero(2)), Regularizer::l0(2, 1.0)),
          vec2(0.3, -0.2), Vec::Zero(2), "sparse-quad"};
}

Instance make_box_nlp() {
  // min x^2 s.t. x in [1,3]
  Mat Q = Mat::Constant(1, 1, 2.0);
  Mat A = Mat::Identity(1, 1);
  return {Problem(1, 1, quadratic_function(Q, Vec::Zero(1), 0.0),
                  affine_map(A, Vec::Zero(1)),
                  Regularizer::indicator_box(vec1(1.0), vec1(3.0))),
          vec1(5.0), Vec::Zero(1), "box-nlp"};
}

Instance make_mpcc_toy() {
  // min (x1-1)^2 + (x2-1)^2 s.t. 0 <= x1 perp x2 >= 0
  Mat Q = 2.0 * Mat::Identity(2, 2);
  return {Problem(2, 2, quadratic_function(Q, vec2(-2, -2), 2.0),
                  affine_map(Mat::Identity(2, 2), Vec::Zero(2)),
                  Regularizer::indicator_complementarity(1)),
          vec2(2.0, 0.5), Vec::Zero(2), "mpcc-toy"};
}

Instance make_infeasible_eq() {
  // f = 0, c(x) = (x, x - 2), g = indicator of {(0,0)}: inconsistent equalities
  Mat A(2, 1);
  A << 1, 1;
  return {Problem(1, 2, zero_function(1), affine_map(A, vec2(0, -2)),
                  Regularizer::indicator_point(Vec::Zero(2))),
          vec1(3.0), Vec::Zero(2), "infeasible-eq"};
}

Instance make_neg_square() {
  // f(x) = x^2 / 2, c(x) = x, g(z) = -z^2: the origin is a strict local maximizer
  Mat Q = Mat::Identity(1, 1);
  return {Problem(1, 1, quadratic_function(Q, Vec::Zero(1), 0.0),
                  affine_map(Mat::Identity(1, 1), Vec::Zero(1)),
                  Regularizer::neg_square(1, 1.0)),
          vec1(1.0), Vec::Zero(1), "neg-square"};
}

double parse_extended(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
    if (s == "-inf" || s == "-Infinity") return -kInf;
  }
  throw Error(ErrorCode::config, std::string(what) + ": expected number or \"inf\"/\"-inf\"");
}

Vec parse_vec(const json& j, const char* what, bool allow_inf = false) {
  if (!j.is_array())
    throw Error(ErrorCode::config, std::string(what) + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] =
        allow_inf ? parse_extended(j[i], what) : j[i].get<double>();
  return v;
}

Mat parse_mat(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(ErrorCode::config, std::string(what) + " must be an array of rows");
  const size_t rows = j.size(), cols = j[0].size();
  Mat M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols)
      throw Error(ErrorCode::config, std::string(what) + " has ragged rows");
    for (size_t k = 0; k < cols; ++k)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
  }
  return M;
}

Regularizer regularizer_from_json(const json& j) {
  if (!j.contains("kind"))
    throw Error(ErrorCode::config, "regularizer spec requires a \"kind\" tag");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "l0") {
    return Regularizer::l0(j.at("m").get<int>(), j.value("weight", 1.0));
  }
  if (kind == "box") {
    return Regularizer::indicator_box(parse_vec(j.at("lo"), "box lo", true),
                                      parse_vec(j.at("hi"), "box hi", true));
  }
  if (kind == "complementarity") {
    return Regularizer::indicator_complementarity(j.at("pairs").get<int>());
  }
  if (kind == "point") {
    return Regularizer::indicator_point(parse_vec(j.at("z0"), "point z0"));
  }
  if (kind == "neg-square") {
    return Regularizer::neg_square(j.at("m").get<int>(), j.at("a").get<double>());
  }
  throw Error(ErrorCode::config, "unknown regularizer kind \"" + kind + "\"");
}

// Componentwise polynomial map: c_i(x) = sum_t coef_t * prod_j x_j^e_tj.
struct Monomial {
  double coef;
  std::vector<int> powers;
};

double mono_value(const Monomial& t, const Vec& x) {
  double v = t.coef;
  for (size_t j = 0; j < t.powers.size(); ++j)
    v *= std::pow(x[static_cast<Eigen::Index>(j)], t.powers[j]);
  return v;
}

double mono_partial(const Monomial& t, const Vec& x, int j) {
  if (t.powers[j] == 0) return 0.0;
  Monomial d = t;
  d.coef *= d.powers[j];
  d.powers[j] -= 1;
  return mono_value(d, x);
}

double mono_second(const Monomial& t, const Vec& x, int j, int k) {
  if (t.powers[j] == 0) return 0.0;
  Monomial d = t;
  d.coef *= d.powers[j];
  d.powers[j] -= 1;
  return mono_partial(d, x, k);
}

SmoothMap polynomial_map(std::vector<std::vector<Monomial>> rows, int n) {
  const int m = static_cast<int>(rows.size());
  auto value = [rows, m](const Vec& x) {
    Vec v(m);
    for (int i = 0; i < m; ++i) {
      v[i] = 0.0;
      for (const Monomial& t : rows[i]) v[i] += mono_value(t, x);
    }
    return v;
  };
  auto jac = [rows, m, n](const Vec& x) {
    Mat J = Mat::Zero(m, n);
    for (int i = 0; i < m; ++i)
      for (const Monomial& t : rows[i])
        for (int j = 0; j < n; ++j) J(i, j) += mono_partial(t, x, j);
    return J;
  };
  auto hess = [rows, m, n](const Vec& x, const Vec& y) {
    Mat H = Mat::Zero(n, n);
    for (int i = 0; i < m; ++i)
      for (const Monomial& t : rows[i])
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) H(j, k) += y[i] * mono_second(t, x, j, k);
    return H;
  };
  return {value, jac, hess};
}

Instance inline_instance(const json& spec) {
  const int n = spec.at("n").get<int>();
  const int m = spec.at("m").get<int>();

  const json& fj = spec.at("f");
  Mat Q = fj.contains("Q") ? parse_mat(fj.at("Q"), "f.Q") : Mat::Zero(n, n);
  Vec q = fj.contains("q") ? parse_vec(fj.at("q"), "f.q") : Vec::Zero(n);
  if (Q.rows() != n || Q.cols() != n || q.size() != n)
    throw Error(ErrorCode::config, "f.Q must be n x n and f.q of length n");
  SmoothFunction f = quadratic_function(Q, q, fj.value("c0", 0.0));

  const json& cj = spec.at("c");
  SmoothMap c;
  if (cj.contains("A")) {
    Mat A = parse_mat(cj.at("A"), "c.A");
    Vec b = cj.contains("b") ? parse_vec(cj.at("b"), "c.b") : Vec::Zero(m);
    if (A.rows() != m || A.cols() != n || b.size() != m)
      throw Error(ErrorCode::config, "c.A must be m x n and c.b of length m");
    c = affine_map(std::move(A), std::move(b));
  } else if (cj.contains("terms")) {
    const json& rows_j = cj.at("terms");
    if (!rows_j.is_array() || rows_j.size() != static_cast<size_t>(m))
      throw Error(ErrorCode::config, "c.terms must hold one monomial list per component");
    std::vector<std::vector<Monomial>> rows(m);
    for (int i = 0; i < m; ++i) {
      for (const json& tj : rows_j[i]) {
        Monomial t;
        t.coef = tj.at("coef").get<double>();
        const json& pj = tj.at("powers");
        if (pj.size() != static_cast<size_t>(n))
          throw Error(ErrorCode::config, "monomial powers must have length n");
        for (const json& e : pj) {
          const int p = e.get<int>();
          if (p < 0) throw Error(ErrorCode::config, "monomial powers must be nonnegative");
          t.powers.push_back(p);
        }
        rows[i].push_back(std::move(t));
      }
    }
    c = polynomial_map(std::move(rows), n);
  } else {
    throw Error(ErrorCode::config, "c spec requires \"A\" (affine) or \"terms\" (polynomial)");
  }

  Regularizer g = regularizer_from_json(spec.at("g"));
  if (g.dim() != m)
    throw Error(ErrorCode::config, "regularizer dimension does not match m");

  Instance inst{Problem(n, m, std::move(f), std::move(c), std::move(g)),
                Vec::Zero(n), Vec::Zero(m), "inline"};
  return inst;
}

}  // namespace

std::vector<std::string> registry_names() {
  return {"sparse-quad", "box-nlp", "mpcc-toy", "infeasible-eq", "neg-square"};
}

Instance make_instance(const std::string& name) {
  if (name == "sparse-quad") return make_sparse_quad();
  if (name == "box-nlp") return make_box_nlp();
  if (name == "mpcc-toy") return make_mpcc_toy();
  if (name == "infeasible-eq") return make_infeasible_eq();
  if (name == "neg-square") return make_neg_square();
  throw Error(ErrorCode::config, "unknown instance \"" + name + "\"");
}

Instance instance_from_json(const nlohmann::json& spec) {
  if (!spec.is_object())
    throw Error(ErrorCode::config, "instance spec must be a JSON object");
  Instance inst = spec.contains("name")
                      ? make_instance(spec.at("name").get<std::string>())
                      : inline_instance(spec);
  if (spec.contains("x0")) inst.x0 = parse_vec(spec.at("x0"), "x0");
  if (spec.contains("y0")) inst.y0 = parse_vec(spec.at("y0"), "y0");
  require_length(inst.x0, inst.problem.n, "x0");
  require_length(inst.y0, inst.problem.m, "y0");
  require_finite(inst.x0, "x0");
  require_finite(inst.y0, "y0");
  return inst;
}

}  // namespace ncal

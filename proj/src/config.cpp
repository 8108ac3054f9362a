// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal/config.hpp"

namespace ncal {

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& j, const char* what) {
  if (!j.is_array())
    throw Error(ErrorCode::config, std::string(what) + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

InnerOracle SolverSettings::make_oracle() const {
  if (method == InnerMethod::descent) return nullptr;
  Vec lo = grid_lo, hi = grid_hi;
  double res = grid_resolution;
  return [lo, hi, res](const Problem& p, const Vec& y_hat, double mu, double /*eps*/,
                       const Vec& /*x_start*/) {
    Certificate cert;
    cert.x = solve_subproblem_global_grid(p, y_hat, mu, lo, hi, res);
    cert.prox_set = p.g.prox(mu, p.eval_c(cert.x) + mu * y_hat);
    cert.z = select_prox_point(cert.prox_set);
    cert.y_tilde = y_hat + (p.eval_c(cert.x) - cert.z) / mu;
    cert.grad_norm = eval_lagrangian_grad(p, cert.x, cert.y_tilde).norm();
    return cert;
  };
}

SolverSettings solver_settings_from_json(const json& j, const Problem& p) {
  SolverSettings s;
  s.outer = make_default_outer(p);

  if (j.contains("outer")) {
    const json& o = j.at("outer");
    if (o.contains("mu0")) s.outer.mu0 = o.at("mu0").get<double>();
    s.outer.theta = o.value("theta", s.outer.theta);
    s.outer.kappa = o.value("kappa", s.outer.kappa);
    if (o.contains("y_min")) s.outer.y_lo = Vec::Constant(p.m, o.at("y_min").get<double>());
    if (o.contains("y_max")) s.outer.y_hi = Vec::Constant(p.m, o.at("y_max").get<double>());
    if (o.contains("y_lo")) s.outer.y_lo = vec_from_json(o.at("y_lo"), "outer.y_lo");
    if (o.contains("y_hi")) s.outer.y_hi = vec_from_json(o.at("y_hi"), "outer.y_hi");
    s.outer.eps0 = o.value("eps0", s.outer.eps0);
    if (o.contains("eps_rule")) {
      const std::string rule = o.at("eps_rule").get<std::string>();
      if (rule == "geometric") s.outer.eps_rule = EpsRule::geometric;
      else if (rule == "fixed") s.outer.eps_rule = EpsRule::fixed_sequence;
      else throw Error(ErrorCode::config, "eps_rule must be \"geometric\" or \"fixed\"");
    }
    s.outer.nu0 = o.value("nu0", s.outer.nu0);
    s.outer.nu_shrink = o.value("nu_shrink", s.outer.nu_shrink);
    if (o.contains("eps_sequence"))
      s.outer.eps_sequence = o.at("eps_sequence").get<std::vector<double>>();
    s.outer.theta_tol = o.value("theta_tol", s.outer.theta_tol);
    s.outer.max_outer = o.value("max_outer", s.outer.max_outer);
    if (o.contains("safeguard")) {
      const std::string mode = o.at("safeguard").get<std::string>();
      if (mode == "project") s.outer.safeguard_mode = SafeguardMode::project;
      else if (mode == "reset-on-escape") s.outer.safeguard_mode = SafeguardMode::reset_on_escape;
      else throw Error(ErrorCode::config, "safeguard must be \"project\" or \"reset-on-escape\"");
    }
    if (o.contains("penalty_mode")) {
      const std::string mode = o.at("penalty_mode").get<std::string>();
      if (mode == "monitor") s.outer.penalty_mode = PenaltyMode::monitor;
      else if (mode == "fixed") s.outer.penalty_mode = PenaltyMode::fixed;
      else if (mode == "force-shrink") s.outer.penalty_mode = PenaltyMode::force_shrink;
      else
        throw Error(ErrorCode::config,
                    "penalty_mode must be \"monitor\", \"fixed\" or \"force-shrink\"");
    }
  }

  if (j.contains("inner")) {
    const json& in = j.at("inner");
    s.inner.max_iters = in.value("max_iters", s.inner.max_iters);
    s.inner.sufficient_decrease = in.value("sufficient_decrease", s.inner.sufficient_decrease);
    s.inner.step_shrink = in.value("step_shrink", s.inner.step_shrink);
    s.inner.initial_step = in.value("initial_step", s.inner.initial_step);
    s.inner.nonmonotone_window = in.value("nonmonotone_window", s.inner.nonmonotone_window);
    s.inner.grad_tol = in.value("grad_tol", s.inner.grad_tol);
    if (in.contains("method")) {
      const std::string method = in.at("method").get<std::string>();
      if (method == "descent") s.method = InnerMethod::descent;
      else if (method == "grid") s.method = InnerMethod::grid;
      else throw Error(ErrorCode::config, "inner.method must be \"descent\" or \"grid\"");
    }
    if (s.method == InnerMethod::grid) {
      s.grid_lo = vec_from_json(in.at("grid_lo"), "inner.grid_lo");
      s.grid_hi = vec_from_json(in.at("grid_hi"), "inner.grid_hi");
      s.grid_resolution = in.value("grid_resolution", s.grid_resolution);
    }
  }

  if (j.contains("output"))
    s.log_vectors_forced = j.at("output").value("log_vectors", false);
  return s;
}

json record_to_json(const IterationRecord& rec, bool include_vectors) {
  json r{{"k", rec.k},          {"mu", rec.mu},
         {"eps", rec.eps},      {"V", rec.V},
         {"Theta", rec.theta},  {"f", rec.f_value},
         {"g", rec.g_value},    {"grad_norm", rec.grad_norm},
         {"inner_iters", rec.inner_iters}};
  if (include_vectors) {
    r["x"] = vec_to_json(rec.x);
    r["z"] = vec_to_json(rec.z);
    r["y"] = vec_to_json(rec.y);
    r["y_hat"] = vec_to_json(rec.y_hat);
  }
  return r;
}

json summary_to_json(const SolveReport& report, const Problem& p) {
  json s{{"status", status_name(report.status)},
         {"exit_code", status_exit_code(report.status)},
         {"iterations", report.records.size()},
         {"x", vec_to_json(report.x)},
         {"z", vec_to_json(report.z)},
         {"y", vec_to_json(report.y)},
         {"domain_dist", report.domain_dist},
         {"q_factors", report.q_factors}};
  if (!report.records.empty()) {
    const IterationRecord& last = report.records.back();
    s["Theta"] = last.theta;
    s["V"] = last.V;
    s["f"] = last.f_value;
    s["g"] = last.g_value;
  }
  try {
    const RateEstimate est = estimate_rates(report);
    s["rate"] = rate_name(est.classification);
    s["rate_q"] = est.q_hat;
  } catch (const Error&) {
    s["rate"] = "insufficient-history";
  }
  (void)p;
  return s;
}

}  // namespace ncal

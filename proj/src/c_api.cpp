// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#include "ncal.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "ncal/config.hpp"
#include "ncal/diagnostics.hpp"
#include "ncal/oracle.hpp"

using nlohmann::json;

struct ncal_problem {
  ncal::Instance instance;
};

struct ncal_report {
  ncal::SolveReport report;
  std::vector<std::string> record_lines;
  std::string summary_line;
  std::string status_string;
};

namespace {

ncal_status code_of(ncal::ErrorCode c) {
  using EC = ncal::ErrorCode;
  switch (c) {
    case EC::invalid_argument: return NCAL_ERR_INVALID_ARGUMENT;
    case EC::config: return NCAL_ERR_CONFIG;
    case EC::dimension: return NCAL_ERR_DIMENSION;
    case EC::domain: return NCAL_ERR_DOMAIN;
    case EC::prox_unbounded: return NCAL_ERR_PROX_UNBOUNDED;
    case EC::max_inner_iterations: return NCAL_ERR_MAX_INNER_ITERATIONS;
    case EC::unbounded_below: return NCAL_ERR_UNBOUNDED_BELOW;
    case EC::unsupported: return NCAL_ERR_UNSUPPORTED;
    case EC::insufficient_history: return NCAL_ERR_INSUFFICIENT_HISTORY;
  }
  return NCAL_ERR_INTERNAL;
}

void write_err(char* err, size_t err_len, const std::string& message) {
  if (!err || err_len == 0) return;
  const size_t n = std::min(message.size(), err_len - 1);
  std::memcpy(err, message.data(), n);
  err[n] = '\0';
}

template <typename Fn>
ncal_status guarded(char* err, size_t err_len, Fn&& fn) {
  try {
    return fn();
  } catch (const ncal::Error& e) {
    write_err(err, err_len, e.what());
    return code_of(e.code());
  } catch (const json::exception& e) {
    write_err(err, err_len, std::string("config parse error: ") + e.what());
    return NCAL_ERR_CONFIG;
  } catch (const std::exception& e) {
    write_err(err, err_len, e.what());
    return NCAL_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json index_set_json(const std::vector<int>& v) {
  json a = json::array();
  for (int i : v) a.push_back(i);
  return a;
}

}  // namespace

extern "C" {

const char* ncal_status_name(ncal_status status) {
  switch (status) {
    case NCAL_OK: return "ok";
    case NCAL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case NCAL_ERR_CONFIG: return "config-error";
    case NCAL_ERR_DIMENSION: return "dimension-mismatch";
    case NCAL_ERR_DOMAIN: return "domain-error";
    case NCAL_ERR_PROX_UNBOUNDED: return "prox-unbounded";
    case NCAL_ERR_MAX_INNER_ITERATIONS: return "max-inner-iterations";
    case NCAL_ERR_UNBOUNDED_BELOW: return "unbounded-below";
    case NCAL_ERR_UNSUPPORTED: return "unsupported";
    case NCAL_ERR_INSUFFICIENT_HISTORY: return "insufficient-history";
    case NCAL_ERR_INTERNAL: return "internal-error";
  }
  return "?";
}

ncal_status ncal_problem_create(const char* instance_json, ncal_problem** out,
                                char* err, size_t err_len) {
  if (!instance_json || !out) {
    write_err(err, err_len, "instance_json and out must be non-null");
    return NCAL_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded(err, err_len, [&] {
    const json spec = json::parse(instance_json);
    *out = new ncal_problem{ncal::instance_from_json(spec)};
    return NCAL_OK;
  });
}

void ncal_problem_free(ncal_problem* p) { delete p; }

int ncal_problem_dim_n(const ncal_problem* p) { return p ? p->instance.problem.n : 0; }
int ncal_problem_dim_m(const ncal_problem* p) { return p ? p->instance.problem.m : 0; }

ncal_status ncal_problem_initial_point(const ncal_problem* p, double* x0, double* y0) {
  if (!p) return NCAL_ERR_INVALID_ARGUMENT;
  if (x0)
    for (int i = 0; i < p->instance.problem.n; ++i) x0[i] = p->instance.x0[i];
  if (y0)
    for (int i = 0; i < p->instance.problem.m; ++i) y0[i] = p->instance.y0[i];
  return NCAL_OK;
}

ncal_status ncal_eval_phi(const ncal_problem* p, const double* x, size_t n,
                          double* value, int* finite) {
  if (!p || !x || !value || !finite) return NCAL_ERR_INVALID_ARGUMENT;
  return guarded(nullptr, 0, [&] {
    const ncal::Vec xv = Eigen::Map<const ncal::Vec>(x, static_cast<Eigen::Index>(n));
    const ncal::ExtReal phi = ncal::eval_phi(p->instance.problem, xv);
    if (phi.is_finite()) {
      *finite = 1;
      *value = phi.value();
    } else {
      *finite = 0;
      *value = p->instance.problem.g.domain_dist(p->instance.problem.eval_c(xv));
    }
    return NCAL_OK;
  });
}

ncal_status ncal_residual_theta(const ncal_problem* p, const double* x, size_t n,
                                const double* z, size_t mz, const double* y, size_t my,
                                double* theta) {
  if (!p || !x || !z || !y || !theta) return NCAL_ERR_INVALID_ARGUMENT;
  return guarded(nullptr, 0, [&] {
    const ncal::Vec xv = Eigen::Map<const ncal::Vec>(x, static_cast<Eigen::Index>(n));
    const ncal::Vec zv = Eigen::Map<const ncal::Vec>(z, static_cast<Eigen::Index>(mz));
    const ncal::Vec yv = Eigen::Map<const ncal::Vec>(y, static_cast<Eigen::Index>(my));
    *theta = ncal::residual_theta(p->instance.problem, xv, zv, yv);
    return NCAL_OK;
  });
}

ncal_status ncal_solve(const ncal_problem* p, const char* solver_json,
                       ncal_record_callback callback, void* user, ncal_report** out,
                       char* err, size_t err_len) {
  if (!p || !out) {
    write_err(err, err_len, "problem and out must be non-null");
    return NCAL_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded(err, err_len, [&] {
    const json sj = solver_json && *solver_json ? json::parse(solver_json) : json::object();
    const ncal::Problem& prob = p->instance.problem;
    ncal::SolverSettings settings = ncal::solver_settings_from_json(sj, prob);

    auto rep = std::make_unique<ncal_report>();
    const bool vectors = prob.n + prob.m <= 16 || settings.log_vectors_forced;

    ncal::RecordObserver observer = [&](const ncal::IterationRecord& rec) {
      std::string line = ncal::record_to_json(rec, vectors).dump();
      if (callback) callback(line.c_str(), user);
      rep->record_lines.push_back(std::move(line));
    };
    rep->report = ncal::solve(prob, settings.outer, p->instance.x0, p->instance.y0,
                              settings.inner, settings.make_oracle(), observer);
    rep->summary_line = ncal::summary_to_json(rep->report, prob).dump();
    rep->status_string = ncal::status_name(rep->report.status);
    *out = rep.release();
    return NCAL_OK;
  });
}

int ncal_report_exit_code(const ncal_report* r) {
  return r ? ncal::status_exit_code(r->report.status) : 1;
}

const char* ncal_report_status_name(const ncal_report* r) {
  return r ? r->status_string.c_str() : "?";
}

size_t ncal_report_num_records(const ncal_report* r) {
  return r ? r->record_lines.size() : 0;
}

const char* ncal_report_record_json(const ncal_report* r, size_t k) {
  if (!r || k >= r->record_lines.size()) return nullptr;
  return r->record_lines[k].c_str();
}

const char* ncal_report_summary_json(const ncal_report* r) {
  return r ? r->summary_line.c_str() : nullptr;
}

void ncal_report_free(ncal_report* r) { delete r; }

ncal_status ncal_diagnose(const ncal_problem* p, const double* x, size_t n,
                          const double* y, size_t m, double tol, char** json_out,
                          char* err, size_t err_len) {
  if (!p || !x || !y || !json_out) {
    write_err(err, err_len, "problem, x, y and json_out must be non-null");
    return NCAL_ERR_INVALID_ARGUMENT;
  }
  *json_out = nullptr;
  return guarded(err, err_len, [&] {
    const ncal::Problem& prob = p->instance.problem;
    const ncal::Vec xv = Eigen::Map<const ncal::Vec>(x, static_cast<Eigen::Index>(n));
    const ncal::Vec yv = Eigen::Map<const ncal::Vec>(y, static_cast<Eigen::Index>(m));

    const ncal::MStationarityResult ms = ncal::check_m_stationarity(prob, xv, yv, tol);
    json out{{"kind", prob.g.kind_name()},
             {"feasible", ms.feasible},
             {"m_stationary", ms.is_stationary},
             {"tol", tol}};
    if (ms.feasible) out["theta"] = ms.theta;
    else out["domain_dist"] = ms.theta;

    if (prob.g.kind() == ncal::Regularizer::Kind::l0 && ms.feasible) {
      const ncal::SparseIndexSets sets = ncal::sparse_index_sets(prob, xv, yv, 1e-8);
      out["index_sets"] = {{"I0", index_set_json(sets.I0)},
                           {"Ipm", index_set_json(sets.Ipm)},
                           {"I00", index_set_json(sets.I00)},
                           {"I0pm", index_set_json(sets.I0pm)}};
      if (prob.f.has_hessian() && prob.c.has_hessian()) {
        const auto cond = ncal::check_sparse_error_bound_condition(prob, xv, yv, 1e-8);
        out["licq"] = cond.licq;
        out["reduced_hessian_pd"] = cond.reduced_hessian_pd;
      }
    }
    if (prob.g.kind() == ncal::Regularizer::Kind::indicator_complementarity && ms.feasible) {
      const ncal::MpccIndexSets sets = ncal::mpcc_index_sets(prob, xv, 1e-8);
      out["index_sets"] = {{"Ip0", index_set_json(sets.Ip0)},
                           {"I0p", index_set_json(sets.I0p)},
                           {"I00", index_set_json(sets.I00)}};
    }
    *json_out = dup_string(out.dump());
    return NCAL_OK;
  });
}

ncal_status ncal_oracle_check(const ncal_problem* p, unsigned long long seed,
                              int cases, char** json_out, char* err, size_t err_len) {
  if (!p || !json_out || cases < 1) {
    write_err(err, err_len, "problem and json_out must be non-null and cases >= 1");
    return NCAL_ERR_INVALID_ARGUMENT;
  }
  *json_out = nullptr;
  return guarded(err, err_len, [&] {
    const ncal::ProxCheckReport rep =
        ncal::check_prox_against_grid(p->instance.problem.g, cases, seed);
    json out{{"kind", rep.kind},
             {"cases", rep.cases},
             {"prox_points_checked", rep.prox_points_checked},
             {"max_point_vs_grid_gap", rep.max_point_vs_grid_gap},
             {"max_grid_vs_attained_gap", rep.max_grid_vs_attained_gap},
             {"mismatches", json::array()}};
    for (const auto& mm : rep.mismatches) {
      json v = json::array();
      for (Eigen::Index i = 0; i < mm.v.size(); ++i) v.push_back(mm.v[i]);
      out["mismatches"].push_back({{"mu", mm.mu},
                                   {"v", v},
                                   {"point_objective", mm.point_objective},
                                   {"grid_min", mm.grid_min},
                                   {"attained", mm.attained},
                                   {"what", mm.what}});
    }
    *json_out = dup_string(out.dump());
    return NCAL_OK;
  });
}

void ncal_string_free(char* s) { std::free(s); }

}  // extern "C"

// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0
//
// Benchmark CLI over the C API. Subcommands: solve, diagnose, rates,
// oracle-check. Exit codes for solve/rates follow the solver status:
// 0 stationary, 2 max-outer, 3 unbounded-below, 4 shrunk-penalty-floor;
// config and usage errors exit 1.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncal.h"

using nlohmann::json;

namespace {

struct ProblemDeleter {
  void operator()(ncal_problem* p) const { ncal_problem_free(p); }
};
struct ReportDeleter {
  void operator()(ncal_report* r) const { ncal_report_free(r); }
};
using ProblemPtr = std::unique_ptr<ncal_problem, ProblemDeleter>;
using ReportPtr = std::unique_ptr<ncal_report, ReportDeleter>;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

ProblemPtr open_problem(const json& config) {
  if (!config.contains("instance"))
    throw std::runtime_error("config requires an \"instance\" section");
  const std::string spec = config.at("instance").dump();
  ncal_problem* raw = nullptr;
  char err[512] = {0};
  const ncal_status st = ncal_problem_create(spec.c_str(), &raw, err, sizeof err);
  if (st != NCAL_OK)
    throw std::runtime_error(std::string(ncal_status_name(st)) + ": " + err);
  return ProblemPtr(raw);
}

std::string solver_json_of(const json& config) {
  json s = json::object();
  for (const char* key : {"outer", "inner", "output"})
    if (config.contains(key)) s[key] = config.at(key);
  return s.dump();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV row in the fixed record column order; vector fields expand per entry.
std::string record_csv(const json& rec) {
  std::ostringstream os;
  os << rec.at("k").get<long long>() << ',' << fmt(rec.at("mu").get<double>()) << ','
     << fmt(rec.at("eps").get<double>()) << ',' << fmt(rec.at("V").get<double>()) << ','
     << fmt(rec.at("Theta").get<double>()) << ',' << fmt(rec.at("f").get<double>()) << ','
     << fmt(rec.at("g").get<double>()) << ',' << fmt(rec.at("grad_norm").get<double>())
     << ',' << rec.at("inner_iters").get<long long>();
  for (const char* key : {"x", "z", "y", "y_hat"})
    if (rec.contains(key))
      for (const auto& v : rec.at(key)) os << ',' << fmt(v.get<double>());
  return os.str();
}

std::string csv_header(const json& rec) {
  std::ostringstream os;
  os << "k,mu,eps,V,Theta,f,g,grad_norm,inner_iters";
  for (const char* key : {"x", "z", "y", "y_hat"})
    if (rec.contains(key))
      for (size_t i = 0; i < rec.at(key).size(); ++i) os << ',' << key << i;
  return os.str();
}

struct StreamSink {
  std::ostream* out = &std::cout;
  std::ofstream file;
  std::string format = "jsonl";
  bool wrote_header = false;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    out = &file;
  }

  void record(const char* line) {
    if (format == "csv") {
      const json rec = json::parse(line);
      if (!wrote_header) {
        (*out) << csv_header(rec) << '\n';
        wrote_header = true;
      }
      (*out) << record_csv(rec) << '\n';
    } else {
      (*out) << line << '\n';
    }
    out->flush();
  }
};

void stream_record(const char* line, void* user) {
  static_cast<StreamSink*>(user)->record(line);
}

ReportPtr run_solve(const ncal_problem* p, const std::string& solver_json,
                    StreamSink* sink) {
  ncal_report* raw = nullptr;
  char err[512] = {0};
  const ncal_status st = ncal_solve(p, solver_json.c_str(), sink ? stream_record : nullptr,
                                    sink, &raw, err, sizeof err);
  if (st != NCAL_OK)
    throw std::runtime_error(std::string(ncal_status_name(st)) + ": " + err);
  return ReportPtr(raw);
}

int cmd_solve(const std::string& config_path, std::string out_path, std::string format,
              bool force_shrink, int max_outer) {
  json config = load_json_file(config_path);
  if (config.contains("output")) {
    if (out_path.empty()) out_path = config.at("output").value("path", std::string());
    if (format.empty()) format = config.at("output").value("format", std::string());
  }
  if (format.empty()) format = "jsonl";
  if (format != "jsonl" && format != "csv")
    throw std::runtime_error("--format must be jsonl or csv");
  if (force_shrink) config["outer"]["penalty_mode"] = "force-shrink";
  if (max_outer > 0) config["outer"]["max_outer"] = max_outer;

  ProblemPtr problem = open_problem(config);
  StreamSink sink;
  sink.format = format;
  sink.open(out_path);

  ReportPtr report = run_solve(problem.get(), solver_json_of(config), &sink);
  const char* summary = ncal_report_summary_json(report.get());
  if (format == "csv") std::cout << summary << '\n';
  else {
    (*sink.out) << summary << '\n';
    sink.out->flush();
  }
  return ncal_report_exit_code(report.get());
}

int cmd_diagnose(const std::string& config_path, const std::string& point_path, double tol) {
  const json config = load_json_file(config_path);
  const json point = load_json_file(point_path);
  ProblemPtr problem = open_problem(config);

  std::vector<double> x = point.at("x").get<std::vector<double>>();
  std::vector<double> y = point.at("y").get<std::vector<double>>();

  char err[512] = {0};
  char* out = nullptr;
  const ncal_status st = ncal_diagnose(problem.get(), x.data(), x.size(), y.data(),
                                       y.size(), tol, &out, err, sizeof err);
  if (st != NCAL_OK)
    throw std::runtime_error(std::string(ncal_status_name(st)) + ": " + err);
  const json d = json::parse(out);
  ncal_string_free(out);

  if (!d.at("feasible").get<bool>()) {
    std::cout << "feasible: no (dist to dom g = " << fmt(d.at("domain_dist").get<double>())
              << ")\nM-stationary: no\n";
    return 0;
  }
  std::cout << "M-stationary: " << (d.at("m_stationary").get<bool>() ? "yes" : "no")
            << "; Theta=" << fmt(d.at("theta").get<double>()) << "\n";
  if (d.contains("index_sets")) {
    std::cout << "index sets:";
    for (const auto& [name, indices] : d.at("index_sets").items()) {
      std::cout << " " << name << "={";
      for (size_t i = 0; i < indices.size(); ++i)
        std::cout << (i ? "," : "") << indices[i].get<int>();
      std::cout << "}";
    }
    std::cout << "\n";
  }
  if (d.contains("licq"))
    std::cout << "LICQ(I0): " << (d.at("licq").get<bool>() ? "yes" : "no")
              << "; reduced-Hessian PD: "
              << (d.at("reduced_hessian_pd").get<bool>() ? "yes" : "no") << "\n";
  return 0;
}

int cmd_rates(const std::string& config_path) {
  const json config = load_json_file(config_path);
  ProblemPtr problem = open_problem(config);

  // mode (a): small fixed penalty; mode (b): forced shrink towards zero
  json cfg_a = config;
  cfg_a["outer"]["penalty_mode"] = "fixed";
  cfg_a["outer"]["mu0"] = 1e-3;
  cfg_a["outer"]["theta_tol"] = 1e-10;
  json cfg_b = config;
  cfg_b["outer"]["penalty_mode"] = "force-shrink";
  cfg_b["outer"]["kappa"] = 0.1;
  cfg_b["outer"]["nu_shrink"] = 0.1;

  int exit_code = 0;
  const char* labels[2] = {"fixed mu = 1e-3", "forced mu -> 0"};
  const json* cfgs[2] = {&cfg_a, &cfg_b};
  for (int mode = 0; mode < 2; ++mode) {
    ReportPtr report = run_solve(problem.get(), solver_json_of(*cfgs[mode]), nullptr);
    const json summary = json::parse(ncal_report_summary_json(report.get()));
    std::cout << "mode " << (mode ? "(b)" : "(a)") << " " << labels[mode] << ":\n";
    std::cout << "  k  Theta_k/Theta_{k-1}\n";
    const auto& factors = summary.at("q_factors");
    for (size_t i = 0; i < factors.size(); ++i)
      std::cout << "  " << i + 1 << "  " << fmt(factors[i].get<double>()) << "\n";
    std::cout << "  classification: " << summary.at("rate").get<std::string>();
    if (summary.contains("rate_q")) std::cout << " (q = " << fmt(summary.at("rate_q").get<double>()) << ")";
    std::cout << "\n";
    if (ncal_report_exit_code(report.get()) != 0) exit_code = 2;
  }
  return exit_code;
}

int cmd_oracle_check(const std::string& config_path, unsigned long long seed, int cases) {
  const json config = load_json_file(config_path);
  ProblemPtr problem = open_problem(config);

  char err[512] = {0};
  char* out = nullptr;
  const ncal_status st =
      ncal_oracle_check(problem.get(), seed, cases, &out, err, sizeof err);
  if (st != NCAL_OK)
    throw std::runtime_error(std::string(ncal_status_name(st)) + ": " + err);
  const json rep = json::parse(out);
  ncal_string_free(out);

  const auto& mismatches = rep.at("mismatches");
  std::cout << "prox/grid oracle check on kind \"" << rep.at("kind").get<std::string>()
            << "\": " << rep.at("cases").get<int>() << " cases, "
            << rep.at("prox_points_checked").get<int>() << " prox points, "
            << mismatches.size() << " mismatches\n";
  for (const auto& mm : mismatches) std::cout << "  mismatch: " << mm.dump() << "\n";
  return mismatches.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"augmented Lagrangian solver for nonconvex composite problems"};
  app.require_subcommand(1);

  std::string config_path, out_path, format, point_path;
  unsigned long long seed = 0;
  int cases = 200, max_outer = 0;
  double tol = 1e-9;
  bool force_shrink = false;

  CLI::App* solve = app.add_subcommand("solve", "run the AL solver on an instance");
  solve->add_option("--config", config_path, "run config file (JSON)")->required();
  solve->add_option("--out", out_path, "output path for iteration records");
  solve->add_option("--format", format, "jsonl or csv");
  solve->add_option("--seed", seed, "seed for sampled diagnostics");
  solve->add_option("--max-outer", max_outer, "override the outer iteration cap");
  solve->add_flag("--force-shrink", force_shrink, "force mu <- kappa * mu every iteration");

  CLI::App* diagnose = app.add_subcommand("diagnose", "check stationarity at a point");
  diagnose->add_option("--config", config_path, "run config file (JSON)")->required();
  diagnose->add_option("--point", point_path, "point file with {\"x\": [...], \"y\": [...]}")
      ->required();
  diagnose->add_option("--tol", tol, "stationarity tolerance");

  CLI::App* rates = app.add_subcommand("rates", "empirical Q-rate tables");
  rates->add_option("--config", config_path, "run config file (JSON)")->required();
  rates->add_option("--seed", seed, "seed for sampled diagnostics");

  CLI::App* oracle = app.add_subcommand("oracle-check", "brute-force prox/grid oracles");
  oracle->add_option("--config", config_path, "run config file (JSON)")->required();
  oracle->add_option("--seed", seed, "random seed");
  oracle->add_option("--cases", cases, "number of random (mu, v) draws");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_path, format, force_shrink, max_outer);
    if (diagnose->parsed()) return cmd_diagnose(config_path, point_path, tol);
    if (rates->parsed()) return cmd_rates(config_path);
    if (oracle->parsed()) return cmd_oracle_check(config_path, seed, cases);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

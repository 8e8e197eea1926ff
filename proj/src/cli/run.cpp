#include "rankreg/cli/run.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rankreg/did.hpp"
#include "rankreg/error.hpp"
#include "rankreg/iv.hpp"
#include "rankreg/ols.hpp"
#include "rankreg/ranks.hpp"
#include "rankreg/rdd.hpp"
#include "rankreg/rng.hpp"
#include "rankreg/simlab/fixtures.hpp"

namespace rankreg::cli {

namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::io_error, "cannot write '" + out_path + "'");
  }
  out << text;
}

RankReference parse_ref(const std::string& ref) {
  if (ref == "all") return RankReference::all;
  if (ref == "treated") return RankReference::treated;
  if (ref == "control") return RankReference::control;
  fail(ErrorCode::invalid_input, "ref must be all, treated or control");
}

Kernel parse_kernel(const std::string& name) {
  Kernel k;
  if (name == "triangular") k.kind = Kernel::Kind::triangular;
  else if (name == "epanechnikov") k.kind = Kernel::Kind::epanechnikov;
  else if (name == "uniform") k.kind = Kernel::Kind::uniform;
  else fail(ErrorCode::invalid_input, "unknown kernel '" + name + "'");
  return k;
}

json config_echo(const RunConfig& c) {
  json e;
  e["command"] = c.command;
  if (!c.input_path.empty()) e["input"] = c.input_path;
  json cols;
  if (!c.columns.y.empty()) cols["y"] = c.columns.y;
  if (!c.columns.w.empty()) cols["w"] = c.columns.w;
  if (!c.columns.x.empty()) cols["x"] = c.columns.x;
  if (!c.columns.z.empty()) cols["z"] = c.columns.z;
  if (!c.columns.run.empty()) cols["run"] = c.columns.run;
  if (!c.columns.y_pre.empty()) cols["y_pre"] = c.columns.y_pre;
  if (!cols.empty()) e["columns"] = cols;
  if (c.command == "ols" && !c.ref_group.empty()) e["ref_group"] = c.ref_group;
  if (c.command == "ols") e["interact"] = c.interact;
  if (c.command == "ols-general") {
    e["transform"] = c.transform;
    e["normalize"] = c.normalize;
    e["threshold_rank"] = c.threshold_rank;
    if (!c.breakpoints.empty()) e["breakpoints"] = c.breakpoints;
  }
  if (c.command == "tsls" || c.command == "rdd") e["ref"] = c.ref;
  if (!c.method.empty()) e["method"] = c.method;
  if (c.command == "tsls") e["zeta"] = c.zeta;
  if (c.command == "rdd") {
    if (c.bandwidth.has_value()) e["bandwidth"] = *c.bandwidth;
    e["bandwidth_constant"] = c.bandwidth_constant;
    e["kernel"] = c.kernel;
    e["cutoff"] = c.cutoff;
  }
  e["tie_policy"] = c.tie_policy;
  if (c.tie_policy == "jitter") e["jitter_epsilon"] = c.jitter_epsilon;
  e["seed"] = c.seed;
  if (c.command == "simulate") {
    if (c.theorem > 0) e["theorem"] = c.theorem;
    if (!c.dgp_name.empty()) e["dgp"] = c.dgp_name;
    e["estimator"] = c.estimator;
    e["ns"] = c.ns;
    e["reps"] = c.reps;
  }
  e["format"] = c.output_format;
  return e;
}

json estimate_to_json(const Estimate& est) {
  json j;
  j["value"] = est.value;
  j["estimator"] = est.estimator;
  j["estimand"] = est.estimand;
  j["n"] = est.n;
  json d;
  for (const auto& [k, v] : est.diagnostics) d[k] = v;
  j["diagnostics"] = d;
  return j;
}

std::string estimate_to_csv(const Estimate& est) {
  std::ostringstream header, row;
  header << "value,estimator,estimand,n";
  row << format_double(est.value) << ',' << est.estimator << ','
      << est.estimand << ',' << est.n;
  for (const auto& [k, v] : est.diagnostics) {
    header << ',' << k;
    row << ',' << format_double(v);
  }
  return header.str() + "\n" + row.str() + "\n";
}

void emit_estimate(const RunConfig& c, const Estimate& est) {
  if (c.output_format == "csv") {
    write_text(estimate_to_csv(est), c.out_path);
    return;
  }
  json out;
  out["command"] = c.command;
  out["estimate"] = estimate_to_json(est);
  out["config"] = config_echo(c);
  write_text(out.dump(2) + "\n", c.out_path);
}

// The jitter tie policy perturbs outcomes once up front; every rank taken
// downstream is then tie-free.
void apply_tie_policy(const RunConfig& c, std::vector<double>& y) {
  if (c.tie_policy == "literal") return;
  if (c.tie_policy != "jitter") {
    fail(ErrorCode::invalid_input, "tie_policy must be literal or jitter");
  }
  if (!(c.jitter_epsilon > 0.0)) {
    fail(ErrorCode::invalid_input, "jitter needs epsilon > 0");
  }
  CounterRng rng(c.seed, 0x7177E5);
  for (double& v : y) v += rng.uniform(-c.jitter_epsilon, c.jitter_epsilon);
}

int cmd_ols(const RunConfig& c) {
  Sample s = load_csv_sample(c.input_path, c.columns);
  if (s.w.empty()) {
    fail(ErrorCode::missing_column, "ols needs a treatment column");
  }
  require_binary(s.w, "treatment");
  apply_tie_policy(c, s.y);
  Estimate est;
  if (!c.ref_group.empty()) {
    if (!s.x.empty()) {
      fail(ErrorCode::invalid_input,
           "reference-group ranking does not take covariates");
    }
    est = rank_ols_refgroup(s, c.ref_group == "treated" ? RefGroup::treated
                                                        : RefGroup::control);
  } else if (s.x.empty() && !c.interact) {
    est = rank_ols_nocov(s);
  } else {
    est = rank_ols_cov(s, c.interact);
  }
  emit_estimate(c, est);
  return 0;
}

int cmd_ols_general(const RunConfig& c) {
  Sample s = load_csv_sample(c.input_path, c.columns);
  if (s.w.empty()) {
    fail(ErrorCode::missing_column, "ols-general needs a treatment column");
  }
  apply_tie_policy(c, s.y);
  TreatmentTransform t;
  if (c.transform == "identity") {
    t = TreatmentTransform::identity(c.normalize);
  } else if (c.transform == "rank") {
    t = TreatmentTransform::rank(c.normalize);
  } else if (c.transform == "dichotomize") {
    t = TreatmentTransform::dichotomize_at(c.threshold_rank, c.normalize);
  } else if (c.transform == "step") {
    t = TreatmentTransform::step(c.breakpoints, c.normalize);
  } else {
    fail(ErrorCode::invalid_input, "unknown transform '" + c.transform + "'");
  }
  emit_estimate(c, rank_ols_general(s, t));
  return 0;
}

int cmd_tsls(const RunConfig& c) {
  Sample s = load_csv_sample(c.input_path, c.columns);
  if (s.w.empty()) {
    fail(ErrorCode::missing_column, "tsls needs a treatment column");
  }
  if (!s.z.has_value()) {
    fail(ErrorCode::missing_column, "tsls needs an instrument column");
  }
  require_binary(s.w, "treatment");
  require_binary(*s.z, "instrument");
  apply_tie_policy(c, s.y);
  Estimate est;
  if (c.method == "complier") {
    est = rank_2sls_complier(s, c.zeta);
  } else if (c.method.empty() || c.method == "naive") {
    est = rank_2sls(s, parse_ref(c.ref));
  } else {
    fail(ErrorCode::invalid_input, "tsls method must be naive or complier");
  }
  emit_estimate(c, est);
  return 0;
}

int cmd_did(const RunConfig& c) {
  PanelSample p = load_csv_panel(c.input_path, c.columns);
  require_binary(p.w, "treatment");
  apply_tie_policy(c, p.y1);
  Estimate est;
  if (c.method == "modified") {
    est = rank_mdid(p, cic_counterfactual(p));
  } else if (c.method.empty() || c.method == "standard") {
    est = rank_did(p);
  } else {
    fail(ErrorCode::invalid_input, "did method must be standard or modified");
  }
  emit_estimate(c, est);
  return 0;
}

int cmd_rdd(const RunConfig& c) {
  Sample s = load_csv_sample(c.input_path, c.columns);
  if (!s.run.has_value()) {
    fail(ErrorCode::missing_column, "rdd needs a running-variable column");
  }
  apply_tie_policy(c, s.y);
  RddConfig cfg;
  cfg.cutoff = c.cutoff;
  cfg.bandwidth = c.bandwidth;
  cfg.rule_constant = c.bandwidth_constant;
  cfg.kernel = parse_kernel(c.kernel);
  Estimate est;
  if (c.method == "mrdd") {
    est = rank_mrdd(s, cfg);
  } else if (c.method.empty() || c.method == "naive") {
    est = rank_rdd(s, cfg, parse_ref(c.ref));
  } else {
    fail(ErrorCode::invalid_input, "rdd method must be naive or mrdd");
  }
  emit_estimate(c, est);
  return 0;
}

int cmd_bounds(const RunConfig& c) {
  Sample s = load_csv_sample(c.input_path, c.columns);
  if (s.w.empty()) {
    fail(ErrorCode::missing_column, "bounds needs a treatment column");
  }
  require_variation(s.w, "treatment");
  apply_tie_policy(c, s.y);
  std::vector<double> y1, y0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    (s.w[i] == 1.0 ? y1 : y0).push_back(s.y[i]);
  }
  StepCDF f1 = ecdf(y1);
  StepCDF f0 = ecdf(y0);
  IdentifiedSet set = fan_park_bounds(f1, f0);
  double tau = rank_ate(f1, f0);
  if (c.output_format == "csv") {
    std::ostringstream out;
    out << "lower,upper,tau_r,n1,n0\n"
        << format_double(set.lower) << ',' << format_double(set.upper) << ','
        << format_double(tau) << ',' << y1.size() << ',' << y0.size() << '\n';
    write_text(out.str(), c.out_path);
    return 0;
  }
  json out;
  out["command"] = c.command;
  out["bounds"] = {{"lower", set.lower}, {"upper", set.upper}};
  out["tau_r"] = tau;
  out["n1"] = y1.size();
  out["n0"] = y0.size();
  out["config"] = config_echo(c);
  write_text(out.dump(2) + "\n", c.out_path);
  return 0;
}

struct TheoremDefaults {
  std::string dgp;
  std::string estimator;
  std::vector<long> ns;
  int reps;
};

TheoremDefaults theorem_defaults(int theorem) {
  switch (theorem) {
    case 1: return {"thm1_gauss_shift", "rank_ols_nocov",
                    {500, 2000, 8000, 32000}, 50};
    case 3: return {"thm3_prognostic_cov", "rank_ols_cov",
                    {500, 2000, 8000, 32000}, 50};
    case 4: return {"thm4_discrete_confounded", "rank_ols_cov",
                    {2000, 8000, 32000}, 50};
    case 5: return {"thm5_three_dose", "rank_ols_identity",
                    {2000, 8000, 32000}, 50};
    case 6: return {"thm6_iv_signflip", "rank_2sls_all", {5000, 50000}, 50};
    case 7: return {"thm6_iv_signflip", "rank_2sls_complier_50",
                    {5000, 50000}, 50};
    case 9: return {"ex7_panel_cic", "rank_did", {2000, 20000}, 50};
    case 10: return {"ex7_panel_cic", "rank_mdid_cic", {2000, 20000}, 50};
    case 11: return {"thm11_rdd", "rank_rdd_all", {5000, 50000}, 20};
    case 12: return {"thm11_rdd", "rank_mrdd", {5000, 50000}, 20};
    default:
      fail(ErrorCode::invalid_spec,
           "simulate supports theorems 1, 3, 4, 5, 6, 7, 9, 10, 11, 12");
  }
}

std::string aggregate_csv(const simlab::ConvergenceTable& table) {
  std::ostringstream out;
  out << "n,mean,sd,abs_err,oracle\n";
  for (const auto& agg : table.aggregates()) {
    out << agg.n << ',' << format_double(agg.mean) << ','
        << format_double(agg.sd) << ',' << format_double(agg.abs_err) << ','
        << format_double(table.oracle.value) << '\n';
  }
  return out.str();
}

json aggregate_json(const simlab::ConvergenceTable& table) {
  json out;
  out["run_id"] = table.run_id;
  out["estimator"] = table.estimator;
  out["oracle"] = {
      {"estimand", table.oracle.estimand},
      {"value", table.oracle.value},
      {"method", simlab::oracle_method_name(table.oracle.method)},
      {"precision", table.oracle.precision},
  };
  out["seed"] = table.seed;
  out["reps"] = table.reps;
  json rows = json::array();
  for (const auto& agg : table.aggregates()) {
    rows.push_back({{"n", agg.n},
                    {"mean", agg.mean},
                    {"sd", agg.sd},
                    {"abs_err", agg.abs_err},
                    {"n_errors", agg.n_errors}});
  }
  out["rows"] = rows;
  return out;
}

int cmd_simulate(const RunConfig& c) {
  std::string dgp_name = c.dgp_name;
  std::string estimator = c.estimator;
  std::vector<long> ns = c.ns;
  int reps = c.reps;
  if (c.theorem > 0) {
    TheoremDefaults d = theorem_defaults(c.theorem);
    if (dgp_name.empty()) dgp_name = d.dgp;
    if (estimator.empty()) estimator = d.estimator;
    if (ns.empty()) ns = d.ns;
    if (reps <= 0) reps = d.reps;
  }
  if (dgp_name.empty() || estimator.empty()) {
    fail(ErrorCode::invalid_spec,
         "simulate needs --theorem, or --dgp together with --estimator");
  }
  if (ns.empty()) ns = {2000, 8000};
  if (reps <= 0) reps = 20;
  auto spec = simlab::fixtures::fixture_by_name(dgp_name);
  if (!spec.has_value()) {
    fail(ErrorCode::invalid_spec, "unknown DGP fixture '" + dgp_name + "'");
  }
  spec->seed = c.seed;
  simlab::ConvergenceTable table =
      simlab::convergence_run(*spec, estimator, ns, reps);
  if (c.output_format == "csv") {
    write_text(aggregate_csv(table), c.out_path);
  } else {
    write_text(aggregate_json(table).dump(2) + "\n", c.out_path);
  }
  if (!c.plotdata_path.empty()) {
    emit_plotdata(table, c.plotdata_path, "csv");
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.command == "ols") return cmd_ols(config);
    if (config.command == "ols-general") return cmd_ols_general(config);
    if (config.command == "tsls") return cmd_tsls(config);
    if (config.command == "did") return cmd_did(config);
    if (config.command == "rdd") return cmd_rdd(config);
    if (config.command == "bounds") return cmd_bounds(config);
    if (config.command == "simulate") return cmd_simulate(config);
    fail(ErrorCode::invalid_input,
         "unknown command '" + config.command +
             "' (expected ols, ols-general, tsls, did, rdd, bounds or "
             "simulate)");
  } catch (const Error& e) {
    json err;
    err["error"] = {{"code", error_code_name(e.code())},
                    {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"code", "InternalError"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}

void emit_plotdata(const simlab::ConvergenceTable& table,
                   const std::string& out_path, const std::string& format) {
  if (format == "csv") {
    std::ostringstream out;
    out << "run_id,n,rep,estimate,oracle\n";
    for (const auto& row : table.rows) {
      if (row.failed) continue;
      out << table.run_id << ',' << row.n << ',' << row.rep << ','
          << format_double(row.estimate) << ','
          << format_double(table.oracle.value) << '\n';
    }
    write_text(out.str(), out_path);
    return;
  }
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : table.rows) {
      if (row.failed) continue;
      rows.push_back({{"run_id", table.run_id},
                      {"n", row.n},
                      {"rep", row.rep},
                      {"estimate", row.estimate},
                      {"oracle", table.oracle.value}});
    }
    write_text(rows.dump(2) + "\n", out_path);
    return;
  }
  fail(ErrorCode::invalid_input, "plot data format must be csv or json");
}

std::vector<PlotRow> load_plotdata_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io_error, "cannot open '" + path + "'");
  }
  std::vector<PlotRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;
    }
    PlotRow row;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, row.run_id, ',');
    std::getline(ls, field, ',');
    row.n = std::stol(field);
    std::getline(ls, field, ',');
    row.rep = std::stoi(field);
    std::getline(ls, field, ',');
    row.estimate = std::stod(field);
    std::getline(ls, field, ',');
    row.oracle = std::stod(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rankreg::cli

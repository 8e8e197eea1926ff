#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankreg/cli/csv.hpp"
#include "rankreg/simlab/convergence.hpp"

namespace rankreg::cli {

// Everything a CLI invocation can configure; flags mirror these fields and a
// key=value --config file can supply any of them.
struct RunConfig {
  std::string command;  // ols|ols-general|tsls|did|rdd|bounds|simulate
  std::string input_path;
  ColumnMap columns;

  // estimator options
  std::string ref = "all";           // all|treated|control (tsls, rdd)
  std::string ref_group;             // ""|treated|control (ols ranking group)
  bool interact = false;
  std::string transform = "identity";  // identity|rank|dichotomize|step
  bool normalize = false;
  double threshold_rank = 0.5;
  std::vector<double> breakpoints;
  double zeta = 0.5;
  // per-command estimator variant:
  //   tsls: naive|complier, did: standard|modified, rdd: naive|mrdd
  std::string method;
  std::optional<double> bandwidth;
  double bandwidth_constant = 1.0;
  std::string kernel = "triangular";
  double cutoff = 0.0;
  std::string tie_policy = "literal";  // literal|jitter (outcome pre-jitter)
  double jitter_epsilon = 1e-9;
  std::uint64_t seed = 1;

  // simulate options
  int theorem = 0;
  std::string dgp_name;
  std::string estimator;
  std::vector<long> ns;
  int reps = 0;
  std::string plotdata_path;

  // output
  std::string output_format = "json";  // json|csv
  std::string out_path;                // empty -> stdout
};

// Dispatches to the estimator modules, writes the result in the chosen
// format, and returns the process exit code (0 ok, 1 estimator error,
// 2 input error). All failures produce a machine-readable error object.
int run(const RunConfig& config);

// Long-format convergence records (run_id, n, rep, estimate, oracle) for
// external plotting; byte-stable for fixed inputs. Failed replications are
// omitted. format is "csv" or "json".
void emit_plotdata(const simlab::ConvergenceTable& table,
                   const std::string& out_path, const std::string& format);

struct PlotRow {
  std::string run_id;
  long n = 0;
  int rep = 0;
  double estimate = 0.0;
  double oracle = 0.0;
};

// Reload emitted CSV plot data (round-trip check facility).
std::vector<PlotRow> load_plotdata_csv(const std::string& path);

}  // namespace rankreg::cli

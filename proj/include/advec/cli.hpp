#pragma once

// Command-line front end: run configurations, verification sweeps, report
// files, aligned tables and CSV exports for plotting.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "advec/config.hpp"
#include "advec/problems.hpp"

namespace advec::cli {

struct GridSpec {
  int nx = 0;
  int nt = 0;
};

struct RunConfig {
  std::string problem = "example1";  // builtin name or problem file
  std::vector<int> N{120};
  std::vector<int> n{15};            // n_auto selects the degree adaptively
  std::vector<double> t_max{0.1};
  double tol = 1e-16;
  std::optional<double> period;
  std::string report_path;           // JSON reports
  std::string grid_path;             // CSV field of the first tuple
  std::optional<GridSpec> grid;
  int jobs = 1;

  /// Throws InvalidArgument on empty or non-positive lists, nx or nt < 2, jobs < 1.
  void validate() const;
};

/// Keys: problem, N, n, t_max, tol, period, report, grid, grid_out, jobs.
/// Lists are comma or space separated. Unknown keys are a ParseError.
RunConfig parse_run_config(const KeyValues& kv, RunConfig base = {});

/// "0.1", "1e-3", "pi", "2pi", "pi/2", "3pi/4".
double parse_real(const std::string& token);
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
/// Integers or "auto" (mapped to n_auto).
std::vector<int> parse_degree_list(const std::string& text);
/// "NXxNT", e.g. "200x100".
GridSpec parse_grid(const std::string& text);

/// Calls fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

/// One report per (t_max, N, n) tuple, in lexicographic tuple order.
std::vector<VerificationReport> run_sweep(const RunConfig& config, const ProblemSpec& problem);

/// verify verb: runs the sweep, prints the table to out, writes the report and
/// grid files when requested. Returns 0 iff every tuple verified.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Columns t_max, N, n, initial error, residual, error, app. time, exec. time, ratio.
std::string format_table(const std::vector<VerificationReport>& reports);

nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);
void write_reports(const std::string& path, const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> read_reports(const std::string& path);

/// Re u~(x_j, t_m) on x_j = 2 pi j / (nx - 1), t_m = t_max m / (nt - 1).
struct FieldGrid {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::vector<double>> values;  // [m][j]
  double max_imag = 0.0;                    // largest |Im u~| seen
};

FieldGrid export_grid(const ApproxSolution& approx, int nx, int nt);
/// Header "t\x,x_0,...", then one row per time.
void write_grid_csv(std::ostream& os, const FieldGrid& grid);

struct InitialErrorRow {
  int N = 0;
  double bound = 0.0;
};

/// Initial-error bound against the rounded coefficients handed to the
/// integrator, for each N.
std::vector<InitialErrorRow> sweep_initial_error(const ProblemSpec& problem, const std::vector<int>& N_list,
                                                 int jobs = 1);
void write_csv(std::ostream& os, const std::vector<InitialErrorRow>& rows);

struct ResidualRow {
  int n = 0;
  double t_max = 0.0;
  double bound = 0.0;
};

/// Residual bound for every (t_max, n) pair at fixed N.
std::vector<ResidualRow> sweep_residual(const ProblemSpec& problem, int N, const std::vector<int>& n_list,
                                        const std::vector<double>& t_max_list, double tol, int jobs = 1);
void write_csv(std::ostream& os, const std::vector<ResidualRow>& rows);

/// Midpoint profiles of c(x) and u0(x) on nx uniform points of [0, 2 pi].
void write_profile_csv(std::ostream& os, const ProblemSpec& problem, int N, int nx);

/// Approximation used for grid export, with midpoint initial data.
ApproxSolution approximate(const ProblemSpec& problem, int N, int n, double t_max, double tol);

}  // namespace advec::cli

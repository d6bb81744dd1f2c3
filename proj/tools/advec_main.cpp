#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "advec/cli.hpp"

namespace {

using namespace advec;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verified spectral solutions of periodic advection with variable coefficient"};
  app.require_subcommand(1);

  std::string problem = "example1";
  std::string N_text;
  std::string n_text;
  std::string t_text;
  std::string config_path;
  std::string grid_text;
  std::string out_path;
  std::string grid_out;
  std::string profile_path;
  double tol = 1e-16;
  double period = 0.0;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--problem", problem, "example1|example2|example3 or a problem file");
    cmd->add_option("--tol", tol, "integrator tolerance")->capture_default_str();
    cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  };

  auto* verify_cmd = app.add_subcommand("verify", "verify every (t_max, N, n) tuple and print a table");
  add_common(verify_cmd);
  verify_cmd->add_option("--config", config_path, "key = value run configuration");
  verify_cmd->add_option("--N", N_text, "Fourier truncation(s), e.g. 120 or 100,120");
  verify_cmd->add_option("--n", n_text, "Chebyshev degree(s) or auto");
  verify_cmd->add_option("--t-max", t_text, "end time(s), e.g. 0.1,pi,2pi");
  verify_cmd->add_option("--period", period, "known period T of the solution");
  verify_cmd->add_option("--out", out_path, "JSON report file");
  verify_cmd->add_option("--grid", grid_text, "also export the first tuple's field, NXxNT");
  verify_cmd->add_option("--grid-out", grid_out, "CSV path for --grid");

  auto* init_cmd = app.add_subcommand("sweep-initial", "initial-error bound for a list of N");
  add_common(init_cmd);
  init_cmd->add_option("--N", N_text, "list of N")->required();
  init_cmd->add_option("--out", out_path, "CSV file (standard output if omitted)");

  auto* res_cmd = app.add_subcommand("sweep-residual", "residual bound over n and t_max at fixed N");
  add_common(res_cmd);
  res_cmd->add_option("--N", N_text, "Fourier truncation")->required();
  res_cmd->add_option("--n", n_text, "list of Chebyshev degrees")->required();
  res_cmd->add_option("--t-max", t_text, "list of end times")->required();
  res_cmd->add_option("--out", out_path, "CSV file (standard output if omitted)");

  auto* grid_cmd = app.add_subcommand("export-grid", "approximate solution on a uniform (x, t) grid");
  add_common(grid_cmd);
  grid_cmd->add_option("--N", N_text, "Fourier truncation")->required();
  grid_cmd->add_option("--n", n_text, "Chebyshev degree or auto")->required();
  grid_cmd->add_option("--t-max", t_text, "end time")->required();
  grid_cmd->add_option("--grid", grid_text, "NXxNT")->required();
  grid_cmd->add_option("--out", out_path, "CSV file (standard output if omitted)");
  grid_cmd->add_option("--profile", profile_path, "also write x, c(x), u0(x) to this CSV");

  app.add_subcommand("list-problems", "print the built-in problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-problems")) {
      for (const auto& name : builtin_names()) {
        const auto p = builtin(name);
        const auto cert = certify(p.c);
        std::cout << name << "  omega in " << cert.omega << "  margin in " << cert.margin << '\n';
      }
      return 0;
    }

    if (verify_cmd->parsed()) {
      cli::RunConfig cfg;
      if (!config_path.empty()) cfg = cli::parse_run_config(KeyValues::load(config_path));
      if (verify_cmd->count("--problem")) cfg.problem = problem;
      if (!N_text.empty()) cfg.N = cli::parse_int_list(N_text);
      if (!n_text.empty()) cfg.n = cli::parse_degree_list(n_text);
      if (!t_text.empty()) cfg.t_max = cli::parse_real_list(t_text);
      if (verify_cmd->count("--tol")) cfg.tol = tol;
      if (verify_cmd->count("--period")) cfg.period = period;
      if (verify_cmd->count("--jobs")) cfg.jobs = jobs;
      if (!out_path.empty()) cfg.report_path = out_path;
      if (!grid_text.empty()) cfg.grid = cli::parse_grid(grid_text);
      if (!grid_out.empty()) cfg.grid_path = grid_out;
      return cli::run(cfg, std::cout, std::cerr);
    }

    const ProblemSpec spec = load_problem(problem);
    auto emit = [&](auto&& write) {
      if (out_path.empty()) {
        write(std::cout);
      } else {
        auto out = open_out(out_path);
        write(out);
      }
    };

    if (init_cmd->parsed()) {
      const auto rows = cli::sweep_initial_error(spec, cli::parse_int_list(N_text), jobs);
      emit([&](std::ostream& os) { cli::write_csv(os, rows); });
      return 0;
    }

    if (res_cmd->parsed()) {
      const auto N = cli::parse_int_list(N_text);
      if (N.size() != 1) throw Error(ErrorCode::InvalidArgument, "sweep-residual takes one N");
      const auto rows = cli::sweep_residual(spec, N.front(), cli::parse_degree_list(n_text), cli::parse_real_list(t_text), tol, jobs);
      emit([&](std::ostream& os) { cli::write_csv(os, rows); });
      return 0;
    }

    if (grid_cmd->parsed()) {
      const auto N = cli::parse_int_list(N_text);
      const auto n = cli::parse_degree_list(n_text);
      const auto t = cli::parse_real_list(t_text);
      if (N.size() != 1 || n.size() != 1 || t.size() != 1) {
        throw Error(ErrorCode::InvalidArgument, "export-grid takes a single N, n and t_max");
      }
      const auto g = cli::parse_grid(grid_text);
      const auto approx = cli::approximate(spec, N.front(), n.front(), t.front(), tol);
      const auto grid = cli::export_grid(approx, g.nx, g.nt);
      emit([&](std::ostream& os) { cli::write_grid_csv(os, grid); });
      std::cerr << "max |Im u| = " << grid.max_imag << '\n';
      if (!profile_path.empty()) {
        auto out = open_out(profile_path);
        cli::write_profile_csv(out, spec, N.front(), g.nx);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

#include "advec/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace advec::cli {

using nlohmann::json;

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (N.empty() || n.empty() || t_max.empty()) fail("N, n and t_max lists must be nonempty");
  for (int v : N) {
    if (v <= 0) fail("N values must be positive");
  }
  for (int v : n) {
    if (v < 0) fail("n values must be positive or auto");
  }
  for (double v : t_max) {
    if (!(v > 0.0) || !std::isfinite(v)) fail("t_max values must be positive");
  }
  if (!(tol > 0.0)) fail("tol must be positive");
  if (period && !(*period > 0.0)) fail("period must be positive");
  if (grid && (grid->nx < 2 || grid->nt < 2)) fail("grid needs nx, nt >= 2");
  if (jobs < 1) fail("jobs must be >= 1");
}

double parse_real(const std::string& token) {
  auto bad = [&] { return Error(ErrorCode::ParseError, "cannot read number '" + token + "'"); };
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw bad();
    return v;
  };
  const auto pos = token.find("pi");
  if (pos == std::string::npos) return number(token);
  const std::string_view s(token);
  const std::string_view coef = s.substr(0, pos);
  std::string_view rest = s.substr(pos + 2);
  double v = std::numbers::pi * (coef.empty() ? 1.0 : number(coef));
  if (!rest.empty()) {
    if (rest.front() != '/') throw bad();
    v /= number(rest.substr(1));
  }
  return v;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& t : split_list(text)) out.push_back(parse_real(t));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& t : split_list(text)) {
    int v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) throw Error(ErrorCode::ParseError, "not an integer: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_degree_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& t : split_list(text)) {
    if (t == "auto") {
      out.push_back(n_auto);
    } else {
      const auto v = parse_int_list(t);
      if (v.front() <= 0) throw Error(ErrorCode::ParseError, "degree must be positive or auto");
      out.push_back(v.front());
    }
  }
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw Error(ErrorCode::ParseError, "grid must look like NXxNT");
  const auto nx = parse_int_list(text.substr(0, x));
  const auto nt = parse_int_list(text.substr(x + 1));
  if (nx.size() != 1 || nt.size() != 1) throw Error(ErrorCode::ParseError, "grid must look like NXxNT");
  return {nx.front(), nt.front()};
}

RunConfig parse_run_config(const KeyValues& kv, RunConfig cfg) {
  for (const auto& [key, value] : kv.entries()) {
    if (key == "problem") {
      cfg.problem = value;
    } else if (key == "N") {
      cfg.N = parse_int_list(value);
    } else if (key == "n") {
      cfg.n = parse_degree_list(value);
    } else if (key == "t_max") {
      cfg.t_max = parse_real_list(value);
    } else if (key == "tol") {
      cfg.tol = parse_real(value);
    } else if (key == "period") {
      cfg.period = parse_real(value);
    } else if (key == "report") {
      cfg.report_path = value;
    } else if (key == "grid") {
      cfg.grid = parse_grid(value);
    } else if (key == "grid_out") {
      cfg.grid_path = value;
    } else if (key == "jobs") {
      const auto v = parse_int_list(value);
      if (v.size() != 1) throw Error(ErrorCode::ParseError, "jobs takes one integer");
      cfg.jobs = v.front();
    } else {
      throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<VerificationReport> run_sweep(const RunConfig& config, const ProblemSpec& problem) {
  config.validate();
  std::vector<std::tuple<double, int, int>> tuples;
  for (double t : config.t_max) {
    for (int N : config.N) {
      for (int n : config.n) tuples.emplace_back(t, N, n);
    }
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  std::vector<VerificationReport> reports(tuples.size());
  parallel_for(tuples.size(), config.jobs, [&](std::size_t i) {
    const auto& [t, N, n] = tuples[i];
    reports[i] = verify(problem, N, n, t, config.tol, config.period);
  });
  return reports;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string format_table(const std::vector<VerificationReport>& reports) {
  const std::vector<std::string> header{"t_max", "N", "n", "initial error", "residual", "error", "app. time", "exec. time", "ratio"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& r : reports) {
    std::vector<std::string> row{fixed(r.t_max, 4), std::to_string(r.N), std::to_string(r.n)};
    if (r.verified) {
      row.insert(row.end(), {sci(r.initial_error), sci(r.residual), sci(r.total_error)});
    } else {
      row.insert(row.end(), {"-", "-", "FAILED " + r.failure_code + " (" + r.failure_stage + ")"});
    }
    row.insert(row.end(), {fixed(r.approx_seconds, 4), fixed(r.exec_seconds, 4), fixed(r.ratio(), 4)});
    cells.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << "  ";
      os << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    os << '\n';
  }
  return os.str();
}

json to_json(const VerificationReport& r) {
  json j;
  j["problem"] = r.problem;
  j["N"] = r.N;
  j["n"] = r.n;
  j["t_max"] = r.t_max;
  j["tol"] = r.tol;
  j["verified"] = r.verified;
  j["failure_stage"] = r.failure_stage;
  j["failure_code"] = r.failure_code;
  j["failure_message"] = r.failure_message;
  j["omega"] = {r.omega.lo(), r.omega.hi()};
  j["initial_error"] = r.initial_error;
  j["residual"] = r.residual;
  j["total_error"] = r.total_error;
  j["period"] = r.period ? json(*r.period) : json(nullptr);
  j["periodic_total_error"] = r.periodic_total_error ? json(*r.periodic_total_error) : json(nullptr);
  j["approx_seconds"] = r.approx_seconds;
  j["exec_seconds"] = r.exec_seconds;
  j["ratio"] = r.ratio();
  return j;
}

VerificationReport report_from_json(const json& j) {
  try {
    VerificationReport r;
    r.problem = j.at("problem").get<std::string>();
    r.N = j.at("N").get<int>();
    r.n = j.at("n").get<int>();
    r.t_max = j.at("t_max").get<double>();
    r.tol = j.at("tol").get<double>();
    r.verified = j.at("verified").get<bool>();
    r.failure_stage = j.at("failure_stage").get<std::string>();
    r.failure_code = j.at("failure_code").get<std::string>();
    r.failure_message = j.at("failure_message").get<std::string>();
    const auto& om = j.at("omega");
    r.omega = Interval(om.at(0).get<double>(), om.at(1).get<double>());
    r.initial_error = j.at("initial_error").get<double>();
    r.residual = j.at("residual").get<double>();
    r.total_error = j.at("total_error").get<double>();
    if (!j.at("period").is_null()) r.period = j.at("period").get<double>();
    if (!j.at("periodic_total_error").is_null()) r.periodic_total_error = j.at("periodic_total_error").get<double>();
    r.approx_seconds = j.at("approx_seconds").get<double>();
    r.exec_seconds = j.at("exec_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

void write_reports(const std::string& path, const std::vector<VerificationReport>& reports) {
  json j;
  j["reports"] = json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::vector<VerificationReport> read_reports(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report file: ") + e.what());
  }
  std::vector<VerificationReport> out;
  for (const auto& r : j.at("reports")) out.push_back(report_from_json(r));
  return out;
}

namespace {

std::vector<double> uniform(double end, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = end * i / (count - 1);
  v.back() = end;
  return v;
}

// e^{ikx} for |k| <= N, indexed [j][k + N].
std::vector<std::vector<cplx>> fourier_table(const std::vector<double>& x, int N) {
  std::vector<std::vector<cplx>> table(x.size(), std::vector<cplx>(static_cast<std::size_t>(2 * N + 1)));
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (int k = -N; k <= N; ++k) table[j][static_cast<std::size_t>(k + N)] = std::polar(1.0, k * x[j]);
  }
  return table;
}

cplx synthesize(std::span<const cplx> modes, std::span<const cplx> basis) {
  cplx s{};
  for (std::size_t i = 0; i < modes.size(); ++i) s += modes[i] * basis[i];
  return s;
}

void write_value(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

FieldGrid export_grid(const ApproxSolution& approx, int nx, int nt) {
  if (nx < 2 || nt < 2) throw Error(ErrorCode::InvalidArgument, "grid needs nx, nt >= 2");
  FieldGrid g;
  g.x = uniform(2.0 * std::numbers::pi, nx);
  g.t = uniform(approx.t_max, nt);
  const auto basis = fourier_table(g.x, approx.N);
  for (double t : g.t) {
    const auto modes = approx.evaluate(t);
    std::vector<double> row;
    row.reserve(g.x.size());
    for (std::size_t j = 0; j < g.x.size(); ++j) {
      const cplx u = synthesize(modes, basis[j]);
      row.push_back(u.real());
      g.max_imag = std::max(g.max_imag, std::abs(u.imag()));
    }
    g.values.push_back(std::move(row));
  }
  return g;
}

void write_grid_csv(std::ostream& os, const FieldGrid& grid) {
  os << "t\\x";
  for (double x : grid.x) {
    os << ',';
    write_value(os, x);
  }
  os << '\n';
  for (std::size_t m = 0; m < grid.t.size(); ++m) {
    write_value(os, grid.t[m]);
    for (double v : grid.values[m]) {
      os << ',';
      write_value(os, v);
    }
    os << '\n';
  }
}

std::vector<InitialErrorRow> sweep_initial_error(const ProblemSpec& problem, const std::vector<int>& N_list, int jobs) {
  if (N_list.empty()) throw Error(ErrorCode::InvalidArgument, "N list is empty");
  std::vector<InitialErrorRow> rows(N_list.size());
  parallel_for(N_list.size(), jobs, [&](std::size_t i) {
    const int N = N_list[i];
    const auto a0 = problem.a0_provider(N);
    ApproxSolution approx;
    approx.N = N;
    approx.n = 0;
    for (const auto& a : a0) approx.modes.push_back(ChebSeries{1.0, {a.mid()}});
    rows[i] = {N, initial_error_bound(a0, approx, problem.tail)};
  });
  return rows;
}

void write_csv(std::ostream& os, const std::vector<InitialErrorRow>& rows) {
  os << "N,initial_error\n";
  for (const auto& r : rows) {
    os << r.N << ',';
    write_value(os, r.bound);
    os << '\n';
  }
}

ApproxSolution approximate(const ProblemSpec& problem, int N, int n, double t_max, double tol) {
  const auto a0 = problem.a0_provider(N);
  std::vector<cplx> mid;
  mid.reserve(a0.size());
  for (const auto& a : a0) mid.push_back(a.mid());
  IntegratorOptions opts;
  opts.tol = tol;
  return n == n_auto ? build_solution_auto(problem.c, mid, N, t_max, opts) : build_solution(problem.c, mid, N, n, t_max, opts);
}

std::vector<ResidualRow> sweep_residual(const ProblemSpec& problem, int N, const std::vector<int>& n_list,
                                        const std::vector<double>& t_max_list, double tol, int jobs) {
  if (n_list.empty() || t_max_list.empty()) throw Error(ErrorCode::InvalidArgument, "n and t_max lists must be nonempty");
  std::vector<ResidualRow> rows;
  for (double t : t_max_list) {
    for (int n : n_list) rows.push_back({n, t, 0.0});
  }
  const TailBound c_beyond = problem.c_tail.l1_upper > 0.0 ? TailBound::custom_upper(problem.c_tail.l1_upper)
                                                           : TailBound::explicit_list();
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const auto approx = approximate(problem, N, rows[i].n, rows[i].t_max, tol);
    rows[i].n = approx.n;
    rows[i].bound = residual_bound(approx, problem.c, N, c_beyond);
  });
  return rows;
}

void write_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
  os << "n,t_max,residual\n";
  for (const auto& r : rows) {
    os << r.n << ',';
    write_value(os, r.t_max);
    os << ',';
    write_value(os, r.bound);
    os << '\n';
  }
}

void write_profile_csv(std::ostream& os, const ProblemSpec& problem, int N, int nx) {
  if (nx < 2) throw Error(ErrorCode::InvalidArgument, "profile needs nx >= 2");
  const auto x = uniform(2.0 * std::numbers::pi, nx);
  const auto a0 = problem.a0_provider(N);
  std::vector<cplx> a0_mid;
  for (const auto& a : a0) a0_mid.push_back(a.mid());
  const int K = problem.c.extent();
  std::vector<cplx> c_mid;
  for (int k = -K; k <= K; ++k) c_mid.push_back(problem.c[k].mid());
  const auto basis_u = fourier_table(x, N);
  const auto basis_c = fourier_table(x, K);
  os << "x,c,u0\n";
  for (std::size_t j = 0; j < x.size(); ++j) {
    write_value(os, x[j]);
    os << ',';
    write_value(os, synthesize(c_mid, basis_c[j]).real());
    os << ',';
    write_value(os, synthesize(a0_mid, basis_u[j]).real());
    os << '\n';
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const ProblemSpec problem = load_problem(config.problem);
    const auto reports = run_sweep(config, problem);
    out << format_table(reports);
    bool all_ok = true;
    for (const auto& r : reports) {
      if (!r.verified) {
        all_ok = false;
        err << "unverified: t_max=" << r.t_max << " N=" << r.N << " n=" << r.n << ": " << r.failure_message << '\n';
      }
    }
    if (!config.report_path.empty()) write_reports(config.report_path, reports);
    if (config.grid) {
      const auto& first = reports.front();
      const auto approx = approximate(problem, first.N, first.n, first.t_max, config.tol);
      const auto grid = export_grid(approx, config.grid->nx, config.grid->nt);
      const std::string path = config.grid_path.empty() ? "grid.csv" : config.grid_path;
      std::ofstream gout(path);
      if (!gout) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
      write_grid_csv(gout, grid);
      out << "grid written to " << path << " (max |Im u| = " << sci(grid.max_imag) << ")\n";
    }
    return all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace advec::cli

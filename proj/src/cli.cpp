#include "hubbard/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hubbard/errors.hpp"
#include "hubbard/output.hpp"
#include "hubbard/scans.hpp"
#include "hubbard/validation.hpp"
#include "json.hpp"

#ifndef HUBBARD_VERSION
#define HUBBARD_VERSION "unknown"
#endif

namespace hubbard {

namespace {

struct Sink {
  std::string path = "-";
  std::string format = "csv";
  unsigned threads = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--out", path, "Output file, - for standard output")->capture_default_str();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads, 0 for all cores")->capture_default_str();
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Real couplings and the literal inf; -inf and nan are rejected.
double parse_coupling(const std::string& text) {
  char* end = nullptr;
  const double U = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || std::isnan(U) || U == -INFINITY) {
    throw UsageError("invalid coupling '" + text + "' (expected a number or inf)");
  }
  return U;
}

std::vector<double> couplings(const std::vector<std::string>& texts) {
  std::vector<double> out;
  for (const auto& t : texts) out.push_back(parse_coupling(t));
  if (out.empty()) out.push_back(4.0);
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ",") + p;
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ScanOptions scan_options(const Sink& sink) {
  ScanOptions opts;
  opts.threads = sink.threads;
  return opts;
}

int emit(ScanTable table, const Sink& sink, const std::string& command, std::ostream& out, std::ostream& err) {
  const int precision = output_precision();
  table.metadata.insert(table.metadata.begin(), {{"command", command},
                                                 {"version", HUBBARD_VERSION},
                                                 {"precision", std::to_string(precision)}});
  std::ofstream file;
  std::ostream* os = &out;
  if (sink.path != "-") {
    file.open(sink.path);
    if (!file) throw UsageError("cannot open output file '" + sink.path + "'");
    os = &file;
  }
  if (sink.format == "json") {
    write_json(*os, table, precision);
  } else {
    write_csv(*os, table, precision);
  }
  int failures = 0;
  for (const ScanRecord& r : table.records) {
    if (!r.failed()) continue;
    ++failures;
    err << "point " << format_number(r.parameter, 6) << " (" << to_string(r.method) << ") failed: " << r.status;
    if (!r.detail.empty()) err << ": " << r.detail;
    err << '\n';
  }
  if (failures > 0) {
    err << failures << " of " << table.records.size() << " points failed\n";
    return exit_partial_failure;
  }
  return exit_success;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local entanglement of the one-dimensional Hubbard model", "hubbard-ev"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HUBBARD_VERSION);

  // scan-u
  auto* scan_u = app.add_subcommand("scan-u", "Half filling: w and E_v versus U");
  int u_L = 70;
  double u_min = -8.0;
  double u_max = 8.0;
  int u_points = 65;
  std::string u_methods = "integral";
  double u_tol = QuadratureSpec{}.abs_tol;
  Sink u_sink;
  scan_u->add_option("--L", u_L, "Ring length for the bethe and ed methods")->capture_default_str();
  scan_u->add_option("--u-min", u_min, "Smallest coupling")->capture_default_str();
  scan_u->add_option("--u-max", u_max, "Largest coupling")->capture_default_str();
  scan_u->add_option("--points", u_points, "Number of grid points")->capture_default_str();
  scan_u->add_option("--methods", u_methods, "Comma-separated subset of integral,bethe,series,ed")
      ->capture_default_str();
  scan_u->add_option("--tol", u_tol, "Absolute tolerance of the integral")->capture_default_str();
  u_sink.add_to(scan_u);

  // scan-n
  auto* scan_n = app.add_subcommand("scan-n", "Singlet sectors: E_v versus filling n = N/L");
  int n_L = 60;
  std::vector<std::string> n_U;
  Sink n_sink;
  scan_n->add_option("--L", n_L, "Ring length (even)")->capture_default_str();
  scan_n->add_option("--U", n_U, "Coupling, repeatable; inf for the analytic curve (default 4)");
  n_sink.add_to(scan_n);

  // scan-mz
  auto* scan_mz = app.add_subcommand("scan-mz", "E_v versus magnetization m_z at fixed N");
  int mz_L = 60;
  std::optional<int> mz_N;
  std::vector<std::string> mz_U;
  Sink mz_sink;
  scan_mz->add_option("--L", mz_L, "Ring length")->capture_default_str();
  scan_mz->add_option("--N", mz_N, "Electron number (default L)");
  scan_mz->add_option("--U", mz_U, "Coupling, repeatable; inf allowed (default 4)");
  mz_sink.add_to(scan_mz);

  // validate
  auto* validate = app.add_subcommand("validate", "Run the oracle and invariant checks");
  std::string suite = "quick";
  validate->add_option("--suite", suite, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (scan_u->parsed()) {
      if (u_points < 1) throw UsageError("--points must be at least 1");
      if (u_L < 1) throw UsageError("--L must be positive");
      if (!(u_max >= u_min)) throw UsageError("--u-max must not be below --u-min");
      if (!(u_tol > 0.0)) throw UsageError("--tol must be positive");
      std::vector<Method> methods;
      for (const auto& name : split_list(u_methods)) {
        const auto m = parse_method(name);
        if (!m || *m == Method::analytic) throw UsageError("unknown method '" + name + "'");
        methods.push_back(*m);
      }
      if (methods.empty()) throw UsageError("--methods is empty");
      std::vector<double> grid;
      for (int i = 0; i < u_points; ++i) {
        grid.push_back(u_points == 1 ? u_min : u_min + (u_max - u_min) * i / (u_points - 1));
      }
      ScanOptions opts = scan_options(u_sink);
      opts.quadrature.abs_tol = u_tol;
      ScanTable table;
      table.metadata = {{"L", std::to_string(u_L)},
                        {"u_min", format_number(u_min)},
                        {"u_max", format_number(u_max)},
                        {"points", std::to_string(u_points)},
                        {"methods", u_methods},
                        {"tol", format_number(u_tol)},
                        {"filling", "N=L, M=L/2"}};
      table.records = scan_coupling(u_L, grid, methods, opts);
      return emit(std::move(table), u_sink, "scan-u", out, err);
    }

    if (scan_n->parsed()) {
      if (n_L < 2 || n_L % 2 != 0) throw UsageError("--L must be even and at least 2 for the singlet grid");
      const auto Us = couplings(n_U);
      const auto grid = singlet_filling_grid(n_L);
      const ScanOptions opts = scan_options(n_sink);
      ScanTable table;
      std::vector<std::string> labels;
      for (double U : Us) labels.push_back(format_number(U));
      table.metadata = {{"L", std::to_string(n_L)},
                        {"U", join(labels)},
                        {"rows_per_U", std::to_string(grid.size())},
                        {"sectors", "N even, M=N/2; n>1 by mirror"}};
      for (double U : Us) {
        auto rows = scan_filling(n_L, U, grid, opts);
        table.records.insert(table.records.end(), rows.begin(), rows.end());
        if (std::isfinite(U) && U >= 0.0 && n_L >= 6) {
          std::string value;
          try {
            const auto jump = derivative_jump_at_half_filling(n_L, U, opts);
            value = "left=" + format_number(jump.left) + " right=" + format_number(jump.right) +
                    " charge_gap=" + format_number(jump.charge_gap);
          } catch (const std::exception& e) {
            value = std::string("failed: ") + e.what();
          }
          table.metadata.emplace_back("dEv_dn at n=1, U=" + format_number(U), value);
        }
      }
      return emit(std::move(table), n_sink, "scan-n", out, err);
    }

    if (scan_mz->parsed()) {
      if (mz_L < 1) throw UsageError("--L must be positive");
      const int N = mz_N.value_or(mz_L);
      if (N < 1 || N > 2 * mz_L) throw UsageError("--N must lie in [1, 2L]");
      const auto Us = couplings(mz_U);
      const auto grid = magnetization_grid(mz_L, N);
      const ScanOptions opts = scan_options(mz_sink);
      ScanTable table;
      std::vector<std::string> labels;
      for (double U : Us) labels.push_back(format_number(U));
      table.metadata = {{"L", std::to_string(mz_L)},
                        {"N", std::to_string(N)},
                        {"U", join(labels)},
                        {"rows_per_U", std::to_string(grid.size())}};
      for (double U : Us) {
        auto rows = scan_magnetization(mz_L, N, U, grid, opts);
        table.records.insert(table.records.end(), rows.begin(), rows.end());
      }
      return emit(std::move(table), mz_sink, "scan-mz", out, err);
    }

    if (validate->parsed()) {
      const auto results = run_validation(suite == "full" ? ValidationSuite::full : ValidationSuite::quick);
      int failed = 0;
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        if (!r.passed) ++failed;
      }
      nlohmann::ordered_json summary;
      summary["suite"] = suite;
      summary["checks"] = results.size();
      summary["failed"] = failed;
      out << summary.dump() << '\n';
      return failed == 0 ? exit_success : exit_partial_failure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hubbard-ev"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hubbard

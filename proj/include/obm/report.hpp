#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "obm/death_process.hpp"
#include "obm/factor_lp.hpp"
#include "obm/numeric.hpp"
#include "obm/simulate.hpp"

namespace obm {

enum class Backend { Exact, Float };

inline const char* to_string(Backend b) { return b == Backend::Exact ? "rational" : "float"; }

// Crossover threshold, overridable through the environment.
inline int exact_limit_from_env() {
  if (const char* s = std::getenv("OBM_EXACT_LIMIT")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 0 && v <= 1000000) return static_cast<int>(v);
  }
  return kDefaultExactLimit;
}

inline Backend choose_backend(int n, std::optional<Backend> forced = std::nullopt) {
  if (forced) return *forced;
  return n <= exact_limit_from_env() ? Backend::Exact : Backend::Float;
}

struct McParams {
  long long trials = 100000;
  std::uint64_t seed = 0;
};

// One audited size: the exact expectation, the program optimum, the ceiling
// bound, and the chain of inequalities tying them together.
struct ReportRow {
  int n = 0;
  std::string exact_et;  // serialized per backend ("p/q" or decimal)
  std::string lp_opt;
  long tstar = 0;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  double ode_crossing = 0.0;  // fractional root of the continuous envelope
  double ratio = 0.0;         // exact_ET / n
  bool inequalities_ok = false;
};

inline constexpr double kFloatAuditTol = 1e-9;

namespace detail {

template <class T>
ReportRow report_row_impl(int n, const std::optional<McParams>& mc) {
  const ProcessSummary<T> summary = death_process_summary<T>(n);
  const LpSolution<T> lp = greedy_lp_solve<T>(n);
  ReportRow row;
  row.n = n;
  row.exact_et = format_value(summary.expected_T);
  row.lp_opt = format_value(lp.objective);
  row.tstar = ceiling_bound(n);
  row.ode_crossing = envelope_root(n);
  row.ratio = to_double(summary.expected_T) / n;
  if constexpr (is_exact_backend_v<T>) {
    row.inequalities_ok =
        summary.expected_T <= lp.objective && lp.objective <= Rational(row.tstar);
  } else {
    row.inequalities_ok = summary.expected_T <= lp.objective + kFloatAuditTol &&
                          lp.objective <= static_cast<double>(row.tstar) + kFloatAuditTol;
  }
  if (mc) {
    const McEstimate est = mc_randomized_greedy(n, mc->trials, mc->seed);
    row.mc_mean = est.mean;
    row.mc_stderr = est.std_error;
  }
  return row;
}

}  // namespace detail

inline ReportRow make_report_row(int n, Backend backend,
                                 const std::optional<McParams>& mc = std::nullopt) {
  if (n < 1) throw std::invalid_argument("make_report_row: n must be >= 1");
  return backend == Backend::Exact ? detail::report_row_impl<Rational>(n, mc)
                                   : detail::report_row_impl<double>(n, mc);
}

// Rows for n = n_min, n_min+step, ..., <= n_max, in ascending order.
inline std::vector<ReportRow> audit_rows(int n_min, int n_max, int step = 1,
                                         std::optional<Backend> forced = std::nullopt,
                                         const std::optional<McParams>& mc = std::nullopt) {
  if (n_min < 1) throw std::invalid_argument("audit_rows: n-min must be >= 1");
  if (n_min > n_max) throw std::invalid_argument("audit_rows: empty range (n-min > n-max)");
  if (step < 1) throw std::invalid_argument("audit_rows: step must be >= 1");
  std::vector<ReportRow> rows;
  for (int n = n_min; n <= n_max; n += step)
    rows.push_back(make_report_row(n, choose_backend(n, forced), mc));
  return rows;
}

inline constexpr const char* kCsvHeader =
    "n,exact_ET,lp_opt,tstar,mc_mean,mc_stderr,ode_crossing,ratio,inequalities_ok";

inline void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << kCsvHeader << '\n';
  for (const ReportRow& r : rows) {
    os << r.n << ',' << r.exact_et << ',' << r.lp_opt << ',' << r.tstar << ','
       << (r.mc_mean ? format_double(*r.mc_mean) : std::string()) << ','
       << (r.mc_stderr ? format_double(*r.mc_stderr) : std::string()) << ','
       << format_double(r.ode_crossing) << ',' << format_double(r.ratio) << ','
       << (r.inequalities_ok ? "true" : "false") << '\n';
  }
}

inline void write_json(std::ostream& os, const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["exact_ET"] = r.exact_et;
    j["lp_opt"] = r.lp_opt;
    j["tstar"] = r.tstar;
    if (r.mc_mean) j["mc_mean"] = *r.mc_mean; else j["mc_mean"] = nullptr;
    if (r.mc_stderr) j["mc_stderr"] = *r.mc_stderr; else j["mc_stderr"] = nullptr;
    j["ode_crossing"] = r.ode_crossing;
    j["ratio"] = r.ratio;
    j["inequalities_ok"] = r.inequalities_ok;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

namespace detail {

inline void print_aligned(std::ostream& os, const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty()) return;
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << '\n';
  }
}

}  // namespace detail

inline void write_table(std::ostream& os, const std::vector<ReportRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"n", "exact_ET", "lp_opt", "tstar", "mc_mean", "mc_stderr", "ode_crossing",
                   "ratio", "inequalities_ok"});
  for (const ReportRow& r : rows) {
    cells.push_back({std::to_string(r.n), r.exact_et, r.lp_opt, std::to_string(r.tstar),
                     r.mc_mean ? format_double(*r.mc_mean) : "-",
                     r.mc_stderr ? format_double(*r.mc_stderr) : "-",
                     format_double(r.ode_crossing), format_double(r.ratio),
                     r.inequalities_ok ? "true" : "false"});
  }
  detail::print_aligned(os, cells);
}

}  // namespace obm

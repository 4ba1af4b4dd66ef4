// Command-line front end: exact death-process tables, factor-LP solutions,
// Monte Carlo runs, family averages, the flawed-analysis reproduction, and
// the audit sweep that cross-checks every bound per instance size.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obm/obm.hpp"

namespace {

struct BackendOpt {
  std::string name;  // "", "rational", or "float"

  std::optional<obm::Backend> forced() const {
    if (name == "rational") return obm::Backend::Exact;
    if (name == "float") return obm::Backend::Float;
    return std::nullopt;
  }
};

void add_backend_flag(CLI::App* cmd, BackendOpt& opt) {
  cmd->add_option("--backend", opt.name, "numeric backend (default: rational up to the exact limit)")
      ->check(CLI::IsMember({"rational", "float"}));
}

template <class T>
void print_summary_table(const obm::ProcessSummary<T>& s) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"t", "alpha", "delta"});
  for (int t = 1; t <= s.n; ++t)
    cells.push_back({std::to_string(t), obm::format_value(s.alpha[t - 1]),
                     obm::format_value(s.delta[t - 1])});
  obm::detail::print_aligned(std::cout, cells);
  std::cout << "E[T] = " << obm::format_value(s.expected_T) << '\n';
}

template <class T>
void print_lp_table(const obm::LpSolution<T>& s) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"t", "alpha", "delta"});
  for (int t = 1; t <= s.n; ++t)
    cells.push_back({std::to_string(t), obm::format_value(s.alpha[t - 1]),
                     obm::format_value(s.delta[t - 1])});
  obm::detail::print_aligned(std::cout, cells);
  std::cout << "delta_end = " << obm::format_value(s.delta[s.n]) << '\n';
  std::cout << "objective = " << obm::format_value(s.objective) << '\n';
}

obm::GreedyPolicy parse_policy(const std::string& name) {
  return name == "max-id" ? obm::GreedyPolicy::MaxId : obm::GreedyPolicy::MinId;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"audit toolkit for online bipartite matching upper bounds"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- exact: per-time marginals of the death chain -----------------------
  int exact_n = 0;
  BackendOpt exact_backend;
  auto* cmd_exact = app.add_subcommand("exact", "exact alpha_t, delta_t and E[T] for one n");
  cmd_exact->add_option("--n", exact_n, "instance size")->required()->check(CLI::PositiveNumber);
  add_backend_flag(cmd_exact, exact_backend);
  cmd_exact->callback([&] {
    const obm::Backend b = obm::choose_backend(exact_n, exact_backend.forced());
    std::cout << "n = " << exact_n << "  backend = " << obm::to_string(b) << '\n';
    if (b == obm::Backend::Exact)
      print_summary_table(obm::death_process_summary<obm::Rational>(exact_n));
    else
      print_summary_table(obm::death_process_summary<double>(exact_n));
  });

  // ---- lp: greedy optimum of the factor-revealing program -----------------
  int lp_n = 0;
  BackendOpt lp_backend;
  auto* cmd_lp = app.add_subcommand("lp", "greedy-optimal solution of the bounding program");
  cmd_lp->add_option("--n", lp_n, "instance size")->required()->check(CLI::PositiveNumber);
  add_backend_flag(cmd_lp, lp_backend);
  cmd_lp->callback([&] {
    const obm::Backend b = obm::choose_backend(lp_n, lp_backend.forced());
    std::cout << "n = " << lp_n << "  backend = " << obm::to_string(b) << '\n';
    if (b == obm::Backend::Exact)
      print_lp_table(obm::greedy_lp_solve<obm::Rational>(lp_n));
    else
      print_lp_table(obm::greedy_lp_solve<double>(lp_n));
    std::cout << "tstar = " << obm::ceiling_bound(lp_n) << '\n';
  });

  // ---- audit: the full cross-check sweep ----------------------------------
  int audit_min = 0, audit_max = 0, audit_step = 1;
  std::string audit_format = "table";
  BackendOpt audit_backend;
  long long audit_trials = 0;
  std::uint64_t audit_seed = 0;
  auto* cmd_audit = app.add_subcommand("audit", "per-n report rows with all inequalities checked");
  cmd_audit->add_option("--n-min", audit_min, "first n")->required()->check(CLI::PositiveNumber);
  cmd_audit->add_option("--n-max", audit_max, "last n")->required()->check(CLI::PositiveNumber);
  cmd_audit->add_option("--step", audit_step, "stride through the range")->check(CLI::PositiveNumber);
  cmd_audit->add_option("--format", audit_format, "csv, json, or table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  cmd_audit->add_option("--trials", audit_trials, "add seeded Monte Carlo columns (per row)")
      ->check(CLI::Range(2LL, (1LL << 40)));
  cmd_audit->add_option("--seed", audit_seed, "master seed for the Monte Carlo columns");
  add_backend_flag(cmd_audit, audit_backend);
  cmd_audit->callback([&] {
    if (audit_min > audit_max)
      throw CLI::ValidationError("audit", "--n-min must be <= --n-max");
    std::optional<obm::McParams> mc;
    if (audit_trials > 0) mc = obm::McParams{audit_trials, audit_seed};
    const auto rows = obm::audit_rows(audit_min, audit_max, audit_step, audit_backend.forced(), mc);
    if (audit_format == "csv")
      obm::write_csv(std::cout, rows);
    else if (audit_format == "json")
      obm::write_json(std::cout, rows);
    else
      obm::write_table(std::cout, rows);
    for (const auto& row : rows)
      if (!row.inequalities_ok) rc = 1;  // a falsified bound is a failure
  });

  // ---- mc: seeded Monte Carlo of the randomized greedy run ----------------
  int mc_n = 0;
  long long mc_trials = 100000;
  std::uint64_t mc_seed = 0;
  auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo estimate of the expected matching size");
  cmd_mc->add_option("--n", mc_n, "instance size")->required()->check(CLI::PositiveNumber);
  cmd_mc->add_option("--trials", mc_trials, "number of trials")->check(CLI::Range(2LL, (1LL << 40)));
  cmd_mc->add_option("--seed", mc_seed, "master seed");
  cmd_mc->callback([&] {
    const obm::McEstimate est = obm::mc_randomized_greedy(mc_n, mc_trials, mc_seed);
    std::cout << "n = " << mc_n << "  trials = " << est.trials << "  seed = " << mc_seed << '\n';
    std::cout << "mean = " << obm::format_double(est.mean) << '\n';
    std::cout << "stderr = " << obm::format_double(est.std_error) << '\n';
    if (mc_n <= 5000) {
      const double reference = obm::death_process_summary<double>(mc_n).expected_T;
      std::cout << "dp_expected = " << obm::format_double(reference) << '\n';
      std::cout << "z_score = " << obm::format_double((est.mean - reference) / est.std_error)
                << '\n';
    }
  });

  // ---- yao: deterministic-policy average over the permutation family ------
  int yao_n = 0;
  std::string yao_policy = "min-id", yao_mode = "exhaustive";
  long long yao_trials = 100000;
  std::uint64_t yao_seed = 0;
  auto* cmd_yao = app.add_subcommand("yao", "policy average over all row relabelings");
  cmd_yao->add_option("--n", yao_n, "instance size")->required()->check(CLI::PositiveNumber);
  cmd_yao->add_option("--policy", yao_policy, "min-id or max-id")
      ->check(CLI::IsMember({"min-id", "max-id"}));
  cmd_yao->add_option("--mode", yao_mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  cmd_yao->add_option("--trials", yao_trials, "trials in sampled mode")
      ->check(CLI::Range(2LL, (1LL << 40)));
  cmd_yao->add_option("--seed", yao_seed, "master seed in sampled mode");
  cmd_yao->callback([&] {
    const obm::GreedyPolicy policy = parse_policy(yao_policy);
    std::cout << "n = " << yao_n << "  policy = " << yao_policy << "  mode = " << yao_mode << '\n';
    if (yao_mode == "exhaustive") {
      const obm::Rational avg = obm::family_average_exact(yao_n, policy);
      const obm::Rational exact = obm::death_process_summary<obm::Rational>(yao_n).expected_T;
      std::cout << "average = " << avg.str() << '\n';
      std::cout << "exact_ET = " << exact.str() << '\n';
      std::cout << "match = " << (avg == exact ? "true" : "false") << '\n';
    } else {
      const obm::McEstimate est =
          obm::family_average_sampled(yao_n, policy, yao_trials, yao_seed);
      std::cout << "trials = " << est.trials << "  seed = " << yao_seed << '\n';
      std::cout << "mean = " << obm::format_double(est.mean) << '\n';
      std::cout << "stderr = " << obm::format_double(est.std_error) << '\n';
    }
  });

  // ---- ode: the uncorrected analysis and where it breaks ------------------
  int ode_n = 0;
  auto* cmd_ode = app.add_subcommand("ode", "uncorrected recurrence and its scaling-limit curve");
  cmd_ode->add_option("--n", ode_n, "instance size")->required()->check(CLI::PositiveNumber);
  cmd_ode->callback([&] {
    const obm::FlawedSeries flawed = obm::flawed_expectation_sequence(ode_n);
    std::cout << "n = " << ode_n << '\n';
    std::cout << "first_negative_t = "
              << (flawed.first_negative_t ? std::to_string(*flawed.first_negative_t)
                                          : std::string("none"))
              << '\n';
    std::cout << "ode_crossing = " << obm::format_double(obm::envelope_root(ode_n)) << '\n';
    const obm::OdeCurve curve = obm::sample_ode_curve();
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"z", "g(z)"});
    for (auto [z, g] : curve.samples)
      cells.push_back({obm::format_double(z), obm::format_double(g)});
    obm::detail::print_aligned(std::cout, cells);
    std::cout << "root = " << obm::format_double(curve.root) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 2 = usage error, help stays 0
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}

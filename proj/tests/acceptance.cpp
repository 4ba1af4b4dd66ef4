// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criterion 10 exercises the installed CLI binary end to end; pass its path
// via --cli (the ctest registration does).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "obm/obm.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double run_timed(const std::function<bool(std::string&)>& body, int index,
                 const std::string& title) {
  std::string detail;
  const auto start = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  std::printf("[%s] criterion %2d: %s (%.1f ms)%s%s\n", ok ? "PASS" : "FAIL", index,
              title.c_str(), ms, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
  return ms;
}

std::string capture_command(const std::string& command, int& exit_code) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return out;
  }
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  exit_code = pclose(pipe);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

  using namespace obm;

  run_timed(
      [&](std::string& detail) {
        bool ok = true;
        for (int n : {1, 2, 3}) {
          const Rational expected = n == 1 ? Rational(1) : n == 2 ? Rational(3, 2) : Rational(13, 6);
          const auto start = Clock::now();
          const Rational actual = death_process_summary<Rational>(n).expected_T;
          const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
          if (actual != expected || ms >= 1.0) {
            ok = false;
            detail += "n=" + std::to_string(n) + " got " + actual.str() + " in " +
                      std::to_string(ms) + " ms; ";
          }
        }
        return ok;
      },
      1, "exact E[T] = 1, 3/2, 13/6 for n = 1, 2, 3 (rational, < 1 ms each)");

  run_timed(
      [&](std::string& detail) {
        const auto start = Clock::now();
        for (int n = 1; n <= 7; ++n)
          if (brute_force_expected_matches(n) != death_process_summary<Rational>(n).expected_T) {
            detail = "mismatch at n=" + std::to_string(n);
            return false;
          }
        return std::chrono::duration<double>(Clock::now() - start).count() <= 1.0;
      },
      2, "tree-enumeration oracle equals the chain expectation for n <= 7 (<= 1 s)");

  run_timed(
      [&](std::string& detail) {
        const auto start = Clock::now();
        for (int n = 1; n <= 50; ++n) {
          const AuxSeries aux = auxiliary_sequence(n);
          for (int t = 1; t <= n; ++t)
            if (closed_form_delta(n, t) != aux.delta_star[t - 1]) {
              detail = "mismatch at n=" + std::to_string(n) + " t=" + std::to_string(t);
              return false;
            }
        }
        return std::chrono::duration<double>(Clock::now() - start).count() < 1.0;
      },
      3, "harmonic closed form equals the pinned sequence entrywise, n <= 50 (< 1 s)");

  run_timed(
      [&](std::string& detail) {
        for (int n = 1; n <= 1000; ++n) {
          const Backend backend = n <= 40 ? Backend::Exact : Backend::Float;
          const ReportRow row = make_report_row(n, backend);
          if (!row.inequalities_ok) {
            detail = "inequality chain broken at n=" + std::to_string(n);
            return false;
          }
          if (n == 10 && row.tstar != 8) {
            detail = "tstar(10) = " + std::to_string(row.tstar);
            return false;
          }
          if (n == 100 && row.tstar != 65) {
            detail = "tstar(100) = " + std::to_string(row.tstar);
            return false;
          }
        }
        return true;
      },
      4, "exact_ET <= lp_opt <= tstar for every n in 1..1000; tstar(10)=8, tstar(100)=65");

  run_timed(
      [&](std::string& detail) {
        const auto start = Clock::now();
        for (int n = 1; n <= 6; ++n)
          if (family_average_exact(n, GreedyPolicy::MinId) !=
              death_process_summary<Rational>(n).expected_T) {
            detail = "mismatch at n=" + std::to_string(n);
            return false;
          }
        return std::chrono::duration<double>(Clock::now() - start).count() < 1.0;
      },
      5, "exhaustive min-id family average equals exact E[T] as rationals, n <= 6 (< 1 s)");

  run_timed(
      [&](std::string& detail) {
        const auto start = Clock::now();
        for (int n : {5, 20, 100}) {
          const double reference = n <= 40
                                       ? to_double(death_process_summary<Rational>(n).expected_T)
                                       : death_process_summary<double>(n).expected_T;
          const McEstimate est = mc_randomized_greedy(n, 100000, 42);
          if (std::abs(est.mean - reference) > 5 * est.std_error) {
            detail = "n=" + std::to_string(n) + " mean " + std::to_string(est.mean) + " vs " +
                     std::to_string(reference);
            return false;
          }
        }
        return std::chrono::duration<double>(Clock::now() - start).count() < 5.0;
      },
      6, "Monte Carlo mean within 5 stderr of the chain value for n = 5, 20, 100 (< 5 s)");

  run_timed(
      [&](std::string& detail) {
        const FlawComparison cmp = compare_flawed_vs_exact(100, 1e-9);
        if (!cmp.first_negative_t || *cmp.first_negative_t > 100) {
          detail = "no negative mu_t found for n = 100";
          return false;
        }
        if (!cmp.exact_nonnegative) {
          detail = "exact delta_t went negative";
          return false;
        }
        if (!cmp.dominance_ok) {
          detail = "delta_t < mu_t somewhere";
          return false;
        }
        return true;
      },
      7, "n = 100: flawed mu_t turns negative while exact delta_t stays >= 0 and dominates");

  run_timed(
      [&](std::string& detail) {
        if (ode_solution(0.0) != 1.0) {
          detail = "g(0) != 1";
          return false;
        }
        if (std::abs(ode_solution(1.0 - std::exp(-1.0))) > 1e-12) {
          detail = "|g(1-1/e)| too large";
          return false;
        }
        for (int i = 1; i <= 90; ++i)
          if (ode_residual(i / 100.0, 1e-5) > 1e-6) {
            detail = "residual above 1e-6 at z=" + std::to_string(i / 100.0);
            return false;
          }
        return true;
      },
      8, "g(0) = 1, |g(1-1/e)| <= 1e-12, equation residual <= 1e-6 on z = 0.01..0.90");

  run_timed(
      [&](std::string& detail) {
        const double limit = 1.0 - std::exp(-1.0);
        double previous_gap = -1.0;
        for (int n : {100, 200, 400, 800}) {
          const double ratio = death_process_summary<double>(n).expected_T / n;
          const double gap = std::abs(ratio - limit);
          if (previous_gap >= 0.0 && gap > previous_gap) {
            detail = "gap increased at n=" + std::to_string(n);
            return false;
          }
          if (ratio > limit + 3.0 / n) {
            detail = "ratio above (1-1/e) + 3/n at n=" + std::to_string(n);
            return false;
          }
          previous_gap = gap;
        }
        return true;
      },
      9, "|E[T]/n - (1-1/e)| non-increasing over n = 100, 200, 400, 800 and <= 3/n above");

  run_timed(
      [&](std::string& detail) {
        if (cli_path.empty()) {
          detail = "no --cli path provided";
          return false;
        }
        const std::string command =
            "\"" + cli_path + "\" audit --n-min 1 --n-max 200 --seed 42 --format csv";
        int code_a = 0, code_b = 0;
        const std::string a = capture_command(command, code_a);
        const std::string b = capture_command(command, code_b);
        if (code_a != 0 || code_b != 0) {
          detail = "audit exited nonzero";
          return false;
        }
        if (a.empty() || a.rfind("n,exact_ET,", 0) != 0) {
          detail = "unexpected audit output";
          return false;
        }
        if (a != b) {
          detail = "outputs differ between runs";
          return false;
        }
        return true;
      },
      10, "two audit runs over n = 1..200 emit byte-identical CSV");

  std::printf("summary: %d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}

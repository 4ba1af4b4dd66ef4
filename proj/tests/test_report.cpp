#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "json.hpp"
#include "obm/report.hpp"

using namespace obm;

TEST_CASE("report rows carry the cross-checked quantities", "[report]") {
  const ReportRow row = make_report_row(3, Backend::Exact);
  CHECK(row.n == 3);
  CHECK(row.exact_et == "13/6");
  CHECK(row.lp_opt == "13/6");
  CHECK(row.tstar == 4);
  CHECK_FALSE(row.mc_mean.has_value());
  CHECK(row.ode_crossing == Catch::Approx(envelope_root(3)).margin(0));
  CHECK(row.ratio == Catch::Approx(13.0 / 18.0).margin(1e-12));
  CHECK(row.inequalities_ok);
  CHECK(row.ratio > 0.0);
  CHECK(row.ratio <= 1.0);

  const ReportRow big = make_report_row(50, Backend::Float);
  CHECK(big.exact_et.find('/') == std::string::npos);  // decimal in float mode
  CHECK(big.inequalities_ok);

  CHECK_THROWS_AS(make_report_row(0, Backend::Exact), std::invalid_argument);
}

TEST_CASE("monte carlo columns appear on request", "[report]") {
  const ReportRow row = make_report_row(4, Backend::Exact, McParams{2000, 9});
  REQUIRE(row.mc_mean.has_value());
  REQUIRE(row.mc_stderr.has_value());
  CHECK(std::abs(*row.mc_mean - 67.0 / 24.0) <= 5 * *row.mc_stderr);
}

TEST_CASE("audit range handling", "[report]") {
  CHECK(audit_rows(1, 5).size() == 5);
  CHECK(audit_rows(1, 10, 3).size() == 4);  // 1, 4, 7, 10
  CHECK_THROWS_AS(audit_rows(5, 3), std::invalid_argument);
  CHECK_THROWS_AS(audit_rows(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(audit_rows(1, 3, 0), std::invalid_argument);
}

TEST_CASE("csv schema is stable", "[report]") {
  std::ostringstream os;
  write_csv(os, audit_rows(1, 3));
  const std::string text = os.str();
  CHECK(text.rfind("n,exact_ET,lp_opt,tstar,mc_mean,mc_stderr,ode_crossing,ratio,inequalities_ok\n",
                   0) == 0);
  CHECK(text.find("\n1,1,1,3,,,") != std::string::npos);
  CHECK(text.find("\n2,3/2,3/2,3,,,") != std::string::npos);
  CHECK(text.find("\n3,13/6,13/6,4,,,") != std::string::npos);
  CHECK(text.find("true") != std::string::npos);
}

TEST_CASE("json mirrors the csv fields", "[report]") {
  std::ostringstream os;
  write_json(os, audit_rows(2, 2));
  const auto parsed = nlohmann::json::parse(os.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  const auto& row = parsed[0];
  CHECK(row["n"] == 2);
  CHECK(row["exact_ET"] == "3/2");
  CHECK(row["lp_opt"] == "3/2");
  CHECK(row["tstar"] == 3);
  CHECK(row["mc_mean"].is_null());
  CHECK(row["mc_stderr"].is_null());
  CHECK(row["inequalities_ok"] == true);
  CHECK(row["ratio"].get<double>() == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("serialization is deterministic", "[report]") {
  auto render = [](const std::vector<ReportRow>& rows) {
    std::ostringstream csv, json;
    write_csv(csv, rows);
    write_json(json, rows);
    return csv.str() + json.str();
  };
  CHECK(render(audit_rows(1, 50)) == render(audit_rows(1, 50)));
  const auto mc = McParams{500, 7};
  CHECK(render(audit_rows(1, 8, 1, std::nullopt, mc)) ==
        render(audit_rows(1, 8, 1, std::nullopt, mc)));
}

TEST_CASE("table output lists every row", "[report]") {
  std::ostringstream os;
  write_table(os, audit_rows(1, 4));
  const std::string text = os.str();
  CHECK(text.find("exact_ET") != std::string::npos);
  CHECK(text.find("13/6") != std::string::npos);
}

TEST_CASE("backend selection respects the environment override", "[report]") {
  CHECK(choose_backend(40) == Backend::Exact);
  CHECK(choose_backend(41) == Backend::Float);
  CHECK(choose_backend(1000, Backend::Exact) == Backend::Exact);

  setenv("OBM_EXACT_LIMIT", "5", 1);
  CHECK(choose_backend(5) == Backend::Exact);
  CHECK(choose_backend(6) == Backend::Float);
  setenv("OBM_EXACT_LIMIT", "garbage", 1);
  CHECK(choose_backend(41) == Backend::Float);  // unparsable values fall back
  unsetenv("OBM_EXACT_LIMIT");
  CHECK(choose_backend(41) == Backend::Float);
}

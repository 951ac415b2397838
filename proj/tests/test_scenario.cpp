#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ripple/scenario.hpp"

using namespace ripple;
using namespace ripple::scenario;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

std::string run_to_string(const ScenarioConfig& c, unsigned threads) {
  std::ostringstream out;
  run(c, out, threads);
  return out.str();
}

}  // namespace

TEST_CASE("list: nine builtin rows, byte-stable") {
  std::ostringstream a, b;
  write_scenario_table(a);
  write_scenario_table(b);
  CHECK(a.str() == b.str());
  const auto rows = lines_of(a.str());
  REQUIRE(rows.size() == 10);
  const char* names[] = {"fig1a", "fig1b", "fig2a", "fig2b", "fig2b-step", "fig3a", "fig3b", "fig4a", "fig4b"};
  for (int i = 0; i < 9; ++i) CHECK(rows[i + 1].rfind(std::string(names[i]) + " ", 0) == 0);
  CHECK(rows[5].find("step") != std::string::npos);
  CHECK(rows[6].find("24") != std::string::npos);
}

TEST_CASE("builtin parameter sets") {
  const auto f1a = *find_scenario("fig1a");
  CHECK(f1a.dk == 0.59);
  CHECK(f1a.branches == Branches::plus);
  const auto f3a = *find_scenario("fig3a");
  CHECK(f3a.mode == Mode::landau);
  CHECK(f3a.sigma == 24.0);
  CHECK(f3a.bfield == 1.0);
  CHECK(f3a.time.values().size() == 501);
  CHECK(find_scenario("fig1b")->time.values().size() == 16);
  CHECK(find_scenario("fig2b")->time.values().size() == 301);
  CHECK_FALSE(find_scenario("fig5").has_value());
  for (const auto& s : builtin_scenarios()) CHECK_NOTHROW(s.validate());
}

TEST_CASE("parse_time_range and settings errors") {
  const auto r = parse_time_range("0:30:0.1");
  CHECK(r.values().size() == 301);
  CHECK(r.values().back() == doctest::Approx(30.0));
  CHECK_THROWS_AS(parse_time_range("0:30"), UsageError);
  CHECK_THROWS_AS(parse_time_range("0:30:0"), UsageError);
  CHECK_THROWS_AS(parse_time_range("30:0:1"), UsageError);
  CHECK_THROWS_AS(parse_time_range("a:1:1"), UsageError);

  ScenarioConfig c;
  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "dk", "0.4x"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "nr", "100.5"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "valley", "K'"), UsageError);
  apply_setting(c, "nr", "63");
  CHECK_THROWS_AS(c.validate(), UsageError);
  apply_setting(c, "nr", "64");
  CHECK_NOTHROW(c.validate());
  apply_setting(c, "emit", "coeffs");
  CHECK_THROWS_AS(c.validate(), UsageError);
  apply_setting(c, "mode", "landau");
  CHECK_NOTHROW(c.validate());
  apply_setting(c, "tol", "1e-15");
  CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("config file: comments, scenario base, flags override") {
  const std::string path = "test_scenario_config.txt";
  {
    std::ofstream f(path);
    f << "# base on a builtin\nscenario = fig1b\n\n  dk = 0.5   # wider\nt = 0:10:5\n";
  }
  ScenarioConfig c;
  apply_config_file(c, path);
  CHECK(c.name == "fig1b");
  CHECK(c.dk == 0.5);
  CHECK(c.time.values().size() == 3);
  apply_setting(c, "dk", "0.42");
  CHECK(c.dk == 0.42);
  std::remove(path.c_str());
  CHECK_THROWS_AS(apply_config_file(c, path), UsageError);

  {
    std::ofstream f(path);
    f << "dk 0.5\n";
  }
  CHECK_THROWS_AS(apply_config_file(c, path), UsageError);
  std::remove(path.c_str());
}

TEST_CASE("format_number: 12 significant digits") {
  CHECK(format_number(1.0) == "1.00000000000e+00");
  CHECK(format_number(-0.000123456789012345) == "-1.23456789012e-04");
  CHECK(format_number(71380.0) == "7.13800000000e+04");
}

TEST_CASE("profile CSV layout, reduced fig1b") {
  auto c = *find_scenario("fig1b");
  apply_setting(c, "nr", "81");
  const auto rows = lines_of(run_to_string(c, 2));
  REQUIRE(rows.size() == 1 + 16 * 81);
  CHECK(rows[0] == "t_fs,r_nm,rho_nm2");
  CHECK(rows[1].rfind("0.00000000000e+00,0.00000000000e+00,", 0) == 0);
  CHECK(rows.back().rfind("3.00000000000e+01,4.00000000000e+01,", 0) == 0);
}

TEST_CASE("trace, rings, and coefficient CSV headers") {
  auto trace = *find_scenario("fig2b");
  apply_setting(trace, "t", "0:1:0.5");
  auto rows = lines_of(run_to_string(trace, 1));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "t_fs,rho0_nm2");

  auto rings = *find_scenario("fig1b");
  apply_setting(rings, "t", "20:20:1");
  apply_setting(rings, "emit", "rings");
  rows = lines_of(run_to_string(rings, 1));
  CHECK(rows[0] == "t_fs,ring_index,radius_nm,height_nm2,fwhm_nm");
  CHECK(rows.size() == 3);

  auto coeffs = *find_scenario("fig3a");
  apply_setting(coeffs, "emit", "coeffs");
  rows = lines_of(run_to_string(coeffs, 1));
  CHECK(rows[0] == "n,c_plus,c_minus");
  CHECK(rows.size() > 2);
}

TEST_CASE("output is identical across thread counts") {
  auto c = *find_scenario("fig1a");
  apply_setting(c, "nr", "101");
  apply_setting(c, "t", "0:20:10");
  const auto one = run_to_string(c, 1);
  CHECK(run_to_string(c, 3) == one);
  CHECK(run_to_string(c, 0) == one);

  auto l = *find_scenario("fig4a");
  apply_setting(l, "nr", "101");
  apply_setting(l, "t", "71300:71320:10");
  const auto lone = run_to_string(l, 1);
  CHECK(run_to_string(l, 4) == lone);
}

// Command-line scenario runner: evaluates a builtin or user-defined scenario and
// writes the requested CSV.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ripple/errors.hpp"
#include "ripple/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace ripple::scenario;

  CLI::App app{"Dirac-point wave packets in graphene: ripple rings and probability oscillation"};
  app.set_version_flag("--version", "ripple 1.0");

  // Settings that map one-to-one onto config-file keys, applied in this order.
  const char* keys[] = {"mode", "coeff", "dk", "branches", "valley", "sigma",
                        "bfield", "t", "rmax", "nr", "emit", "tol"};
  std::map<std::string, std::string> flag_values;
  std::optional<std::string> scenario_name, config_path, out_path;
  bool list = false;
  unsigned threads = 0;

  app.add_option("--scenario", scenario_name, "builtin scenario to start from (see --list)");
  app.add_option("--config", config_path, "plain key = value scenario file; flags override it");
  app.add_option("--out", out_path, "output CSV path (default: stdout)");
  app.add_flag("--list", list, "print the builtin scenarios and exit");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--mode", flag_values["mode"], "free | landau");
  app.add_option("--coeff", flag_values["coeff"], "gaussian | step");
  app.add_option("--dk", flag_values["dk"], "coefficient width in nm^-1");
  app.add_option("--branches", flag_values["branches"], "plus | minus | both");
  app.add_option("--valley", flag_values["valley"], "K | Kp");
  app.add_option("--sigma", flag_values["sigma"], "initial Gaussian width in nm (landau)");
  app.add_option("--bfield", flag_values["bfield"], "magnetic field in T (landau)");
  app.add_option("--t", flag_values["t"], "time range start:end:step in fs");
  app.add_option("--rmax", flag_values["rmax"], "radial grid extent in nm");
  app.add_option("--nr", flag_values["nr"], "radial grid points (>= 64)");
  app.add_option("--emit", flag_values["emit"], "profile | trace | rings | coeffs");
  app.add_option("--tol", flag_values["tol"], "relative quadrature tolerance / captured-weight epsilon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (list) {
    write_scenario_table(std::cout);
    return kExitOk;
  }

  ScenarioConfig config;
  try {
    if (scenario_name) {
      const auto base = find_scenario(*scenario_name);
      if (!base) throw UsageError("unknown scenario '" + *scenario_name + "'");
      config = *base;
    }
    if (config_path) apply_config_file(config, *config_path);
    for (const char* key : keys) {
      const auto& value = flag_values[key];
      if (!value.empty()) apply_setting(config, key, value);
    }
    // Flags that only make sense for the other mode are a conflict, not a no-op.
    const bool landau = config.mode == Mode::landau;
    static const std::vector<const char*> free_only{"coeff", "dk", "branches"}, landau_only{"sigma", "bfield"};
    for (const char* key : landau ? free_only : landau_only)
      if (!flag_values[key].empty())
        throw UsageError(std::string("--") + key + " conflicts with --mode " + (landau ? "landau" : "free"));
    config.validate();
  } catch (const ripple::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (out_path) {
      std::ofstream file(*out_path, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open output '" << *out_path << "'\n";
        return kExitUsage;
      }
      run(config, file, threads);
      if (!file) {
        std::cerr << "error: write to '" << *out_path << "' failed\n";
        return kExitNumerical;
      }
    } else {
      run(config, std::cout, threads);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ripple::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

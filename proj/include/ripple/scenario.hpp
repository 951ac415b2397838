#pragma once

// Scenario configuration and CSV export for the command-line runner.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ripple/errors.hpp"
#include "ripple/free_packet.hpp"
#include "ripple/types.hpp"

namespace ripple::scenario {

/// Bad flag, bad value, or conflicting settings. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Mode { free, landau };
enum class Branches { plus, minus, both };
enum class Emit { profile, trace, rings, coeffs };

struct TimeRange {
  double start = 0.0;
  double end = 30.0;
  double step = 2.0;

  /// start, start + step, ... up to end inclusive (with a 1e-9 step slack).
  std::vector<double> values() const;
};

struct ScenarioConfig {
  std::string name = "custom";
  std::string description;
  Mode mode = Mode::free;
  free_packet::CoefficientFamily family = free_packet::CoefficientFamily::gaussian;
  double dk = 0.42;  // nm^-1
  Branches branches = Branches::both;
  Valley valley = Valley::K;
  double sigma = 24.0;  // nm
  double bfield = 1.0;  // T
  TimeRange time;
  double r_max = 40.0;  // nm
  int n_r = 801;
  Emit emit = Emit::profile;
  double tol = 1e-8;  // quadrature tolerance (free) or captured-weight epsilon (landau)

  void validate() const;
  std::vector<double> radial_grid() const;
};

std::vector<ScenarioConfig> builtin_scenarios();
std::optional<ScenarioConfig> find_scenario(const std::string& name);

/// Applies one `key = value` setting; keys match the long flag names without dashes
/// (mode, coeff, dk, branches, valley, sigma, bfield, t, rmax, nr, emit, tol).
void apply_setting(ScenarioConfig& config, const std::string& key, const std::string& value);

/// Reads a plain `key = value` file ('#' starts a comment) on top of `config`.
void apply_config_file(ScenarioConfig& config, const std::string& path);

/// Parses "start:end:step".
TimeRange parse_time_range(const std::string& text);

/// Superposition coefficients implied by family, dk, and branches, normalized.
free_packet::CoefficientProfile make_profile(const ScenarioConfig& config);

/// Fixed-width table of the builtin scenarios.
void write_scenario_table(std::ostream& out);

/// Evaluates the scenario and writes the selected CSV to `out`.
void run(const ScenarioConfig& config, std::ostream& out, unsigned threads = 0);

/// Scientific notation with 12 significant digits.
std::string format_number(double value);

}  // namespace ripple::scenario

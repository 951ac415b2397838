#include "ripple/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ripple/analysis.hpp"
#include "ripple/landau_packet.hpp"
#include "ripple/parallel.hpp"

namespace ripple::scenario {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid number for " + key + ": '" + text + "'");
  }
}

const char* family_name(free_packet::CoefficientFamily f) {
  switch (f) {
    case free_packet::CoefficientFamily::gaussian: return "gaussian";
    case free_packet::CoefficientFamily::step: return "step";
    case free_packet::CoefficientFamily::tabulated: return "tabulated";
  }
  return "?";
}

const char* branches_name(Branches b) {
  switch (b) {
    case Branches::plus: return "plus";
    case Branches::minus: return "minus";
    case Branches::both: return "both";
  }
  return "?";
}

const char* emit_name(Emit e) {
  switch (e) {
    case Emit::profile: return "profile";
    case Emit::trace: return "trace";
    case Emit::rings: return "rings";
    case Emit::coeffs: return "coeffs";
  }
  return "?";
}

ScenarioConfig free_scenario(std::string name, std::string description, double dk, Branches branches,
                             TimeRange time, Emit emit,
                             free_packet::CoefficientFamily family = free_packet::CoefficientFamily::gaussian) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.description = std::move(description);
  c.mode = Mode::free;
  c.family = family;
  c.dk = dk;
  c.branches = branches;
  c.time = time;
  c.r_max = 40.0;
  c.n_r = 801;
  c.emit = emit;
  return c;
}

ScenarioConfig landau_scenario(std::string name, std::string description, double bfield, TimeRange time,
                               Emit emit, double r_max = 300.0, int n_r = 601) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.description = std::move(description);
  c.mode = Mode::landau;
  c.sigma = 24.0;
  c.bfield = bfield;
  c.time = time;
  c.r_max = r_max;
  c.n_r = n_r;
  c.emit = emit;
  return c;
}

void write_row(std::ostream& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out << ',';
    out << f;
    first = false;
  }
  out << '\n';
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

std::vector<double> TimeRange::values() const {
  std::vector<double> out;
  if (!(step > 0.0)) return out;
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

TimeRange parse_time_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3) throw UsageError("time range must be start:end:step, got '" + text + "'");
  TimeRange range{parse_double("t", parts[0]), parse_double("t", parts[1]), parse_double("t", parts[2])};
  if (!(range.step > 0.0)) throw UsageError("time step must be > 0");
  if (range.end < range.start) throw UsageError("time range end precedes start");
  return range;
}

void ScenarioConfig::validate() const {
  if (!(time.step > 0.0)) throw UsageError("time step must be > 0");
  if (time.end < time.start) throw UsageError("time range end precedes start");
  if (n_r < 64) throw UsageError("nr must be >= 64");
  if (!(r_max > 0.0)) throw UsageError("rmax must be > 0");
  if (!(tol > 0.0 && tol < 1.0)) throw UsageError("tol must lie in (0, 1)");
  if (mode == Mode::free) {
    if (!(dk > 0.0)) throw UsageError("dk must be > 0");
    if (emit == Emit::coeffs) throw UsageError("--emit coeffs requires --mode landau");
    if (family == free_packet::CoefficientFamily::tabulated)
      throw UsageError("tabulated coefficients are not available from the command line");
  } else {
    if (!(sigma > 0.0)) throw UsageError("sigma must be > 0");
    if (tol < 1e-14) throw UsageError("tol for landau mode must be >= 1e-14");
    if (!(bfield > 0.0)) throw UsageError("bfield must be > 0");
  }
}

std::vector<double> ScenarioConfig::radial_grid() const {
  return linspace(0.0, r_max, static_cast<std::size_t>(n_r));
}

std::vector<ScenarioConfig> builtin_scenarios() {
  using free_packet::CoefficientFamily;
  return {
      free_scenario("fig1a", "positive branch only, Gaussian C(k), ring profiles", 0.59, Branches::plus,
                    {0.0, 30.0, 2.0}, Emit::profile),
      free_scenario("fig1b", "both branches, Gaussian C(k), ring profiles", 0.42, Branches::both,
                    {0.0, 30.0, 2.0}, Emit::profile),
      free_scenario("fig2a", "both branches, formation of the second ring", 0.42, Branches::both,
                    {3.0, 15.0, 1.0}, Emit::profile),
      free_scenario("fig2b", "both branches, central density oscillation", 0.42, Branches::both,
                    {0.0, 30.0, 0.1}, Emit::trace),
      free_scenario("fig2b-step", "both branches, step C(k), central density oscillation", 0.42,
                    Branches::both, {0.0, 30.0, 0.1}, Emit::trace, CoefficientFamily::step),
      landau_scenario("fig3a", "B = 1 T, sigma/L = 0.93, central density", 1.0, {0.0, 500.0, 1.0}, Emit::trace),
      landau_scenario("fig3b", "B = 0.1 T, sigma/L = 0.3, central density", 0.1, {0.0, 2000.0, 1.0},
                      Emit::trace),
      landau_scenario("fig4a", "B = 0.1 T, shrinking rings before revival", 0.1, {71280.0, 71380.0, 10.0},
                      Emit::profile),
      landau_scenario("fig4b", "B = 0.1 T, expanding rings after revival", 0.1, {71380.0, 71480.0, 10.0},
                      Emit::profile),
  };
}

std::optional<ScenarioConfig> find_scenario(const std::string& name) {
  for (auto& s : builtin_scenarios())
    if (s.name == name) return s;
  return std::nullopt;
}

void apply_setting(ScenarioConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "mode") {
    if (value == "free") c.mode = Mode::free;
    else if (value == "landau") c.mode = Mode::landau;
    else throw UsageError("mode must be free or landau");
  } else if (key == "coeff") {
    if (value == "gaussian") c.family = free_packet::CoefficientFamily::gaussian;
    else if (value == "step") c.family = free_packet::CoefficientFamily::step;
    else throw UsageError("coeff must be gaussian or step");
  } else if (key == "dk") {
    c.dk = parse_double(key, value);
  } else if (key == "branches") {
    if (value == "plus") c.branches = Branches::plus;
    else if (value == "minus") c.branches = Branches::minus;
    else if (value == "both") c.branches = Branches::both;
    else throw UsageError("branches must be plus, minus, or both");
  } else if (key == "valley") {
    if (value == "K") c.valley = Valley::K;
    else if (value == "Kp") c.valley = Valley::Kp;
    else throw UsageError("valley must be K or Kp");
  } else if (key == "sigma") {
    c.sigma = parse_double(key, value);
  } else if (key == "bfield") {
    c.bfield = parse_double(key, value);
  } else if (key == "t") {
    c.time = parse_time_range(value);
  } else if (key == "rmax") {
    c.r_max = parse_double(key, value);
  } else if (key == "nr") {
    const double n = parse_double(key, value);
    if (n != std::floor(n) || n < 0 || n > 1e7) throw UsageError("nr must be a non-negative integer");
    c.n_r = static_cast<int>(n);
  } else if (key == "emit") {
    if (value == "profile") c.emit = Emit::profile;
    else if (value == "trace") c.emit = Emit::trace;
    else if (value == "rings") c.emit = Emit::rings;
    else if (value == "coeffs") c.emit = Emit::coeffs;
    else throw UsageError("emit must be profile, trace, rings, or coeffs");
  } else if (key == "tol") {
    c.tol = parse_double(key, value);
  } else if (key == "scenario") {
    const auto base = find_scenario(value);
    if (!base) throw UsageError("unknown scenario '" + value + "'");
    c = *base;
  } else {
    throw UsageError("unknown setting '" + key + "'");
  }
}

void apply_config_file(ScenarioConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

free_packet::CoefficientProfile make_profile(const ScenarioConfig& c) {
  // Both-branch Gaussian splits N between the branches; the step family gives each
  // branch the full constant. Normalization fixes the overall scale either way.
  const bool gaussian = c.family == free_packet::CoefficientFamily::gaussian;
  const double both = gaussian ? 0.5 : 1.0;
  double plus = 0.0, minus = 0.0;
  switch (c.branches) {
    case Branches::plus: plus = 1.0; break;
    case Branches::minus: minus = 1.0; break;
    case Branches::both: plus = minus = both; break;
  }
  auto profile = gaussian ? free_packet::CoefficientProfile::gaussian(c.dk, plus, minus)
                          : free_packet::CoefficientProfile::step(c.dk, plus, minus);
  return free_packet::normalize(profile);
}

void write_scenario_table(std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %-6s %-8s %-6s %-8s %-7s %-7s %-22s %-7s %-5s %-7s %s\n", "name", "mode",
                "coeff", "branch", "dk_nm-1", "sigma", "B_T", "t_fs(start:end:step)", "rmax", "nr", "emit", "description");
  out << line;
  for (const auto& s : builtin_scenarios()) {
    char t[64];
    std::snprintf(t, sizeof t, "%g:%g:%g", s.time.start, s.time.end, s.time.step);
    const bool free = s.mode == Mode::free;
    char dk[16], sigma[16], b[16];
    std::snprintf(dk, sizeof dk, "%g", s.dk);
    std::snprintf(sigma, sizeof sigma, "%g", s.sigma);
    std::snprintf(b, sizeof b, "%g", s.bfield);
    std::snprintf(line, sizeof line, "%-11s %-6s %-8s %-6s %-8s %-7s %-7s %-22s %-7g %-5d %-7s %s\n", s.name.c_str(),
                  free ? "free" : "landau", free ? family_name(s.family) : "-", free ? branches_name(s.branches) : "-", free ? dk : "-",
                  free ? "-" : sigma, free ? "-" : b, t, s.r_max, s.n_r, emit_name(s.emit), s.description.c_str());
    out << line;
  }
}

namespace {

void emit_profiles(const std::vector<DensityProfile>& profiles, std::ostream& out) {
  out << "t_fs,r_nm,rho_nm2\n";
  for (const auto& p : profiles)
    for (std::size_t i = 0; i < p.r_grid.size(); ++i)
      write_row(out, {format_number(p.t), format_number(p.r_grid[i]), format_number(p.rho[i])});
}

void emit_rings(const std::vector<DensityProfile>& profiles, std::ostream& out) {
  out << "t_fs,ring_index,radius_nm,height_nm2,fwhm_nm\n";
  for (const auto& p : profiles) {
    const auto found = analysis::detect_rings(p);
    for (const auto& ring : found.rings)
      write_row(out, {format_number(p.t), std::to_string(ring.index), format_number(ring.radius),
                      format_number(ring.height), format_number(ring.fwhm)});
  }
}

void emit_trace(std::span<const double> t, std::span<const double> rho0, std::ostream& out) {
  out << "t_fs,rho0_nm2\n";
  for (std::size_t i = 0; i < t.size(); ++i) write_row(out, {format_number(t[i]), format_number(rho0[i])});
}

}  // namespace

void run(const ScenarioConfig& c, std::ostream& out, unsigned threads) {
  c.validate();
  const auto times = c.time.values();
  if (c.mode == Mode::free) {
    const auto profile = make_profile(c);
    if (c.emit == Emit::trace) {
      std::vector<double> rho0(times.size());
      parallel_for(
          times.size(),
          [&](std::size_t i) { rho0[i] = density(free_packet::envelope_radial(profile, c.valley, 0.0, times[i], c.tol)); },
          threads);
      emit_trace(times, rho0, out);
      return;
    }
    const auto grid = c.radial_grid();
    const auto profiles = free_packet::density_field(profile, c.valley, grid, times, {c.tol, threads});
    if (c.emit == Emit::rings) emit_rings(profiles, out);
    else emit_profiles(profiles, out);
    return;
  }

  const double length = landau::magnetic_length(c.bfield);
  const auto expansion = landau::gaussian_coefficients(c.sigma, length, c.tol, c.valley);
  switch (c.emit) {
    case Emit::coeffs:
      out << "n,c_plus,c_minus\n";
      for (std::size_t n = 0; n < expansion.c_plus.size(); ++n)
        write_row(out, {std::to_string(n), format_number(expansion.c_plus[n]), format_number(expansion.c_minus[n])});
      return;
    case Emit::trace: {
      const auto rho0 = landau::center_trace(expansion, times);
      emit_trace(times, rho0, out);
      return;
    }
    case Emit::profile:
    case Emit::rings: {
      const auto profiles = landau::density_field(expansion, c.radial_grid(), times, threads);
      if (c.emit == Emit::rings) emit_rings(profiles, out);
      else emit_profiles(profiles, out);
      return;
    }
  }
}

}  // namespace ripple::scenario

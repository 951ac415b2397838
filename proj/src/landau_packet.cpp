#include "ripple/landau_packet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ripple/errors.hpp"
#include "ripple/numerics.hpp"
#include "ripple/parallel.hpp"

namespace ripple::landau {

using numerics::kPi;

namespace {

constexpr int kQuadratureNodes = 400;
constexpr int kLevelsPerPanel = 64;

void check_length(double length, const char* who) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError(std::string(who) + ": magnetic length must be finite and > 0");
}

// Radial parts of every eigenfunction up to level n_max at one radius, K ordering:
// first[n] is the imaginary amplitude of psi_1^+(n) (psi_1^- = -psi_1^+), second[n]
// is psi_2(n), which is shared by both branches.
struct BasisAtRadius {
  std::vector<double> first;
  std::vector<double> second;
};

BasisAtRadius tabulate_basis(int n_max, double r, double length) {
  const double u = r * r / (2.0 * length * length);
  std::vector<double> l0(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> l1(static_cast<std::size_t>(n_max) + 1);
  // l0, l1 carry the e^{-u/2} envelope already.
  numerics::laguerre_sequences_weighted(u, -0.5 * u, l0, l1);
  BasisAtRadius basis;
  basis.first.assign(l0.size(), 0.0);
  basis.second.resize(l0.size());
  const double norm2 = 1.0 / (2.0 * std::sqrt(kPi) * length);
  const double norm1 = 1.0 / (2.0 * std::sqrt(2.0 * kPi) * length * length);
  for (std::size_t n = 0; n < l0.size(); ++n) {
    basis.second[n] = norm2 * l0[n];
    // sqrt(n) * F(-n+1, 2, u) = sqrt(n) * L^(1)_{n-1}(u) / n
    if (n > 0) basis.first[n] = norm1 * r * l1[n - 1] / std::sqrt(static_cast<double>(n));
  }
  return basis;
}

// Sum over levels for one (basis, t): returns the K-ordered radial parts.
std::pair<complex, complex> superpose(const LandauExpansion& e, const BasisAtRadius& basis,
                                      std::span<const double> omega, double t) {
  complex first{}, second{};
  for (std::size_t n = 0; n < e.c_plus.size(); ++n) {
    const complex forward = std::polar(1.0, -omega[n] * t);  // e^{-i omega_+ t}
    const complex plus = e.c_plus[n] * forward;
    const complex minus = e.c_minus[n] * std::conj(forward);  // omega_- = -omega_+
    first += (plus - minus) * basis.first[n];
    second += (plus + minus) * basis.second[n];
  }
  return {complex(0.0, 1.0) * first, second};
}

std::vector<double> level_frequencies(int n_max, double length) {
  std::vector<double> omega(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) omega[n] = eigen_frequency(n, Branch::plus, length);
  return omega;
}

EnvelopePair assemble(std::pair<complex, complex> parts, Valley valley, double r, double t) {
  EnvelopePair out;
  out.valley = valley;
  out.r = r;
  out.t = t;
  if (valley == Valley::K) {
    out.psi1 = parts.first;
    out.winding1 = -1;
    out.psi2 = parts.second;
    out.winding2 = 0;
  } else {
    out.psi1 = parts.second;
    out.winding1 = 0;
    out.psi2 = parts.first;
    out.winding2 = -1;
  }
  return out;
}

// Projection of the Gaussian initial state onto levels 0..n_levels over [0, extent].
std::vector<double> project_gaussian(double sigma, double length, int n_levels, double extent) {
  const int panels = 1 + n_levels / kLevelsPerPanel;
  std::vector<double> c(static_cast<std::size_t>(n_levels) + 1, 0.0);
  const double panel_width = extent / panels;
  for (int p = 0; p < panels; ++p) {
    const auto rule = numerics::gauss_legendre(kQuadratureNodes, p * panel_width, (p + 1) * panel_width);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = rule.nodes[i];
      const double weight = rule.weights[i] * r * std::exp(-r * r / (4.0 * sigma * sigma));
      const BasisAtRadius basis = tabulate_basis(n_levels, r, length);
      for (int n = 0; n <= n_levels; ++n) c[n] += weight * basis.second[n];
    }
  }
  const double scale = std::sqrt(2.0 * kPi) / sigma;
  for (auto& v : c) v *= scale;
  return c;
}

double projection_extent(double sigma, double length, int n_levels) {
  return std::max(8.0 * sigma, length * std::sqrt(8.0 * n_levels + 12.0));
}

}  // namespace

double magnetic_length(double bfield) {
  if (!(bfield > 0.0) || !std::isfinite(bfield))
    throw DomainError("magnetic_length: field must be finite and > 0");
  return std::sqrt(PhysicalConstants::hbar_over_e / bfield);
}

LandauParams LandauParams::make(double sigma, double bfield, Valley valley) {
  if (!(sigma > 0.0)) throw DomainError("LandauParams: sigma must be > 0");
  LandauParams p;
  p.bfield = bfield;
  p.length = magnetic_length(bfield);
  p.sigma = sigma;
  p.beta = sigma / p.length;
  p.valley = valley;
  return p;
}

EnvelopePair eigenfunction(int n, Branch branch, double r, double length, Valley valley) {
  if (n < 0) throw DomainError("eigenfunction: n must be >= 0");
  if (n > numerics::kMaxLaguerreOrder) throw TruncationError("eigenfunction: n exceeds the level cap");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("eigenfunction: r must be finite and >= 0");
  check_length(length, "eigenfunction");
  const BasisAtRadius basis = tabulate_basis(n, r, length);
  const double s = branch_sign(branch);
  return assemble({complex(0.0, s * basis.first[n]), complex(basis.second[n])}, valley, r, 0.0);
}

double eigen_frequency(int n, Branch branch, double length) {
  if (n < 0) throw DomainError("eigen_frequency: n must be >= 0");
  check_length(length, "eigen_frequency");
  return branch_sign(branch) * std::sqrt(2.0 * n) * PhysicalConstants::fermi_speed / length;
}

double period_T1(double length) {
  check_length(length, "period_T1");
  return std::sqrt(2.0) * kPi * length / PhysicalConstants::fermi_speed;
}

LandauExpansion gaussian_coefficients(double sigma, double length, double epsilon, Valley valley) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("gaussian_coefficients: sigma must be > 0");
  check_length(length, "gaussian_coefficients");
  // The captured-weight sum resolves about 1e-14; tighter targets are met or missed by roundoff.
  if (!(epsilon >= 1e-14) || epsilon >= 1.0)
    throw DomainError("gaussian_coefficients: epsilon must be in [1e-14, 1)");

  const double target = 1.0 - epsilon;
  auto levels_needed = [target](const std::vector<double>& c) -> int {
    double captured = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
      captured += 2.0 * c[n] * c[n];
      if (captured >= target) return static_cast<int>(n);
    }
    return -1;
  };

  int trial = 32;
  int levels = -1;
  std::vector<double> c;
  while (true) {
    c = project_gaussian(sigma, length, trial, projection_extent(sigma, length, trial));
    levels = levels_needed(c);
    if (levels >= 0 || trial == numerics::kMaxLaguerreOrder) break;
    trial = std::min(2 * trial, numerics::kMaxLaguerreOrder);
  }
  double extent = projection_extent(sigma, length, trial);
  if (levels >= 0) {
    // Re-project on the interval tied to the final level count. If roundoff in the
    // captured weight moves it off the threshold, keep the trial projection, whose
    // longer interval already met the target.
    auto refined = project_gaussian(sigma, length, levels, projection_extent(sigma, length, levels));
    if (levels_needed(refined) == levels) {
      c = std::move(refined);
      extent = projection_extent(sigma, length, levels);
    } else {
      c.resize(static_cast<std::size_t>(levels) + 1);
    }
  }
  double captured = 0.0;
  for (double v : c) captured += 2.0 * v * v;
  if (levels < 0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "gaussian_coefficients: " << numerics::kMaxLaguerreOrder << " levels capture only " << captured
        << " of the probability (beta = " << sigma / length << ", epsilon = " << epsilon << ")";
    throw TruncationError(msg.str());
  }

  LandauExpansion e;
  e.c_plus = c;
  e.c_minus = c;
  e.params = LandauParams::make(sigma, PhysicalConstants::hbar_over_e / (length * length), valley);
  e.params.length = length;
  e.params.beta = sigma / length;
  e.captured_weight = captured;
  e.radial_extent = extent;
  return e;
}

EnvelopePair evolve(const LandauExpansion& e, double r, double t) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("evolve: r must be finite and >= 0");
  const int n_max = e.max_level();
  const BasisAtRadius basis = tabulate_basis(n_max, r, e.params.length);
  const auto omega = level_frequencies(n_max, e.params.length);
  return assemble(superpose(e, basis, omega, t), e.params.valley, r, t);
}

double two_term_density(const LandauExpansion& e, double r, double t) {
  const BasisAtRadius basis = tabulate_basis(1, r, e.params.length);
  const double c0 = e.c_plus.at(0);
  const double c1 = e.c_plus.size() > 1 ? e.c_plus[1] : 0.0;
  const double omega1 = eigen_frequency(1, Branch::plus, e.params.length);
  return 4.0 * c0 * c0 * basis.second[0] * basis.second[0] +
         8.0 * c0 * c1 * basis.second[0] * basis.second[1] * std::cos(omega1 * t);
}

std::vector<double> center_trace(const LandauExpansion& e, std::span<const double> t_list) {
  const int n_max = e.max_level();
  const BasisAtRadius basis = tabulate_basis(n_max, 0.0, e.params.length);
  const auto omega = level_frequencies(n_max, e.params.length);
  std::vector<double> out(t_list.size());
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    const auto parts = superpose(e, basis, omega, t_list[i]);
    out[i] = std::norm(parts.first) + std::norm(parts.second);
  }
  return out;
}

std::vector<DensityProfile> density_field(const LandauExpansion& e, std::span<const double> r_grid,
                                          std::span<const double> t_list, unsigned threads) {
  const int n_max = e.max_level();
  const auto omega = level_frequencies(n_max, e.params.length);
  std::vector<DensityProfile> out(t_list.size());
  for (std::size_t it = 0; it < t_list.size(); ++it) {
    out[it].t = t_list[it];
    out[it].r_grid.assign(r_grid.begin(), r_grid.end());
    out[it].rho.assign(r_grid.size(), 0.0);
  }
  parallel_for(
      r_grid.size(),
      [&](std::size_t ir) {
        if (!(r_grid[ir] >= 0.0)) throw DomainError("density_field: radii must be >= 0");
        const BasisAtRadius basis = tabulate_basis(n_max, r_grid[ir], e.params.length);
        for (std::size_t it = 0; it < t_list.size(); ++it) {
          const auto parts = superpose(e, basis, omega, t_list[it]);
          out[it].rho[ir] = std::norm(parts.first) + std::norm(parts.second);
        }
      },
      threads);
  return out;
}

}  // namespace ripple::landau

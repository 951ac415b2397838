#pragma once

// Dirac-point wave packets in a perpendicular magnetic field, expanded over the
// symmetric-gauge Landau eigenstates with zero angular momentum in one component.

#include <span>
#include <vector>

#include "ripple/types.hpp"

namespace ripple::landau {

enum class Branch { plus, minus };

constexpr int branch_sign(Branch b) { return b == Branch::plus ? 1 : -1; }

/// Magnetic length L = sqrt(hbar / (e B)) in nm for B in tesla.
double magnetic_length(double bfield);

struct LandauParams {
  double bfield = 1.0;  // T
  double length = 0.0;  // magnetic length L, nm
  double sigma = 24.0;  // initial Gaussian width, nm
  double beta = 0.0;    // sigma / L
  Valley valley = Valley::K;

  static LandauParams make(double sigma, double bfield, Valley valley = Valley::K);
};

/// Orthonormal eigenfunction |n, branch> at radius r.
///
/// For K the first component carries winding -1 and is
/// +-(i sqrt(n) / (2 sqrt(2 pi) L^2)) r e^{-r^2/4L^2} F(-n+1, 2, r^2/2L^2); the second is
/// (1 / (2 sqrt(pi) L)) e^{-r^2/4L^2} F(-n, 1, r^2/2L^2). K' exchanges the two components.
/// Throws TruncationError for n above the Laguerre cap.
EnvelopePair eigenfunction(int n, Branch branch, double r, double length, Valley valley = Valley::K);

/// E_+-(n) / hbar = +-sqrt(2 n) v_F / L, in fs^-1.
double eigen_frequency(int n, Branch branch, double length);

/// First Landau-level period 2 pi hbar / E_+(1) = sqrt(2) pi L / v_F.
double period_T1(double length);

struct LandauExpansion {
  std::vector<double> c_plus;
  std::vector<double> c_minus;
  LandauParams params;
  double captured_weight = 0.0;  // sum of |C_+|^2 + |C_-|^2
  double radial_extent = 0.0;    // upper end of the projection quadrature, nm

  int max_level() const { return static_cast<int>(c_plus.size()) - 1; }
};

/// Projects the Gaussian initial state (Psi_1 = 0, Psi_2 = e^{-r^2/4 sigma^2} / (sqrt(2 pi) sigma))
/// onto the eigenbasis by radial Gauss-Legendre quadrature, keeping the fewest levels whose
/// captured weight reaches 1 - epsilon, epsilon in [1e-14, 1). Throws TruncationError if
/// the cap is hit first.
LandauExpansion gaussian_coefficients(double sigma, double length, double epsilon = 1e-8,
                                      Valley valley = Valley::K);

/// Psi_1, Psi_2 at (r, t) from the truncated eigenstate sums.
EnvelopePair evolve(const LandauExpansion& expansion, double r, double t);

/// Keeps only the n = 0 and n = 1 contributions:
/// 4 C(0)^2 psi2(r,0)^2 + 8 C(0) C(1) psi2(r,0) psi2(r,1) cos(omega_1 t).
double two_term_density(const LandauExpansion& expansion, double r, double t);

/// rho(0, t) for each t. The basis is evaluated once at the origin.
std::vector<double> center_trace(const LandauExpansion& expansion, std::span<const double> t_list);

/// rho(r, t) on r_grid for each t; the basis is tabulated once per radius.
std::vector<DensityProfile> density_field(const LandauExpansion& expansion,
                                          std::span<const double> r_grid,
                                          std::span<const double> t_list, unsigned threads = 0);

}  // namespace ripple::landau

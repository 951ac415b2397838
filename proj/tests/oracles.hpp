#pragma once

// Closed forms and independent checks shared by the unit and acceptance tests.
// Nothing here calls the engine's Bessel routines.

#include <cmath>
#include <vector>

#include "ripple/free_packet.hpp"
#include "ripple/numerics.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// e^{-z} (I0(z) - I1(z)), standard library below z = 40, asymptotic series above.
inline double scaled_i0_minus_i1(double z) {
  if (z < 40.0) return std::exp(-z) * (std::cyl_bessel_i(0.0, z) - std::cyl_bessel_i(1.0, z));
  // e^{-z} I_nu(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k a_k(nu) / z^k
  double t0 = 1.0, t1 = 1.0, s0 = 1.0, s1 = 1.0;
  for (int k = 1; k < 30; ++k) {
    const double odd = (2.0 * k - 1.0) * (2.0 * k - 1.0);
    t0 *= -(0.0 - odd) / (8.0 * k * z);
    t1 *= -(4.0 - odd) / (8.0 * k * z);
    s0 += t0;
    s1 += t1;
    if (std::fabs(t0) < 1e-18 && std::fabs(t1) < 1e-18) break;
  }
  return (s0 - s1) / std::sqrt(2.0 * kPi * z);
}

/// Radial part of Psi_2 at t = 0 for C_+ = norm * exp(-k^2/dk^2), C_- = 0 (divided by i).
inline double plus_gaussian_psi2_t0(double norm, double dk, double r) {
  const double a = 1.0 / (dk * dk);
  const double z = r * r / (8.0 * a);
  return 2.0 * kPi * norm * std::sqrt(kPi) * r / (8.0 * std::pow(a, 1.5)) * scaled_i0_minus_i1(z);
}

/// Psi_1 at t = 0 for the same profile.
inline double plus_gaussian_psi1_t0(double norm, double dk, double r) {
  return kPi * norm * dk * dk * std::exp(-dk * dk * r * r / 4.0);
}

/// Probability outside radius R at t = 0 for a normalized single-branch Gaussian.
inline double plus_gaussian_exterior_t0(double norm, double dk, double R) {
  // r = R / u maps [R, inf) onto (0, 1]; the integrand vanishes linearly at u = 0.
  const auto rule = ripple::numerics::gauss_legendre(96, 0.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double r = R / u;
    const double p1 = plus_gaussian_psi1_t0(norm, dk, r), p2 = plus_gaussian_psi2_t0(norm, dk, r);
    sum += rule.weights[i] * (p1 * p1 + p2 * p2) * 2.0 * kPi * r * R / (u * u);
  }
  return sum;
}

/// Probability outside R at t = 0 for the equal-weight Gaussian: e^{-dk^2 R^2 / 2}.
inline double both_gaussian_exterior_t0(double dk, double R) { return std::exp(-0.5 * dk * dk * R * R); }

/// Probability outside R at t = 0 for the both-branch step: rho = J1(dk r)^2 / (pi r^2).
inline double both_step_exterior_t0(double dk, double R) {
  const double x = dk * R;
  return std::pow(std::cyl_bessel_j(0.0, x), 2) + std::pow(std::cyl_bessel_j(1.0, x), 2);
}

/// Exterior probability at t = 0 for the profile families used by the scenarios.
inline double exterior_t0(const ripple::free_packet::CoefficientProfile& p, double R) {
  using ripple::free_packet::CoefficientFamily;
  const bool single = p.amp_plus == 0.0 || p.amp_minus == 0.0;
  if (p.family == CoefficientFamily::gaussian) {
    if (single) return plus_gaussian_exterior_t0(p.norm * (p.amp_plus + p.amp_minus), p.dk, R);
    if (p.amp_plus == p.amp_minus) return both_gaussian_exterior_t0(p.dk, R);
  }
  if (p.family == CoefficientFamily::step && p.amp_plus == p.amp_minus) return both_step_exterior_t0(p.dk, R);
  return std::nan("");
}

/// Total probability at each time by flux balance around the disc r <= R:
///   interior integral on Gauss-Legendre panels + exterior(0) + 2 pi R int_0^t j_r(R, t') dt'.
/// Times must be ascending from 0 or later; flux is integrated from t = 0.
inline std::vector<double> free_total_probability(const ripple::free_packet::CoefficientProfile& p,
                                                  ripple::Valley valley, double R,
                                                  const std::vector<double>& times, int panels = 16,
                                                  double tol = 1e-10) {
  using namespace ripple;
  const auto node16 = numerics::gauss_legendre(16, -1.0, 1.0);
  std::vector<double> radii, wr;
  const double width = R / panels;
  for (int q = 0; q < panels; ++q)
    for (std::size_t i = 0; i < node16.nodes.size(); ++i) {
      const double r = (q + 0.5) * width + 0.5 * width * node16.nodes[i];
      radii.push_back(r);
      wr.push_back(0.5 * width * node16.weights[i] * 2.0 * kPi * r);
    }
  auto field = free_packet::density_field(p, valley, radii, times, {tol, 0});

  const double exterior0 = exterior_t0(p, R);
  std::vector<double> out;
  double flux = 0.0, t_prev = 0.0;
  for (std::size_t it = 0; it < times.size(); ++it) {
    // Flux through r = R over [t_prev, t], Gauss-Legendre in time per unit fs.
    const double t = times[it];
    if (t > t_prev) {
      const int slices = static_cast<int>(std::ceil(t - t_prev));
      const double dt = (t - t_prev) / slices;
      for (int s = 0; s < slices; ++s)
        for (std::size_t i = 0; i < node16.nodes.size(); ++i) {
          const double tau = t_prev + (s + 0.5) * dt + 0.5 * dt * node16.nodes[i];
          flux += 0.5 * dt * node16.weights[i] * 2.0 * kPi * R *
                  radial_current(free_packet::envelope_radial(p, valley, R, tau, tol));
        }
      t_prev = t;
    }
    double interior = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) interior += wr[i] * field[it].rho[i];
    out.push_back(interior + exterior0 + flux);
  }
  return out;
}

}  // namespace oracle

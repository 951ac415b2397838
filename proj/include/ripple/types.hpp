#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace ripple {

using complex = std::complex<double>;

/// Unit system: lengths in nm, times in fs, fields in T. hbar cancels from every
/// phase because frequencies are carried as E / hbar.
struct PhysicalConstants {
  static constexpr double fermi_speed = 1.0;           // nm/fs (1e6 m/s)
  static constexpr double hbar_over_e = 658.2119569;   // nm^2 T
  static constexpr double bond_length = 0.142;         // nm
  static constexpr double lattice_constant = 0.246;    // nm
  static constexpr double reciprocal_length = 29.499;  // nm^-1
};

enum class Valley { K, Kp };

/// +1 for K, -1 for K'.
constexpr int valley_sign(Valley v) { return v == Valley::K ? 1 : -1; }

/// Spinor envelope (Psi_1, Psi_2) at one space-time sample.
///
/// Each component is stored as its radial part; the full value at azimuth phi is
/// radial * exp(i * winding * phi). Densities never need the azimuthal factor.
struct EnvelopePair {
  complex psi1{};
  complex psi2{};
  int winding1 = 0;
  int winding2 = 0;
  Valley valley = Valley::K;
  double r = 0.0;
  double t = 0.0;

  complex psi1_at(double phi) const { return psi1 * std::polar(1.0, winding1 * phi); }
  complex psi2_at(double phi) const { return psi2 * std::polar(1.0, winding2 * phi); }
};

/// rho = |Psi_1|^2 + |Psi_2|^2.
inline double density(const EnvelopePair& pair) { return std::norm(pair.psi1) + std::norm(pair.psi2); }

/// Outward probability current j_r = 2 v_F Re(Psi_1^* Psi_2 e^{-i s phi}), s = +1 for K.
///
/// The angular factor cancels against the winding difference of the two components,
/// so this is valid for both the free and the Landau envelopes.
inline double radial_current(const EnvelopePair& pair) {
  return 2.0 * PhysicalConstants::fermi_speed * std::real(std::conj(pair.psi1) * pair.psi2);
}

/// rho(r, t) sampled on a radial grid at one instant.
struct DensityProfile {
  double t = 0.0;
  std::vector<double> r_grid;
  std::vector<double> rho;
};

/// Uniform grid of `count` points spanning [lo, hi].
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace ripple

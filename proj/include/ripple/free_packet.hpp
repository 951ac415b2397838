#pragma once

// Dirac-point wave packets in field-free graphene, built by superposing the
// plane-wave spinor eigenstates of both energy branches.

#include <span>
#include <vector>

#include "ripple/numerics.hpp"
#include "ripple/types.hpp"

namespace ripple::free_packet {

enum class CoefficientFamily { gaussian, step, tabulated };

/// C_+(k), C_-(k) sampled on a uniform k grid starting at 0.
struct CoefficientTable {
  std::vector<double> k;
  std::vector<complex> c_plus;
  std::vector<complex> c_minus;
};

/// Radial superposition coefficients C_+(k), C_-(k), independent of the k direction.
///
/// For the analytic families C_s(k) = norm * amp_s * shape(k) with
/// shape = exp(-k^2 / dk^2) (gaussian) or 1 on [0, dk] (step). A tabulated profile
/// carries its samples in `table` and uses `norm` as an overall scale.
struct CoefficientProfile {
  CoefficientFamily family = CoefficientFamily::gaussian;
  double dk = 0.42;  // nm^-1
  double amp_plus = 0.5;
  double amp_minus = 0.5;
  double norm = 1.0;  // nm
  CoefficientTable table;

  static CoefficientProfile gaussian(double dk, double amp_plus, double amp_minus);
  static CoefficientProfile step(double dk, double amp_plus, double amp_minus);
  static CoefficientProfile tabulated(CoefficientTable table);

  /// Upper end of the k integration domain: 7 dk, dk, or the last table node.
  double k_max() const;
  double shape(double k) const;
  complex c_plus(double k) const;
  complex c_minus(double k) const;
};

/// Total probability implied by the coefficients:
/// 2 (2 pi)^2 * integral (|C_+|^2 + |C_-|^2) d^2k.
double spectral_weight(const CoefficientProfile& profile);

/// Rescales `norm` so that the packet carries unit probability.
CoefficientProfile normalize(CoefficientProfile profile);

/// Angularly reduced envelopes at radius r and time t.
///
///   Psi_1 = 2 pi   int k [C_+ e^{-i v k t} + C_- e^{+i v k t}] J0(k r) dk
///   Psi_2 = 2 pi i int k [C_+ e^{-i v k t} - C_- e^{+i v k t}] J1(k r) dk * e^{+-i phi}
///
/// The azimuthal factor of Psi_2 is carried as winding +1 (K) or -1 (K').
EnvelopePair envelope_radial(const CoefficientProfile& profile, Valley valley, double r, double t,
                             double tol = 1e-8);

/// Full complex envelope values at a Cartesian point.
struct SpinorValue {
  complex psi1{};
  complex psi2{};
};

/// Direct double integral over (theta, k) of the unreduced plane-wave superposition.
/// Shares no Bessel code with envelope_radial; the angular integral is a periodic
/// trapezoid sum.
SpinorValue envelope_direct(const CoefficientProfile& profile, Valley valley, double x, double y,
                            double t, double tol = 1e-8);

struct FieldOptions {
  double tol = 1e-8;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// rho(r, t) for every t in t_list on r_grid. Output is independent of thread count.
std::vector<DensityProfile> density_field(const CoefficientProfile& profile, Valley valley,
                                          std::span<const double> r_grid,
                                          std::span<const double> t_list,
                                          const FieldOptions& options = {});

/// Radial samples of one envelope component on a uniform grid starting at r = 0.
struct RadialSamples {
  std::vector<double> r;
  std::vector<complex> values;
};

/// Recovers tabulated C_+(k), C_-(k) from an initial state by inverse Hankel transforms.
///
/// psi2_0 holds the radial part of Psi_2 (winding +1 for K, -1 for K'). The prefactor
/// is fixed so that envelope_radial at t = 0 reproduces the input.
CoefficientProfile coefficients_from_initial(const RadialSamples& psi1_0,
                                             const RadialSamples& psi2_0, Valley valley,
                                             std::span<const double> k_grid);

struct SublatticeSplit {
  double p1 = 0.0;  // probability on A sites, integral |Psi_1|^2
  double p2 = 0.0;  // probability on B sites, integral |Psi_2|^2
};

/// Sublattice probabilities integrated over r_grid (uniform, starting at 0).
SublatticeSplit sublattice_split(const CoefficientProfile& profile, Valley valley, double t,
                                 std::span<const double> r_grid, const FieldOptions& options = {});

}  // namespace ripple::free_packet

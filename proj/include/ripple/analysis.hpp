#pragma once

// Feature extraction from sampled densities: ripple rings, ring speed,
// oscillation period of the central density, and total probability.

#include <optional>
#include <span>
#include <vector>

#include "ripple/types.hpp"

namespace ripple::analysis {

/// One annular maximum of rho(r).
struct RingMetrics {
  int index = 0;        // 0-based, ordered by radius
  double radius = 0.0;  // nm, parabolic sub-grid refinement
  double height = 0.0;  // nm^-2
  double fwhm = 0.0;    // nm, measured at (height + baseline) / 2
  double baseline = 0.0;
};

struct RingDetection {
  std::optional<double> central_height;  // set when rho has a maximum at r = 0
  std::vector<RingMetrics> rings;
};

/// Local maxima at r > 0 whose height above the higher adjacent minimum is at least
/// min_prominence * max(rho). Throws ResolutionError if a candidate ring spans fewer
/// than 4 grid steps at half height.
RingDetection detect_rings(const DensityProfile& profile, double min_prominence = 0.02);

struct SpeedFit {
  double speed = 0.0;      // least-squares slope, nm/fs
  double intercept = 0.0;  // nm
  double rms_residual = 0.0;
  double max_residual = 0.0;
};

struct RadiusSample {
  double t;
  double radius;
};

/// Least-squares slope of radius against time (at least 3 samples).
SpeedFit ring_speed(std::span<const RadiusSample> samples);

struct CenterTrace {
  std::vector<double> t;
  std::vector<double> rho0;
};

struct PeriodEstimate {
  double period = 0.0;          // reported value, fs
  double zero_crossing = 0.0;   // from mean-subtracted crossing spacing
  double spectral = 0.0;        // from the discrete spectrum peak
  double periodicity_residual = 0.0;  // rms of x(t + period) - x(t) over sqrt(2) std(x)
  bool multi_modal = false;  // estimates disagree by > 5 %, or periodicity_residual > 0.25
};

/// Dominant oscillation period of a uniformly sampled trace.
///
/// The zero-crossing estimate is reported for traces spanning fewer than five
/// periods, the spectral estimate otherwise. A trace is flagged multi-modal when the
/// two estimates disagree or when shifting it by the reported period does not map it
/// onto itself (residual near 1 for uncorrelated shapes, near 0 for a clean tone).
/// Throws FlatTrace when the variance is below 1e-12 of the squared mean.
PeriodEstimate dominant_period(const CenterTrace& trace);

struct ProbabilityEstimate {
  double value = 0.0;
  bool tail_truncated = false;  // rho(r_max) exceeds 1e-6 of the peak
};

/// Integral of rho * 2 pi r dr over the profile grid.
ProbabilityEstimate total_probability(const DensityProfile& profile);

/// Indices of strict interior local maxima of a sequence.
std::vector<std::size_t> local_maxima(std::span<const double> values);

}  // namespace ripple::analysis

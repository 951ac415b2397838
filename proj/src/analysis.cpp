#include "ripple/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ripple/errors.hpp"
#include "ripple/numerics.hpp"

namespace ripple::analysis {

namespace {

double crossing(double x0, double y0, double x1, double y1, double level) {
  if (y1 == y0) return 0.5 * (x0 + x1);
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

std::vector<std::size_t> local_maxima(std::span<const double> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) out.push_back(i);
  return out;
}

RingDetection detect_rings(const DensityProfile& profile, double min_prominence) {
  const auto& r = profile.r_grid;
  const auto& rho = profile.rho;
  if (r.size() != rho.size()) throw DomainError("detect_rings: grid and values differ in size");
  if (r.size() < 3) throw ResolutionError("detect_rings: profile needs at least 3 samples");
  if (!(min_prominence > 0.0 && min_prominence < 1.0))
    throw DomainError("detect_rings: min_prominence must lie in (0, 1)");

  RingDetection out;
  const std::size_t n = rho.size();
  const double peak = *std::max_element(rho.begin(), rho.end());
  if (!(peak > 0.0)) return out;
  if (rho[0] >= rho[1]) out.central_height = rho[0];

  for (std::size_t i : local_maxima(rho)) {
    std::size_t lo = i;
    while (lo > 0 && rho[lo - 1] <= rho[lo]) --lo;
    std::size_t hi = i;
    while (hi + 1 < n && rho[hi + 1] <= rho[hi]) ++hi;
    const double baseline = std::max(rho[lo], rho[hi]);
    if (rho[i] - baseline < min_prominence * peak) continue;

    // Three-point parabola through the maximum.
    const double h = 0.5 * (r[i + 1] - r[i - 1]);
    const double y0 = rho[i - 1], y1 = rho[i], y2 = rho[i + 1];
    const double curvature = y0 - 2.0 * y1 + y2;
    double offset = curvature < 0.0 ? 0.5 * (y0 - y2) / curvature : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    RingMetrics ring;
    ring.radius = r[i] + offset * h;
    ring.height = y1 - 0.25 * (y0 - y2) * offset;
    ring.baseline = baseline;

    const double level = 0.5 * (ring.height + baseline);
    std::size_t a = i;
    while (a > lo && rho[a - 1] >= level) --a;
    std::size_t b = i;
    while (b < hi && rho[b + 1] >= level) ++b;
    // rho[lo], rho[hi] <= baseline < level, so both walks stop strictly inside.
    const double left = a > lo ? crossing(r[a - 1], rho[a - 1], r[a], rho[a], level) : r[lo];
    const double right = b < hi ? crossing(r[b], rho[b], r[b + 1], rho[b + 1], level) : r[hi];
    ring.fwhm = right - left;
    if (ring.fwhm < 4.0 * h)
      throw ResolutionError("detect_rings: ring at r = " + std::to_string(ring.radius) +
                            " nm is narrower than 4 grid steps");
    if (ring.radius <= 0.0) continue;
    ring.index = static_cast<int>(out.rings.size());
    out.rings.push_back(ring);
  }
  return out;
}

SpeedFit ring_speed(std::span<const RadiusSample> samples) {
  if (samples.size() < 3) throw InsufficientData("ring_speed: need at least 3 samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].t > samples[i - 1].t)) throw DomainError("ring_speed: times must increase");
  const double count = static_cast<double>(samples.size());
  double mt = 0.0, mr = 0.0;
  for (const auto& s : samples) {
    mt += s.t;
    mr += s.radius;
  }
  mt /= count;
  mr /= count;
  double stt = 0.0, str = 0.0;
  for (const auto& s : samples) {
    stt += (s.t - mt) * (s.t - mt);
    str += (s.t - mt) * (s.radius - mr);
  }
  SpeedFit fit;
  fit.speed = str / stt;
  fit.intercept = mr - fit.speed * mt;
  double ss = 0.0;
  for (const auto& s : samples) {
    const double e = s.radius - (fit.intercept + fit.speed * s.t);
    ss += e * e;
    fit.max_residual = std::max(fit.max_residual, std::fabs(e));
  }
  fit.rms_residual = std::sqrt(ss / count);
  return fit;
}

namespace {

// Upward and downward zero crossings with a hysteresis band to reject noise chatter.
std::vector<double> zero_crossings(std::span<const double> t, std::span<const double> x, double band) {
  std::vector<double> out;
  int state = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int now = x[i] > band ? 1 : (x[i] < -band ? -1 : 0);
    if (now == 0) continue;
    if (state != 0 && now != state) {
      // last sign change between the previous band exit and i
      std::size_t j = i;
      while (j > 0 && (x[j - 1] > 0.0) == (x[i] > 0.0)) --j;
      if (j > 0) out.push_back(crossing(t[j - 1], x[j - 1], t[j], x[j], 0.0));
    }
    state = now;
  }
  return out;
}

double spectral_period(std::span<const double> t, std::span<const double> x) {
  const std::size_t n = x.size();
  const double dt = t[1] - t[0];
  const double span = dt * static_cast<double>(n);
  // Hann-windowed periodogram on a 16x oversampled frequency grid.
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = x[i] * (0.5 - 0.5 * std::cos(2.0 * numerics::kPi * (i + 0.5) / n));
  const std::size_t bins = 16 * n;
  const double df = 1.0 / (16.0 * span);
  const double f_nyquist = 0.5 / dt;
  std::vector<double> power;
  power.reserve(bins);
  for (std::size_t b = 0; b * df <= f_nyquist; ++b) {
    const double f = b * df;
    // Goertzel recurrence for the single frequency f.
    const double omega = 2.0 * numerics::kPi * f * dt;
    const double coeff = 2.0 * std::cos(omega);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s0 = w[i] + coeff * s1 - s2;
      s2 = s1;
      s1 = s0;
    }
    power.push_back(s1 * s1 + s2 * s2 - coeff * s1 * s2);
  }
  // Skip the window main lobe around zero frequency.
  const std::size_t first = std::min<std::size_t>(power.size() - 1, 32);
  std::size_t best = first;
  for (std::size_t b = first; b < power.size(); ++b)
    if (power[b] > power[best]) best = b;
  double shift = 0.0;
  if (best > 0 && best + 1 < power.size()) {
    const double a = power[best - 1], c = power[best], d = power[best + 1];
    const double curvature = a - 2.0 * c + d;
    if (curvature < 0.0) shift = std::clamp(0.5 * (a - d) / curvature, -0.5, 0.5);
  }
  return 1.0 / ((best + shift) * df);
}

// rms of x(t + shift) - x(t), linear interpolation, normalized by sqrt(2 var).
double shift_residual(std::span<const double> x, double dt, double shift, double var) {
  const double offset = shift / dt;
  const auto whole = static_cast<std::size_t>(offset);
  const double frac = offset - static_cast<double>(whole);
  if (whole + 1 >= x.size()) return std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + whole + 1 < x.size(); ++i) {
    const double moved = (1.0 - frac) * x[i + whole] + frac * x[i + whole + 1];
    ss += (moved - x[i]) * (moved - x[i]);
    ++count;
  }
  return std::sqrt(ss / static_cast<double>(count) / (2.0 * var));
}

}  // namespace

PeriodEstimate dominant_period(const CenterTrace& trace) {
  const auto& t = trace.t;
  const auto& y = trace.rho0;
  if (t.size() != y.size()) throw DomainError("dominant_period: t and rho0 differ in size");
  if (t.size() < 8) throw InsufficientData("dominant_period: need at least 8 samples");
  const double dt = t[1] - t[0];
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::fabs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) throw DomainError("dominant_period: sampling must be uniform");

  const double count = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / count;
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  var /= count;
  if (var <= 1e-12 * mean * mean || var == 0.0) throw FlatTrace("dominant_period: no oscillation in trace");

  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] - mean;

  PeriodEstimate est;
  const auto crossings = zero_crossings(t, x, 0.1 * std::sqrt(var));
  est.zero_crossing = crossings.size() >= 3
                          ? 2.0 * (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1)
                          : std::numeric_limits<double>::quiet_NaN();
  est.spectral = spectral_period(t, x);

  const double span = t.back() - t.front();
  const bool short_trace = std::isnan(est.zero_crossing) ? false : span < 5.0 * est.zero_crossing;
  est.period = short_trace || std::isnan(est.spectral) ? est.zero_crossing : est.spectral;
  if (std::isnan(est.zero_crossing)) {
    est.period = est.spectral;
    est.multi_modal = true;
  } else {
    const double lo = std::min(est.zero_crossing, est.spectral);
    est.multi_modal = std::fabs(est.zero_crossing - est.spectral) > 0.05 * lo;
  }
  est.periodicity_residual = shift_residual(x, dt, est.period, var);
  if (!(est.periodicity_residual <= 0.25)) est.multi_modal = true;
  return est;
}

ProbabilityEstimate total_probability(const DensityProfile& profile) {
  if (profile.r_grid.size() != profile.rho.size())
    throw DomainError("total_probability: grid and values differ in size");
  ProbabilityEstimate out;
  if (profile.rho.empty()) return out;
  out.value = numerics::radial_integral(profile.r_grid, profile.rho);
  const double peak = *std::max_element(profile.rho.begin(), profile.rho.end());
  out.tail_truncated = profile.rho.back() > 1e-6 * peak;
  return out;
}

}  // namespace ripple::analysis

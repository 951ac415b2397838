#pragma once

// Special functions and quadrature shared by the free-space and magnetic-field engines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "ripple/errors.hpp"

namespace ripple::numerics {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Radius below which the Bessel routines sum the power series; above it they
/// switch to the Hankel asymptotic amplitude/phase form.
inline constexpr double kBesselSeriesLimit = 14.0;

struct BesselPair {
  double j0;
  double j1;
};

/// J0(x) and J1(x) evaluated together (they share the series and the trig factors).
BesselPair bessel_j01(double x);

double bessel_j0(double x);
double bessel_j1(double x);

namespace detail {
// The two evaluation routes, exposed so the switch-over radius can be validated.
BesselPair bessel_series_j01(double x);
BesselPair bessel_asymptotic_j01(double x);
}  // namespace detail

/// Largest quantum number the Laguerre/confluent routines accept.
inline constexpr int kMaxLaguerreOrder = 512;

/// Terminating confluent hypergeometric function F(-n, gamma, z) for gamma in {1, 2}.
///
/// gamma = 1 gives the Laguerre polynomial L_n(z); gamma = 2 gives L^(1)_n(z) / (n + 1).
/// Both are evaluated by forward three-term recurrence.
double confluent_f(int n, int gamma, double z);

/// Fills l0[k] = L_k(z) and l1[k] = L^(1)_k(z) for k < size of each span.
void laguerre_sequences(double z, std::span<double> l0, std::span<double> l1);

/// Same sequences multiplied by exp(log_weight), e.g. log_weight = -z/2 for the
/// Landau radial functions. Safe where L_k(z) alone would overflow.
void laguerre_sequences_weighted(double z, double log_weight, std::span<double> l0, std::span<double> l1);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = -1.0;
  double b = 1.0;

  template <class F>
  auto apply(F&& f) const {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    V sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum = sum + f(nodes[i]) * weights[i];
    return sum;
  }
};

/// Gauss-Legendre rule of the given order mapped onto [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

/// Order-16 rule on [-1, 1], built once.
const QuadratureRule& reference_rule16();

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const complex& v) { return std::abs(v); }

inline constexpr int kMinOscillatoryPanels = 64;
inline constexpr int kMaxPanelDoublings = 4;

/// Panel count used before any doubling: one panel per quarter period of the fastest phase.
int oscillatory_panel_count(double a, double b, double phase_scale);

namespace detail {

template <class V>
struct PanelSum {
  V value{};
  double abs_value = 0.0;
};

template <class F>
auto composite_rule16(F& f, double a, double b, int panels) {
  using V = std::decay_t<std::invoke_result_t<F&, double>>;
  const QuadratureRule& ref = reference_rule16();
  const double width = (b - a) / panels;
  const double half = 0.5 * width;
  PanelSum<V> total;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    V panel{};
    double panel_abs = 0.0;
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
      const V fx = f(mid + half * ref.nodes[i]);
      panel = panel + fx * ref.weights[i];
      panel_abs += magnitude(fx) * ref.weights[i];
    }
    total.value = total.value + panel * half;
    total.abs_value += panel_abs * half;
  }
  return total;
}

}  // namespace detail

/// Composite order-16 Gauss-Legendre integral of an oscillatory integrand over [a, b].
///
/// phase_scale bounds |d(phase)/dx| of the integrand. The estimate at the initial
/// panel count is accepted once a doubled-panel estimate agrees to `tol` relative to
/// max(|I|, 1e-6 * integral of |f|); the absolute floor only matters for integrals
/// that cancel to far below the integrand scale. Agreement at the roundoff level of
/// the sum is always accepted. Throws ConvergenceError after
/// kMaxPanelDoublings doublings without agreement.
template <class F>
auto integrate_oscillatory(F&& f, double a, double b, double phase_scale, double tol = 1e-8) {
  if (!(a < b)) throw DomainError("integrate_oscillatory: requires a < b");
  if (!(phase_scale >= 0.0) || !std::isfinite(phase_scale))
    throw DomainError("integrate_oscillatory: phase_scale must be finite and >= 0");
  if (!(tol > 0.0)) throw DomainError("integrate_oscillatory: tol must be > 0");
  int panels = oscillatory_panel_count(a, b, phase_scale);
  auto previous = detail::composite_rule16(f, a, b, panels);
  for (int d = 0; d < kMaxPanelDoublings; ++d) {
    panels *= 2;
    auto current = detail::composite_rule16(f, a, b, panels);
    const double diff = magnitude(current.value - previous.value);
    const double scale = std::max(magnitude(current.value), 1e-6 * current.abs_value);
    // Summation roundoff bounds what any tolerance can demand.
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * current.abs_value;
    if (diff <= std::max(tol * scale, roundoff)) return current.value;
    previous = std::move(current);
  }
  throw ConvergenceError("integrate_oscillatory: tolerance not reached after panel doubling");
}

/// Composite Simpson rule on uniformly spaced samples (3/8 rule closes an even count).
template <class V>
V simpson_uniform(std::span<const V> samples, double h) {
  const std::size_t n = samples.size();
  if (n < 2) return V{};
  if (n == 2) return (samples[0] + samples[1]) * (0.5 * h);
  V sum{};
  std::size_t last = n - 1;
  if ((n - 1) % 2 == 1) {
    // Simpson 3/8 on the final three intervals.
    const std::size_t s = n - 4;
    sum = sum + (samples[s] + samples[s + 1] * 3.0 + samples[s + 2] * 3.0 + samples[s + 3]) *
                    (3.0 * h / 8.0);
    last = s;
  }
  for (std::size_t i = 0; i + 2 <= last; i += 2)
    sum = sum + (samples[i] + samples[i + 1] * 4.0 + samples[i + 2]) * (h / 3.0);
  return sum;
}

/// Integral of 2 pi r f(r) dr over a grid that starts at r = 0.
///
/// Trapezoid rule plus the leading Euler-Maclaurin term at the origin,
/// h^2/12 * 2 pi f(0), which is exact knowledge there because d/dr (2 pi r f) = 2 pi f(0).
/// Without it the rule carries an O(h^2) bias proportional to f(0).
double radial_integral(std::span<const double> r, std::span<const double> f);

}  // namespace ripple::numerics

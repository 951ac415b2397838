#include "ripple/numerics.hpp"

#include <limits>
#include <string>

namespace ripple::numerics {

namespace {

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
}

// Power series in extended precision; the largest term near the switch-over radius
// is ~1e5, so the 64-bit mantissa keeps the absolute error well under 1e-13.
BesselPair series_j01(double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double t0 = 1.0L;  // (-x^2/4)^k / (k!)^2
  long double t1 = 1.0L;  // (-x^2/4)^k / (k! (k+1)!)
  long double s0 = t0;
  long double s1 = t1;
  for (int k = 1; k < 200; ++k) {
    t0 *= q / (static_cast<long double>(k) * k);
    t1 *= q / (static_cast<long double>(k) * (k + 1));
    s0 += t0;
    s1 += t1;
    if (std::fabs(t0) < 1e-24L && std::fabs(t1) < 1e-24L) break;
  }
  return {static_cast<double>(s0), static_cast<double>(0.5L * x * s1)};
}

// Hankel asymptotic series P(nu, x), Q(nu, x), truncated at the smallest term.
void hankel_pq(double mu, double x, double& p, double& q) {
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::fabs(term);
    if (mag >= last) break;
    last = mag;
    // k = 1, 2, 3, 4, ... contributes +Q, -P, -Q, +P, ...
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (mag < 1e-18) break;
  }
}

BesselPair asymptotic_j01(double x) {
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(x);
  const double s = std::sin(x);
  constexpr double r = 0.70710678118654752440;
  double p0, q0, p1, q1;
  hankel_pq(0.0, x, p0, q0);
  hankel_pq(4.0, x, p1, q1);
  // chi0 = x - pi/4, chi1 = x - 3pi/4, expanded to avoid rounding x - const.
  const double cos0 = r * (c + s);
  const double sin0 = r * (s - c);
  const double cos1 = r * (s - c);
  const double sin1 = -r * (s + c);
  return {amp * (p0 * cos0 - q0 * sin0), amp * (p1 * cos1 - q1 * sin1)};
}

}  // namespace

namespace detail {
BesselPair bessel_series_j01(double x) { return series_j01(x); }
BesselPair bessel_asymptotic_j01(double x) { return asymptotic_j01(x); }
}  // namespace detail

BesselPair bessel_j01(double x) {
  require_finite(x, "bessel");
  const double ax = std::fabs(x);
  BesselPair out = ax < kBesselSeriesLimit ? series_j01(ax) : asymptotic_j01(ax);
  if (x < 0.0) out.j1 = -out.j1;
  return out;
}

double bessel_j0(double x) { return bessel_j01(x).j0; }
double bessel_j1(double x) { return bessel_j01(x).j1; }

void laguerre_sequences(double z, std::span<double> l0, std::span<double> l1) {
  laguerre_sequences_weighted(z, 0.0, l0, l1);
}

void laguerre_sequences_weighted(double z, double log_weight, std::span<double> l0, std::span<double> l1) {
  // (k+1) L^a_{k+1} = (2k + 1 + a - z) L^a_k - (k + a) L^a_{k-1}
  // The recurrence runs on rescaled values; `exponent` holds the factor removed so
  // far, so large z cannot overflow before the weight is applied.
  constexpr double kRescale = 1e150;
  const double log_rescale = std::log(kRescale);
  auto fill = [z, log_weight, log_rescale](std::span<double> out, double alpha) {
    if (out.empty()) return;
    double exponent = log_weight;
    double prev = 0.0, cur = 1.0;
    out[0] = std::exp(exponent);
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
      const double kk = static_cast<double>(k);
      const double next = ((2.0 * kk + 1.0 + alpha - z) * cur - (kk + alpha) * prev) / (kk + 1.0);
      prev = cur;
      cur = next;
      if (std::fabs(cur) > kRescale) {
        cur /= kRescale;
        prev /= kRescale;
        exponent += log_rescale;
      }
      out[k + 1] = cur * std::exp(exponent);
    }
  };
  fill(l0, 0.0);
  fill(l1, 1.0);
}

double confluent_f(int n, int gamma, double z) {
  if (gamma != 1 && gamma != 2) throw UnsupportedInput("confluent_f: gamma must be 1 or 2");
  if (n < 0) throw DomainError("confluent_f: n must be >= 0");
  if (n > kMaxLaguerreOrder) throw DomainError("confluent_f: n exceeds the Laguerre order cap");
  if (!std::isfinite(z) || z < 0.0) throw DomainError("confluent_f: z must be finite and >= 0");
  std::vector<double> seq(static_cast<std::size_t>(n) + 1);
  if (gamma == 1) {
    laguerre_sequences(z, seq, {});
    return seq.back();
  }
  laguerre_sequences(z, {}, seq);
  return seq.back() / (n + 1.0);
}

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  if (!(a < b)) throw DomainError("gauss_legendre: requires a < b");
  const std::size_t n = static_cast<std::size_t>(order);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // Roots are symmetric; solve for the positive half with Newton on P_n.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) {
        // one more evaluation for a consistent derivative
        p0 = 1.0;
        p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // nodes ascending: index i holds the i-th largest, mirror into place
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.nodes[i] = mid - half * x;
    rule.weights[n - 1 - i] = half * w;
    rule.weights[i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

const QuadratureRule& reference_rule16() {
  static const QuadratureRule rule = gauss_legendre(16, -1.0, 1.0);
  return rule;
}

int oscillatory_panel_count(double a, double b, double phase_scale) {
  const double quarter_periods = phase_scale * (b - a) / (0.5 * kPi);
  const double panels = std::ceil(quarter_periods);
  if (panels > 1e7) throw DomainError("integrate_oscillatory: phase range too large");
  return std::max(kMinOscillatoryPanels, static_cast<int>(panels));
}

double radial_integral(std::span<const double> r, std::span<const double> f) {
  if (r.size() != f.size()) throw DomainError("radial_integral: size mismatch");
  if (r.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double h = r[i + 1] - r[i];
    if (!(h > 0.0)) throw DomainError("radial_integral: grid must be strictly increasing");
    sum += 0.5 * h * (r[i] * f[i] + r[i + 1] * f[i + 1]);
  }
  sum *= 2.0 * kPi;
  if (r[0] == 0.0) {
    const double h0 = r[1] - r[0];
    sum += h0 * h0 / 12.0 * 2.0 * kPi * f[0];
  }
  return sum;
}

}  // namespace ripple::numerics

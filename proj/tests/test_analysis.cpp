#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ripple/analysis.hpp"
#include "ripple/errors.hpp"
#include "ripple/landau_packet.hpp"
#include "ripple/numerics.hpp"

using namespace ripple;
using namespace ripple::analysis;
using numerics::kPi;

namespace {

DensityProfile sampled(double r_max, std::size_t n, auto f) {
  DensityProfile p;
  p.r_grid = linspace(0.0, r_max, n);
  for (double r : p.r_grid) p.rho.push_back(f(r));
  return p;
}

CenterTrace sampled_trace(double t_end, double dt, auto f) {
  CenterTrace tr;
  for (double t = 0.0; t <= t_end + 1e-9; t += dt) {
    tr.t.push_back(t);
    tr.rho0.push_back(f(t));
  }
  return tr;
}

}  // namespace

TEST_CASE("detect_rings: centred Gaussian has no rings") {
  const auto p = sampled(40.0, 801, [](double r) { return std::exp(-r * r / 8.0); });
  const auto d = detect_rings(p);
  CHECK(d.rings.empty());
  REQUIRE(d.central_height.has_value());
  CHECK(*d.central_height == 1.0);
}

TEST_CASE("detect_rings: synthetic ring") {
  const auto p = sampled(40.0, 801, [](double r) { return std::exp(-(r - 10.0) * (r - 10.0) / 2.0); });
  const auto d = detect_rings(p);
  REQUIRE(d.rings.size() == 1);
  CHECK(std::fabs(d.rings[0].radius - 10.0) < 0.05);
  CHECK(std::fabs(d.rings[0].fwhm - 2.0 * std::sqrt(2.0 * std::log(2.0))) < 0.05);
  CHECK(d.rings[0].height == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(d.rings[0].index == 0);
  CHECK_FALSE(d.central_height.has_value());

  // Off-grid centre: refinement stays sub-step.
  const auto q = sampled(40.0, 401, [](double r) { return std::exp(-(r - 12.37) * (r - 12.37) / 2.0); });
  const auto e = detect_rings(q);
  REQUIRE(e.rings.size() == 1);
  CHECK(std::fabs(e.rings[0].radius - 12.37) < 0.02);
}

TEST_CASE("detect_rings: two rings on a central peak, prominence filter") {
  auto f = [](double r) {
    return std::exp(-r * r / 2.0) + 0.5 * std::exp(-(r - 10.0) * (r - 10.0) / 2.0) +
           0.3 * std::exp(-(r - 20.0) * (r - 20.0) / 2.0) + 0.01 * std::exp(-(r - 30.0) * (r - 30.0) / 2.0);
  };
  const auto p = sampled(40.0, 801, f);
  const auto d = detect_rings(p);
  REQUIRE(d.rings.size() == 2);
  CHECK(d.rings[0].radius < d.rings[1].radius);
  CHECK(d.rings[1].index == 1);
  CHECK(detect_rings(p, 0.005).rings.size() == 3);
}

TEST_CASE("detect_rings: flat baseline shifts radii by less than a step") {
  auto f = [](double r) {
    return std::exp(-(r - 8.0) * (r - 8.0) / 3.0) + 0.6 * std::exp(-(r - 17.0) * (r - 17.0) / 2.0);
  };
  const auto p = sampled(40.0, 801, f);
  auto shifted = p;
  for (auto& v : shifted.rho) v += 0.01;
  const auto a = detect_rings(p), b = detect_rings(shifted);
  REQUIRE(a.rings.size() == b.rings.size());
  for (std::size_t i = 0; i < a.rings.size(); ++i) CHECK(std::fabs(a.rings[i].radius - b.rings[i].radius) < 0.05);
}

TEST_CASE("detect_rings: errors") {
  const auto narrow = sampled(40.0, 81, [](double r) { return std::exp(-(r - 10.0) * (r - 10.0) / 0.1); });
  CHECK_THROWS_AS(detect_rings(narrow), ResolutionError);
  auto bad = narrow;
  bad.rho.pop_back();
  CHECK_THROWS_AS(detect_rings(bad), DomainError);
  CHECK_THROWS_AS(detect_rings(narrow, 1.5), DomainError);
}

TEST_CASE("ring_speed: lines and invariances") {
  std::vector<RadiusSample> s;
  for (double t = 10.0; t <= 30.0; t += 2.0) s.push_back({t, 1.0 * t + 2.0});
  const auto fit = ring_speed(s);
  CHECK(fit.speed == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.max_residual < 1e-12);

  std::vector<RadiusSample> flat{{0.0, 5.0}, {1.0, 5.0}, {2.0, 5.0}};
  CHECK(ring_speed(flat).speed == 0.0);

  std::mt19937_64 rng(41);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<RadiusSample> noisy;
  for (double t = 0.0; t <= 20.0; t += 1.0) noisy.push_back({t, 0.7 * t + noise(rng)});
  const double base = ring_speed(noisy).speed;
  auto moved = noisy;
  for (auto& x : moved) x.t += 123.0;
  CHECK(ring_speed(moved).speed == doctest::Approx(base).epsilon(1e-10));
  auto scaled = noisy;
  for (auto& x : scaled) x.t *= 2.5;
  CHECK(ring_speed(scaled).speed == doctest::Approx(base / 2.5).epsilon(1e-10));

  CHECK_THROWS_AS(ring_speed(std::vector<RadiusSample>{{0, 1}, {1, 2}}), InsufficientData);
  CHECK_THROWS_AS(ring_speed(std::vector<RadiusSample>{{0, 1}, {0, 2}, {1, 3}}), DomainError);
}

TEST_CASE("dominant_period: pure cosine") {
  const auto tr = sampled_trace(1000.0, 1.0, [](double t) { return 1.0 + std::cos(2.0 * kPi * t / 100.0); });
  const auto est = dominant_period(tr);
  CHECK(std::fabs(est.period - 100.0) < 0.5);
  CHECK_FALSE(est.multi_modal);

  // Short trace: fewer than five periods uses zero crossings.
  const auto short_tr = sampled_trace(350.0, 1.0, [](double t) { return 2.0 + std::cos(2.0 * kPi * t / 100.0 + 0.4); });
  CHECK(std::fabs(dominant_period(short_tr).period - 100.0) < 1.0);
}

TEST_CASE("dominant_period: noisy sinusoids of random period") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> pd(20.0, 150.0), ph(0.0, 2.0 * kPi);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int trial = 0; trial < 25; ++trial) {
    const double period = pd(rng), phase = ph(rng);
    const auto tr = sampled_trace(8.0 * period, period / 50.0, [&](double t) {
      return 1.0 + std::cos(2.0 * kPi * t / period + phase) + noise(rng);
    });
    CAPTURE(period);
    CHECK(std::fabs(dominant_period(tr).period - period) < 0.02 * period);
  }
}

TEST_CASE("dominant_period: errors and multi-modal traces") {
  const auto flat = sampled_trace(100.0, 1.0, [](double) { return 3.0; });
  CHECK_THROWS_AS(dominant_period(flat), FlatTrace);
  CenterTrace few{{0, 1, 2}, {1, 2, 1}};
  CHECK_THROWS_AS(dominant_period(few), InsufficientData);

  // Two incommensurate tones of similar strength.
  const auto two = sampled_trace(2000.0, 1.0, [](double t) {
    return 2.0 + std::cos(2.0 * kPi * t / 100.0) + 0.9 * std::cos(2.0 * kPi * t / 37.0);
  });
  CHECK(dominant_period(two).multi_modal);

  // Weak-field centre density: no exact periodicity.
  const auto e = landau::gaussian_coefficients(24.0, landau::magnetic_length(0.1));
  CenterTrace tr;
  for (double t = 0.0; t <= 2000.0; t += 1.0) tr.t.push_back(t);
  tr.rho0 = landau::center_trace(e, tr.t);
  CHECK(dominant_period(tr).multi_modal);
}

TEST_CASE("total_probability: normalized Gaussian and truncation flag") {
  const double s = 3.0;
  const auto p = sampled(40.0, 801, [s](double r) { return std::exp(-r * r / (2.0 * s * s)) / (2.0 * kPi * s * s); });
  const auto est = total_probability(p);
  CHECK(std::fabs(est.value - 1.0) < 1e-6);
  CHECK_FALSE(est.tail_truncated);
  const auto cut = sampled(6.0, 121, [s](double r) { return std::exp(-r * r / (2.0 * s * s)) / (2.0 * kPi * s * s); });
  CHECK(total_probability(cut).tail_truncated);
}

TEST_CASE("local_maxima") {
  const std::vector<double> v{0, 1, 0, 2, 2, 1, 3};
  const auto m = local_maxima(v);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == 1);
  CHECK(m[1] == 3);
}

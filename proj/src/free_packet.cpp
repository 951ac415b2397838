#include "ripple/free_packet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ripple/errors.hpp"
#include "ripple/parallel.hpp"

namespace ripple::free_packet {

using numerics::kPi;

namespace {

constexpr double kGaussianCutoff = 7.0;  // k domain is [0, 7 dk]

// Both envelope integrands advanced together through the quadrature.
struct Pair {
  complex a{};
  complex b{};
};
Pair operator+(const Pair& x, const Pair& y) { return {x.a + y.a, x.b + y.b}; }
Pair operator-(const Pair& x, const Pair& y) { return {x.a - y.a, x.b - y.b}; }
Pair operator*(const Pair& x, double s) { return {x.a * s, x.b * s}; }
double magnitude(const Pair& x) { return std::max(std::abs(x.a), std::abs(x.b)); }

void check_uniform_from_zero(std::span<const double> grid, const char* who) {
  if (grid.size() < 3) throw DomainError(std::string(who) + ": grid needs at least 3 points");
  if (grid.front() != 0.0) throw DomainError(std::string(who) + ": grid must start at 0");
  const double h = grid[1] - grid[0];
  if (!(h > 0.0)) throw DomainError(std::string(who) + ": grid must be increasing");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double step = grid[i] - grid[i - 1];
    if (std::fabs(step - h) > 1e-9 * std::max(1.0, std::fabs(grid[i])))
      throw DomainError(std::string(who) + ": grid must be uniform");
  }
}

void check_profile(const CoefficientProfile& p) {
  if (p.family == CoefficientFamily::tabulated) {
    const auto& t = p.table;
    if (t.c_plus.size() != t.k.size() || t.c_minus.size() != t.k.size())
      throw DomainError("coefficient table: column sizes differ");
    check_uniform_from_zero(t.k, "coefficient table");
    return;
  }
  if (!(p.dk > 0.0) || !std::isfinite(p.dk)) throw DomainError("coefficient profile: dk must be > 0");
  if (p.amp_plus == 0.0 && p.amp_minus == 0.0)
    throw DegenerateProfile("coefficient profile: both branch amplitudes are zero");
}

// (C_+(k), C_-(k)) without re-deriving the shared shape twice.
inline std::pair<complex, complex> branch_coefficients(const CoefficientProfile& p, double k) {
  const double s = p.norm * p.shape(k);
  return {complex(p.amp_plus * s), complex(p.amp_minus * s)};
}

// Simpson sum over the table nodes of a tabulated profile.
template <class F>
Pair integrate_table(const CoefficientProfile& p, F&& integrand) {
  const auto& k = p.table.k;
  std::vector<Pair> samples(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) samples[i] = integrand(k[i], p.norm * p.table.c_plus[i],
                                                                   p.norm * p.table.c_minus[i]);
  return numerics::simpson_uniform<Pair>(samples, k[1] - k[0]);
}

}  // namespace

CoefficientProfile CoefficientProfile::gaussian(double dk, double amp_plus, double amp_minus) {
  CoefficientProfile p;
  p.family = CoefficientFamily::gaussian;
  p.dk = dk;
  p.amp_plus = amp_plus;
  p.amp_minus = amp_minus;
  check_profile(p);
  return p;
}

CoefficientProfile CoefficientProfile::step(double dk, double amp_plus, double amp_minus) {
  CoefficientProfile p = gaussian(dk, amp_plus, amp_minus);
  p.family = CoefficientFamily::step;
  return p;
}

CoefficientProfile CoefficientProfile::tabulated(CoefficientTable table) {
  CoefficientProfile p;
  p.family = CoefficientFamily::tabulated;
  p.table = std::move(table);
  check_profile(p);
  p.dk = p.table.k.back();
  p.amp_plus = 1.0;
  p.amp_minus = 1.0;
  return p;
}

double CoefficientProfile::k_max() const {
  switch (family) {
    case CoefficientFamily::gaussian: return kGaussianCutoff * dk;
    case CoefficientFamily::step: return dk;
    case CoefficientFamily::tabulated: return table.k.back();
  }
  return dk;
}

double CoefficientProfile::shape(double k) const {
  switch (family) {
    case CoefficientFamily::gaussian: return std::exp(-(k * k) / (dk * dk));
    case CoefficientFamily::step: return k <= dk ? 1.0 : 0.0;
    case CoefficientFamily::tabulated: break;
  }
  throw UnsupportedInput("shape() is undefined for tabulated profiles");
}

namespace {

complex table_lookup(const CoefficientTable& t, const std::vector<complex>& column, double k) {
  // Linear interpolation; only used for point queries, never inside the quadratures.
  if (k < 0.0 || k > t.k.back()) return {};
  const double h = t.k[1] - t.k[0];
  const std::size_t i = std::min(static_cast<std::size_t>(k / h), t.k.size() - 2);
  const double w = (k - t.k[i]) / h;
  return column[i] * (1.0 - w) + column[i + 1] * w;
}

}  // namespace

complex CoefficientProfile::c_plus(double k) const {
  if (family == CoefficientFamily::tabulated) return norm * table_lookup(table, table.c_plus, k);
  return norm * amp_plus * shape(k);
}

complex CoefficientProfile::c_minus(double k) const {
  if (family == CoefficientFamily::tabulated) return norm * table_lookup(table, table.c_minus, k);
  return norm * amp_minus * shape(k);
}

double spectral_weight(const CoefficientProfile& profile) {
  check_profile(profile);
  constexpr double prefactor = 16.0 * kPi * kPi * kPi;  // 2 (2 pi)^2 * 2 pi
  const double n2 = profile.norm * profile.norm;
  switch (profile.family) {
    case CoefficientFamily::gaussian: {
      const double dk2 = profile.dk * profile.dk;
      const double radial = 0.25 * dk2 * -std::expm1(-2.0 * kGaussianCutoff * kGaussianCutoff);
      return prefactor * n2 * (profile.amp_plus * profile.amp_plus + profile.amp_minus * profile.amp_minus) *
             radial;
    }
    case CoefficientFamily::step: {
      const double radial = 0.5 * profile.dk * profile.dk;
      return prefactor * n2 * (profile.amp_plus * profile.amp_plus + profile.amp_minus * profile.amp_minus) *
             radial;
    }
    case CoefficientFamily::tabulated: {
      const auto& t = profile.table;
      std::vector<double> samples(t.k.size());
      for (std::size_t i = 0; i < t.k.size(); ++i)
        samples[i] = t.k[i] * (std::norm(t.c_plus[i]) + std::norm(t.c_minus[i]));
      return prefactor * n2 * numerics::simpson_uniform<double>(samples, t.k[1] - t.k[0]);
    }
  }
  return 0.0;
}

CoefficientProfile normalize(CoefficientProfile profile) {
  profile.norm = 1.0;
  const double weight = spectral_weight(profile);
  if (!(weight > 0.0)) throw DegenerateProfile("normalize: profile carries no probability");
  profile.norm = 1.0 / std::sqrt(weight);
  return profile;
}

EnvelopePair envelope_radial(const CoefficientProfile& profile, Valley valley, double r, double t,
                             double tol) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("envelope_radial: r must be finite and >= 0");
  if (!std::isfinite(t)) throw DomainError("envelope_radial: t must be finite");
  const double v = PhysicalConstants::fermi_speed;

  auto term = [&](double k, complex cp, complex cm) -> Pair {
    const auto [j0, j1] = numerics::bessel_j01(k * r);
    const complex forward = std::polar(1.0, -v * k * t);
    const complex a = cp * forward;
    const complex b = cm * std::conj(forward);
    return {k * j0 * (a + b), k * j1 * (a - b)};
  };

  Pair sum;
  if (profile.family == CoefficientFamily::tabulated) {
    sum = integrate_table(profile, term);
  } else {
    auto integrand = [&](double k) {
      const auto [cp, cm] = branch_coefficients(profile, k);
      return term(k, cp, cm);
    };
    sum = numerics::integrate_oscillatory(integrand, 0.0, profile.k_max(), r + v * std::fabs(t), tol);
  }

  EnvelopePair out;
  out.psi1 = 2.0 * kPi * sum.a;
  out.psi2 = complex(0.0, 2.0 * kPi) * sum.b;
  out.winding1 = 0;
  out.winding2 = valley_sign(valley);
  out.valley = valley;
  out.r = r;
  out.t = t;
  return out;
}

SpinorValue envelope_direct(const CoefficientProfile& profile, Valley valley, double x, double y,
                            double t, double tol) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(t))
    throw DomainError("envelope_direct: non-finite coordinate");
  const double v = PhysicalConstants::fermi_speed;
  const double radius = std::hypot(x, y);

  // Periodic trapezoid in theta; aliasing error ~ J_M(k r), negligible for M > k r + 48.
  int count = static_cast<int>(std::ceil(profile.k_max() * radius)) + 48;
  count = std::max(32, count + (count % 2));
  std::vector<double> proj_x(count), proj_y(count);
  std::vector<complex> spin(count);
  const int s = valley_sign(valley);
  for (int j = 0; j < count; ++j) {
    const double theta = 2.0 * kPi * j / count;
    proj_x[j] = std::cos(theta);
    proj_y[j] = std::sin(theta);
    spin[j] = std::polar(1.0, s * theta);
  }
  const double dtheta = 2.0 * kPi / count;

  auto term = [&](double k, complex cp, complex cm) -> Pair {
    complex s0{}, s1{};
    for (int j = 0; j < count; ++j) {
      const complex wave = std::polar(1.0, k * (x * proj_x[j] + y * proj_y[j]));
      s0 += wave;
      s1 += wave * spin[j];
    }
    const complex forward = std::polar(1.0, -v * k * t);
    const complex a = cp * forward;
    const complex b = cm * std::conj(forward);
    return {k * dtheta * s0 * (a + b), k * dtheta * s1 * (a - b)};
  };

  Pair sum;
  if (profile.family == CoefficientFamily::tabulated) {
    sum = integrate_table(profile, term);
  } else {
    auto integrand = [&](double k) {
      const auto [cp, cm] = branch_coefficients(profile, k);
      return term(k, cp, cm);
    };
    sum = numerics::integrate_oscillatory(integrand, 0.0, profile.k_max(), radius + v * std::fabs(t), tol);
  }
  return {sum.a, sum.b};
}

std::vector<DensityProfile> density_field(const CoefficientProfile& profile, Valley valley,
                                          std::span<const double> r_grid,
                                          std::span<const double> t_list,
                                          const FieldOptions& options) {
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1])) throw DomainError("density_field: r_grid must be increasing");
  const std::size_t nr = r_grid.size();
  std::vector<DensityProfile> out(t_list.size());
  for (std::size_t it = 0; it < t_list.size(); ++it) {
    out[it].t = t_list[it];
    out[it].r_grid.assign(r_grid.begin(), r_grid.end());
    out[it].rho.assign(nr, 0.0);
  }
  parallel_for(
      nr * t_list.size(),
      [&](std::size_t idx) {
        const std::size_t it = idx / nr;
        const std::size_t ir = idx % nr;
        out[it].rho[ir] = density(envelope_radial(profile, valley, r_grid[ir], t_list[it], options.tol));
      },
      options.threads);
  return out;
}

CoefficientProfile coefficients_from_initial(const RadialSamples& psi1_0,
                                             const RadialSamples& psi2_0, Valley valley,
                                             std::span<const double> k_grid) {
  (void)valley;  // the radial transforms are identical for K and K'
  if (psi1_0.r.size() != psi1_0.values.size() || psi2_0.r.size() != psi2_0.values.size())
    throw DomainError("coefficients_from_initial: sample sizes differ from grid sizes");
  if (psi1_0.r != psi2_0.r) throw DomainError("coefficients_from_initial: components on different grids");
  check_uniform_from_zero(psi1_0.r, "coefficients_from_initial r grid");
  check_uniform_from_zero(k_grid, "coefficients_from_initial k grid");

  double peak = 0.0;
  for (const auto& v : psi1_0.values) peak = std::max(peak, std::abs(v));
  for (const auto& v : psi2_0.values) peak = std::max(peak, std::abs(v));
  // A winding-one component must vanish on the axis; anything else is not of the
  // circularly symmetric spinor form this transform inverts.
  if (std::abs(psi2_0.values.front()) > 1e-10 * peak)
    throw UnsupportedInput("coefficients_from_initial: Psi_2 must vanish at r = 0");

  const auto& r = psi1_0.r;
  const double h = r[1] - r[0];
  CoefficientTable table;
  table.k.assign(k_grid.begin(), k_grid.end());
  table.c_plus.resize(k_grid.size());
  table.c_minus.resize(k_grid.size());
  std::vector<complex> f0(r.size()), f1(r.size());
  for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
    const double k = k_grid[ik];
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto [j0, j1] = numerics::bessel_j01(k * r[i]);
      f0[i] = r[i] * psi1_0.values[i] * j0;
      f1[i] = r[i] * psi2_0.values[i] * j1;
    }
    // Hankel inversion of the forward J0 / J1 forms.
    const complex sum = numerics::simpson_uniform<complex>(f0, h) / (2.0 * kPi);
    const complex diff = numerics::simpson_uniform<complex>(f1, h) / complex(0.0, 2.0 * kPi);
    table.c_plus[ik] = 0.5 * (sum + diff);
    table.c_minus[ik] = 0.5 * (sum - diff);
  }
  return CoefficientProfile::tabulated(std::move(table));
}

SublatticeSplit sublattice_split(const CoefficientProfile& profile, Valley valley, double t,
                                 std::span<const double> r_grid, const FieldOptions& options) {
  check_uniform_from_zero(r_grid, "sublattice_split");
  std::vector<double> a(r_grid.size()), b(r_grid.size());
  parallel_for(
      r_grid.size(),
      [&](std::size_t i) {
        const EnvelopePair e = envelope_radial(profile, valley, r_grid[i], t, options.tol);
        a[i] = std::norm(e.psi1);
        b[i] = std::norm(e.psi2);
      },
      options.threads);
  return {numerics::radial_integral(r_grid, a), numerics::radial_integral(r_grid, b)};
}

}  // namespace ripple::free_packet

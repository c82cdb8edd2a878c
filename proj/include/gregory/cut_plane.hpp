#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gregory/density.hpp"
#include "gregory/quadrature.hpp"

namespace gregory {

using Complex = std::complex<double>;

// Membership in the cut plane C \ (-inf, 0]. The origin fails this test;
// evaluation routines treat it separately via the removable singularity.
inline bool in_cut_plane(Complex z) { return !(z.imag() == 0.0 && z.real() <= 0.0); }

// Principal Log(1+z) computed without cancellation for small |z|:
// Re = log1p(x(2+x) + y^2)/2, Im = atan2(y, 1+x).
inline Complex log1p_complex(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  return Complex(0.5 * std::log1p(x * (2.0 + x) + y * y), std::atan2(y, 1.0 + x));
}

// F(z) = z / ((1+z) Log(1+z)) with the principal branch; F(0) = 1 by the
// removable singularity (constant term of x/ln(1+x)).
inline Complex f_direct(Complex z) {
  if (z == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  if (!in_cut_plane(z))
    throw std::domain_error("f_direct: z lies on the branch cut (-inf, 0]");
  return z / ((1.0 + z) * log1p_complex(z));
}

namespace detail {

// Truncation window for Int_1^inf rho(t)/(z+t) dt after t = 1 + e^w. Tail
// majorants: 2/w^2 on the right and (1+|z|)/(|1+z|^2 w^2) on the left, each
// kept below abs_tol/4.
inline std::pair<double, double> representation_window(Complex z, double abs_tol) {
  const double mod1pz2 = std::norm(1.0 + z);
  const double w0 = std::max(10.0, std::log(8.0 * (1.0 + std::abs(z))));
  const double hi = std::max(w0, 8.0 / abs_tol);
  const double lo = -std::max(w0, 4.0 * (1.0 + std::abs(z)) / (mod1pz2 * abs_tol));
  return {lo, hi};
}

}  // namespace detail

// F(z) via the Stieltjes representation Int_1^inf rho(t)/(z+t) dt, evaluated
// as two real quadratures (real and imaginary parts) in the w coordinate,
// where rho(t) dt = (1 + e^w)/(w^2 + pi^2) dw.
inline Complex f_via_representation(Complex z, double rel_tol = 1e-12) {
  if (z != Complex(0.0, 0.0) && !in_cut_plane(z))
    throw std::domain_error("f_via_representation: z lies on the branch cut (-inf, 0]");
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("f_via_representation: rel_tol must be positive");
  const double x = z.real();
  const double y = z.imag();
  const double abs_tol = rel_tol / 100.0;
  const auto window = detail::representation_window(z, abs_tol);

  // For w > 50 both parts are rewritten in u = e^{-w} to stay finite.
  auto re_part = [x, y](double w) {
    const double q = w * w + kPiSq;
    if (w > 50.0) {
      const double u = std::exp(-w);
      const double a = 1.0 + (1.0 + x) * u;
      const double b = 1.0 + u;
      const double yu = y * u;
      return b * a / ((a * a + yu * yu) * q);
    }
    const double e = std::exp(w);
    const double s = 1.0 + x + e;
    return (1.0 + e) * s / ((s * s + y * y) * q);
  };
  auto im_part = [x, y](double w) {
    const double q = w * w + kPiSq;
    if (w > 50.0) {
      const double u = std::exp(-w);
      const double a = 1.0 + (1.0 + x) * u;
      const double b = 1.0 + u;
      const double yu = y * u;
      return -y * u * b / ((a * a + yu * yu) * q);
    }
    const double e = std::exp(w);
    const double s = 1.0 + x + e;
    return -y * (1.0 + e) / ((s * s + y * y) * q);
  };

  IntegralTask task;
  task.domain = Domain::whole_line();
  task.rel_tol = rel_tol;
  task.abs_tol = abs_tol;
  task.window = window;

  task.integrand = re_part;
  const IntegralResult re = integrate(task);
  task.integrand = im_part;
  const IntegralResult im = integrate(task);
  return Complex(re.value, im.value);
}

// 1/ln(1+x) = 1/x + Int_1^inf dt / (([ln(t-1)]^2 + pi^2)(x+t)), x > 0.
inline double reciprocal_log_representation(double x, double rel_tol = 1e-12) {
  if (!(x > 0.0))
    throw std::domain_error("reciprocal_log_representation: defined for x > 0 only");
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("reciprocal_log_representation: rel_tol must be positive");
  const double abs_tol = rel_tol / 100.0;
  IntegralTask task;
  task.integrand = [x](double w) {
    const double q = w * w + kPiSq;
    if (w > 50.0) return 1.0 / ((1.0 + (1.0 + x) * std::exp(-w)) * q);
    const double e = std::exp(w);
    return e / ((x + 1.0 + e) * q);
  };
  task.domain = Domain::whole_line();
  task.rel_tol = rel_tol;
  task.abs_tol = abs_tol;
  // Tails: e^w/(1+x) on the left, 1/w^2 on the right.
  task.window = std::make_pair(std::log(abs_tol / 4.0) - 8.0, 4.0 / abs_tol + 16.0);
  return 1.0 / x + integrate(task).value;
}

// d^k/dx^k [x/ln(1+x)] = (-1)^{k+1} k! Int_1^inf [t/([ln(t-1)]^2+pi^2)]
// (x+t)^{-(k+1)} dt for x > 0. Float cross-checks degrade beyond k = 8, so
// larger orders are rejected.
inline double kth_derivative_via_integral(double x, int k, double rel_tol = 1e-12) {
  if (!(x > 0.0))
    throw std::domain_error("kth_derivative_via_integral: defined for x > 0 only");
  if (k < 1 || k > 8)
    throw std::invalid_argument("kth_derivative_via_integral: order must satisfy 1 <= k <= 8");
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("kth_derivative_via_integral: rel_tol must be positive");
  const double factorial = std::tgamma(static_cast<double>(k) + 1.0);
  const double abs_tol = rel_tol / 100.0;
  const double scaled_tol = abs_tol / factorial;

  IntegralTask task;
  task.integrand = [x, k](double w) {
    const double q = w * w + kPiSq;
    if (w > 50.0) {
      const double u = std::exp(-w);
      const double b = 1.0 + u;
      const double a = 1.0 + (1.0 + x) * u;
      return b * std::exp(-(k - 1) * w) / (std::pow(a, k + 1) * q);
    }
    const double e = std::exp(w);
    const double s = x + 1.0 + e;
    return (1.0 + e) * e / (std::pow(s, k + 1) * q);
  };
  task.domain = Domain::whole_line();
  task.rel_tol = rel_tol;
  task.abs_tol = scaled_tol;
  // Tails: e^w on the left; 2/w^2 (k = 1) or ~e^{-(k-1)w} (k >= 2) on the
  // right, measured against the k!-scaled budget.
  const double lo = std::log(scaled_tol / 4.0) - 8.0;
  const double hi = (k == 1) ? 8.0 / scaled_tol + 16.0
                             : std::log(8.0 / ((k - 1) * scaled_tol)) / (k - 1) + 16.0;
  task.window = std::make_pair(lo, hi);

  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  return sign * factorial * integrate(task).value;
}

// Probe just above the cut at z = -t + i eps. As eps -> 0+ the imaginary
// part tends to 0 for 0 < t < 1 and to -pi rho(t) for t > 1; the limit
// diverges at t = 1, so that abscissa is rejected.
struct BoundaryProbe {
  double t = 0.0;
  double epsilon = 0.0;
};

inline double boundary_imaginary_limit(const BoundaryProbe& probe) {
  if (!(probe.t > 0.0))
    throw std::domain_error("boundary_imaginary_limit: requires t > 0");
  if (probe.t == 1.0)
    throw std::invalid_argument("boundary_imaginary_limit: limit diverges at t = 1");
  if (!(probe.epsilon > 0.0) || !(probe.epsilon < 1.0))
    throw std::invalid_argument("boundary_imaginary_limit: requires 0 < epsilon < 1");
  return f_direct(Complex(-probe.t, probe.epsilon)).imag();
}

// Upper bound r/((r-1) ln(r-1)) for |F| on the circle |z| = r, r > 2.
inline double decay_bound(double r) {
  if (!(r > 2.0)) throw std::domain_error("decay_bound: requires r > 2");
  return r / ((r - 1.0) * std::log(r - 1.0));
}

// max_theta |F(r e^{i theta})| over a grid in (-pi, pi); stays below
// decay_bound(r), which tends to 0 as r grows.
inline double decay_at_infinity_probe(double r, std::span<const double> theta_grid) {
  if (!(r > 2.0)) throw std::domain_error("decay_at_infinity_probe: requires r > 2");
  if (theta_grid.empty())
    throw std::invalid_argument("decay_at_infinity_probe: empty theta grid");
  double max_mod = 0.0;
  for (double theta : theta_grid) {
    if (!(theta > -std::numbers::pi) || !(theta < std::numbers::pi))
      throw std::invalid_argument("decay_at_infinity_probe: theta must lie in (-pi, pi)");
    max_mod = std::max(max_mod, std::abs(f_direct(std::polar(r, theta))));
  }
  return max_mod;
}

// Per-epsilon maxima of |z F(z)| on the right half-disc arc z = eps e^{i theta},
// theta in [-pi/2, pi/2]. The envelope 10 eps/|ln eps| is attached for
// reporting only; no decay rate is asserted.
struct SmallZProbeResult {
  double epsilon = 0.0;
  double max_abs_zf = 0.0;
  double envelope = 0.0;
};

inline std::vector<SmallZProbeResult> small_z_vanishing_probe(std::span<const double> eps_grid,
                                                              std::span<const double> theta_grid) {
  if (eps_grid.empty() || theta_grid.empty())
    throw std::invalid_argument("small_z_vanishing_probe: grids must be nonempty");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || !(eps_grid[i] < 1.0))
      throw std::invalid_argument("small_z_vanishing_probe: eps values must lie in (0, 1)");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw std::invalid_argument("small_z_vanishing_probe: eps grid must be strictly decreasing");
  }
  for (double theta : theta_grid)
    if (!(theta >= -std::numbers::pi / 2.0) || !(theta <= std::numbers::pi / 2.0))
      throw std::invalid_argument("small_z_vanishing_probe: theta must lie in [-pi/2, pi/2]");

  std::vector<SmallZProbeResult> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    double max_mod = 0.0;
    for (double theta : theta_grid) {
      const Complex z = std::polar(eps, theta);
      max_mod = std::max(max_mod, std::abs(z * f_direct(z)));
    }
    out.push_back(SmallZProbeResult{eps, max_mod, 10.0 * eps / std::abs(std::log(eps))});
  }
  return out;
}

}  // namespace gregory

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gregory/quadrature.hpp"
#include "gregory/reporting.hpp"

namespace gregory {

inline constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

// One sample of the representing density on (1, inf).
struct DensitySample {
  double t = 0.0;
  double rho = 0.0;
};

// rho(t) = t / ((t-1) ([ln(t-1)]^2 + pi^2)), t > 1. Evaluated as
// t / ((t-1) * L): when (t-1)*L overflows for enormous t the quotient
// flushes to 0, matching the analytic limit along that path.
inline double density_rho(double t) {
  if (!(t > 1.0)) throw std::domain_error("density_rho: defined for t > 1 only");
  const double l = std::log(t - 1.0);
  const double denom_factor = l * l + kPiSq;
  if (!std::isfinite(denom_factor)) return 0.0;
  return t / ((t - 1.0) * denom_factor);
}

// Log-spaced grid with exact endpoints; rho attached per point.
inline std::vector<DensitySample> density_grid(double t_min, double t_max, int points) {
  if (!(1.0 < t_min) || !(t_min < t_max))
    throw std::invalid_argument("density_grid: need 1 < t_min < t_max");
  if (points < 2) throw std::invalid_argument("density_grid: need at least 2 points");
  std::vector<DensitySample> grid;
  grid.reserve(static_cast<std::size_t>(points));
  const double llo = std::log(t_min);
  const double lhi = std::log(t_max);
  for (int i = 0; i < points; ++i) {
    double t;
    if (i == 0)
      t = t_min;
    else if (i == points - 1)
      t = t_max;
    else
      t = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (points - 1));
    grid.push_back(DensitySample{t, density_rho(t)});
  }
  return grid;
}

// ln(1 + e^w) without overflow.
inline double softplus(double w) {
  return w > 0.0 ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w));
}

// ln(e^y - 1) without overflow or cancellation.
inline double log_expm1(double y) {
  return y > 36.0 ? y + std::log1p(-std::exp(-y)) : std::log(std::expm1(y));
}

// Integrand of the positive moment Int_1^inf dt/(([ln(t-1)]^2 + pi^2) t^n)
// in the t coordinate (sampling/tests) and after t = 1 + e^w (quadrature).
inline double bk2_weight_t(int n, double t) {
  if (!(t > 1.0)) throw std::domain_error("bk2_weight_t: defined for t > 1 only");
  const double l = std::log(t - 1.0);
  return 1.0 / ((l * l + kPiSq) * std::pow(t, n));
}

inline double bk2_weight_w(int n, double w) {
  return std::exp(w - n * softplus(w)) / (w * w + kPiSq);
}

// Truncation window for the w-coordinate moment integrand, sized so each
// discarded tail is below abs_tol/4:
//   left:  integrand <= e^w            => w_lo = ln(abs_tol/4)
//   right: n = 1: integrand <= 1/w^2   => w_hi = 4/abs_tol
//          n >= 2: <= e^{-(n-1)w}      => w_hi = ln(4/((n-1) abs_tol))/(n-1)
inline std::pair<double, double> bk2_integral_window(int n, double abs_tol) {
  const double lo = std::log(abs_tol / 4.0) - 8.0;
  const double hi = (n == 1) ? 4.0 / abs_tol + 16.0
                             : std::log(4.0 / ((n - 1) * abs_tol)) / (n - 1) + 16.0;
  return {lo, hi};
}

// (-1)^{n+1} b_n by quadrature of the weight above. The reported error
// estimate includes the abs_tol/2 budget of the two discarded tails.
inline IntegralResult bk2_via_integral(int n, double rel_tol = 1e-12) {
  if (n < 1) throw std::invalid_argument("bk2_via_integral: diverges for n = 0; need n >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("bk2_via_integral: rel_tol must be positive");
  const double abs_tol = rel_tol / 100.0;
  IntegralTask task;
  task.integrand = [n](double w) { return bk2_weight_w(n, w); };
  task.domain = Domain::whole_line();
  task.rel_tol = rel_tol;
  task.abs_tol = abs_tol / 2.0;
  task.window = bk2_integral_window(n, abs_tol);
  IntegralResult result = integrate(task);
  result.error_estimate += abs_tol / 2.0;
  return result;
}

// Same moment transported to (0,1) by t = 1/s:
//   Int_0^1 s^{n-2} / ([ln(1/s - 1)]^2 + pi^2) ds.
inline double moment_integrand_s(int n, double s) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::domain_error("moment_integrand_s: defined on (0, 1) only");
  const double l = std::log1p(-s) - std::log(s);  // ln((1-s)/s)
  return std::pow(s, n - 2) / (l * l + kPiSq);
}

// Evaluates the (0,1) moment through the further substitution s = e^{-y},
//   Int_0^inf e^{-(n-1)y} / ([ln(e^y - 1)]^2 + pi^2) dy,
// a numerical route independent of bk2_via_integral (different integrand,
// different compactification, no shared truncation).
inline IntegralResult moment_unit_interval(int n, double rel_tol = 1e-12) {
  if (n < 1) throw std::invalid_argument("moment_unit_interval: diverges for n = 0; need n >= 1");
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("moment_unit_interval: rel_tol must be positive");
  IntegralTask task;
  task.integrand = [n](double y) {
    const double l = log_expm1(y);
    const double base = 1.0 / (l * l + kPiSq);
    return n == 1 ? base : std::exp(-(n - 1) * y) * base;
  };
  task.domain = Domain::semi_infinite_from(0.0);
  task.rel_tol = rel_tol;
  task.abs_tol = rel_tol / 100.0;
  return integrate(task);
}

// Int_1^inf rho(t)/t dt = 1: under t = 1 + e^w the integrand is exactly
// 1/(w^2 + pi^2), truncated with the 1/w^2 tail majorant on both sides.
inline VerificationRecord total_mass_identity(double tol = 1e-10) {
  if (!(tol > 0.0)) throw std::invalid_argument("total_mass_identity: tol must be positive");
  const double abs_tol = tol / 100.0;
  IntegralTask task;
  task.integrand = [](double w) { return 1.0 / (w * w + kPiSq); };
  task.domain = Domain::whole_line();
  task.rel_tol = tol;
  task.abs_tol = abs_tol / 2.0;
  const double w_cut = 4.0 / abs_tol + 16.0;
  task.window = std::make_pair(-w_cut, w_cut);
  IntegralResult result = integrate(task);
  result.error_estimate += abs_tol / 2.0;
  return check_abs("stieltjes-total-mass", 1.0, result.value, tol,
                   "Int_1^inf rho(t)/t dt = F(0+) = 1");
}

}  // namespace gregory

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gregory {

// Thrown when an integrand produces a non-finite value; carries the abscissa
// (in the integrand's own coordinate) where it happened.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(double abscissa)
      : std::runtime_error(format_message(abscissa)), abscissa_(abscissa) {}

  double abscissa() const { return abscissa_; }

 private:
  static std::string format_message(double x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "integrand evaluated to a non-finite value at x = %.17g", x);
    return buf;
  }

  double abscissa_;
};

enum class DomainKind { Finite, SemiInfiniteFrom, WholeLine };

struct Domain {
  DomainKind kind = DomainKind::WholeLine;
  double lo = 0.0;
  double hi = 0.0;

  static Domain finite(double lo, double hi) { return Domain{DomainKind::Finite, lo, hi}; }
  static Domain semi_infinite_from(double lo) {
    return Domain{DomainKind::SemiInfiniteFrom, lo, 0.0};
  }
  static Domain whole_line() { return Domain{DomainKind::WholeLine, 0.0, 0.0}; }
};

enum class Transform { None, ExpShiftAtLowerEndpoint, LogisticToLine };

// One integral to evaluate. `window` is the truncation interval used for
// whole-line integration (in the working coordinate); when absent a default
// sized for O(1/w^2) tails at the requested abs_tol is used. Callers that
// know a sharper tail majorant for their integrand family should pass the
// window computed from it.
struct IntegralTask {
  std::function<double(double)> integrand;
  Domain domain = Domain::whole_line();
  Transform transform = Transform::None;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_evals = 200000;
  std::optional<std::pair<double, double>> window;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// t = lo + exp(w): maps the whole line onto (lo, inf) with Jacobian exp(w).
// Regularizes integrable endpoint singularities like 1/((t-lo) ln^2(t-lo)).
struct ExpShiftMap {
  double lo = 0.0;
  double point(double w) const { return lo + std::exp(w); }
  double jacobian(double w) const { return std::exp(w); }
};

inline ExpShiftMap transform_semi_infinite_log(double lo) {
  if (!std::isfinite(lo)) throw std::invalid_argument("transform_semi_infinite_log: lo must be finite");
  return ExpShiftMap{lo};
}

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
inline constexpr double kXgk15[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kWgk15[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kWg7[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
  double value = 0.0;
  double error = 0.0;
  double resabs = 0.0;
};

template <typename F>
GkEstimate gk15(F&& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  double fv1[7];
  double fv2[7];
  const double fc = f(c);
  double resg = fc * kWg7[3];
  double resk = fc * kWgk15[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk15[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk15[j] * fsum;
    resabs += kWgk15[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg7[(j - 1) / 2] * fsum;
  }

  const double mean = resk * 0.5;
  double resasc = kWgk15[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk15[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double ah = std::abs(h);
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);
  return GkEstimate{resk * h, err, resabs};
}

struct Piece {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct PieceWorse {
  bool operator()(const Piece& x, const Piece& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

// Globally adaptive bisection over an initial set of segments.
template <typename F>
IntegralResult adapt(F&& f, const std::vector<std::pair<double, double>>& segments,
                     double rel_tol, double abs_tol, int max_evals) {
  std::vector<Piece> heap;
  std::vector<Piece> settled;  // pieces too narrow to split further
  heap.reserve(segments.size() + 64);

  int evals = 0;
  for (const auto& [a, b] : segments) {
    const GkEstimate est = gk15(f, a, b);
    heap.push_back(Piece{a, b, est.value, est.error});
    evals += 15;
  }
  std::make_heap(heap.begin(), heap.end(), PieceWorse{});

  double total_value = 0.0;
  double total_error = 0.0;
  for (const Piece& p : heap) {
    total_value += p.value;
    total_error += p.error;
  }

  const auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total_value)); };

  while (total_error > target() && !heap.empty()) {
    if (evals + 30 > max_evals) break;
    std::pop_heap(heap.begin(), heap.end(), PieceWorse{});
    const Piece worst = heap.back();
    heap.pop_back();

    const double mid = worst.a + 0.5 * (worst.b - worst.a);
    if (!(mid > worst.a) || !(mid < worst.b)) {
      settled.push_back(worst);  // width at rounding limit
      continue;
    }

    const GkEstimate left = gk15(f, worst.a, mid);
    const GkEstimate right = gk15(f, mid, worst.b);
    evals += 30;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push_back(Piece{worst.a, mid, left.value, left.error});
    std::push_heap(heap.begin(), heap.end(), PieceWorse{});
    heap.push_back(Piece{mid, worst.b, right.value, right.error});
    std::push_heap(heap.begin(), heap.end(), PieceWorse{});
  }

  // Exact re-sum avoids the drift of incremental bookkeeping.
  total_value = 0.0;
  total_error = 0.0;
  for (const Piece& p : heap) {
    total_value += p.value;
    total_error += p.error;
  }
  for (const Piece& p : settled) {
    total_value += p.value;
    total_error += p.error;
  }

  IntegralResult result;
  result.value = total_value;
  result.error_estimate = total_error;
  result.evaluations = evals;
  result.converged = total_error <= std::max(abs_tol, rel_tol * std::abs(total_value));
  return result;
}

// Geometric breakpoints keep astronomically wide truncation windows
// tractable: refinement starts from octave-scale pieces instead of one
// interval whose quadrature nodes would all miss the central mass.
inline std::vector<std::pair<double, double>> seeded_segments(double lo, double hi) {
  if (hi - lo <= 64.0) return {{lo, hi}};
  std::vector<double> pts{lo, hi};
  if (lo < 0.0 && hi > 0.0) pts.push_back(0.0);
  const double extent = std::max(std::abs(lo), std::abs(hi));
  for (double m = 16.0; m < extent; m *= 4.0) {
    if (-m > lo) pts.push_back(-m);
    if (m < hi) pts.push_back(m);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::pair<double, double>> segs;
  segs.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) segs.emplace_back(pts[i], pts[i + 1]);
  return segs;
}

inline double clamp_open_unit(double v) {
  constexpr double lo = std::numeric_limits<double>::denorm_min();
  const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  return std::min(std::max(v, lo), hi);
}

template <typename F>
auto checked(F&& f) {
  return [g = std::forward<F>(f)](double x) {
    const double v = g(x);
    if (!std::isfinite(v)) throw EvaluationError(x);
    return v;
  };
}

}  // namespace detail

inline IntegralResult integrate(const IntegralTask& task) {
  if (!task.integrand) throw std::invalid_argument("integrate: missing integrand");
  if (!(task.rel_tol > 0.0) || !(task.abs_tol > 0.0))
    throw std::invalid_argument("integrate: tolerances must be positive");
  if (task.max_evals < 100) throw std::invalid_argument("integrate: max_evals must be >= 100");
  if (task.window && !(task.window->first < task.window->second))
    throw std::invalid_argument("integrate: empty truncation window");

  const auto& f = task.integrand;
  const auto run_whole_line = [&](auto&& g) {
    double lo;
    double hi;
    if (task.window) {
      lo = task.window->first;
      hi = task.window->second;
    } else {
      const double w = 4.0 / task.abs_tol + 16.0;
      lo = -w;
      hi = w;
    }
    return detail::adapt(g, detail::seeded_segments(lo, hi), task.rel_tol, task.abs_tol,
                         task.max_evals);
  };

  switch (task.domain.kind) {
    case DomainKind::Finite: {
      if (!(std::isfinite(task.domain.lo) && std::isfinite(task.domain.hi)) ||
          !(task.domain.lo < task.domain.hi))
        throw std::invalid_argument("integrate: finite domain requires lo < hi");
      if (task.transform != Transform::None)
        throw std::invalid_argument("integrate: finite domains take no transform");
      return detail::adapt(detail::checked(f), {{task.domain.lo, task.domain.hi}}, task.rel_tol,
                           task.abs_tol, task.max_evals);
    }

    case DomainKind::SemiInfiniteFrom: {
      if (!std::isfinite(task.domain.lo))
        throw std::invalid_argument("integrate: semi-infinite domain requires finite lo");
      const double lo = task.domain.lo;
      if (task.transform == Transform::None) {
        // u = lo + v/(1-v) compactifies (lo, inf) onto (0, 1); the pole-type
        // growth of the map makes O(1/u^2) tails smooth at v = 1.
        auto g = [&f, lo](double v) {
          const double vc = detail::clamp_open_unit(v);
          const double om = 1.0 - vc;
          const double u = lo + vc / om;
          if (u == lo) return 0.0;  // offset below 1 ulp of lo
          const double fu = f(u);
          if (!std::isfinite(fu)) throw EvaluationError(u);
          if (fu == 0.0) return 0.0;
          const double out = fu / (om * om);
          if (!std::isfinite(out)) throw EvaluationError(u);
          return out;
        };
        return detail::adapt(g, {{0.0, 1.0}}, task.rel_tol, task.abs_tol, task.max_evals);
      }
      if (task.transform == Transform::ExpShiftAtLowerEndpoint) {
        // Mechanical composition through t = lo + e^w. Where the shift
        // leaves double range (e^w overflows, or rounds below 1 ulp of lo)
        // the nodes contribute 0, so the route requires the integrand mass
        // to sit inside representable t; the hand-transformed whole-line
        // form covers families whose tails extend beyond it.
        const ExpShiftMap map = transform_semi_infinite_log(lo);
        auto g = [&f, map](double w) {
          const double jac = map.jacobian(w);
          if (!std::isfinite(jac)) return 0.0;
          const double t = map.point(w);
          if (t == map.lo) return 0.0;
          const double ft = f(t);
          if (!std::isfinite(ft)) throw EvaluationError(t);
          if (ft == 0.0) return 0.0;
          const double out = ft * jac;
          if (!std::isfinite(out)) throw EvaluationError(t);
          return out;
        };
        IntegralTask shifted = task;
        if (!shifted.window)
          shifted.window = std::make_pair(std::log(task.abs_tol / 4.0) - 8.0, 709.0);
        double wlo = shifted.window->first;
        double whi = shifted.window->second;
        return detail::adapt(g, detail::seeded_segments(wlo, whi), task.rel_tol, task.abs_tol,
                             task.max_evals);
      }
      throw std::invalid_argument("integrate: LogisticToLine applies to whole-line domains only");
    }

    case DomainKind::WholeLine: {
      if (task.transform == Transform::None) return run_whole_line(detail::checked(f));
      if (task.transform == Transform::LogisticToLine) {
        // w = ln(v/(1-v)) maps (0,1) onto the line; suited to integrands
        // with exponential two-sided decay (no truncation window needed).
        auto g = [&f](double v) {
          const double vc = detail::clamp_open_unit(v);
          const double w = std::log(vc / (1.0 - vc));
          const double fw = f(w);
          if (!std::isfinite(fw)) throw EvaluationError(w);
          if (fw == 0.0) return 0.0;
          const double out = fw / (vc * (1.0 - vc));
          if (!std::isfinite(out)) throw EvaluationError(w);
          return out;
        };
        return detail::adapt(g, {{0.0, 1.0}}, task.rel_tol, task.abs_tol, task.max_evals);
      }
      throw std::invalid_argument("integrate: ExpShiftAtLowerEndpoint needs a semi-infinite domain");
    }
  }
  throw std::logic_error("integrate: unreachable");
}

}  // namespace gregory

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <gregory/density.hpp>
#include <gregory/quadrature.hpp>

using namespace gregory;

namespace {

IntegralResult run_ln_ratio(double a, double b, double rel_tol = 1e-12) {
  IntegralTask task;
  task.integrand = [a, b](double u) { return (std::expm1(-a * u) - std::expm1(-b * u)) / u; };
  task.domain = Domain::semi_infinite_from(0.0);
  task.rel_tol = rel_tol;
  return integrate(task);
}

IntegralResult run_power_integral(double x, double rel_tol = 1e-12) {
  const double l = std::log1p(x);
  IntegralTask task;
  task.integrand = [l](double u) { return std::exp(-(u + 1.0) * l); };
  task.domain = Domain::semi_infinite_from(0.0);
  task.rel_tol = rel_tol;
  return integrate(task);
}

}  // namespace

TEST_CASE("constant integrand over [0,1]", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double) { return 1.0; };
  task.domain = Domain::finite(0.0, 1.0);
  const IntegralResult res = integrate(task);
  REQUIRE(res.converged);
  REQUIRE(res.value == Catch::Approx(1.0).epsilon(1e-15));
  REQUIRE(res.error_estimate <= 1e-13);  // ~0: only the rounding floor remains
  REQUIRE(res.evaluations == 15);
}

TEST_CASE("frullani integrals reach ln(b/a)", "[quadrature]") {
  const std::pair<double, double> pairs[] = {{1, 2}, {1, 3}, {1, 10}, {2, 5}, {0.5, 4}};
  for (const auto& [a, b] : pairs) {
    const IntegralResult res = run_ln_ratio(a, b);
    const double exact = std::log(b / a);
    CAPTURE(a, b);
    REQUIRE(res.converged);
    REQUIRE(std::abs(res.value - exact) <= 1e-12);
    // error honesty on the closed-form suite
    REQUIRE(std::abs(res.value - exact) <= 10.0 * res.error_estimate);
  }
}

TEST_CASE("power integral reaches 1/((1+x) ln(1+x))", "[quadrature]") {
  for (double x : {0.5, 1.0, 2.0, 10.0}) {
    const IntegralResult res = run_power_integral(x);
    const double exact = 1.0 / ((1.0 + x) * std::log1p(x));
    CAPTURE(x);
    REQUIRE(res.converged);
    REQUIRE(std::abs(res.value - exact) <= 1e-12);
    REQUIRE(std::abs(res.value - exact) <= 10.0 * res.error_estimate);
  }
  REQUIRE(run_power_integral(1.0).value ==
          Catch::Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-13));
}

TEST_CASE("halving the tolerance never leaves the new band", "[quadrature]") {
  double rel = 1e-6;
  const double exact = std::log(2.0);
  for (int step = 0; step < 7; ++step, rel /= 2.0) {
    const IntegralResult res = run_ln_ratio(1.0, 2.0, rel);
    REQUIRE(res.converged);
    REQUIRE(std::abs(res.value - exact) <= std::max(1e-14, rel * exact));
  }
}

TEST_CASE("exp-shift map basics", "[quadrature]") {
  const ExpShiftMap map = transform_semi_infinite_log(1.0);
  REQUIRE(map.point(0.0) == 2.0);
  REQUIRE(map.jacobian(0.0) == 1.0);
  REQUIRE(map.point(-1e9) == 1.0);  // shift underflows into the endpoint
  REQUIRE_THROWS_AS(transform_semi_infinite_log(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("mechanical exp-shift integrates the n=2 moment weight", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double t) { return bk2_weight_t(2, t); };
  task.domain = Domain::semi_infinite_from(1.0);
  task.transform = Transform::ExpShiftAtLowerEndpoint;
  const IntegralResult res = integrate(task);
  REQUIRE(res.converged);
  REQUIRE(res.value == Catch::Approx(1.0 / 12.0).epsilon(1e-10));
}

TEST_CASE("hand-transformed n=1 weight over the whole line", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double w) { return bk2_weight_w(1, w); };
  task.domain = Domain::whole_line();
  task.window = bk2_integral_window(1, 1e-14);
  const IntegralResult res = integrate(task);
  REQUIRE(res.converged);
  REQUIRE(std::abs(res.value - 0.5) <= 1e-12);
}

TEST_CASE("whole-line default window handles 1/w^2 tails", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double w) { return 1.0 / (w * w + kPiSq); };
  task.domain = Domain::whole_line();
  const IntegralResult res = integrate(task);
  REQUIRE(res.converged);
  REQUIRE(std::abs(res.value - 1.0) <= 1e-10);
}

TEST_CASE("logistic transform handles exponential two-sided decay", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double w) { return 1.0 / std::cosh(w); };
  task.domain = Domain::whole_line();
  task.transform = Transform::LogisticToLine;
  const IntegralResult res = integrate(task);
  REQUIRE(res.converged);
  REQUIRE(std::abs(res.value - std::numbers::pi) <= 1e-12);

  task.integrand = [](double w) { return std::exp(-w * w); };
  const IntegralResult gauss = integrate(task);
  REQUIRE(std::abs(gauss.value - std::sqrt(std::numbers::pi)) <= 1e-12);
}

TEST_CASE("truncated direct evaluation matches the transformed route", "[quadrature]") {
  // n=3 moment weight: direct t-space quadrature on (1+delta, T) plus
  // analytic tail bounds agrees with the whole-line evaluation.
  const double delta = 1e-6;
  const double t_cap = 1e7;
  IntegralTask direct;
  direct.integrand = [](double t) { return bk2_weight_t(3, t); };
  direct.domain = Domain::finite(1.0 + delta, t_cap);
  const IntegralResult a = integrate(direct);

  IntegralTask transformed;
  transformed.integrand = [](double w) { return bk2_weight_w(3, w); };
  transformed.domain = Domain::whole_line();
  transformed.window = bk2_integral_window(3, 1e-14);
  const IntegralResult b = integrate(transformed);

  const double left_tail = 2.0 * delta / (std::log(delta) * std::log(delta));
  const double right_tail = 1.0 / (2.0 * t_cap * t_cap * std::log(t_cap - 1.0) * std::log(t_cap - 1.0));
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  REQUIRE(std::abs(a.value - b.value) <=
          a.error_estimate + b.error_estimate + left_tail + right_tail);
}

TEST_CASE("task validation", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double) { return 1.0; };
  task.domain = Domain::finite(1.0, 0.0);
  REQUIRE_THROWS_AS(integrate(task), std::invalid_argument);

  task.domain = Domain::finite(0.0, 1.0);
  task.transform = Transform::LogisticToLine;
  REQUIRE_THROWS_AS(integrate(task), std::invalid_argument);

  task.transform = Transform::None;
  task.max_evals = 50;
  REQUIRE_THROWS_AS(integrate(task), std::invalid_argument);

  task.max_evals = 200000;
  task.rel_tol = 0.0;
  REQUIRE_THROWS_AS(integrate(task), std::invalid_argument);

  task.rel_tol = 1e-12;
  task.window = std::make_pair(1.0, 1.0);
  REQUIRE_THROWS_AS(integrate(task), std::invalid_argument);

  IntegralTask empty;
  REQUIRE_THROWS_AS(integrate(empty), std::invalid_argument);

  IntegralTask bad_combo;
  bad_combo.integrand = [](double) { return 1.0; };
  bad_combo.domain = Domain::whole_line();
  bad_combo.transform = Transform::ExpShiftAtLowerEndpoint;
  REQUIRE_THROWS_AS(integrate(bad_combo), std::invalid_argument);
}

TEST_CASE("non-finite integrand values name the abscissa", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double x) {
    return x < 0.5 ? 1.0 : std::numeric_limits<double>::quiet_NaN();
  };
  task.domain = Domain::finite(0.0, 1.0);
  try {
    integrate(task);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    REQUIRE(e.abscissa() >= 0.5);
    REQUIRE(std::string(e.what()).find("non-finite") != std::string::npos);
  }
}

TEST_CASE("exhausted budgets report converged = false", "[quadrature]") {
  IntegralTask task;
  task.integrand = [](double x) { return 1.0 / std::sqrt(std::abs(x - std::numbers::inv_pi)); };
  task.domain = Domain::finite(0.0, 1.0);
  task.max_evals = 300;
  const IntegralResult res = integrate(task);
  REQUIRE_FALSE(res.converged);
  REQUIRE(res.error_estimate > 0.0);
  REQUIRE(res.evaluations <= 300);
}

#include <doctest.h>

#include <cmath>

#include "evscurve/error.hpp"
#include "evscurve/scurve.hpp"
#include "support/oracles.hpp"

using namespace evscurve;

TEST_CASE("logistic_eval examples") {
  CHECK(logistic_eval(LogisticParams(1.0, 3.7), 0.0) == 0.5);
  CHECK(logistic_eval(LogisticParams(1.0, -2.0), 0.0) == 0.5);
  CHECK(logistic_eval(LogisticParams(100.0, 0.5), 0.0) == doctest::Approx(1.0 / 101.0).epsilon(1e-15));
  const LogisticParams p(100.0, 0.5);
  CHECK(p.t_mid().value() == doctest::Approx(9.21034037197618).epsilon(1e-14));
  CHECK(logistic_eval(p, *p.t_mid()) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS((void)logistic_eval(p, std::nan("")), DomainError);
  CHECK_THROWS_AS((void)logistic_eval(p, INFINITY), DomainError);
}

TEST_CASE("curve passes exactly 0.5 at its midpoint") {
  oracle::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto p = LogisticParams::from_log_alpha(rng.uniform(-10, 10), rng.uniform(-3, 3));
    REQUIRE(logistic_eval(p, *p.t_mid()) == 0.5);
  }
}

TEST_CASE("LogisticParams validation") {
  CHECK_THROWS_AS(LogisticParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(LogisticParams(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(LogisticParams(INFINITY, 1.0), DomainError);
  CHECK_THROWS_AS(LogisticParams(1.0, NAN), DomainError);
  CHECK_THROWS_AS(LogisticParams::from_log_alpha(800.0, 1.0), DomainError);
  CHECK_FALSE(LogisticParams(2.0, 0.0).t_mid().has_value());
}

TEST_CASE("logit examples") {
  CHECK(logit(0.5) == 0.0);
  CHECK(logit(0.9) == doctest::Approx(std::log(9.0)).epsilon(1e-15));
  CHECK(logit(0.9) == doctest::Approx(2.197225).epsilon(1e-6));
  CHECK_THROWS_AS((void)logit(0.0), DomainError);
  CHECK_THROWS_AS((void)logit(1.0), DomainError);
  CHECK_THROWS_AS((void)logit(-0.1), DomainError);
  CHECK_THROWS_AS((void)logit(NAN), DomainError);
}

TEST_CASE("crossing_time examples") {
  const auto p = LogisticParams::from_log_alpha(2.0, 1.0);
  CHECK(crossing_time(p, 0.5).t == 2.0);
  CHECK(crossing_time(p, 0.5).direction == Direction::up);
  CHECK(crossing_time(p, 0.8).t == doctest::Approx(2.0 + std::log(4.0)).epsilon(1e-15));
  CHECK(crossing_time(p, 0.8).t == doctest::Approx(3.386294).epsilon(1e-6));
  // alpha given directly as e^2
  CHECK(crossing_time(LogisticParams(std::exp(2.0), 1.0), 0.5).t == doctest::Approx(2.0).epsilon(1e-15));

  try {
    (void)crossing_time(LogisticParams(2.0, 0.0), 0.5);
    FAIL("expected no-crossing error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_crossing);
  }
  const auto down = crossing_time(LogisticParams(1.0, -0.5), 0.8);
  CHECK(down.direction == Direction::down);
  CHECK(down.t == doctest::Approx(std::log(4.0) / -0.5));
  CHECK_THROWS_AS((void)crossing_time(p, 1.0), DomainError);
  CHECK_THROWS_AS((void)crossing_time(p, 0.0), DomainError);
}

TEST_CASE("params_from_line examples") {
  const auto a = params_from_line(1.0, 0.0);
  CHECK(a.alpha() == 1.0);
  CHECK(a.beta() == 1.0);
  const auto b = params_from_line(0.5, -std::log(100.0));
  CHECK(b.alpha() == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(b.beta() == 0.5);
  const auto c = params_from_line(-0.2, 3.0);
  CHECK(c.alpha() == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
  CHECK(c.beta() == -0.2);
  CHECK(c.ln_alpha() == -3.0);
  CHECK_THROWS_AS((void)params_from_line(NAN, 0.0), DomainError);
  CHECK_THROWS_AS((void)params_from_line(1.0, INFINITY), DomainError);
}

TEST_CASE("property: range, symmetry, monotonicity") {
  oracle::Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const auto p = LogisticParams::from_log_alpha(rng.uniform(-20, 20), rng.uniform(-4, 4));
    const double t = rng.uniform(-1e3, 1e3);
    const double y = logistic_eval(p, t);
    REQUIRE(y > 0.0);
    REQUIRE(y < 1.0);

    if (p.beta() != 0.0) {
      const double d = rng.uniform(-50, 50);
      const double m = *p.t_mid();
      REQUIRE(std::abs(logistic_eval(p, m + d) + logistic_eval(p, m - d) - 1.0) <= 1e-12);
    }

    // Strict monotonicity away from double-precision saturation.
    if (std::abs(p.beta()) > 1e-3) {
      const double base = *p.t_mid() + rng.uniform(-10, 10) / std::abs(p.beta());
      const double y0 = logistic_eval(p, base);
      const double y1 = logistic_eval(p, base + 0.25);
      if (p.beta() > 0) REQUIRE(y1 > y0);
      else REQUIRE(y1 < y0);
    }
  }
}

TEST_CASE("extreme exponents saturate without leaving (0, 1)") {
  const LogisticParams p(1.0, 1.0);
  for (const double t : {-1e308, -800.0, -40.0, 40.0, 800.0, 1e308}) {
    const double y = logistic_eval(p, t);
    CHECK(std::isfinite(y));
    CHECK(y > 0.0);
    CHECK(y < 1.0);
  }
  CHECK(logit(logistic_eval(p, -800.0)) < -700.0);
  CHECK(std::isfinite(logit(logistic_eval(p, 800.0))));
}

TEST_CASE("property: logit inverts the curve") {
  oracle::Rng rng(13);
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto p = LogisticParams::from_log_alpha(rng.uniform(-10, 10), rng.uniform(-3, 3));
    const double t = rng.uniform(-20, 20);
    const double y = logistic_eval(p, t);
    // 1 - y carries the representation error of y itself, so the relative
    // bound is only meaningful well inside (0, 1).
    if (y < 1e-6 || y > 1.0 - 1e-6) continue;
    const double line = p.beta() * t - p.ln_alpha();
    const double got = logit(y);
    REQUIRE(std::abs(got - line) <= 1e-9 * std::max(1.0, std::abs(line)));
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("property: crossing_time inverts the curve") {
  oracle::Rng rng(14);
  for (int i = 0; i < 2000; ++i) {
    double beta = rng.uniform(-3, 3);
    if (beta == 0.0) beta = 1.0;
    const auto params = LogisticParams::from_log_alpha(rng.uniform(-10, 10), beta);
    const double p = rng.uniform(0.01, 0.99);
    const auto c = crossing_time(params, p);
    REQUIRE(std::abs(logistic_eval(params, c.t) - p) <= 1e-9);
    REQUIRE(c.direction == (beta > 0 ? Direction::up : Direction::down));
  }
}

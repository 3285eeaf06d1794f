#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "evscurve/error.hpp"
#include "evscurve/fit.hpp"
#include "support/oracles.hpp"

using namespace evscurve;

namespace {

std::vector<Sample> noiseless(double ln_alpha, double beta, int n, double dt = 0.25, double t0 = 0.0) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    const double t = t0 + i * dt;
    out.push_back({t, oracle::curve(ln_alpha, beta, t)});
  }
  return out;
}

std::vector<Sample> noisy(oracle::Rng& rng, double ln_alpha, double beta, double sigma, int n = 20) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    const double t = i * 0.25;
    const double z = beta * t - ln_alpha + rng.normal(sigma);
    out.push_back({t, 1.0 / (1.0 + std::exp(-z))});
  }
  return out;
}

std::vector<oracle::Point> logit_points(const std::vector<Sample>& samples) {
  std::vector<oracle::Point> pts;
  for (const auto& s : samples) {
    if (s.share && *s.share > 0 && *s.share < 1) pts.push_back({s.t, std::log(*s.share / (1 - *s.share))});
  }
  return pts;
}

AdoptionSeries series_from(const std::vector<double>& shares, std::uint64_t total = 1000) {
  std::vector<AdoptionObservation> obs;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    obs.push_back({TimePoint{2011, 1}.next(static_cast<std::int64_t>(4 * i)),
                   static_cast<std::uint64_t>(std::llround(shares[i] * total)), total});
  }
  return AdoptionSeries("Test", std::move(obs));
}

constexpr Interval kBetaGrid{0.0, 2.0};
constexpr Interval kLnAlphaGrid{0.0, 8.0};
constexpr std::size_t kSteps = 401;
constexpr double kBetaCell = (kBetaGrid.hi - kBetaGrid.lo) / (kSteps - 1);
constexpr double kLnAlphaCell = (kLnAlphaGrid.hi - kLnAlphaGrid.lo) / (kSteps - 1);

}  // namespace

TEST_CASE("fit_logit_ols recovers noiseless parameters") {
  const auto samples = noiseless(std::log(50.0), 0.8, 20);
  const auto fit = fit_logit_ols(samples);
  CHECK(oracle::rel_err(fit.params.alpha(), 50.0) <= 1e-9);
  CHECK(oracle::rel_err(fit.params.beta(), 0.8) <= 1e-9);
  CHECK(fit.n_used == 20);
  CHECK(fit.n_excluded == 0);
  CHECK(fit.sse_logit < 1e-20);
  CHECK(fit.t_min == 0.0);
  CHECK(fit.t_max == 4.75);
}

TEST_CASE("zero shares are excluded, not clipped") {
  const std::vector<Sample> samples{{0, 0.0}, {1, 0.1}, {2, 0.2}, {3, 0.5}};
  const auto fit = fit_logit_ols(samples);
  CHECK(fit.n_used == 3);
  CHECK(fit.n_excluded == 1);
  CHECK(fit.t_min == 1.0);

  // Same answer as fitting the three usable points alone.
  const std::vector<Sample> usable_only{{1, 0.1}, {2, 0.2}, {3, 0.5}};
  CHECK(fit_logit_ols(usable_only).params == fit.params);

  const std::vector<Sample> with_one_and_missing{{0, 0.1}, {1, 1.0}, {2, std::nullopt}, {3, 0.2}, {4, 0.3}};
  const auto f2 = fit_logit_ols(with_one_and_missing);
  CHECK(f2.n_used == 3);
  CHECK(f2.n_excluded == 2);
}

TEST_CASE("fit preconditions") {
  const std::vector<Sample> two{{0, 0.1}, {1, 0.2}, {2, 0.0}};
  try {
    (void)fit_logit_ols(two);
    FAIL("expected insufficient data");
  } catch (const InsufficientDataError& e) {
    CHECK(e.n_usable() == 2);
    CHECK(e.code() == ErrorCode::insufficient_data);
  }
  const std::vector<Sample> same_t{{1, 0.1}, {1, 0.2}, {1, 0.3}};
  try {
    (void)fit_logit_ols(same_t);
    FAIL("expected degenerate abscissa");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_abscissa);
  }
  CHECK_THROWS_AS((void)fit_grid_search(two, kBetaGrid, kLnAlphaGrid, kSteps), InsufficientDataError);
}

TEST_CASE("flat logit data fits beta = 0 exactly") {
  const auto fit = fit_logit_ols(series_from({0.3, 0.3, 0.3, 0.3, 0.3}));
  CHECK(fit.params.beta() == 0.0);
  CHECK(fit.sse_logit == 0.0);
}

TEST_CASE("noisy fit agrees with the normal-equation oracle and the grid oracle") {
  // Pinned instance: seed 2024, ln alpha = 3.2, beta = 0.9, sigma = 0.1.
  oracle::Rng rng(2024);
  const auto samples = noisy(rng, 3.2, 0.9, 0.1);
  const auto fit = fit_logit_ols(samples);

  const auto line = oracle::normal_equations(logit_points(samples));
  CHECK(oracle::rel_err(fit.params.beta(), line.slope) <= 1e-9);
  CHECK(std::abs(fit.params.ln_alpha() + line.intercept) <= 1e-9);

  // Independent brute force over the same 401 x 401 lattice.
  const auto pts = logit_points(samples);
  double best = INFINITY, best_beta = 0, best_ln_alpha = 0;
  for (std::size_t i = 0; i < kSteps; ++i) {
    for (std::size_t j = 0; j < kSteps; ++j) {
      const double b = i * kBetaCell, a = j * kLnAlphaCell;
      const double e = oracle::sse(pts, b, a);
      if (e < best) {
        best = e;
        best_beta = b;
        best_ln_alpha = a;
      }
    }
  }

  // Frozen after agreement between the brute force and fit_grid_search.
  constexpr double kGridBeta = 0.9;
  constexpr double kGridLnAlpha = 3.18;
  const auto grid = fit_grid_search(samples, kBetaGrid, kLnAlphaGrid, kSteps);
  CHECK(best_beta == doctest::Approx(kGridBeta).epsilon(1e-12));
  CHECK(best_ln_alpha == doctest::Approx(kGridLnAlpha).epsilon(1e-12));
  CHECK(grid.params.beta() == doctest::Approx(kGridBeta).epsilon(1e-12));
  CHECK(grid.params.ln_alpha() == doctest::Approx(kGridLnAlpha).epsilon(1e-12));
  CHECK(grid.sse_logit == doctest::Approx(best).epsilon(1e-12));

  CHECK(std::abs(fit.params.beta() - grid.params.beta()) <= kBetaCell);
  CHECK(std::abs(fit.params.ln_alpha() - grid.params.ln_alpha()) <= kLnAlphaCell);
  CHECK(fit.sse_logit <= grid.sse_logit);
}

TEST_CASE("fit_grid_search on noiseless data lands within one cell of the truth") {
  const auto samples = noiseless(std::log(50.0), 0.8, 20);
  const auto grid = fit_grid_search(samples, kBetaGrid, kLnAlphaGrid, kSteps);
  // One cell, plus the rounding in the lattice coordinates themselves.
  CHECK(std::abs(grid.params.beta() - 0.8) <= kBetaCell * (1 + 1e-9));
  CHECK(std::abs(grid.params.ln_alpha() - std::log(50.0)) <= kLnAlphaCell * (1 + 1e-9));
  CHECK(grid.n_used == 20);

  SUBCASE("a grid that excludes the optimum returns its boundary") {
    const auto edge = fit_grid_search(samples, {1.0, 2.0}, kLnAlphaGrid, 101);
    CHECK(edge.params.beta() == 1.0);
  }
  SUBCASE("too few steps") {
    try {
      (void)fit_grid_search(samples, kBetaGrid, kLnAlphaGrid, 10);
      FAIL("expected precondition error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::precondition);
    }
  }
  SUBCASE("ties resolve to the smallest beta then ln alpha") {
    // z = 0 at t = -1, 0, 1 makes sse symmetric in both coordinates. A dyadic
    // range of 128 steps puts the grid on exact multiples of 1/64 offset by
    // 1/128, so the four minimisers (+-1/128, +-1/128) tie bit for bit.
    const std::vector<Sample> half{{-1, 0.5}, {0, 0.5}, {1, 0.5}};
    const Interval range{-127.0 / 128.0, 127.0 / 128.0};
    const auto g = fit_grid_search(half, range, range, 128);
    CHECK(g.params.beta() == -1.0 / 128.0);
    CHECK(g.params.ln_alpha() == -1.0 / 128.0);
  }
}

TEST_CASE("residuals") {
  const auto s = series_from({0.1, 0.25, 0.5, 0.75});
  const auto fit = fit_logit_ols(s);
  const auto r = residuals(s, fit.params);
  CHECK(r.points.size() == 4);
  double sum = 0;
  for (const auto& p : r.points) sum += p.value * p.value;
  CHECK(sum == doctest::Approx(fit.sse_logit).epsilon(1e-12));

  SUBCASE("noiseless data at its own fitted parameters") {
    std::vector<AdoptionObservation> obs;
    for (int i = 0; i < 12; ++i) {
      const double y = oracle::curve(std::log(50.0), 0.8, i * 0.25);
      obs.push_back({TimePoint{2011, 1}.next(i), static_cast<std::uint64_t>(std::llround(y * 1e15)), 1000000000000000ULL});
    }
    const AdoptionSeries exact("Exact", obs);
    for (const auto& p : residuals(exact, fit_logit_ols(exact).params).points) CHECK(std::abs(p.value) <= 1e-9);
  }
  SUBCASE("flat case") {
    for (const auto& p : residuals(series_from({0.5, 0.5, 0.5}), LogisticParams(1.0, 0.0)).points) {
      CHECK(p.value == 0.0);
    }
  }
  SUBCASE("single usable point") {
    const auto one = series_from({0.0, 0.2, 1.0});
    const LogisticParams p(3.0, 0.4);
    const auto rs = residuals(one, p);
    REQUIRE(rs.points.size() == 1);
    CHECK(rs.n_skipped == 2);
    CHECK(rs.points[0].t == 1.0);
    CHECK(rs.points[0].value == doctest::Approx(std::log(0.25) - (0.4 * 1.0 - std::log(3.0))).epsilon(1e-14));
  }
}

TEST_CASE("property: exact recovery of random noiseless curves") {
  oracle::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double ln_alpha = std::log(rng.uniform(1.0, 1e4));
    const double beta = rng.uniform(0.1, 2.0);
    const int n = 3 + static_cast<int>(rng.next() % 30);
    const auto fit = fit_logit_ols(noiseless(ln_alpha, beta, n, 0.25, rng.uniform(-2, 2)));
    REQUIRE(oracle::rel_err(fit.params.beta(), beta) <= 1e-9);
    REQUIRE(oracle::rel_err(fit.params.alpha(), std::exp(ln_alpha)) <= 1e-9);
    REQUIRE(fit.n_used + fit.n_excluded == static_cast<std::size_t>(n));
  }
}

TEST_CASE("property: permutation invariance") {
  oracle::Rng rng(32);
  std::mt19937_64 shuffler(5);
  for (int i = 0; i < 100; ++i) {
    auto samples = noisy(rng, rng.uniform(1, 6), rng.uniform(0.2, 1.5), 0.3, 25);
    samples[3].share = 0.0;
    const auto ref = fit_logit_ols(samples);
    std::shuffle(samples.begin(), samples.end(), shuffler);
    const auto got = fit_logit_ols(samples);
    REQUIRE(got.params == ref.params);
    REQUIRE(got.sse_logit == ref.sse_logit);
    REQUIRE(got.n_used == ref.n_used);
    REQUIRE(got.n_excluded == ref.n_excluded);
  }
}

TEST_CASE("property: time-shift covariance") {
  oracle::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const auto samples = noisy(rng, rng.uniform(1, 6), rng.uniform(0.2, 1.5), 0.2);
    const double shift = rng.uniform(-5, 5);
    auto shifted = samples;
    for (auto& s : shifted) s.t += shift;
    const auto a = fit_logit_ols(samples);
    const auto b = fit_logit_ols(shifted);
    REQUIRE(oracle::rel_err(b.params.beta(), a.params.beta()) <= 1e-9);
    REQUIRE(oracle::rel_err(b.params.alpha(), a.params.alpha() * std::exp(a.params.beta() * shift)) <= 1e-9);
  }
}

TEST_CASE("property: OLS never loses to the grid") {
  oracle::Rng rng(34);
  for (int i = 0; i < 8; ++i) {
    const auto samples = noisy(rng, rng.uniform(1, 7), rng.uniform(0.2, 1.8), 0.15);
    const auto ols = fit_logit_ols(samples);
    const auto grid = fit_grid_search(samples, kBetaGrid, kLnAlphaGrid, 201);
    REQUIRE(ols.sse_logit <= grid.sse_logit);
    REQUIRE(oracle::sse(logit_points(samples), ols.params.beta(), ols.params.ln_alpha()) ==
            doctest::Approx(ols.sse_logit).epsilon(1e-12));
  }
}

TEST_CASE("concurrent fits match sequential fits") {
  oracle::Rng rng(35);
  std::vector<std::vector<Sample>> regions;
  for (int i = 0; i < 16; ++i) regions.push_back(noisy(rng, rng.uniform(1, 7), rng.uniform(0.2, 1.8), 0.2));
  std::vector<std::future<FitResult>> futures;
  for (const auto& r : regions) {
    futures.push_back(std::async(std::launch::async, [&r] { return fit_logit_ols(r); }));
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto par = futures[i].get();
    const auto seq = fit_logit_ols(regions[i]);
    REQUIRE(par.params == seq.params);
    REQUIRE(par.sse_logit == seq.sse_logit);
  }
}

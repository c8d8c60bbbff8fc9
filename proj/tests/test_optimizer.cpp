#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mqshape/errors.hpp"
#include "mqshape/optimizer.hpp"
#include "oracles.hpp"

using namespace mqshape;

TEST_CASE("minimize_scalar") {
  SUBCASE("interior minimum") {
    auto f = [](double x) { return (std::log(x) - 1.0) * (std::log(x) - 1.0); };
    const auto r = minimize_scalar(f, 1e-3, 1e3, 1e-10);
    CHECK(r.x == doctest::Approx(std::exp(1.0)).epsilon(1e-8));
    CHECK(r.iterations > 0);
  }
  SUBCASE("increasing function returns the left end exactly") {
    const auto r = minimize_scalar([](double x) { return x; }, 0.25, 10.0);
    CHECK(r.x == 0.25);
  }
  SUBCASE("decreasing function ends at the right end") {
    const auto r = minimize_scalar([](double x) { return -x; }, 0.25, 10.0);
    CHECK(r.x == doctest::Approx(10.0).epsilon(1e-7));
  }
  SUBCASE("narrow well found through a seed") {
    // a well far narrower than the scan spacing
    auto f = [](double x) { return -std::exp(-1e8 * (x - 0.3) * (x - 0.3)); };
    const double seed[] = {0.3};
    const auto r = minimize_scalar(f, 1e-3, 1e3, 1e-10, seed);
    CHECK(r.x == doctest::Approx(0.3).epsilon(1e-7));
  }
  SUBCASE("non-finite samples are rejected") {
    auto f = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(minimize_scalar(f, 1.0, 2.0), NumericError);
  }
  SUBCASE("agrees with a dense grid on random quadratics in ln x") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double centre = -4.0 + 8.0 * u(rng);
      const double width = 0.2 + u(rng);
      auto f = [&](double x) { return std::pow((std::log(x) - centre) / width, 2) + 0.1 * std::sin(std::log(x)); };
      const auto r = minimize_scalar(f, 1e-3, 1e3, 1e-10);
      const auto [gx, gf] = oracle::grid_argmin(f, 1e-3, 1e3, 200000);
      CHECK(r.fx <= gf + 1e-12);
      CHECK(std::abs(std::log(r.x) - std::log(gx)) < 1e-3);
    }
  }
}

TEST_CASE("beta = -1 multi-dimensional critical point") {
  for (int n : {2, 3}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      const auto grid = oracle::logspace(1e-4, 1e4, 1000);
      int sign_changes = 0;
      double prev = case1_lhs(grid.front(), n, sigma);
      for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = case1_lhs(grid[i], n, sigma);
        CHECK(v > prev);
        if ((prev - n * n) * (v - n * n) < 0.0) ++sign_changes;
        prev = v;
      }
      CHECK(sign_changes == 1);

      const double root = critical_point_case1(n, sigma);
      auto g = [&](double lc) { return case1_lhs(std::exp(lc), n, sigma) - n * n; };
      CHECK(root == doctest::Approx(std::exp(oracle::bisect(g, std::log(1e-4), std::log(1e4)))).epsilon(1e-10));

      auto h = [&](double c) { return log_h_beta_neg1_multid(c, n, sigma); };
      const double gs = oracle::golden(h, 1e-3, 1e2, 1e-12);
      CHECK(std::abs(root - gs) / gs < 1e-5);
    }
  }
}

TEST_CASE("case 3 starting value") {
  CHECK(*case3_start_value(3, 1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));
  CHECK_FALSE(case3_start_value(1, 1.0, 1.0).has_value());
  CHECK_FALSE(case3_start_value(2, 1.0, 1.0).has_value());
  // the start value is the exact minimiser of the core
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + static_cast<int>(u(rng) * 4);
    const double beta = 0.1 + (n - 1.2) * u(rng);
    const double sigma = 0.3 + 3.0 * u(rng);
    const auto start = case3_start_value(n, beta, sigma);
    REQUIRE(start.has_value());
    auto f = [&](double c) { return log_h_core(c, n, beta, sigma); };
    const double gs = oracle::golden(f, *start / 50.0, *start * 50.0, 1e-12);
    CHECK(gs == doctest::Approx(*start).epsilon(1e-6));
  }
}

TEST_CASE("optimal_c") {
  SUBCASE("n = 3, beta = 1 critical point") {
    ProblemSpec s{3, 1.0, 1.0, 1e-208, std::nullopt, Mode::Practical};
    const auto r = optimal_c(s, derive_constants(s), classify(s));
    CHECK(std::abs(r.c_star - 0.408248) < 1e-4);
    CHECK_FALSE(r.clamped_lower);
  }
  SUBCASE("one-dimensional practical optimum") {
    ProblemSpec s{1, -1.0, 1.0, 1e-5, std::nullopt, Mode::Practical};
    const auto r = optimal_c(s, derive_constants(s), classify(s));
    CHECK(r.c_star > 0.4);
    CHECK(r.c_star < 0.8);
    auto f = [](double c) { return log_h_beta_neg1_oned(c, 1.0); };
    const auto [gx, gf] = oracle::grid_argmin(f, r.bracket.first, 10.0, 200000);
    CHECK(r.c_star == doctest::Approx(gx).epsilon(1e-4));
    CHECK(r.log_h_star <= gf + 1e-12);
  }
  SUBCASE("clamped to the admissible end") {
    ProblemSpec s{1, 1.0, 1.0, 0.01, std::nullopt, Mode::Practical};
    const auto dc = derive_constants(s);
    const auto r = optimal_c(s, dc, classify(s));
    CHECK(r.clamped_lower);
    CHECK(r.c_star == dc.c_min.value());
  }
  SUBCASE("fixed-b0 interior minimum") {
    ProblemSpec s{2, -1.0, 1.0, 1e-26, 1.0, Mode::FixedB0};
    const auto dc = derive_constants(s);
    const auto kind = classify(s);
    const auto r = optimal_c(s, dc, kind);
    CHECK_FALSE(r.clamped_lower);
    auto f = [&](double c) { return log_h_unified(c, s, dc, kind); };
    const auto [gx, gf] = oracle::grid_argmin(f, r.bracket.first, r.bracket.second, 200000);
    CHECK(r.c_star == doctest::Approx(gx).epsilon(1e-3));
    CHECK(r.log_h_star <= gf + 1e-12);
  }
  SUBCASE("inadmissible delta") {
    ProblemSpec s{1, -1.0, 1.0, 0.2, 1.0, Mode::FixedB0};
    CHECK_THROWS_AS(optimal_c(s, derive_constants(s), classify(s)), PreconditionError);
    try {
      optimal_c(s, derive_constants(s), classify(s));
    } catch (const PreconditionError& e) {
      CHECK(e.bound() == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    }
  }
  SUBCASE("interval start beyond double range") {
    ProblemSpec s{4, -1.0, 1.0, 1e-3, std::nullopt, Mode::Practical};
    CHECK_THROWS_AS(optimal_c(s, derive_constants(s), classify(s)), NumericError);
  }
  SUBCASE("never worse than sampled points") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Mode modes[] = {Mode::Practical, Mode::FixedB0, Mode::DilationInvariant};
    for (int i = 0; i < 60; ++i) {
      ProblemSpec s;
      s.n = 1 + static_cast<int>(u(rng) * 3);
      s.beta = u(rng) < 0.5 ? -1.0 : 0.5 + 2.0 * static_cast<int>(u(rng) * 3);
      s.sigma = 0.5 + 2.0 * u(rng);
      s.b0 = 1.0 + 5.0 * u(rng);
      s.mode = modes[i % 3];
      const auto dc0 = derive_constants(s);
      // delta well inside the admissible range
      s.delta = std::exp(log_delta_admissible(s, dc0) - 1.0 - 40.0 * u(rng));
      const auto dc = derive_constants(s);
      const auto kind = classify(s);
      if (dc.c_min.log() > std::log(kSearchCeiling / 10.0)) {
        CHECK_THROWS_AS(optimal_c(s, dc, kind), NumericError);
        continue;
      }
      const auto r = optimal_c(s, dc, kind);
      CHECK(r.c_star >= r.bracket.first);
      CHECK(r.c_star <= r.bracket.second);
      for (double c : oracle::logspace(r.bracket.first, r.bracket.second, 500))
        CHECK(r.log_h_star <= log_h_unified(c, s, dc, kind) + 1e-9 * std::max(1.0, std::abs(r.log_h_star)));
    }
  }
}

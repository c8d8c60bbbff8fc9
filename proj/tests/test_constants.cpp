#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mqshape/constants.hpp"
#include "mqshape/errors.hpp"

using namespace mqshape;

TEST_CASE("gamma sequence") {
  CHECK(gamma_seq(1) == 2);
  CHECK(gamma_seq(2) == 12);
  CHECK(gamma_seq(3) == 78);
  for (int n = 2; n <= 8; ++n) CHECK(gamma_seq(n) == 2u * n * (1 + gamma_seq(n - 1)));
  CHECK_THROWS_AS(gamma_seq(0), DomainError);
  // gamma_n grows like 2^n n!; 64 bits run out before n = 20
  CHECK_THROWS_AS(gamma_seq(30), NumericError);
}

TEST_CASE("conditional positive definiteness order") {
  CHECK(cpd_order(-1.0) == 0);
  CHECK(cpd_order(1.0) == 1);
  CHECK(cpd_order(3.0) == 2);
  CHECK(cpd_order(-3.5) == 0);
  CHECK(cpd_order(0.5) == 1);
}

TEST_CASE("rho and Delta_0") {
  SUBCASE("n - 3 <= beta < n - 1 gives rho = Delta_0 = 1") {
    auto r = rho_delta0(2, -1.0);
    CHECK(r.rho == 1.0);
    CHECK(r.log_delta_0 == 0.0);
  }
  SUBCASE("beta < 0, beta < n - 3") {
    auto r = rho_delta0(5, -1.0);
    CHECK(r.rho == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(std::exp(r.log_delta_0) == doctest::Approx(108.0 / 25.0).epsilon(1e-14));
  }
  SUBCASE("beta > 0, beta < n - 3") {
    // n = 7, beta = 1: s = ceil(3/2) = 2, m = 1, rho = 1 + 2/5, Delta_0 = 6*5/rho^4
    auto r = rho_delta0(7, 1.0);
    CHECK(r.rho == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(std::exp(r.log_delta_0) == doctest::Approx(30.0 / std::pow(1.4, 4)).epsilon(1e-14));
  }
  SUBCASE("beta >= n - 1") {
    auto r = rho_delta0(1, 1.0);
    CHECK(r.rho == 1.0);
    CHECK(std::exp(r.log_delta_0) == doctest::Approx(0.25).epsilon(1e-15));
    // n = 1, beta = 5: s = -ceil(-7/2) = 3, m = 3, Delta_0 = 1/(8*7*6)
    auto r5 = rho_delta0(1, 5.0);
    CHECK(std::exp(r5.log_delta_0) == doctest::Approx(1.0 / 336.0).epsilon(1e-14));
  }
  SUBCASE("grid of 100 pairs in the middle case") {
    int checked = 0;
    for (int n = 1; n <= 10; ++n) {
      for (int k = 0; k < 10; ++k) {
        const double beta = (n - 3.0) + 2.0 * k / 10.0;  // [n-3, n-1)
        if (is_nonnegative_even(beta)) continue;
        auto r = rho_delta0(n, beta);
        CHECK(r.rho == 1.0);
        CHECK(r.log_delta_0 == 0.0);
        ++checked;
      }
    }
    CHECK(checked >= 90);
  }
}

TEST_CASE("unit ball volume") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
}

TEST_CASE("multi-index count") {
  CHECK(multiindex_count(0, 3) == 1);
  CHECK(multiindex_count(1, 3) == 3);
  CHECK(multiindex_count(2, 2) == 3);
  // enumeration oracle
  for (int m = 0; m <= 4; ++m) {
    std::uint64_t count = 0;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; a + b <= m; ++b) count += 1;  // third index fixed by |alpha| = m
    CHECK(multiindex_count(m, 3) == count);
  }
}

TEST_CASE("d0 constant") {
  const double expected = 0.5 * std::log(1.0) - std::log(2.0 * std::numbers::pi) -
                          0.5 * 1.5 * std::log(2.0) + 0.25 * std::log(2.0 / std::numbers::pi);
  CHECK(d0_constant(1, 1.0) == doctest::Approx(expected).epsilon(1e-14));
  const double with_two_terms = 0.5 * std::log(2.0) - 2.0 * std::log(2.0 * std::numbers::pi) -
                                0.75 * std::log(2.0) + 0.25 * std::log(2.0 / std::numbers::pi);
  CHECK(d0_constant(2, 1.0) == doctest::Approx(with_two_terms).epsilon(1e-14));
  CHECK_THROWS_AS(d0_constant(1, -1.0), DomainError);
}

TEST_CASE("derived constants") {
  ProblemSpec spec;
  spec.n = 1;
  spec.beta = -1.0;
  spec.delta = 0.01;
  spec.b0 = 1.0;
  const auto dc = derive_constants(spec);
  CHECK(dc.c_min.value() == doctest::Approx(0.24 * std::exp(4.0)).epsilon(1e-13));
  CHECK(dc.c0->value() == doctest::Approx(3.0 * std::exp(4.0)).epsilon(1e-13));
  CHECK(dc.eta_delta() < 0.0);
  CHECK_FALSE(dc.log_d0.has_value());

  SUBCASE("high-dimensional regimes stay finite in logs") {
    ProblemSpec s3{3, 1.0, 1.0, 1e-208, std::nullopt, Mode::Practical};
    const auto d3 = derive_constants(s3);
    // 12 sqrt(3) e^{468} 78 * 2 * 1e-208 evaluated independently in logs
    const double log_direct = std::log(12.0 * std::sqrt(3.0) * 78.0 * 2.0) + 468.0 - 208.0 * std::log(10.0);
    CHECK(std::abs(d3.c_min.log() - log_direct) < 1e-12);
    CHECK(d3.c_min.value() == doctest::Approx(0.0576347).epsilon(1e-5));

    ProblemSpec s4{4, -1.0, 1.0, 1e-3, 1.0, Mode::FixedB0};
    const auto d4 = derive_constants(s4);
    CHECK(d4.log_exp_term == 5056.0);
    CHECK(std::isfinite(d4.c_min.log()));
    CHECK(std::isfinite(d4.c0->log()));
    CHECK_FALSE(d4.c0->representable());
    CHECK(std::isfinite(d4.log_neg_eta));
  }

  SUBCASE("missing b0 in fixed-b0 mode") {
    ProblemSpec bad = spec;
    bad.b0.reset();
    bad.mode = Mode::FixedB0;
    CHECK_THROWS_AS(derive_constants(bad), DomainError);
  }
  SUBCASE("invalid beta") {
    ProblemSpec bad = spec;
    bad.beta = 2.0;
    CHECK_THROWS_AS(derive_constants(bad), DomainError);
    bad.beta = 0.0;
    CHECK_THROWS_AS(derive_constants(bad), DomainError);
  }
}

TEST_CASE("identities between c0, c_min and eta") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ProblemSpec s;
    s.n = dim(rng);
    s.beta = unit(rng) < 0.5 ? -1.0 : 1.0 + 2.0 * unit(rng);
    if (is_nonnegative_even(s.beta)) s.beta += 0.5;
    s.b0 = 0.1 + 10.0 * unit(rng);
    s.delta = std::exp(-60.0 * unit(rng));
    const auto dc = derive_constants(s);
    const double g = static_cast<double>(dc.gamma_n);
    const double expected = std::log(*s.b0 / (4.0 * g * (dc.m + 1) * s.delta));
    CHECK(std::abs((dc.c0->log() - dc.c_min.log()) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
    // eta * c0 = ln(2/3) b0 / (4 gamma_n delta)
    const double lhs_log = dc.log_neg_eta + dc.c0->log();
    const double rhs_log = std::log(std::log(1.5) * *s.b0 / (4.0 * g * s.delta));
    CHECK(std::abs(lhs_log - rhs_log) < 1e-12 * std::max(1.0, std::abs(rhs_log)));
  }
}

TEST_CASE("delta_0 at c") {
  ProblemSpec s{1, -1.0, 1.0, 0.01, 1.0, Mode::FixedB0};
  const auto dc = derive_constants(s);
  // at c = c_min the admissible delta_0 equals delta
  CHECK(std::exp(log_delta0_at(s, dc, dc.c_min.value())) == doctest::Approx(0.01).epsilon(1e-12));
  // beyond c0, C = 2/(3 b0) and delta_0 = b0 / (4 gamma_n (m+1))
  CHECK(std::exp(log_delta0_at(s, dc, 1e4)) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

#include "mqshape/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mqshape/errors.hpp"

namespace mqshape {

namespace {

// Sum of ln k for k = lo..hi; zero (empty product) when hi < lo.
double log_product(int lo, int hi) {
  double sum = 0.0;
  for (int k = lo; k <= hi; ++k) sum += std::log(static_cast<double>(k));
  return sum;
}

double log_base_term(const DerivedConstants& dc, int n) {
  return std::log(dc.rho) + 0.5 * std::log(static_cast<double>(n)) + dc.log_exp_term;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Practical: return "practical";
    case Mode::FixedB0: return "fixed-b0";
    case Mode::DilationInvariant: return "dilation-invariant";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  if (text == "practical") return Mode::Practical;
  if (text == "fixed-b0") return Mode::FixedB0;
  if (text == "dilation-invariant") return Mode::DilationInvariant;
  throw DomainError("unknown criterion mode '" + std::string(text) + "'");
}

bool is_nonnegative_even(double beta) {
  return beta >= 0.0 && std::floor(beta / 2.0) == beta / 2.0;
}

void validate(const ProblemSpec& spec) {
  if (spec.n < 1) throw DomainError("dimension n must be >= 1");
  if (!std::isfinite(spec.beta) || is_nonnegative_even(spec.beta)) {
    std::ostringstream os;
    os << "beta = " << spec.beta << " is not allowed (beta must not be a nonnegative even integer)";
    throw DomainError(os.str());
  }
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) throw DomainError("sigma must be positive");
  if (!(spec.delta > 0.0) || !std::isfinite(spec.delta)) throw DomainError("delta must be positive");
  if (spec.b0 && (!(*spec.b0 > 0.0) || !std::isfinite(*spec.b0)))
    throw DomainError("b0 must be positive");
  if (spec.mode == Mode::FixedB0 && !spec.b0)
    throw DomainError("mode fixed-b0 requires the cube side b0");
}

std::uint64_t gamma_seq(int n) {
  if (n < 1) throw DomainError("gamma_seq: n must be >= 1");
  std::uint64_t g = 2;
  for (int k = 2; k <= n; ++k) {
    std::uint64_t next;
    if (__builtin_add_overflow(g, std::uint64_t{1}, &next) ||
        __builtin_mul_overflow(next, static_cast<std::uint64_t>(2 * k), &next)) {
      throw NumericError("gamma_seq: gamma_" + std::to_string(n) + " overflows 64-bit integers");
    }
    g = next;
  }
  return g;
}

int cpd_order(double beta) {
  return std::max(static_cast<int>(std::ceil(beta / 2.0)), 0);
}

RhoDelta0 rho_delta0(int n, double beta) {
  const double nd = n;
  if (beta < nd - 3.0) {
    const int s = static_cast<int>(std::ceil((nd - beta - 3.0) / 2.0));
    if (beta < 0.0) {
      const double rho = (3.0 + s) / 3.0;
      return {rho, log_product(3, 2 + s) - 2.0 * std::log(rho)};
    }
    const int m = static_cast<int>(std::ceil(beta / 2.0));
    const double rho = 1.0 + static_cast<double>(s) / (2 * m + 3);
    return {rho, log_product(2 * m + 3, 2 * m + 2 + s) - (2 * m + 2) * std::log(rho)};
  }
  if (beta < nd - 1.0) return {1.0, 0.0};
  const int s = -static_cast<int>(std::ceil((nd - beta - 3.0) / 2.0));
  const int m = static_cast<int>(std::ceil(beta / 2.0));
  return {1.0, -log_product(2 * m - s + 3, 2 * m + 2)};
}

double unit_ball_volume(int n) {
  const double half = 0.5 * n;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

std::uint64_t multiindex_count(int m, int n) {
  if (m < 0 || n < 1) throw DomainError("multiindex_count: need m >= 0, n >= 1");
  // binomial(m + n - 1, n - 1), built incrementally so every step is exact
  const int top = m + n - 1;
  const int k = std::min(n - 1, m);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t prod;
    if (__builtin_mul_overflow(r, static_cast<std::uint64_t>(top - k + i), &prod))
      throw NumericError("multiindex_count overflows 64-bit integers");
    r = prod / static_cast<std::uint64_t>(i);
  }
  return r;
}

double d0_constant(int n, double beta) {
  if (!(beta > 0.0)) throw DomainError("d0 is defined for beta > 0 only");
  const int m = cpd_order(beta);
  const double log_mfact = std::lgamma(m + 1.0);
  const double log_count = std::log(static_cast<double>(multiindex_count(m, n)));
  return 0.5 * (log_mfact + log_count) - n * std::log(2.0 * std::numbers::pi) -
         0.5 * (1.0 + beta / 2.0) * std::numbers::ln2 + 0.25 * std::log(2.0 / std::numbers::pi);
}

DerivedConstants derive_constants(const ProblemSpec& spec) {
  validate(spec);
  DerivedConstants dc;
  dc.m = cpd_order(spec.beta);
  dc.gamma_n = gamma_seq(spec.n);
  const auto [rho, log_delta_0] = rho_delta0(spec.n, spec.beta);
  dc.rho = rho;
  dc.log_delta_0 = log_delta_0;
  dc.alpha_n = unit_ball_volume(spec.n);
  dc.log_exp_term = 2.0 * spec.n * static_cast<double>(dc.gamma_n);

  const double base = log_base_term(dc, spec.n);
  const double log_gamma = std::log(static_cast<double>(dc.gamma_n));
  if (spec.b0) dc.c0 = LogScalar::from_log(std::log(3.0) + std::log(*spec.b0) + base);
  dc.c_min = LogScalar::from_log(std::log(12.0) + base + log_gamma + std::log(dc.m + 1.0) +
                                 std::log(spec.delta));
  dc.log_neg_eta = std::log(std::log(1.5)) -
                   (std::log(12.0) + base + log_gamma + std::log(spec.delta));
  if (spec.beta > 0.0) dc.log_d0 = d0_constant(spec.n, spec.beta);
  return dc;
}

double log_error_constant(const ProblemSpec& spec, const DerivedConstants& dc, double c) {
  if (!(c > 0.0)) throw DomainError("shape parameter c must be positive");
  const double first = std::numbers::ln2 + log_base_term(dc, spec.n) - std::log(c);
  if (!spec.b0) return first;
  return std::max(first, std::log(2.0 / 3.0) - std::log(*spec.b0));
}

double log_delta0_at(const ProblemSpec& spec, const DerivedConstants& dc, double c) {
  return -(std::log(6.0) + log_error_constant(spec, dc, c) +
           std::log(static_cast<double>(dc.gamma_n)) + std::log(dc.m + 1.0));
}

double log_delta_admissible(const ProblemSpec& spec, const DerivedConstants& dc) {
  if (!spec.b0) throw ContractError("admissible delta bound requires b0");
  return std::log(*spec.b0) - std::log(4.0) - std::log(static_cast<double>(dc.gamma_n)) -
         std::log(dc.m + 1.0);
}

}  // namespace mqshape

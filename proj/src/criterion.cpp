#include "mqshape/criterion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mqshape/errors.hpp"

namespace mqshape {

namespace {

void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    std::ostringstream os;
    os << "shape parameter c = " << c << " must be positive and finite";
    throw DomainError(os.str());
  }
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::BetaNeg1MultiD: return "beta-neg1-multid";
    case Regime::BetaNeg1OneD: return "beta-neg1-oned";
    case Regime::BetaPos: return "beta-pos";
    case Regime::General: return "general";
  }
  return "unknown";
}

bool regime_applies(Regime regime, int n, double beta) {
  switch (regime) {
    case Regime::BetaNeg1MultiD: return beta == -1.0 && n >= 2;
    case Regime::BetaNeg1OneD: return beta == -1.0 && n == 1;
    case Regime::BetaPos: return beta > 0.0;
    case Regime::General: return std::abs(n + beta) >= 1.0 && n + beta + 1.0 >= 0.0;
  }
  return false;
}

Regime default_regime(int n, double beta) {
  if (beta == -1.0) return n >= 2 ? Regime::BetaNeg1MultiD : Regime::BetaNeg1OneD;
  if (beta > 0.0) return Regime::BetaPos;
  if (regime_applies(Regime::General, n, beta)) return Regime::General;
  std::ostringstream os;
  os << "no criterion for n = " << n << ", beta = " << beta
     << " (requires |n + beta| >= 1 and n + beta + 1 >= 0)";
  throw DomainError(os.str());
}

CriterionKind classify(const ProblemSpec& spec) {
  validate(spec);
  return {default_regime(spec.n, spec.beta), spec.mode};
}

void check_consistent(const ProblemSpec& spec, const CriterionKind& kind) {
  if (!regime_applies(kind.regime, spec.n, spec.beta)) {
    std::ostringstream os;
    os << "regime " << to_string(kind.regime) << " does not apply to n = " << spec.n
       << ", beta = " << spec.beta;
    throw ContractError(os.str());
  }
  if (kind.mode == Mode::FixedB0 && !spec.b0)
    throw ContractError("fixed-b0 criterion requested without b0");
}

double xi_star(double c, double sigma, double q) {
  if (q < 0.0) throw DomainError("xi_star: q must be nonnegative");
  const double cs = c * sigma;
  return (cs + std::hypot(cs, 2.0 * std::sqrt(sigma * q))) / 4.0;
}

double log_h_beta_neg1_multid(double c, int n, double sigma) {
  require_positive_c(c);
  const double r = std::hypot(c, 2.0 * std::sqrt(n / sigma));
  const double quarter_n = n / 4.0;
  const double bracket = c * c + c * r;
  return -quarter_n * std::log(c) + quarter_n * std::log(c + r) + sigma / 8.0 * bracket -
         sigma / 16.0 * (bracket + 2.0 * n / sigma);
}

double log_h_beta_neg1_multid_reduced(double c, int n, double sigma) {
  require_positive_c(c);
  const double inner = std::hypot(1.0, 2.0 * std::sqrt(n / sigma) / c);
  const double r = std::sqrt(c * c + 4.0 * n / sigma);
  return n / 4.0 * std::log1p(inner) + sigma / 16.0 * (c * c + c * r) - n / 8.0;
}

double oned_threshold(double sigma) { return 2.0 / std::sqrt(3.0 * sigma); }

double log_h_beta_neg1_oned(double c, double sigma) {
  require_positive_c(c);
  double log_m;
  if (c <= oned_threshold(sigma)) {
    log_m = 1.0 - 1.0 / (c * c * sigma);
  } else {
    const double xi = xi_star(c, sigma, 1.0);
    log_m = 0.5 * std::log(c * xi) + c * xi - xi * xi / sigma;
  }
  const double log_sum = log_add(-std::log(std::numbers::ln2), std::log(2.0 * std::sqrt(3.0)) + log_m);
  return -0.5 * std::log(c) + 0.5 * log_sum;
}

double log_h_core(double c, int n, double beta, double sigma) {
  require_positive_c(c);
  const double q = n + beta + 1.0;
  const double xi = xi_star(c, sigma, q);
  const double log_xi_term = q == 0.0 ? 0.0 : q / 2.0 * std::log(xi);
  return (1.0 + beta - n) / 4.0 * std::log(c) + 0.5 * (log_xi_term + c * xi - xi * xi / sigma);
}

double log_h_beta_pos(double c, int n, double beta, double sigma) {
  if (!(beta > 0.0)) throw DomainError("log_h_beta_pos requires beta > 0");
  return log_h_core(c, n, beta, sigma);
}

double log_lambda_pow(double c, const ProblemSpec& spec, const DerivedConstants& dc) {
  require_positive_c(c);
  switch (spec.mode) {
    case Mode::Practical:
      throw ContractError("lambda^{1/delta} is not part of the practical criterion");
    case Mode::DilationInvariant:
      return dc.eta_times(c);
    case Mode::FixedB0:
      break;
  }
  if (!spec.b0 || !dc.c0) throw ContractError("fixed-b0 criterion requested without b0");
  if (std::log(c) <= dc.c0->log()) return dc.eta_times(c);
  // ln(2/3) b0 / (4 gamma_n delta)
  return -std::exp(std::log(std::log(1.5)) + std::log(*spec.b0) - std::log(4.0) -
                   std::log(static_cast<double>(dc.gamma_n)) - std::log(spec.delta));
}

double log_h_unified(double c, const ProblemSpec& spec, const DerivedConstants& dc,
                     const CriterionKind& kind) {
  check_consistent(spec, kind);
  double core = 0.0;
  switch (kind.regime) {
    case Regime::BetaNeg1MultiD: core = log_h_beta_neg1_multid(c, spec.n, spec.sigma); break;
    case Regime::BetaNeg1OneD: core = log_h_beta_neg1_oned(c, spec.sigma); break;
    case Regime::BetaPos: core = log_h_beta_pos(c, spec.n, spec.beta, spec.sigma); break;
    case Regime::General: core = log_h_core(c, spec.n, spec.beta, spec.sigma); break;
  }
  if (kind.mode == Mode::Practical) return core;
  ProblemSpec mode_spec = spec;
  mode_spec.mode = kind.mode;
  return core + log_lambda_pow(c, mode_spec, dc);
}

std::vector<CurveSample> sample_curve(const ProblemSpec& spec, const DerivedConstants& dc,
                                      const CriterionKind& kind, double c_lo, double c_hi,
                                      int count) {
  if (!(c_lo > 0.0) || !(c_hi > c_lo) || !std::isfinite(c_hi)) {
    std::ostringstream os;
    os << "invalid sampling range [" << c_lo << ", " << c_hi << "]";
    throw DomainError(os.str());
  }
  if (count < 2) throw DomainError("sample count must be >= 2");
  const double lo = std::log(c_lo);
  const double step = (std::log(c_hi) - lo) / (count - 1);
  std::vector<CurveSample> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double c = std::exp(lo + step * i);
    if (i == 0) c = c_lo;
    if (i == count - 1) c = c_hi;
    out[static_cast<std::size_t>(i)] = {c, log_h_unified(c, spec, dc, kind)};
  }
  return out;
}

double oned_squared_derivative(double c, double sigma) {
  require_positive_c(c);
  const double c2 = c * c;
  return -1.0 / (std::numbers::ln2 * c2) +
         2.0 * std::sqrt(3.0) * std::exp(1.0 - 1.0 / (c2 * sigma)) * (2.0 - c2 * sigma) /
             (c2 * c2 * sigma);
}

}  // namespace mqshape

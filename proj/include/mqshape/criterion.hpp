#pragma once

#include <string_view>
#include <vector>

#include "mqshape/constants.hpp"

namespace mqshape {

/// Which closed-form criterion applies to an (n, beta) pair.
enum class Regime {
  BetaNeg1MultiD,  ///< beta = -1, n >= 2
  BetaNeg1OneD,    ///< beta = -1, n = 1 (piecewise criterion)
  BetaPos,         ///< beta > 0
  General,         ///< |n + beta| >= 1 and n + beta + 1 >= 0
};

std::string_view to_string(Regime regime);

struct CriterionKind {
  Regime regime = Regime::General;
  Mode mode = Mode::Practical;
};

/// Default regime for (n, beta), using the specific cases first and falling
/// back to General. Throws DomainError when no criterion is available.
Regime default_regime(int n, double beta);

/// Default regime plus the spec's mode.
CriterionKind classify(const ProblemSpec& spec);

/// Whether `regime` may be used for (n, beta).
bool regime_applies(Regime regime, int n, double beta);

/// Throws ContractError when `kind` does not fit `spec`.
void check_consistent(const ProblemSpec& spec, const CriterionKind& kind);

struct CurveSample {
  double c = 0.0;
  double log_h = 0.0;
};

/// Positive root (c sigma + sqrt(c^2 sigma^2 + 4 sigma q)) / 4, the maximiser
/// of xi^{q/2} e^{c xi - xi^2/sigma} over xi > 0.
double xi_star(double c, double sigma, double q);

/// ln H(c) for beta = -1, n >= 2, in the c^{-n/4}[c + sqrt(c^2 + 4n/sigma)]^{n/4} e^{...} form.
double log_h_beta_neg1_multid(double c, int n, double sigma);

/// Same criterion in the reduced form [1 + sqrt(1 + 4n/(c^2 sigma))]^{n/4} e^{sigma/16 [...]} e^{-n/8}.
double log_h_beta_neg1_multid_reduced(double c, int n, double sigma);

/// Left end of the second branch of the one-dimensional criterion, 2/sqrt(3 sigma).
double oned_threshold(double sigma);

/// ln H(c) for beta = -1, n = 1; piecewise at 2/sqrt(3 sigma).
double log_h_beta_neg1_oned(double c, double sigma);

/// c^{(1+beta-n)/4} [xi^{q/2} e^{c xi - xi^2/sigma}]^{1/2} at xi = xi_star(c, sigma, q),
/// q = n + beta + 1, in log form. Shared by the beta > 0 and the general criteria.
double log_h_core(double c, int n, double beta, double sigma);

/// ln H(c) for beta > 0.
double log_h_beta_pos(double c, int n, double beta, double sigma);

/// ln lambda^{1/delta} as a function of c. Throws ContractError in Practical mode.
double log_lambda_pow(double c, const ProblemSpec& spec, const DerivedConstants& dc);

/// Criterion of the selected regime, plus ln lambda^{1/delta} outside Practical mode.
double log_h_unified(double c, const ProblemSpec& spec, const DerivedConstants& dc,
                     const CriterionKind& kind);

/// `count` log-spaced samples of log_h_unified on [c_lo, c_hi], endpoints exact.
std::vector<CurveSample> sample_curve(const ProblemSpec& spec, const DerivedConstants& dc,
                                      const CriterionKind& kind, double c_lo, double c_hi,
                                      int count);

/// The derivative displayed for the one-dimensional criterion on (0, 2/sqrt(3 sigma)):
/// -1/(ln2 c^2) + 2 sqrt(3) e^{1 - 1/(c^2 sigma)} (2 - c^2 sigma)/(c^4 sigma).
/// It is the derivative of H(c)^2, so it carries the sign of H'(c).
double oned_squared_derivative(double c, double sigma);

}  // namespace mqshape

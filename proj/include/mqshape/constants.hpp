#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mqshape/log_scalar.hpp"

namespace mqshape {

/// How the convergence factor lambda^{1/delta} enters the criterion.
enum class Mode {
  Practical,          ///< lambda^{1/delta} ignored
  FixedB0,            ///< cube side fixed: piecewise lambda^{1/delta}
  DilationInvariant,  ///< cube side free: lambda^{1/delta} = e^{eta c}
};

std::string_view to_string(Mode mode);
/// Parses "practical", "fixed-b0" or "dilation-invariant".
Mode parse_mode(std::string_view text);

/// A user's problem instance.
struct ProblemSpec {
  int n = 1;             ///< space dimension
  double beta = -1.0;    ///< kernel exponent, not in {0, 2, 4, ...}
  double sigma = 1.0;    ///< E_sigma parameter
  double delta = 0.01;   ///< fill distance d(E, X)
  std::optional<double> b0;  ///< cube side
  Mode mode = Mode::Practical;
};

/// Throws DomainError when the spec is not a legal instance (including
/// fixed-b0 mode without b0).
void validate(const ProblemSpec& spec);

/// True for beta in {0, 2, 4, ...}, where the kernel is undefined.
bool is_nonnegative_even(double beta);

struct RhoDelta0 {
  double rho = 1.0;
  double log_delta_0 = 0.0;  ///< ln Delta_0
};

/// Everything derived from a ProblemSpec. Anything that can contain
/// e^{2 n gamma_n} is kept as a logarithm.
struct DerivedConstants {
  int m = 0;                   ///< conditional positive definiteness order
  std::uint64_t gamma_n = 2;
  double rho = 1.0;
  double log_delta_0 = 0.0;    ///< ln Delta_0
  double alpha_n = 2.0;        ///< volume of the unit ball in R^n
  double log_exp_term = 0.0;   ///< 2 n gamma_n, the exponent of e^{2 n gamma_n}
  std::optional<LogScalar> c0; ///< 3 b0 rho sqrt(n) e^{2 n gamma_n}
  LogScalar c_min;             ///< 12 rho sqrt(n) e^{2 n gamma_n} gamma_n (m+1) delta
  /// ln(-eta(delta)); eta = ln(2/3) / (12 rho sqrt(n) e^{2 n gamma_n} gamma_n delta) < 0.
  double log_neg_eta = 0.0;
  std::optional<double> log_d0;  ///< ln d_0, only for beta > 0

  /// eta(delta) as a double; underflows to -0 for high dimensions.
  double eta_delta() const { return -std::exp(log_neg_eta); }
  /// eta(delta) * c, computed without forming eta.
  double eta_times(double c) const { return -std::exp(log_neg_eta + std::log(c)); }
};

/// gamma_1 = 2, gamma_n = 2n(1 + gamma_{n-1}). Throws NumericError on
/// 64-bit overflow.
std::uint64_t gamma_seq(int n);

/// max(ceil(beta/2), 0).
int cpd_order(double beta);

/// rho and ln Delta_0 for all cases of the definition.
RhoDelta0 rho_delta0(int n, double beta);

/// Volume of the unit ball, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

/// Number of multi-indices alpha in N^n with |alpha| = m.
std::uint64_t multiindex_count(int m, int n);

/// ln d_0 = ln( sqrt(m! C(m,n)) / ((2 pi)^n sqrt(2^{1+beta/2})) (2/pi)^{1/4} ).
/// Requires beta > 0.
double d0_constant(int n, double beta);

DerivedConstants derive_constants(const ProblemSpec& spec);

/// ln C of the main error estimate, C = max{2 rho sqrt(n) e^{2n gamma_n} / c, 2/(3 b0)}.
/// Without b0 only the first term is used.
double log_error_constant(const ProblemSpec& spec, const DerivedConstants& dc, double c);

/// ln delta_0 = -ln(6 C gamma_n (m+1)) for shape parameter c.
double log_delta0_at(const ProblemSpec& spec, const DerivedConstants& dc, double c);

/// ln of the upper fill-distance bound b0 / (4 gamma_n (m+1)) under which
/// an admissible c exists. Requires b0.
double log_delta_admissible(const ProblemSpec& spec, const DerivedConstants& dc);

}  // namespace mqshape

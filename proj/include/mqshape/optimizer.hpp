#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "mqshape/constants.hpp"
#include "mqshape/criterion.hpp"

namespace mqshape {

inline constexpr double kDefaultRelTol = 1e-8;
/// Number of log-spaced points in the bracketing scan.
inline constexpr int kScanPoints = 64;
/// Largest c the optimizer will search; far beyond any minimiser, and
/// c^2 stays finite there.
inline constexpr double kSearchCeiling = 1e100;

struct ScalarMinimum {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Minimises f on [lo, hi] (lo > 0): a log-spaced scan of kScanPoints points,
/// plus any `seeds` inside the interval, brackets the smallest sample and a
/// golden-section search in ln x refines it until the bracket is narrower
/// than `tol` relative. Ties go to the smaller x. Throws NumericError on a
/// non-finite sample.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double tol = kDefaultRelTol, std::span<const double> seeds = {});

/// Left-hand side of the beta = -1, n >= 2 critical-point equation
/// (sigma^2/16) c R [c + R][2c + R + c^2/R], R = sqrt(c^2 + 4n/sigma).
double case1_lhs(double c, int n, double sigma);

/// Unique root of case1_lhs(c) = n^2 by bisection in ln c.
double critical_point_case1(int n, double sigma, double tol = 1e-12);

/// (n - 1 - beta)/sqrt(2 n sigma) when 1 + beta - n < 0, else nothing.
std::optional<double> case3_start_value(int n, double beta, double sigma);

struct OptimalResult {
  double c_star = 0.0;
  double log_h_star = 0.0;
  bool clamped_lower = false;  ///< c_star is the admissible endpoint c_min
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};  ///< searched interval [c_min, C_HI]
};

/// Minimises log_h_unified over [c_min, C_HI]. Throws PreconditionError if
/// b0 is given and delta >= b0/(4 gamma_n (m+1)), and NumericError when
/// c_min lies above kSearchCeiling / 10.
OptimalResult optimal_c(const ProblemSpec& spec, const DerivedConstants& dc,
                        const CriterionKind& kind, double tol = kDefaultRelTol);

}  // namespace mqshape

#include "mqshape/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "mqshape/errors.hpp"

namespace mqshape {

namespace {

struct Sample {
  double x;
  double fx;
};

// Strictly better, or equal and further left.
bool better(const Sample& a, const Sample& b) {
  return a.fx < b.fx || (a.fx == b.fx && a.x < b.x);
}

Sample evaluate(const std::function<double(double)>& f, double x) {
  const double fx = f(x);
  if (!std::isfinite(fx)) {
    std::ostringstream os;
    os.precision(17);
    os << "objective is not finite at c = " << x;
    throw NumericError(os.str());
  }
  return {x, fx};
}

}  // namespace

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double tol, std::span<const double> seeds) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw DomainError("minimize_scalar: need 0 < lo < hi < inf");
  if (!(tol > 0.0)) throw DomainError("minimize_scalar: tol must be positive");

  std::vector<double> xs;
  xs.reserve(kScanPoints + seeds.size());
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / (kScanPoints - 1);
  for (int i = 0; i < kScanPoints; ++i) xs.push_back(std::exp(log_lo + step * i));
  xs.front() = lo;
  xs.back() = hi;
  for (double s : seeds)
    if (s > lo && s < hi) xs.push_back(s);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Sample> scan;
  scan.reserve(xs.size());
  for (double x : xs) scan.push_back(evaluate(f, x));

  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < scan.size(); ++i)
    if (better(scan[i], scan[best_idx])) best_idx = i;
  Sample best = scan[best_idx];

  double a = std::log(scan[best_idx == 0 ? 0 : best_idx - 1].x);
  double b = std::log(scan[std::min(best_idx + 1, scan.size() - 1)].x);

  // golden section in ln x
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  Sample s1 = evaluate(f, std::exp(x1));
  Sample s2 = evaluate(f, std::exp(x2));
  int iterations = 0;
  while (b - a > tol && iterations < 500) {
    if (better(s1, best)) best = s1;
    if (better(s2, best)) best = s2;
    if (s1.fx <= s2.fx) {
      b = x2;
      x2 = x1;
      s2 = s1;
      x1 = b - inv_phi * (b - a);
      s1 = evaluate(f, std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      s1 = s2;
      x2 = a + inv_phi * (b - a);
      s2 = evaluate(f, std::exp(x2));
    }
    ++iterations;
  }
  if (better(s1, best)) best = s1;
  if (better(s2, best)) best = s2;
  return {best.x, best.fx, iterations};
}

double case1_lhs(double c, int n, double sigma) {
  const double r = std::sqrt(c * c + 4.0 * n / sigma);
  return sigma * sigma / 16.0 * c * r * (c + r) * (2.0 * c + r + c * c / r);
}

double critical_point_case1(int n, double sigma, double tol) {
  if (n < 2) throw DomainError("critical_point_case1 requires n >= 2");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const double target = 2.0 * std::log(static_cast<double>(n));
  // ln LHS - ln n^2; the LHS grows like c^4 so it is compared in logs
  auto g = [&](double c) {
    const double r = std::hypot(c, 2.0 * std::sqrt(n / sigma));
    return 2.0 * std::log(sigma) - std::log(16.0) + std::log(c) + std::log(r) + std::log(c + r) +
           std::log(2.0 * c + r + c * (c / r)) - target;
  };
  double lo = 1e-6;
  double hi = 1.0;
  while (g(hi) < 0.0) {
    hi *= 10.0;
    if (hi > 1e300) throw NumericError("critical_point_case1: bracket exceeded 1e300");
  }
  while (g(lo) > 0.0) {
    lo /= 10.0;
    if (lo < 1e-300) throw NumericError("critical_point_case1: bracket fell below 1e-300");
  }
  double a = std::log(lo);
  double b = std::log(hi);
  for (int it = 0; it < 4000 && b - a > tol; ++it) {
    const double mid = 0.5 * (a + b);
    if (g(std::exp(mid)) < 0.0)
      a = mid;
    else
      b = mid;
  }
  return std::exp(0.5 * (a + b));
}

std::optional<double> case3_start_value(int n, double beta, double sigma) {
  if (!(beta > 0.0)) throw DomainError("case3_start_value requires beta > 0");
  if (1.0 + beta - n >= 0.0) return std::nullopt;
  return (n - 1.0 - beta) / std::sqrt(2.0 * n * sigma);
}

OptimalResult optimal_c(const ProblemSpec& spec, const DerivedConstants& dc,
                        const CriterionKind& kind, double tol) {
  validate(spec);
  check_consistent(spec, kind);
  if (spec.b0 && kind.mode != Mode::DilationInvariant) {
    const double log_bound = log_delta_admissible(spec, dc);
    if (std::log(spec.delta) >= log_bound) {
      std::ostringstream os;
      os.precision(10);
      os << "delta = " << spec.delta << " must satisfy 0 < delta < b0/(4 gamma_n (m+1)) = "
         << std::exp(log_bound);
      throw PreconditionError(os.str(), std::exp(log_bound));
    }
  }
  // ln H grows like c^2, so past the ceiling it is no longer a finite double
  if (dc.c_min.log() > std::log(kSearchCeiling) - std::log(10.0)) {
    std::ostringstream os;
    os << "admissible interval starts at c_min = e^" << dc.c_min.log()
       << ", outside double range";
    throw NumericError(os.str());
  }
  const double lo = dc.c_min.value();

  std::vector<double> seeds;
  double scale = 1.0;
  switch (kind.regime) {
    case Regime::BetaNeg1MultiD:
      seeds.push_back(critical_point_case1(spec.n, spec.sigma));
      break;
    case Regime::BetaNeg1OneD:
      seeds.push_back(1.0 / std::sqrt(3.0 * spec.sigma));
      break;
    case Regime::BetaPos:
    case Regime::General:
      if (spec.beta > 0.0) {
        if (auto start = case3_start_value(spec.n, spec.beta, spec.sigma)) {
          seeds.push_back(*start);
          scale = std::max(scale, *start);
        }
      }
      break;
  }

  double hi = 1e3 * scale;
  if (dc.c0) {
    if (dc.c0->log() + std::log(10.0) >= std::log(kSearchCeiling))
      hi = kSearchCeiling;
    else
      hi = std::max(hi, 10.0 * dc.c0->value());
  }
  hi = std::min(hi, kSearchCeiling);
  if (hi <= lo * 1.01) hi = lo * 1e3;
  if (!std::isfinite(hi)) throw NumericError("search interval upper end overflows");

  auto objective = [&](double c) { return log_h_unified(c, spec, dc, kind); };
  const ScalarMinimum min = minimize_scalar(objective, lo, hi, tol, seeds);

  OptimalResult r;
  r.c_star = min.x;
  r.log_h_star = min.fx;
  r.clamped_lower = min.x == lo;
  r.iterations = min.iterations;
  r.bracket = {lo, hi};
  return r;
}

}  // namespace mqshape

#include "mqshape/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mqshape/errors.hpp"

namespace mqshape {

namespace {

template <typename Fn>
void for_each_grid_point(const Cube& cube, int per_side, Fn&& fn) {
  if (per_side < 2) throw DomainError("grid needs at least 2 points per side");
  const auto n = cube.corner.size();
  long total = 1;
  for (Eigen::Index d = 0; d < n; ++d) total *= per_side;
  Eigen::VectorXd y(n);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (Eigen::Index d = 0; d < n; ++d) {
      y[d] = cube.corner[d] + cube.side * static_cast<double>(rem % per_side) / (per_side - 1);
      rem /= per_side;
    }
    fn(y);
  }
}

}  // namespace

double GaussianFunction::operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const double r2 = center.size() == 0 ? x.squaredNorm() : (x - center).squaredNorm();
  return amplitude * std::exp(-a * r2);
}

GaussianFunction make_gaussian(int n, double a, double amplitude, Eigen::VectorXd center) {
  if (n < 1) throw DomainError("gaussian: n must be >= 1");
  if (!(a > 0.0)) throw DomainError("gaussian: a must be positive");
  if (center.size() != 0 && center.size() != n) throw DomainError("gaussian: center has wrong dimension");
  return {n, a, amplitude, std::move(center)};
}

double gaussian_spectrum_sq(const GaussianFunction& f, double r) {
  return f.amplitude * f.amplitude * std::pow(std::numbers::pi / f.a, f.n) *
         std::exp(-r * r / (2.0 * f.a));
}

double e_sigma_norm(const GaussianFunction& f, double sigma) {
  if (!(sigma > 2.0 * f.a)) {
    std::ostringstream os;
    os << "gaussian with a = " << f.a << " is not in E_sigma for sigma = " << sigma
       << " (needs sigma > 2a)";
    throw DomainError(os.str());
  }
  // amplitude^2 (pi/a)^n (pi/kappa)^{n/2}, kappa = 1/(2a) - 1/sigma
  const double kappa = 1.0 / (2.0 * f.a) - 1.0 / sigma;
  const double log_sq = 2.0 * std::log(std::abs(f.amplitude)) + f.n * std::log(std::numbers::pi / f.a) +
                        0.5 * f.n * std::log(std::numbers::pi / kappa);
  return std::exp(0.5 * log_sq);
}

double fill_distance(const Cube& cube, const NodeSet& nodes, int grid_per_side) {
  if (nodes.size() == 0) throw InputError("fill distance of an empty node set");
  const auto& pts = nodes.points();
  double worst = 0.0;
  for_each_grid_point(cube, grid_per_side, [&](const Eigen::VectorXd& y) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
      nearest = std::min(nearest, (pts.row(i).transpose() - y).squaredNorm());
    worst = std::max(worst, nearest);
  });
  return std::sqrt(worst);
}

double log_lambda_bound(const ProblemSpec& spec, const DerivedConstants& dc, double c) {
  const double log_c = log_error_constant(spec, dc, c);
  return -std::exp(std::log(std::log(1.5)) - std::log(6.0) - log_c -
                   std::log(static_cast<double>(dc.gamma_n)) - std::log(spec.delta));
}

double error_bound(const ProblemSpec& spec, const DerivedConstants& dc, double c, double f_norm,
                   const CriterionKind& kind) {
  check_consistent(spec, kind);
  if (!(f_norm > 0.0)) throw DomainError("error_bound: ||f|| must be positive");
  const double log_delta0 = log_delta0_at(spec, dc, c);
  // c = c_min puts delta exactly on delta_0; allow rounding in the logs
  if (std::log(spec.delta) > log_delta0 + 1e-12) {
    std::ostringstream os;
    os.precision(10);
    os << "fill distance " << spec.delta << " exceeds delta_0 = 1/(6 C gamma_n (m+1)) = "
       << std::exp(log_delta0) << " at c = " << c;
    throw PreconditionError(os.str(), std::exp(log_delta0));
  }

  const double n = spec.n;
  const double beta = spec.beta;
  const double common = 0.5 * std::log(n * dc.alpha_n) + 0.5 * dc.log_delta_0 +
                        log_lambda_bound(spec, dc, c) + std::log(f_norm);
  const double ln2 = std::numbers::ln2;
  const double lnpi = std::log(std::numbers::pi);

  if (kind.regime == Regime::BetaNeg1OneD) {
    return (beta - 3.0) / 4.0 * ln2 - 0.5 * lnpi + common + log_h_beta_neg1_oned(c, spec.sigma);
  }
  const double core = log_h_core(c, spec.n, beta, spec.sigma);
  if (beta > 0.0) {
    if (!dc.log_d0) throw ContractError("d_0 missing for beta > 0");
    return (n + beta + 1.0) / 4.0 * ln2 + (n + 1.0) / 4.0 * lnpi + common + *dc.log_d0 + core;
  }
  // beta < 0 with |n + beta| >= 1, n + beta + 1 >= 0
  return -0.75 * n * ln2 - 0.75 * n * lnpi + common + core;
}

double max_interpolation_error(const Interpolant& s, const GaussianFunction& f, const Cube& cube,
                               int eval_grid) {
  double worst = 0.0;
  for_each_grid_point(cube, eval_grid,
                      [&](const Eigen::VectorXd& y) { worst = std::max(worst, std::abs(f(y) - s(y))); });
  return worst;
}

BoundReport run_bound_experiment(const ProblemSpec& spec, const GaussianFunction& f,
                                 const NodeSet& nodes, double c, int eval_grid,
                                 Precision precision) {
  validate(spec);
  if (f.n != spec.n || nodes.dim() != spec.n) throw InputError("dimension mismatch in bound experiment");

  Eigen::VectorXd values(nodes.size());
  for (int i = 0; i < nodes.size(); ++i) values[i] = f(nodes.points().row(i).transpose());
  const Interpolant s = fit(make_kernel(c, spec.beta, spec.n), nodes, values, precision);

  BoundReport report;
  report.c = c;
  report.nodes = nodes.size();
  report.condition = s.condition();
  report.max_error_measured = max_interpolation_error(s, f, nodes.cube(), eval_grid);
  report.delta_measured = fill_distance(nodes.cube(), nodes, eval_grid);

  ProblemSpec measured = spec;
  measured.delta = report.delta_measured;
  measured.b0 = nodes.cube().side;
  const DerivedConstants dc = derive_constants(measured);
  const CriterionKind kind{default_regime(spec.n, spec.beta), measured.mode};
  report.log_bound = error_bound(measured, dc, c, e_sigma_norm(f, spec.sigma), kind);

  const double log_err = report.max_error_measured > 0.0
                             ? std::log(report.max_error_measured)
                             : -std::numeric_limits<double>::infinity();
  report.satisfied = log_err <= report.log_bound;
  report.margin_log = report.log_bound - log_err;
  return report;
}

}  // namespace mqshape

#pragma once

#include <Eigen/Dense>

#include "mqshape/constants.hpp"
#include "mqshape/criterion.hpp"
#include "mqshape/rbf.hpp"

namespace mqshape {

/// f(x) = amplitude * exp(-a |x - center|^2) on R^n.
///
/// Fourier transforms follow f^(xi) = int f(x) e^{-i <x, xi>} dx, so
/// |f^(xi)|^2 = amplitude^2 (pi/a)^n e^{-|xi|^2/(2a)} and f lies in E_sigma
/// exactly when sigma > 2a.
struct GaussianFunction {
  int n = 1;
  double a = 0.25;
  double amplitude = 1.0;
  Eigen::VectorXd center;  ///< empty means the origin

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

GaussianFunction make_gaussian(int n, double a, double amplitude = 1.0,
                               Eigen::VectorXd center = {});

/// |f^(xi)|^2 at radius |xi| = r, in the transform convention above.
double gaussian_spectrum_sq(const GaussianFunction& f, double r);

/// ||f||_{E_sigma} = (int |f^(xi)|^2 e^{|xi|^2/sigma} d xi)^{1/2} in closed form.
/// Throws DomainError when sigma <= 2a (divergent integral).
double e_sigma_norm(const GaussianFunction& f, double sigma);

/// sup over a per-side^n tensor grid of the cube of the distance to the
/// nearest node. Approaches d(E, X) from below as the grid is refined.
double fill_distance(const Cube& cube, const NodeSet& nodes, int grid_per_side);

/// ln of the full error bound at shape parameter c for the criterion
/// regime: constant prefactors, the c-dependent core, lambda^{1/delta} and
/// ||f||_{E_sigma}. Uses spec.delta as the fill distance and spec.b0 (when
/// present) in C. Throws PreconditionError when delta > delta_0(c).
double error_bound(const ProblemSpec& spec, const DerivedConstants& dc, double c, double f_norm,
                   const CriterionKind& kind);

/// ln lambda^{1/delta} with lambda = (2/3)^{1/(6 C gamma_n)}.
double log_lambda_bound(const ProblemSpec& spec, const DerivedConstants& dc, double c);

struct BoundReport {
  double c = 0.0;
  double delta_measured = 0.0;
  double log_bound = 0.0;
  double max_error_measured = 0.0;
  bool satisfied = false;
  double margin_log = 0.0;  ///< log_bound - ln(max_error_measured)
  int nodes = 0;
  double condition = 0.0;
};

/// Fits f on `nodes` with shape parameter c, measures max |f - s| on an
/// eval_grid^n grid of the node cube, and compares against error_bound at
/// the measured fill distance (same grid) with b0 = cube side. Admissible
/// shape parameters are hundreds of node spacings wide, hence the extended
/// default precision.
BoundReport run_bound_experiment(const ProblemSpec& spec, const GaussianFunction& f,
                                 const NodeSet& nodes, double c, int eval_grid,
                                 Precision precision = Precision::Extended);

/// max |f - s| over an eval_grid^n grid of the cube.
double max_interpolation_error(const Interpolant& s, const GaussianFunction& f, const Cube& cube,
                               int eval_grid);

}  // namespace mqshape

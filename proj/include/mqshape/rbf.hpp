#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

namespace mqshape {

/// Gamma(-beta/2) (c^2 + |x|^2)^{beta/2}.
struct Kernel {
  double c = 1.0;
  double beta = -1.0;
  int n = 1;
  double gamma_factor = 0.0;  ///< Gamma(-beta/2)
};

Kernel make_kernel(double c, double beta, int n);

double kernel_eval(const Kernel& kernel, const Eigen::Ref<const Eigen::VectorXd>& x);
/// Kernel value as a function of the squared distance.
double kernel_eval_r2(const Kernel& kernel, double r2);

struct Cube {
  Eigen::VectorXd corner;  ///< lower-left corner
  double side = 1.0;
};

Cube unit_cube(int n);

/// Centers in a cube; rows of `points` are the centers.
class NodeSet {
 public:
  /// Throws InputError on points outside the cube, duplicates, or a
  /// dimension mismatch.
  NodeSet(Eigen::MatrixXd points, Cube cube);

  const Eigen::MatrixXd& points() const { return points_; }
  const Cube& cube() const { return cube_; }
  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  double min_separation() const { return min_separation_; }

 private:
  Eigen::MatrixXd points_;
  Cube cube_;
  double min_separation_ = 0.0;
};

/// per_side^n tensor grid including the cube's faces.
NodeSet grid_nodes(const Cube& cube, int per_side);
/// per_side^n tensor grid at the centers of equal sub-cubes.
NodeSet cell_center_nodes(const Cube& cube, int per_side);

/// Exponent vector of a monomial x_1^{e_1} ... x_n^{e_n}.
using Monomial = std::vector<int>;

/// Monomial basis of polynomials of degree <= m-1 in n variables, graded
/// lexicographic. Empty for m = 0.
std::vector<Monomial> poly_basis(int m, int n);

double eval_monomial(const Monomial& mono, const Eigen::Ref<const Eigen::VectorXd>& x);

/// The (N+Q)x(N+Q) interpolation matrix [A P; P^T 0]. The kernel block is
/// filled on the upper triangle and mirrored.
Eigen::MatrixXd assemble_system(const Kernel& kernel, const NodeSet& nodes,
                                const std::vector<Monomial>& basis);

/// ||M||_1 ||M^{-1}||_1; +inf for a singular matrix.
double condition_1norm(const Eigen::MatrixXd& matrix);

double condition_estimate(const Kernel& kernel, const NodeSet& nodes);

/// Arithmetic used to solve and evaluate an interpolant. Extended carries
/// about 100 significant digits and exists for the very flat kernels
/// (c much larger than the node spacing) that the error bounds require.
enum class Precision { Double, Extended };

struct ExtendedState;

class Interpolant {
 public:
  const Kernel& kernel() const { return kernel_; }
  const NodeSet& nodes() const { return nodes_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  const Eigen::VectorXd& kernel_coeffs() const { return kernel_coeffs_; }
  const Eigen::VectorXd& poly_coeffs() const { return poly_coeffs_; }
  /// max_j |sum_i c_i p_j(x_i)| / sum_i |c_i p_j(x_i)|; zero when Q = 0.
  double side_condition_residual() const { return side_residual_; }
  /// max_j |s(x_j) - f(x_j)|.
  double node_residual() const { return node_residual_; }
  double condition() const { return condition_; }
  Precision precision() const { return extended_ ? Precision::Extended : Precision::Double; }

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  friend Interpolant fit(const Kernel&, const NodeSet&, const Eigen::VectorXd&, Precision);
  template <typename Real>
  friend void solve_into(Interpolant&, const Eigen::VectorXd&);
  Interpolant(Kernel kernel, NodeSet nodes) : kernel_(kernel), nodes_(std::move(nodes)) {}

  Kernel kernel_;
  NodeSet nodes_;
  std::vector<Monomial> basis_;
  Eigen::VectorXd kernel_coeffs_;
  Eigen::VectorXd poly_coeffs_;
  double side_residual_ = 0.0;
  double node_residual_ = 0.0;
  double condition_ = 1.0;
  std::shared_ptr<const ExtendedState> extended_;  ///< coefficients at full precision
};

/// Solves the saddle system for s = sum c_i h(x - x_i) + p. Throws
/// InputError for non-unisolvent nodes and ConditioningError when the matrix
/// is numerically singular at the requested precision.
Interpolant fit(const Kernel& kernel, const NodeSet& nodes, const Eigen::VectorXd& values,
                Precision precision = Precision::Double);

inline double evaluate(const Interpolant& s, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return s(x);
}

}  // namespace mqshape

#include "mqshape/rbf.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

#include "mqshape/constants.hpp"
#include "mqshape/errors.hpp"

namespace mqshape {

namespace {

void append_degree(int degree, int var, Monomial& current, std::vector<Monomial>& out) {
  const int n = static_cast<int>(current.size());
  if (var == n - 1) {
    current[static_cast<std::size_t>(var)] = degree;
    out.push_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[static_cast<std::size_t>(var)] = e;
    append_degree(degree - e, var + 1, current, out);
  }
  current[static_cast<std::size_t>(var)] = 0;
}

Eigen::VectorXd axis_points(double lo, double side, int per_side, bool centered) {
  Eigen::VectorXd v(per_side);
  for (int i = 0; i < per_side; ++i) {
    v[i] = centered ? lo + side * (i + 0.5) / per_side
                    : (per_side == 1 ? lo + 0.5 * side : lo + side * i / (per_side - 1));
  }
  return v;
}

NodeSet tensor_nodes(const Cube& cube, int per_side, bool centered) {
  if (per_side < 1) throw DomainError("need at least one node per side");
  const int n = static_cast<int>(cube.corner.size());
  long total = 1;
  for (int d = 0; d < n; ++d) total *= per_side;
  Eigen::MatrixXd pts(total, n);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int d = 0; d < n; ++d) {
      const auto axis = axis_points(cube.corner[d], cube.side, per_side, centered);
      pts(idx, d) = axis[rem % per_side];
      rem /= per_side;
    }
  }
  return NodeSet(std::move(pts), cube);
}

}  // namespace

Kernel make_kernel(double c, double beta, int n) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("kernel: c must be positive");
  if (is_nonnegative_even(beta)) throw DomainError("kernel: beta must not be a nonnegative even integer");
  if (n < 1) throw DomainError("kernel: n must be >= 1");
  return {c, beta, n, std::tgamma(-beta / 2.0)};
}

double kernel_eval_r2(const Kernel& kernel, double r2) {
  return kernel.gamma_factor * std::pow(kernel.c * kernel.c + r2, kernel.beta / 2.0);
}

double kernel_eval(const Kernel& kernel, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return kernel_eval_r2(kernel, x.squaredNorm());
}

Cube unit_cube(int n) { return {Eigen::VectorXd::Zero(n), 1.0}; }

NodeSet::NodeSet(Eigen::MatrixXd points, Cube cube) : points_(std::move(points)), cube_(std::move(cube)) {
  if (points_.rows() == 0) throw InputError("node set is empty");
  if (points_.cols() != cube_.corner.size())
    throw InputError("node dimension does not match the cube dimension");
  if (!(cube_.side > 0.0)) throw InputError("cube side must be positive");
  const double slack = 1e-12 * cube_.side;
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    for (Eigen::Index d = 0; d < points_.cols(); ++d) {
      const double rel = points_(i, d) - cube_.corner[d];
      if (!(rel >= -slack && rel <= cube_.side + slack)) {
        std::ostringstream os;
        os << "node " << i << " lies outside the cube";
        throw InputError(os.str());
      }
    }
  }
  min_separation_ = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points_.rows(); ++j) {
      const double dist = (points_.row(i) - points_.row(j)).norm();
      if (dist == 0.0) {
        std::ostringstream os;
        os << "duplicate nodes " << i << " and " << j;
        throw InputError(os.str());
      }
      min_separation_ = std::min(min_separation_, dist);
    }
  }
}

NodeSet grid_nodes(const Cube& cube, int per_side) { return tensor_nodes(cube, per_side, false); }
NodeSet cell_center_nodes(const Cube& cube, int per_side) { return tensor_nodes(cube, per_side, true); }

std::vector<Monomial> poly_basis(int m, int n) {
  if (m < 0 || n < 1) throw DomainError("poly_basis: need m >= 0, n >= 1");
  std::vector<Monomial> out;
  Monomial current(static_cast<std::size_t>(n), 0);
  for (int degree = 0; degree <= m - 1; ++degree) append_degree(degree, 0, current, out);
  return out;
}

double eval_monomial(const Monomial& mono, const Eigen::Ref<const Eigen::VectorXd>& x) {
  double v = 1.0;
  for (std::size_t d = 0; d < mono.size(); ++d)
    for (int k = 0; k < mono[d]; ++k) v *= x[static_cast<Eigen::Index>(d)];
  return v;
}

Eigen::MatrixXd assemble_system(const Kernel& kernel, const NodeSet& nodes,
                                const std::vector<Monomial>& basis) {
  const Eigen::Index n_nodes = nodes.size();
  const auto q = static_cast<Eigen::Index>(basis.size());
  const auto& pts = nodes.points();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_nodes + q, n_nodes + q);
  for (Eigen::Index i = 0; i < n_nodes; ++i) {
    for (Eigen::Index j = i; j < n_nodes; ++j) {
      const double v = kernel_eval_r2(kernel, (pts.row(i) - pts.row(j)).squaredNorm());
      m(i, j) = v;
      m(j, i) = v;
    }
    const Eigen::VectorXd x = pts.row(i).transpose();
    for (Eigen::Index k = 0; k < q; ++k) {
      const double p = eval_monomial(basis[static_cast<std::size_t>(k)], x);
      m(i, n_nodes + k) = p;
      m(n_nodes + k, i) = p;
    }
  }
  return m;
}

double condition_1norm(const Eigen::MatrixXd& matrix) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix);
  if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
  const double norm = matrix.cwiseAbs().colwise().sum().maxCoeff();
  const double inv_norm = lu.inverse().cwiseAbs().colwise().sum().maxCoeff();
  return norm * inv_norm;
}

double condition_estimate(const Kernel& kernel, const NodeSet& nodes) {
  return condition_1norm(assemble_system(kernel, nodes, poly_basis(cpd_order(kernel.beta), kernel.n)));
}

namespace {

using ExtendedReal =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;

template <typename Real>
using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
Real kernel_r2(const Kernel& kernel, const Real& r2) {
  using std::pow;
  using std::sqrt;
  const Real base = Real(kernel.c) * Real(kernel.c) + r2;
  Real v;
  if (kernel.beta == -1.0) v = 1 / sqrt(base);
  else if (kernel.beta == 1.0) v = sqrt(base);
  else v = pow(base, Real(kernel.beta / 2.0));
  return Real(kernel.gamma_factor) * v;
}

template <typename Real>
Real squared_distance(const Eigen::MatrixXd& pts, Eigen::Index i, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Real r2 = 0;
  for (Eigen::Index d = 0; d < pts.cols(); ++d) {
    const Real diff = Real(pts(i, d)) - Real(x[d]);
    r2 += diff * diff;
  }
  return r2;
}

template <typename Real>
Real monomial_r(const Monomial& mono, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Real v = 1;
  for (std::size_t d = 0; d < mono.size(); ++d)
    for (int k = 0; k < mono[d]; ++k) v *= Real(x[static_cast<Eigen::Index>(d)]);
  return v;
}

template <typename Real>
Real evaluate_r(const Kernel& kernel, const Eigen::MatrixXd& pts, const std::vector<Monomial>& basis,
                const VectorR<Real>& coeffs, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Real s = 0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    s += coeffs[i] * kernel_r2(kernel, squared_distance<Real>(pts, i, x));
  for (std::size_t k = 0; k < basis.size(); ++k)
    s += coeffs[pts.rows() + static_cast<Eigen::Index>(k)] * monomial_r<Real>(basis[k], x);
  return s;
}

template <typename Real>
MatrixR<Real> assemble_r(const Kernel& kernel, const NodeSet& nodes, const std::vector<Monomial>& basis) {
  const Eigen::Index n_nodes = nodes.size();
  const auto q = static_cast<Eigen::Index>(basis.size());
  const auto& pts = nodes.points();
  MatrixR<Real> m = MatrixR<Real>::Zero(n_nodes + q, n_nodes + q);
  for (Eigen::Index i = 0; i < n_nodes; ++i) {
    const Eigen::VectorXd x = pts.row(i).transpose();
    for (Eigen::Index j = i; j < n_nodes; ++j) {
      const Real v = kernel_r2(kernel, squared_distance<Real>(pts, j, x));
      m(i, j) = v;
      m(j, i) = v;
    }
    for (Eigen::Index k = 0; k < q; ++k) {
      const Real p = monomial_r<Real>(basis[static_cast<std::size_t>(k)], x);
      m(i, n_nodes + k) = p;
      m(n_nodes + k, i) = p;
    }
  }
  return m;
}

template <typename Real>
Real norm_1(const MatrixR<Real>& m) {
  Real best = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Real col = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) col += abs(m(i, j));
    if (col > best) best = col;
  }
  return best;
}

double abs(double v) { return std::abs(v); }

}  // namespace

struct ExtendedState {
  VectorR<ExtendedReal> coeffs;  ///< kernel coefficients followed by polynomial ones
};

double Interpolant::operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (extended_)
    return static_cast<double>(evaluate_r<ExtendedReal>(kernel_, nodes_.points(), basis_, extended_->coeffs, x));
  const auto& pts = nodes_.points();
  double s = 0.0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    s += kernel_coeffs_[i] * kernel_eval_r2(kernel_, (pts.row(i).transpose() - x).squaredNorm());
  for (std::size_t k = 0; k < basis_.size(); ++k)
    s += poly_coeffs_[static_cast<Eigen::Index>(k)] * eval_monomial(basis_[k], x);
  return s;
}

template <typename Real>
void solve_into(Interpolant& s, const Eigen::VectorXd& values) {
  const Eigen::Index n_nodes = s.nodes_.size();
  const auto q = static_cast<Eigen::Index>(s.basis_.size());
  const MatrixR<Real> system = assemble_r<Real>(s.kernel_, s.nodes_, s.basis_);
  Eigen::FullPivLU<MatrixR<Real>> lu(system);
  const Real eps = std::numeric_limits<Real>::epsilon();
  lu.setThreshold(eps * Real(system.rows()));
  double cond = std::numeric_limits<double>::infinity();
  if (lu.isInvertible()) {
    const MatrixR<Real> inv = lu.inverse();
    cond = static_cast<double>(norm_1<Real>(system) * norm_1<Real>(inv));
  }
  if (!std::isfinite(cond) || Real(cond) * eps > 1) {
    std::ostringstream os;
    os << "interpolation matrix is numerically singular (1-norm condition " << cond << ")";
    throw ConditioningError(os.str(), cond);
  }
  s.condition_ = cond;

  VectorR<Real> rhs = VectorR<Real>::Zero(n_nodes + q);
  for (Eigen::Index i = 0; i < n_nodes; ++i) rhs[i] = Real(values[i]);
  VectorR<Real> sol = lu.solve(rhs);
  sol += lu.solve(VectorR<Real>(rhs - system * sol));  // one step of iterative refinement

  s.kernel_coeffs_.resize(n_nodes);
  s.poly_coeffs_.resize(q);
  for (Eigen::Index i = 0; i < n_nodes; ++i) s.kernel_coeffs_[i] = static_cast<double>(sol[i]);
  for (Eigen::Index k = 0; k < q; ++k) s.poly_coeffs_[k] = static_cast<double>(sol[n_nodes + k]);
  if constexpr (std::is_same_v<Real, ExtendedReal>) s.extended_ = std::make_shared<const ExtendedState>(ExtendedState{sol});

  double side = 0.0;
  for (Eigen::Index k = 0; k < q; ++k) {
    Real sum = 0;
    Real abs_sum = 0;
    for (Eigen::Index i = 0; i < n_nodes; ++i) {
      const Real t = sol[i] * system(i, n_nodes + k);
      sum += t;
      abs_sum += abs(t);
    }
    if (abs_sum > 0) side = std::max(side, static_cast<double>(abs(sum) / abs_sum));
  }
  s.side_residual_ = side;
}

Interpolant fit(const Kernel& kernel, const NodeSet& nodes, const Eigen::VectorXd& values,
                Precision precision) {
  if (values.size() != nodes.size()) throw InputError("number of values differs from number of nodes");
  if (nodes.dim() != kernel.n) throw InputError("node dimension differs from kernel dimension");
  Interpolant s(kernel, nodes);
  s.basis_ = poly_basis(cpd_order(kernel.beta), kernel.n);
  const Eigen::Index n_nodes = nodes.size();
  const auto q = static_cast<Eigen::Index>(s.basis_.size());

  if (q > 0) {
    Eigen::MatrixXd p(n_nodes, q);
    for (Eigen::Index i = 0; i < n_nodes; ++i) {
      const Eigen::VectorXd x = nodes.points().row(i).transpose();
      for (Eigen::Index k = 0; k < q; ++k) p(i, k) = eval_monomial(s.basis_[static_cast<std::size_t>(k)], x);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(p);
    qr.setThreshold(1e-10);
    if (qr.rank() < q) {
      std::ostringstream os;
      os << "nodes are not unisolvent for polynomials of degree <= " << cpd_order(kernel.beta) - 1;
      throw InputError(os.str());
    }
  }

  if (precision == Precision::Extended) solve_into<ExtendedReal>(s, values);
  else solve_into<double>(s, values);

  double node = 0.0;
  for (Eigen::Index i = 0; i < n_nodes; ++i)
    node = std::max(node, std::abs(s(nodes.points().row(i).transpose()) - values[i]));
  s.node_residual_ = node;
  return s;
}

}  // namespace mqshape

#include "cartankit/matrix.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "cartankit/config.hpp"

namespace cartankit {

bool approx_zero(const Matrix& a, double tol) { return frob(a) <= tol; }

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return frob(a - b) <= tol * std::max(1.0, std::max(frob(a), frob(b)));
}

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && approx_zero(Matrix(a - a.adjoint()), tol);
}

bool is_projection(const Matrix& p, double tol) {
  if (p.rows() != p.cols()) return false;
  double scale = std::max(1.0, frob(p));
  return frob(p * p - p) <= tol * scale && frob(p.adjoint() - p) <= tol * scale;
}

bool is_partial_isometry(const Matrix& v, double tol) {
  if (v.rows() != v.cols()) return false;
  return frob(v * v.adjoint() * v - v) <= tol * std::max(1.0, frob(v));
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return approx_zero(Matrix(u.adjoint() * u - identity(u.rows())), tol * u.rows());
}

int projection_rank(const Matrix& p) {
  return static_cast<int>(std::lround(p.trace().real()));
}

HermitianEigen hermitian_eigen(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  // Phase convention: first non-negligible coordinate real positive.
  const double tol = tolerance();
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      Complex z = out.vectors(r, c);
      if (std::abs(z) > tol) {
        out.vectors.col(c) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
  return out;
}

Matrix hermitian_sqrt(const Matrix& h) {
  HermitianEigen eig = hermitian_eigen(h);
  Eigen::VectorXd roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

double hermitian_op_norm(const Matrix& h) {
  HermitianEigen eig = hermitian_eigen(h);
  return eig.values.cwiseAbs().maxCoeff();
}

Matrix polar_partial_isometry(const Matrix& x) {
  // w = x * (x*x)^{-1/2} on the support of x*x.
  HermitianEigen eig = hermitian_eigen(Matrix(x.adjoint() * x));
  const double cut = tolerance() * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv_roots = eig.values;
  for (Eigen::Index i = 0; i < inv_roots.size(); ++i)
    inv_roots(i) = inv_roots(i) > cut ? 1.0 / std::sqrt(inv_roots(i)) : 0.0;
  return x * eig.vectors * inv_roots.asDiagonal() * eig.vectors.adjoint();
}

Eigen::Index numerical_rank(const Matrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double cut = tol * std::max(1.0, sv(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

std::vector<CVector> null_space(const Matrix& a, double tol) {
  std::vector<CVector> out;
  if (a.rows() == 0) {  // no constraints: everything is in the kernel
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      CVector e = CVector::Zero(a.cols());
      e(i) = 1.0;
      out.push_back(e);
    }
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= cut) out.push_back(svd.matrixV().col(i));
  }
  return out;
}

}  // namespace cartankit

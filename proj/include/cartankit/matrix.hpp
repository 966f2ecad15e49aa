#ifndef CARTANKIT_MATRIX_HPP
#define CARTANKIT_MATRIX_HPP

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace cartankit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }
inline Matrix zero(Eigen::Index n) { return Matrix::Zero(n, n); }

/// Trace inner product <a, b> = tr(a* b), conjugate linear in the first slot.
inline Complex trace_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace();
}

inline double frob(const Matrix& a) { return a.norm(); }

bool approx_zero(const Matrix& a, double tol);
bool approx_equal(const Matrix& a, const Matrix& b, double tol);

bool is_hermitian(const Matrix& a, double tol);
bool is_projection(const Matrix& p, double tol);
bool is_partial_isometry(const Matrix& v, double tol);
bool is_unitary(const Matrix& u, double tol);

/// Integer rank of a projection (rounded trace).
int projection_rank(const Matrix& p);

/// Eigendecomposition of a Hermitian matrix with deterministic ordering:
/// eigenvalues ascending, each eigenvector's first non-negligible coordinate
/// rotated to be real positive.
struct HermitianEigen {
  Eigen::VectorXd values;
  Matrix vectors;  // columns
};
HermitianEigen hermitian_eigen(const Matrix& h);

/// PSD square root via eigendecomposition (negative ripple clipped at 0).
Matrix hermitian_sqrt(const Matrix& h);

/// Operator norm of a Hermitian matrix (largest |eigenvalue|).
double hermitian_op_norm(const Matrix& h);

/// Polar partial isometry of x: w with w (x*x)^{1/2} = x and
/// w*w = support projection of x.  Stays inside any *-algebra containing x.
Matrix polar_partial_isometry(const Matrix& x);

/// Numerical rank of an arbitrary matrix with cutoff tol * (largest sigma).
Eigen::Index numerical_rank(const Matrix& a, double tol);

/// Orthonormal basis of the null space {v : a v = 0}, via SVD.
std::vector<CVector> null_space(const Matrix& a, double tol);

/// Column-major vectorization helpers.
inline CVector vectorize(const Matrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}
inline Matrix unvectorize(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace cartankit

#endif

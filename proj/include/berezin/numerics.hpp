#pragma once

/**
 * Dense complex linear algebra at desk scale.
 *
 * Everything here is a free function over Eigen dense types. The functions are
 * templated on the expression type so they accept blocks, maps and products,
 * and they return plain matrices of the expression's scalar type (real or
 * complex).
 */

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>

#include "berezin/error.hpp"

namespace berezin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tolerance {
/// Hermiticity check: ||H - H*||_max <= hermitian * (1 + ||H||_max).
inline constexpr double hermitian = 1e-12;
/// Eigenvalues above -psd_clamp * (1 + ||P||_max) are clamped to zero.
inline constexpr double psd_clamp = 1e-10;
/// Singular values at or below this are treated as zero (Singular for inverses).
inline constexpr double singular = 1e-12;
/// Default residual tolerance for hermitian_eigen.
inline constexpr double eigen_residual = 1e-10;
}  // namespace tolerance

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return std::sqrt(m.cwiseAbs2().maxCoeff());
}

template <typename Derived>
using PlainOf = typename Derived::PlainObject;

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& h, double tol = tolerance::hermitian) {
  if (h.rows() != h.cols()) return false;
  return max_abs(h - h.adjoint()) <= tol * (1.0 + max_abs(h));
}

template <typename MatrixType>
struct HermitianEigen {
  RealVector eigenvalues;    ///< ascending
  MatrixType eigenvectors;   ///< columns orthonormal
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
template <typename Derived>
HermitianEigen<PlainOf<Derived>> hermitian_eigen(const Eigen::MatrixBase<Derived>& h,
                                                 double tol = tolerance::eigen_residual) {
  using Plain = PlainOf<Derived>;
  if (h.rows() != h.cols() || h.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "hermitian_eigen needs a non-empty square matrix");
  const Plain hp = h;
  const double scale = max_abs(hp);
  if (max_abs(hp - hp.adjoint()) > tolerance::hermitian * (1.0 + scale))
    throw Error(ErrorCode::NonHermitian, "matrix is not Hermitian");
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Plain sym = (hp + hp.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Plain> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  HermitianEigen<Plain> out{solver.eigenvalues(), solver.eigenvectors()};
  const double residual =
      max_abs(sym * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal());
  if (residual > tol * (1.0 + scale))
    throw Error(ErrorCode::NoConvergence, "eigen residual above tolerance");
  return out;
}

/// Eigenvalues only (ascending); cheaper inner loop for range sweeps.
template <typename Derived>
RealVector hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& h) {
  using Plain = PlainOf<Derived>;
  const Plain hp = h;
  const Plain sym = (hp + hp.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Plain> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

/// P^p for Hermitian PSD P, with the negative-eigenvalue clamp.
template <typename Derived>
PlainOf<Derived> psd_power(const Eigen::MatrixBase<Derived>& p, double exponent) {
  const auto eig = hermitian_eigen(p);
  const double floor = -tolerance::psd_clamp * (1.0 + max_abs(p));
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < powered.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda < floor) throw Error(ErrorCode::NotPSD, "matrix has a negative eigenvalue");
    powered[i] = lambda <= 0.0 ? 0.0 : std::pow(lambda, exponent);
  }
  return eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.adjoint();
}

template <typename Derived>
PlainOf<Derived> psd_sqrt(const Eigen::MatrixBase<Derived>& p) {
  return psd_power(p, 0.5);
}

template <typename MatrixType>
struct Polar {
  MatrixType unitary;   ///< partial isometry, zero on ker|A|
  MatrixType absolute;  ///< |A| = (A*A)^{1/2}
};

/**
 * Polar decomposition A = U|A| through the SVD A = W S V*.
 *
 * |A| = V S V* and U = W_r V_r*, where r indexes singular values above the
 * rank cutoff, so U vanishes on the kernel of |A|.
 */
template <typename Derived>
Polar<PlainOf<Derived>> polar_decompose(const Eigen::MatrixBase<Derived>& a) {
  using Plain = PlainOf<Derived>;
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "polar_decompose needs a square matrix");
  Eigen::JacobiSVD<Plain> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = tolerance::singular * std::max(1.0, s.size() ? s[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > cutoff) ++rank;
  Polar<Plain> out;
  out.absolute = svd.matrixV() * s.asDiagonal() * svd.matrixV().adjoint();
  out.unitary = svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
  return out;
}

/// Aluthge transform |A|^{1/2} U |A|^{1/2}.
template <typename Derived>
PlainOf<Derived> aluthge(const Eigen::MatrixBase<Derived>& a) {
  using Plain = PlainOf<Derived>;
  Eigen::JacobiSVD<Plain> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = tolerance::singular * std::max(1.0, s.size() ? s[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > cutoff) ++rank;
  const auto& v = svd.matrixV();
  const Plain root_abs = v * s.cwiseSqrt().asDiagonal() * v.adjoint();
  const Plain u = svd.matrixU().leftCols(rank) * v.leftCols(rank).adjoint();
  return root_abs * u * root_abs;
}

template <typename Derived>
RealVector singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Plain = PlainOf<Derived>;
  Eigen::JacobiSVD<Plain> svd(a);
  return svd.singularValues();
}

/// Largest singular value.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)[0];
}

/// ||A^{-1}|| = 1 / sigma_min(A).
template <typename Derived>
double inverse_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "inverse_norm needs a square matrix");
  const RealVector s = singular_values(a);
  const double smallest = s[s.size() - 1];
  if (smallest <= tolerance::singular) throw Error(ErrorCode::Singular, "matrix is singular");
  return 1.0 / smallest;
}

template <typename MatrixType>
struct CartesianParts {
  MatrixType re;  ///< (A + A*) / 2
  MatrixType im;  ///< (A - A*) / 2i
};

template <typename Derived>
CartesianParts<ComplexMatrix> cartesian_parts(const Eigen::MatrixBase<Derived>& a) {
  const ComplexMatrix ac = a.template cast<Complex>();
  CartesianParts<ComplexMatrix> out;
  out.re = (ac + ac.adjoint()) * 0.5;
  out.im = (ac - ac.adjoint()) * Complex(0.0, -0.5);
  return out;
}

/// Real part (A + A*)/2 as an expression-friendly helper.
template <typename Derived>
PlainOf<Derived> hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) * 0.5;
}

/// |A|^2 = A*A.
template <typename Derived>
PlainOf<Derived> abs_squared(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint() * a;
}

}  // namespace berezin

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace fnf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Raised when a numerically checked postcondition of an algorithm fails.
class NumericalError : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double rank_rel = 1e-9;   // relative singular-value cutoff
  double psd_abs = 1e-9;
  double zero_f = 1e-8;     // threshold for a zero of the quadratic objective
  double idem = 1e-10;      // projection idempotence / orthonormality
  int max_power_iters = 10000;
  double sinkhorn_residual = 1e-8;
  int sinkhorn_max_iters = 100000;
  double invariance = 1e-8; // relative residual for corner-invariance tests

  /// Principal-angle tolerance used for every subspace comparison.
  double angle() const;
  void validate() const;
};

/// Hermitian matrix whose conjugate symmetry is exact: the lower triangle is
/// authoritative and the upper triangle is its mirror.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(Eigen::Index n);
  static HermitianMatrix zero(Eigen::Index n);

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

class Projection {
 public:
  Projection() = default;
  /// Wraps an orthonormal basis. Throws when the columns are not orthonormal
  /// within `idem`.
  Projection(ComplexMatrix basis, Eigen::Index dim, double idem = 1e-10);

  static Projection identity(Eigen::Index n);

  Eigen::Index dim() const { return dim_; }
  Eigen::Index rank() const { return basis_.cols(); }
  const ComplexMatrix& basis() const { return basis_; }
  const HermitianMatrix& hermitian() const { return matrix_; }
  const ComplexMatrix& matrix() const { return matrix_.matrix(); }
  /// Id - P as a projection.
  Projection complement() const;

 private:
  Eigen::Index dim_ = 0;
  ComplexMatrix basis_;
  HermitianMatrix matrix_;
};

double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

Eigen::Index rank_eps(const ComplexMatrix& m, const Tolerances& tol = {});
Eigen::Index rank_eps(const RealMatrix& m, const Tolerances& tol = {});

/// Orthonormal basis of the column space (singular values above the cutoff).
ComplexMatrix image_basis(const ComplexMatrix& m, const Tolerances& tol = {});
/// Orthonormal basis of the null space (right singular vectors below the cutoff).
ComplexMatrix kernel_basis(const ComplexMatrix& m, const Tolerances& tol = {});
RealMatrix kernel_basis(const RealMatrix& m, const Tolerances& tol = {});

/// Orthonormal basis of span(u1) ∩ span(u2); both inputs orthonormal.
ComplexMatrix subspace_intersection(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                    const Tolerances& tol = {});

/// Largest principal angle between two subspaces of equal dimension, or
/// +inf when dimensions differ.
double max_principal_angle(const ComplexMatrix& u1, const ComplexMatrix& u2);

/// True when the two orthonormal bases span the same subspace.
bool same_span(const ComplexMatrix& u1, const ComplexMatrix& u2, const Tolerances& tol = {});

Projection projector_onto(const ComplexMatrix& basis, const Tolerances& tol = {});
Projection projector_onto_image(const ComplexMatrix& m, const Tolerances& tol = {});

bool psd_check(const HermitianMatrix& h, const Tolerances& tol = {});

struct SqrtPinv {
  HermitianMatrix sqrt;
  HermitianMatrix pinv_sqrt;
};

SqrtPinv hermitian_sqrt_pinv(const HermitianMatrix& h, const Tolerances& tol = {});

/// Returns the inverse of a square matrix, throwing SingularMatrixError when
/// it is rank deficient under `tol`.
ComplexMatrix checked_inverse(const ComplexMatrix& m, const Tolerances& tol = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Orthonormalizes the columns of `m` (spanning its column space).
ComplexMatrix orthonormalize(const ComplexMatrix& m, const Tolerances& tol = {});

}  // namespace fnf

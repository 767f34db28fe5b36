#include "fnf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace fnf {

namespace {

// Fixes the phase of every column so that its first (near-)largest entry is
// real and positive. Keeps bases reproducible across runs.
template <typename Mat>
void canonicalize_columns(Mat& basis) {
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    const double peak = basis.col(c).cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      if (std::abs(basis(r, c)) >= (1.0 - 1e-8) * peak) {
        if constexpr (std::is_same_v<typename Mat::Scalar, Complex>) {
          basis.col(c) *= std::conj(basis(r, c)) / std::abs(basis(r, c));
        } else {
          if (basis(r, c) < 0) basis.col(c) *= -1.0;
        }
        break;
      }
    }
  }
}

template <typename Vec>
Eigen::Index count_above(const Vec& sv, double rel) {
  if (sv.size() == 0) return 0;
  const double top = sv(0);
  if (!(top > 0.0)) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel * top) ++r;
  }
  return r;
}

}  // namespace

double Tolerances::angle() const { return std::sqrt(rank_rel); }

void Tolerances::validate() const {
  if (!(rank_rel > 0 && psd_abs > 0 && zero_f > 0 && idem > 0 && max_power_iters > 0 &&
        sinkhorn_residual > 0 && sinkhorn_max_iters > 0 && invariance > 0)) {
    throw Error("tolerances must be positive");
  }
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("Hermitian matrix must be square");
  const Eigen::Index n = m.rows();
  m_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m_(j, j) = Complex(m(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      m_(i, j) = m(i, j);
      m_(j, i) = std::conj(m(i, j));
    }
  }
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n));
}

Projection::Projection(ComplexMatrix basis, Eigen::Index dim, double idem) : dim_(dim) {
  if (basis.cols() > 0 && basis.rows() != dim) {
    throw DimensionError("projection basis has wrong ambient dimension");
  }
  if (basis.cols() == 0) basis.resize(dim, 0);
  const ComplexMatrix gram = basis.adjoint() * basis;
  if (basis.cols() > 0 &&
      max_abs(ComplexMatrix(gram - ComplexMatrix::Identity(basis.cols(), basis.cols()))) > idem) {
    throw Error("projection basis is not orthonormal");
  }
  basis_ = std::move(basis);
  matrix_ = HermitianMatrix(ComplexMatrix(basis_ * basis_.adjoint()));
}

Projection Projection::identity(Eigen::Index n) {
  return Projection(ComplexMatrix::Identity(n, n), n);
}

Projection Projection::complement() const {
  const ComplexMatrix c = ComplexMatrix::Identity(dim_, dim_) - matrix();
  return projector_onto_image(c);
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::Index rank_eps(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return count_above(svd.singularValues(), tol.rank_rel);
}

Eigen::Index rank_eps(const RealMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return count_above(svd.singularValues(), tol.rank_rel);
}

ComplexMatrix image_basis(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return ComplexMatrix(m.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
  const Eigen::Index r = count_above(svd.singularValues(), tol.rank_rel);
  ComplexMatrix basis = svd.matrixU().leftCols(r);
  canonicalize_columns(basis);
  return basis;
}

ComplexMatrix kernel_basis(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.cols() == 0) return ComplexMatrix(0, 0);
  if (m.rows() == 0) return ComplexMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::Index r = count_above(svd.singularValues(), tol.rank_rel);
  ComplexMatrix basis = svd.matrixV().rightCols(m.cols() - r);
  canonicalize_columns(basis);
  return basis;
}

RealMatrix kernel_basis(const RealMatrix& m, const Tolerances& tol) {
  if (m.cols() == 0) return RealMatrix(0, 0);
  if (m.rows() == 0) return RealMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::Index r = count_above(svd.singularValues(), tol.rank_rel);
  RealMatrix basis = svd.matrixV().rightCols(m.cols() - r);
  canonicalize_columns(basis);
  return basis;
}

ComplexMatrix subspace_intersection(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                    const Tolerances& tol) {
  if (u1.rows() != u2.rows()) throw DimensionError("subspaces live in different spaces");
  if (u1.cols() == 0 || u2.cols() == 0) return ComplexMatrix(u1.rows(), 0);
  // Cosines of the principal angles are the singular values of u1* u2.
  Eigen::JacobiSVD<ComplexMatrix> svd(u1.adjoint() * u2, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double cos_cut = std::cos(tol.angle());
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cos_cut) ++r;
  ComplexMatrix basis = u1 * svd.matrixU().leftCols(r);
  return orthonormalize(basis, tol);
}

double max_principal_angle(const ComplexMatrix& u1, const ComplexMatrix& u2) {
  if (u1.cols() != u2.cols() || u1.rows() != u2.rows()) {
    return std::numeric_limits<double>::infinity();
  }
  if (u1.cols() == 0) return 0.0;
  // sin of the largest angle = norm of the component of u2 outside span(u1).
  const ComplexMatrix residual = u2 - u1 * (u1.adjoint() * u2);
  Eigen::JacobiSVD<ComplexMatrix> svd(residual);
  const double s = std::min(1.0, svd.singularValues()(0));
  return std::asin(s);
}

bool same_span(const ComplexMatrix& u1, const ComplexMatrix& u2, const Tolerances& tol) {
  return u1.cols() == u2.cols() && max_principal_angle(u1, u2) < tol.angle();
}

Projection projector_onto(const ComplexMatrix& basis, const Tolerances& tol) {
  return Projection(basis, basis.rows(), tol.idem);
}

Projection projector_onto_image(const ComplexMatrix& m, const Tolerances& tol) {
  return Projection(image_basis(m, tol), m.rows(), tol.idem);
}

bool psd_check(const HermitianMatrix& h, const Tolerances& tol) {
  if (h.dim() == 0) return true;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double spread = ev.cwiseAbs().maxCoeff();
  return ev(0) >= -tol.psd_abs * (1.0 + spread);
}

SqrtPinv hermitian_sqrt_pinv(const HermitianMatrix& h, const Tolerances& tol) {
  if (!psd_check(h, tol)) throw NotPsdError("square root requested for a non-PSD matrix");
  const Eigen::Index n = h.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  const RealVector& ev = es.eigenvalues();
  const ComplexMatrix& vecs = es.eigenvectors();
  const double top = n > 0 ? ev.cwiseAbs().maxCoeff() : 0.0;
  RealVector root = RealVector::Zero(n);
  RealVector inv_root = RealVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (top > 0.0 && ev(i) > tol.rank_rel * top) {
      root(i) = std::sqrt(ev(i));
      inv_root(i) = 1.0 / root(i);
    }
  }
  return {HermitianMatrix(ComplexMatrix(vecs * root.asDiagonal() * vecs.adjoint())),
          HermitianMatrix(ComplexMatrix(vecs * inv_root.asDiagonal() * vecs.adjoint()))};
}

ComplexMatrix checked_inverse(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  if (rank_eps(m, tol) != m.rows()) throw SingularMatrixError("matrix is not invertible");
  return m.fullPivLu().inverse();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix orthonormalize(const ComplexMatrix& m, const Tolerances& tol) {
  return image_basis(m, tol);
}

}  // namespace fnf

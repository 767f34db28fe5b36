#pragma once

#include <vector>

#include "fnf/linalg.hpp"

namespace fnf {

/// Completely positive map X -> sum_i K_i X K_i^*, from M_src to M_dst.
/// Every Kraus operator is dst x src.
class CpMap {
 public:
  CpMap(Eigen::Index src_dim, Eigen::Index dst_dim, std::vector<ComplexMatrix> kraus);

  static CpMap identity(Eigen::Index n);

  Eigen::Index src_dim() const { return src_dim_; }
  Eigen::Index dst_dim() const { return dst_dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  bool square() const { return src_dim_ == dst_dim_; }

 private:
  Eigen::Index src_dim_;
  Eigen::Index dst_dim_;
  std::vector<ComplexMatrix> kraus_;
};

ComplexMatrix apply_map(const CpMap& t, const ComplexMatrix& x);
CpMap adjoint(const CpMap& t);

/// X -> scale * Q T(Q^{-1} X Q^{-*}) Q^*.
CpMap conjugate(const CpMap& t, const ComplexMatrix& q, double scale = 1.0,
                const Tolerances& tol = {});

/// The compressed adjoint X -> V T^*(X) V.
CpMap compressed_adjoint(const CpMap& t, const Projection& v);

/// The corner map written in the coordinates of the image basis of `v`:
/// Y -> B^* T(B Y B^*) B, an s x s map. Meaningful when the corner is invariant.
CpMap restrict_to_corner(const CpMap& t, const Projection& v);

/// Real representation of T on the Hermitian matrices supported on Im(V).
struct CornerRep {
  Projection v;
  /// Orthonormal Hermitian basis of V M_k V, embedded in M_k.
  std::vector<HermitianMatrix> basis;
  /// matrix(q, p) = <basis[q], T(basis[p])>.
  RealMatrix matrix;

  RealVector coords(const ComplexMatrix& x) const;
  HermitianMatrix element(const RealVector& coords) const;
};

/// Orthonormal Hermitian basis of the corner: s diagonal units, then the
/// symmetric and antisymmetric off-diagonal pairs, in the image basis of V.
std::vector<HermitianMatrix> corner_basis(const Projection& v);

bool leaves_invariant(const CpMap& t, const Projection& v, const Tolerances& tol = {});

/// Throws NumericalError when the corner is not invariant.
CornerRep corner_rep(const CpMap& t, const Projection& v, const Tolerances& tol = {});

enum class PerronMethod { Auto, Dense, Power };

struct PerronData {
  double lambda = 0.0;
  /// Some lambda-eigenvector (Hermitian part, unit trace when that is possible).
  HermitianMatrix gamma;
  bool psd = false;
  Eigen::Index multiplicity = 0;
  /// Orthonormal basis (in rep coordinates) of the lambda-eigenspace.
  RealMatrix eigenspace;
  CornerRep rep;
};

PerronData spectral_radius_perron(const CpMap& t, const Projection& v, const Tolerances& tol = {},
                                  PerronMethod method = PerronMethod::Auto);

Eigen::Index geometric_multiplicity(const CornerRep& rep, double lambda,
                                    const Tolerances& tol = {});

/// T(Id/sqrt(k)) = Id/sqrt(m) and T^*(Id/sqrt(m)) = Id/sqrt(k), max-abs residual
/// below `tol`.
bool is_doubly_stochastic(const CpMap& t, double tol);
double doubly_stochastic_residual(const CpMap& t);

bool is_irreducible(const CpMap& t, const Projection& v, const Tolerances& tol = {});

}  // namespace fnf

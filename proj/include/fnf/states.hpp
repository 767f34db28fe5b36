#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fnf/linalg.hpp"
#include "fnf/maps.hpp"

namespace fnf {

/// PSD matrix on C^k ⊗ C^m. The basis vector e_i ⊗ f_j sits at index i*m + j
/// (zero-based), which is also the order used by the state file format.
class BipartiteState {
 public:
  /// Throws DimensionError on a shape mismatch and NotPsdError when `rho` is
  /// not PSD under `tol`.
  BipartiteState(Eigen::Index k, Eigen::Index m, HermitianMatrix rho, const Tolerances& tol = {});

  Eigen::Index k() const { return k_; }
  Eigen::Index m() const { return m_; }
  const HermitianMatrix& rho() const { return rho_; }
  const ComplexMatrix& matrix() const { return rho_.matrix(); }

 private:
  Eigen::Index k_;
  Eigen::Index m_;
  HermitianMatrix rho_;
};

struct SchmidtPair {
  HermitianMatrix c;  // k x k
  HermitianMatrix d;  // m x m
  double weight;
};

HermitianMatrix partial_transpose(const BipartiteState& a);
/// Same operation on an arbitrary Hermitian matrix with factor dims (k, m).
HermitianMatrix partial_transpose(const HermitianMatrix& rho, Eigen::Index k, Eigen::Index m);

bool is_ppt(const BipartiteState& a, const Tolerances& tol = {});

/// Traces out the first factor (result is m x m).
HermitianMatrix partial_trace_first(const BipartiteState& a);
/// Traces out the second factor (result is k x k).
HermitianMatrix partial_trace_second(const BipartiteState& a);

ComplexMatrix vec_to_matrix(const ComplexVector& v, Eigen::Index k, Eigen::Index m);
Eigen::Index tensor_rank(const ComplexVector& v, Eigen::Index k, Eigen::Index m,
                         const Tolerances& tol = {});

/// Tries the projection of sum_i e_i ⊗ f_i onto the range first, then samples
/// complex-Gaussian combinations of an image basis of the state, and returns
/// the first candidate whose tensor rank is min(k, m). An empty result is
/// inconclusive, not a proof of absence.
std::optional<ComplexVector> find_full_rank_vector(const BipartiteState& a, int attempts = 64,
                                                   std::uint64_t seed = 0,
                                                   const Tolerances& tol = {});

/// The map X -> G_A(X^t) from M_k to M_m, with Kraus operators read off the
/// spectral decomposition of the state.
CpMap gmap_of_state(const BipartiteState& a, const Tolerances& tol = {});

/// (R ⊗ S) A (R ⊗ S)^*. Throws SingularMatrixError for singular filters.
BipartiteState apply_filter(const BipartiteState& a, const ComplexMatrix& r, const ComplexMatrix& s,
                            const Tolerances& tol = {});

/// Trace-orthonormal Hermitian expansion A = sum_i w_i C_i ⊗ D_i obtained from
/// the SVD of the realigned matrix in Hermitian bases.
std::vector<SchmidtPair> operator_schmidt(const BipartiteState& b, const Tolerances& tol = {});

/// The (mk) ⊗ (mk) state sum_i (Id_m ⊗ C_i) ⊗ (D_i ⊗ Id_k).
BipartiteState embed_rectangular(const BipartiteState& b, const Tolerances& tol = {});

}  // namespace fnf

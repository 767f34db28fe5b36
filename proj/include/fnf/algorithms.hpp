#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fnf/linalg.hpp"
#include "fnf/maps.hpp"
#include "fnf/states.hpp"

namespace fnf {

/// The block-decomposition machinery needs a PPT input.
class NotPptError : public Error {
 public:
  using Error::Error;
};

struct Block {
  Projection v;
  double lambda = 0.0;
};

struct BlockCertificate {
  std::vector<Block> blocks;
  /// P from the full-rank vector step (first factor only).
  ComplexMatrix p;
  /// Q = R_n ... R_1, the product of the congruences applied to the map.
  ComplexMatrix accumulated_transform;
  CpMap final_map;
  /// ((Q^{-1})^t P ⊗ Q) B (...)^*, whose map is `final_map`.
  BipartiteState filtered_state;
};

enum class Outcome { Equivalent, NotEquivalent, Inconclusive };

enum class Stage { None, NoFullRankVector, GramNotPositiveDefinite, FMinimumPositive };

struct Witness {
  Stage stage = Stage::None;
  Projection v;
  std::optional<double> min_f;
  std::optional<double> gram_min_eig;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  /// Blocks found, in the coordinates of the final map.
  std::vector<Block> blocks;
  std::optional<BlockCertificate> certificate;
  std::optional<Witness> witness;
  int iterations = 0;
  std::vector<std::string> flags;
};

const char* to_string(Outcome o);
const char* to_string(Stage s);

struct RangeNormalization {
  ComplexMatrix p;
  BipartiteState a;
};

/// P = F(v)^{-1}, so that (P ⊗ Id) v = sum_i e_i ⊗ e_i, and A = (P ⊗ Id) B (P ⊗ Id)^*.
RangeNormalization normalize_range_vector(const BipartiteState& b, const ComplexVector& v, const Tolerances& tol = {});

/// Shrinks the invariant corner `v` to one on which `t` is irreducible.
Block algorithm1_find_irreducible(const CpMap& t, const Projection& v, const Tolerances& tol = {});

struct QTransform {
  ComplexMatrix q;
  CpMap t1;
  Eigen::Index s;
};

/// Q = U^*(sqrt(delta_1) + V^perp) and T1 = Q T(Q^{-1} . Q^{-*}) Q^* / lambda,
/// where U rotates Im(V) onto the leading s coordinates.
QTransform build_Q(const CpMap& t, const Projection& v, double lambda, const Tolerances& tol = {});

/// f(x) = constant + linear . x + x^T gram x over the real coordinates of a
/// (k-s) x s complex matrix X: first the real parts of the matrix units in
/// column-major order, then the imaginary parts.
struct QuadraticModel {
  Eigen::Index k = 0;
  Eigen::Index s = 0;
  Eigen::Index n = 0;
  RealMatrix gram;
  RealVector linear;
  double constant = 0.0;

  double evaluate(const RealVector& x) const;
  ComplexMatrix to_matrix(const RealVector& x) const;
};

/// tr(T1^*([[I, X^*], [X, X X^*]]) [[X^* X, -X^*], [-X, I]]).
double quadratic_direct(const CpMap& t1, Eigen::Index s, const ComplexMatrix& x);

/// Throws NumericalError when the model disagrees with quadratic_direct.
QuadraticModel build_quadratic(const CpMap& t1, Eigen::Index s, const Tolerances& tol = {});

struct WSolution {
  std::optional<Projection> w;
  double min_f = 0.0;
  std::optional<double> gram_min_eig;
  bool gram_positive_definite = true;
};

WSolution algorithm2_solve_W(const CpMap& t, const Projection& v, double lambda,
                             const Tolerances& tol = {});

/// R fixing Im(Id - V' + V) and mapping Im(V' - W) onto Im(V' - V).
ComplexMatrix build_R(const Projection& vprime, const Projection& v, const Projection& w,
                      const Tolerances& tol = {});

/// Throws NotPptError for an NPT input that none of the shortcuts covers.
Verdict algorithm3_decide(const BipartiteState& b, std::optional<ComplexVector> v = std::nullopt,
                          const Tolerances& tol = {}, std::uint64_t seed = 0);

/// max-abs distance between the state and its block-diagonal part.
double block_residual(const BipartiteState& c, const std::vector<Block>& blocks);

}  // namespace fnf

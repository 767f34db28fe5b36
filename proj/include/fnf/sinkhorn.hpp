#pragma once

#include <array>

#include "fnf/algorithms.hpp"
#include "fnf/linalg.hpp"
#include "fnf/maps.hpp"
#include "fnf/states.hpp"

namespace fnf {

/// Result of alternate scaling X -> L T(R X R^*) L^*.
struct Scaling {
  ComplexMatrix left;
  ComplexMatrix right;
  CpMap scaled;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

/// Left step K <- T(Id)^{-1/2} K, right step K <- K T^*(Id)^{-1/2}, until the
/// doubly stochastic residual drops below tol.sinkhorn_residual. Throws
/// SingularMatrixError on a singular marginal.
Scaling scale_to_doubly_stochastic(const CpMap& t, const Tolerances& tol = {});

struct NormalForm {
  ComplexMatrix r;
  ComplexMatrix s;
  BipartiteState state;
  int iterations = 0;
  double residual = 0.0;
};

/// Unit-trace (R ⊗ S) B (R ⊗ S)^* with both partial traces proportional to
/// the identity. 2x2 states are further rotated to the diagonal Pauli form.
NormalForm filter_normal_form(const BipartiteState& b, const Verdict& verdict,
                              const Tolerances& tol = {});

/// max(||m pt1 / tr - Id||, ||k pt2 / tr - Id||) in max-abs norm.
double partial_trace_residual(const BipartiteState& b);

struct PauliCoefficients {
  std::array<double, 4> lambda{};
  double cross_terms_norm = 0.0;
};

/// lambda_i = tr(B (g_i ⊗ g_i)) for g = (Id, X, Y, Z) / sqrt(2).
PauliCoefficients pauli_coefficients(const BipartiteState& b);

/// lambda_1 >= |lambda_2| + |lambda_3| + |lambda_4|.
bool check_2x2_inequality(const std::array<double, 4>& lambda);

}  // namespace fnf

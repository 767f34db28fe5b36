#include "fnf/sinkhorn.hpp"

#include <cmath>

namespace fnf {

namespace {

ComplexMatrix inverse_sqrt(const ComplexMatrix& h, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(HermitianMatrix(h).matrix());
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(top > 0.0) || !(es.eigenvalues().minCoeff() > tol.rank_rel * top)) {
    throw SingularMatrixError("singular marginal during scaling");
  }
  return es.operatorInverseSqrt();
}

CpMap scale_kraus(const CpMap& t, const ComplexMatrix& l, const ComplexMatrix& r) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(t.kraus().size());
  for (const auto& k : t.kraus()) kraus.emplace_back(l * k * r);
  return CpMap(t.src_dim(), t.dst_dim(), std::move(kraus));
}

std::array<ComplexMatrix, 4> pauli() {
  const Complex i(0.0, 1.0);
  ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return {id, x, y, z};
}

// U in SU(2) with U sigma_a U^* = sum_c o(c, a) sigma_c, for o in SO(3).
ComplexMatrix su2_from_rotation(const RealMatrix& o) {
  const auto p = pauli();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix system(12, 4);
  for (int a = 0; a < 3; ++a) {
    ComplexMatrix rotated = ComplexMatrix::Zero(2, 2);
    for (int c = 0; c < 3; ++c) rotated += o(c, a) * p[static_cast<std::size_t>(c + 1)];
    // Column-major vec: vec(U s) = (s^t ⊗ I) vec(U), vec(s' U) = (I ⊗ s') vec(U).
    system.middleRows(4 * a, 4) =
        kron(ComplexMatrix(p[static_cast<std::size_t>(a + 1)].transpose()), id) - kron(id, rotated);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(system, Eigen::ComputeFullV);
  const ComplexVector null = svd.matrixV().col(3);
  ComplexMatrix u(2, 2);
  u << null(0), null(2), null(1), null(3);
  return u * (std::sqrt(2.0) / u.norm());
}

}  // namespace

Scaling scale_to_doubly_stochastic(const CpMap& t, const Tolerances& tol) {
  if (!t.square()) throw DimensionError("scaling needs a square map");
  const Eigen::Index s = t.src_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(s, s);
  ComplexMatrix left = id;
  ComplexMatrix right = id;
  CpMap cur = t;
  int iterations = 0;
  bool converged = false;
  double residual = doubly_stochastic_residual(cur);
  while (true) {
    if (residual < tol.sinkhorn_residual) {
      converged = true;
      break;
    }
    if (iterations >= tol.sinkhorn_max_iters) break;
    const ComplexMatrix l = inverse_sqrt(apply_map(cur, id), tol);
    cur = scale_kraus(cur, l, id);
    left = l * left;
    const ComplexMatrix r = inverse_sqrt(apply_map(adjoint(cur), id), tol);
    cur = scale_kraus(cur, id, r);
    right = right * r;
    ++iterations;
    residual = doubly_stochastic_residual(cur);
  }
  return Scaling{left, right, std::move(cur), iterations, converged, residual};
}

double partial_trace_residual(const BipartiteState& b) {
  const double tr = b.matrix().trace().real();
  if (!(tr > 0.0)) throw Error("state has zero trace");
  const ComplexMatrix pt1 = partial_trace_first(b).matrix();
  const ComplexMatrix pt2 = partial_trace_second(b).matrix();
  const double r1 = max_abs(ComplexMatrix(static_cast<double>(b.m()) * pt1 / tr -
                                          ComplexMatrix::Identity(b.m(), b.m())));
  const double r2 = max_abs(ComplexMatrix(static_cast<double>(b.k()) * pt2 / tr -
                                          ComplexMatrix::Identity(b.k(), b.k())));
  return std::max(r1, r2);
}

PauliCoefficients pauli_coefficients(const BipartiteState& b) {
  if (b.k() != 2 || b.m() != 2) throw DimensionError("Pauli coefficients need a 2x2 state");
  const auto p = pauli();
  PauliCoefficients out;
  double cross = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double c = (b.matrix() * kron(p[i], p[j])).trace().real() / 2.0;
      if (i == j) {
        out.lambda[i] = c;
      } else {
        cross += c * c;
      }
    }
  }
  out.cross_terms_norm = std::sqrt(cross);
  return out;
}

bool check_2x2_inequality(const std::array<double, 4>& lambda) {
  return lambda[0] >= std::abs(lambda[1]) + std::abs(lambda[2]) + std::abs(lambda[3]);
}

NormalForm filter_normal_form(const BipartiteState& b, const Verdict& verdict,
                              const Tolerances& tol) {
  if (verdict.outcome != Outcome::Equivalent || !verdict.certificate) {
    throw Error("a normal form needs an equivalent verdict");
  }
  const BlockCertificate& cert = *verdict.certificate;
  const Eigen::Index k = b.k();
  if (cert.accumulated_transform.rows() != k || b.m() != k) {
    throw DimensionError("verdict does not belong to this state");
  }
  ComplexMatrix left = ComplexMatrix::Zero(k, k);
  ComplexMatrix right = ComplexMatrix::Zero(k, k);
  int iterations = 0;
  for (const auto& block : cert.blocks) {
    const ComplexMatrix& basis = block.v.basis();
    const Scaling sc = scale_to_doubly_stochastic(restrict_to_corner(cert.final_map, block.v), tol);
    if (!sc.converged) throw NumericalError("block scaling did not converge");
    iterations = std::max(iterations, sc.iterations);
    left += basis * sc.left * basis.adjoint();
    right += basis * sc.right * basis.adjoint();
  }
  const ComplexMatrix q = cert.accumulated_transform;
  ComplexMatrix first = right.transpose() * checked_inverse(q, tol).transpose() * cert.p;
  ComplexMatrix second = left * q;

  BipartiteState out = apply_filter(b, first, second, tol);
  first /= std::sqrt(out.matrix().trace().real());
  out = apply_filter(b, first, second, tol);

  if (k == 2) {
    const auto p = pauli();
    RealMatrix corr(3, 3);
    for (int a = 0; a < 3; ++a) {
      for (int c = 0; c < 3; ++c) {
        corr(a, c) = (out.matrix() * kron(p[static_cast<std::size_t>(a + 1)],
                                          p[static_cast<std::size_t>(c + 1)]))
                         .trace()
                         .real();
      }
    }
    Eigen::JacobiSVD<RealMatrix> svd(corr, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealMatrix o1 = svd.matrixU();
    RealMatrix o2 = svd.matrixV();
    if (o1.determinant() < 0) o1.col(2) *= -1.0;
    if (o2.determinant() < 0) o2.col(2) *= -1.0;
    first = su2_from_rotation(RealMatrix(o1.transpose())) * first;
    second = su2_from_rotation(RealMatrix(o2.transpose())) * second;
    out = apply_filter(b, first, second, tol);
  }
  return NormalForm{first, second, out, iterations, partial_trace_residual(out)};
}

}  // namespace fnf

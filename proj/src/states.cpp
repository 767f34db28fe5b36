#include "fnf/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fnf {

BipartiteState::BipartiteState(Eigen::Index k, Eigen::Index m, HermitianMatrix rho,
                               const Tolerances& tol)
    : k_(k), m_(m), rho_(std::move(rho)) {
  if (k <= 0 || m <= 0) throw DimensionError("factor dimensions must be positive");
  if (rho_.dim() != k * m) throw DimensionError("state order must equal k*m");
  if (!rho_.matrix().allFinite()) throw Error("state has non-finite entries");
  if (!psd_check(rho_, tol)) throw NotPsdError("state is not positive semidefinite");
}

HermitianMatrix partial_transpose(const HermitianMatrix& rho, Eigen::Index k, Eigen::Index m) {
  if (rho.dim() != k * m) throw DimensionError("state order must equal k*m");
  ComplexMatrix out(k * m, k * m);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      out.block(i * m, j * m, m, m) = rho.matrix().block(i * m, j * m, m, m).transpose();
    }
  }
  return HermitianMatrix(out);
}

HermitianMatrix partial_transpose(const BipartiteState& a) {
  return partial_transpose(a.rho(), a.k(), a.m());
}

bool is_ppt(const BipartiteState& a, const Tolerances& tol) {
  return psd_check(a.rho(), tol) && psd_check(partial_transpose(a), tol);
}

HermitianMatrix partial_trace_first(const BipartiteState& a) {
  const Eigen::Index k = a.k();
  const Eigen::Index m = a.m();
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < k; ++i) out += a.matrix().block(i * m, i * m, m, m);
  return HermitianMatrix(out);
}

HermitianMatrix partial_trace_second(const BipartiteState& a) {
  const Eigen::Index k = a.k();
  const Eigen::Index m = a.m();
  ComplexMatrix out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      out(i, j) = a.matrix().block(i * m, j * m, m, m).trace();
    }
  }
  return HermitianMatrix(out);
}

ComplexMatrix vec_to_matrix(const ComplexVector& v, Eigen::Index k, Eigen::Index m) {
  if (v.size() != k * m) throw DimensionError("vector length must equal k*m");
  ComplexMatrix out(k, m);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = v(i * m + j);
  }
  return out;
}

Eigen::Index tensor_rank(const ComplexVector& v, Eigen::Index k, Eigen::Index m,
                         const Tolerances& tol) {
  return rank_eps(vec_to_matrix(v, k, m), tol);
}

std::optional<ComplexVector> find_full_rank_vector(const BipartiteState& a, int attempts,
                                                   std::uint64_t seed, const Tolerances& tol) {
  const ComplexMatrix range = image_basis(a.matrix(), tol);
  if (range.cols() == 0) return std::nullopt;
  const Eigen::Index target = std::min(a.k(), a.m());
  // Deterministic first candidate: the projection of sum_i e_i ⊗ f_i onto the range.
  ComplexVector u = ComplexVector::Zero(a.k() * a.m());
  for (Eigen::Index i = 0; i < target; ++i) u(i * a.m() + i) = 1.0;
  ComplexVector pu = range * (range.adjoint() * u);
  if (pu.norm() > 1e-8 && tensor_rank(pu, a.k(), a.m(), tol) == target) return pu.normalized();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ComplexVector c(range.cols());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = Complex(gauss(rng), gauss(rng));
    ComplexVector v = range * c;
    v.normalize();
    if (tensor_rank(v, a.k(), a.m(), tol) == target) return v;
  }
  return std::nullopt;
}

CpMap gmap_of_state(const BipartiteState& a, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix());
  const RealVector& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    if (!(top > 0.0) || ev(i) <= tol.rank_rel * top) continue;
    const ComplexVector v = std::sqrt(ev(i)) * es.eigenvectors().col(i);
    kraus.emplace_back(vec_to_matrix(v, a.k(), a.m()).transpose());
  }
  if (kraus.empty()) throw Error("the zero state has no associated map");
  return CpMap(a.k(), a.m(), std::move(kraus));
}

BipartiteState apply_filter(const BipartiteState& a, const ComplexMatrix& r, const ComplexMatrix& s,
                            const Tolerances& tol) {
  if (r.rows() != a.k() || r.cols() != a.k() || s.rows() != a.m() || s.cols() != a.m()) {
    throw DimensionError("filter dimensions do not match the state");
  }
  if (rank_eps(r, tol) != a.k() || rank_eps(s, tol) != a.m()) {
    throw SingularMatrixError("filters must be invertible");
  }
  const ComplexMatrix f = kron(r, s);
  return BipartiteState(a.k(), a.m(), HermitianMatrix(ComplexMatrix(f * a.matrix() * f.adjoint())),
                        tol);
}

std::vector<SchmidtPair> operator_schmidt(const BipartiteState& b, const Tolerances& tol) {
  const auto hk = corner_basis(Projection::identity(b.k()));
  const auto hm = corner_basis(Projection::identity(b.m()));
  const auto nk = static_cast<Eigen::Index>(hk.size());
  const auto nm = static_cast<Eigen::Index>(hm.size());
  // Coefficients of the state in the product Hermitian basis (real because
  // the state and both bases are Hermitian).
  RealMatrix coeff(nk, nm);
  for (Eigen::Index p = 0; p < nk; ++p) {
    for (Eigen::Index q = 0; q < nm; ++q) {
      const ComplexMatrix unit = kron(hk[static_cast<std::size_t>(p)].matrix(),
                                      hm[static_cast<std::size_t>(q)].matrix());
      coeff(p, q) = (b.matrix() * unit).trace().real();
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  std::vector<SchmidtPair> pairs;
  for (Eigen::Index l = 0; l < sv.size(); ++l) {
    if (!(sv(0) > 0.0) || sv(l) <= tol.rank_rel * sv(0)) break;
    ComplexMatrix c = ComplexMatrix::Zero(b.k(), b.k());
    ComplexMatrix d = ComplexMatrix::Zero(b.m(), b.m());
    for (Eigen::Index p = 0; p < nk; ++p) c += svd.matrixU()(p, l) * hk[static_cast<std::size_t>(p)].matrix();
    for (Eigen::Index q = 0; q < nm; ++q) d += svd.matrixV()(q, l) * hm[static_cast<std::size_t>(q)].matrix();
    // Orient each pair so that the first factor has nonnegative trace.
    if (c.trace().real() < 0.0) {
      c = -c;
      d = -d;
    }
    pairs.push_back({HermitianMatrix(c), HermitianMatrix(d), sv(l)});
  }
  return pairs;
}

BipartiteState embed_rectangular(const BipartiteState& b, const Tolerances& tol) {
  const Eigen::Index k = b.k();
  const Eigen::Index m = b.m();
  const Eigen::Index n = m * k;
  ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
  const ComplexMatrix id_m = ComplexMatrix::Identity(m, m);
  const ComplexMatrix id_k = ComplexMatrix::Identity(k, k);
  for (const auto& pair : operator_schmidt(b, tol)) {
    out += pair.weight * kron(kron(id_m, pair.c.matrix()), kron(pair.d.matrix(), id_k));
  }
  return BipartiteState(n, n, HermitianMatrix(out), tol);
}

}  // namespace fnf

#include "fnf/maps.hpp"

#include <cmath>
#include <algorithm>
#include <complex>
#include <limits>

namespace fnf {

CpMap::CpMap(Eigen::Index src_dim, Eigen::Index dst_dim, std::vector<ComplexMatrix> kraus)
    : src_dim_(src_dim), dst_dim_(dst_dim), kraus_(std::move(kraus)) {
  if (src_dim <= 0 || dst_dim <= 0) throw DimensionError("map dimensions must be positive");
  bool nonzero = false;
  for (const auto& k : kraus_) {
    if (k.rows() != dst_dim || k.cols() != src_dim) {
      throw DimensionError("Kraus operator has the wrong shape");
    }
    if (!k.allFinite()) throw Error("Kraus operator has non-finite entries");
    nonzero = nonzero || max_abs(k) > 0.0;
  }
  if (!nonzero) throw Error("completely positive map needs a nonzero Kraus operator");
}

CpMap CpMap::identity(Eigen::Index n) { return CpMap(n, n, {ComplexMatrix::Identity(n, n)}); }

ComplexMatrix apply_map(const CpMap& t, const ComplexMatrix& x) {
  if (x.rows() != t.src_dim() || x.cols() != t.src_dim()) {
    throw DimensionError("argument does not match the map's source dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(t.dst_dim(), t.dst_dim());
  for (const auto& k : t.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

CpMap adjoint(const CpMap& t) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(t.kraus().size());
  for (const auto& k : t.kraus()) kraus.emplace_back(k.adjoint());
  return CpMap(t.dst_dim(), t.src_dim(), std::move(kraus));
}

CpMap conjugate(const CpMap& t, const ComplexMatrix& q, double scale, const Tolerances& tol) {
  if (!t.square()) throw DimensionError("conjugation needs a square map");
  if (q.rows() != t.src_dim()) throw DimensionError("conjugating matrix has the wrong order");
  if (!(scale > 0.0)) throw Error("conjugation scale must be positive");
  const ComplexMatrix q_inv = checked_inverse(q, tol);
  const double root = std::sqrt(scale);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(t.kraus().size());
  for (const auto& k : t.kraus()) kraus.emplace_back(root * q * k * q_inv);
  return CpMap(t.src_dim(), t.dst_dim(), std::move(kraus));
}

CpMap compressed_adjoint(const CpMap& t, const Projection& v) {
  if (!t.square() || v.dim() != t.src_dim()) throw DimensionError("projection/map mismatch");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(t.kraus().size());
  for (const auto& k : t.kraus()) kraus.emplace_back(v.matrix() * k.adjoint());
  return CpMap(t.src_dim(), t.dst_dim(), std::move(kraus));
}

CpMap restrict_to_corner(const CpMap& t, const Projection& v) {
  if (!t.square() || v.dim() != t.src_dim()) throw DimensionError("projection/map mismatch");
  const ComplexMatrix& b = v.basis();
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : t.kraus()) {
    ComplexMatrix local = b.adjoint() * k * b;
    if (max_abs(local) > 0.0) kraus.emplace_back(std::move(local));
  }
  if (kraus.empty()) throw Error("corner map is zero");
  return CpMap(v.rank(), v.rank(), std::move(kraus));
}

std::vector<HermitianMatrix> corner_basis(const Projection& v) {
  const Eigen::Index s = v.rank();
  const ComplexMatrix& b = v.basis();
  const double r2 = 1.0 / std::sqrt(2.0);
  std::vector<HermitianMatrix> out;
  out.reserve(static_cast<std::size_t>(s * s));
  for (Eigen::Index a = 0; a < s; ++a) {
    out.emplace_back(ComplexMatrix(b.col(a) * b.col(a).adjoint()));
  }
  for (Eigen::Index a = 0; a < s; ++a) {
    for (Eigen::Index c = a + 1; c < s; ++c) {
      const ComplexMatrix e = b.col(a) * b.col(c).adjoint();
      out.emplace_back(ComplexMatrix(r2 * (e + e.adjoint())));
    }
  }
  const Complex i(0.0, 1.0);
  for (Eigen::Index a = 0; a < s; ++a) {
    for (Eigen::Index c = a + 1; c < s; ++c) {
      const ComplexMatrix e = b.col(a) * b.col(c).adjoint();
      out.emplace_back(ComplexMatrix(r2 * i * (e - e.adjoint())));
    }
  }
  return out;
}

RealVector CornerRep::coords(const ComplexMatrix& x) const {
  RealVector c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t q = 0; q < basis.size(); ++q) {
    c(static_cast<Eigen::Index>(q)) = (basis[q].matrix().adjoint() * x).trace().real();
  }
  return c;
}

HermitianMatrix CornerRep::element(const RealVector& c) const {
  ComplexMatrix x = ComplexMatrix::Zero(v.dim(), v.dim());
  for (std::size_t q = 0; q < basis.size(); ++q) {
    x += c(static_cast<Eigen::Index>(q)) * basis[q].matrix();
  }
  return HermitianMatrix(x);
}

bool leaves_invariant(const CpMap& t, const Projection& v, const Tolerances& tol) {
  if (!t.square() || v.dim() != t.src_dim()) throw DimensionError("projection/map mismatch");
  double scale = 0.0;
  double residual = 0.0;
  for (const auto& b : corner_basis(v)) {
    const ComplexMatrix img = apply_map(t, b.matrix());
    scale = std::max(scale, max_abs(img));
    residual = std::max(residual,
                        max_abs(ComplexMatrix(img - v.matrix() * img * v.matrix())));
  }
  return residual <= tol.invariance * scale;
}

namespace {

CornerRep build_rep(const CpMap& t, const Projection& v) {
  CornerRep rep{v, corner_basis(v), {}};
  const auto n = static_cast<Eigen::Index>(rep.basis.size());
  rep.matrix.resize(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    rep.matrix.col(p) = rep.coords(apply_map(t, rep.basis[static_cast<std::size_t>(p)].matrix()));
  }
  return rep;
}

// Unit trace with nonnegative trace orientation; leaves traceless vectors at
// unit Frobenius norm.
HermitianMatrix normalize_eigenvector(const HermitianMatrix& g) {
  const double tr = g.matrix().trace().real();
  const double fro = g.matrix().norm();
  if (std::abs(tr) > 1e-12 * fro) return HermitianMatrix(ComplexMatrix(g.matrix() / tr));
  return HermitianMatrix(ComplexMatrix(g.matrix() / fro));
}

// Null directions of m - lambda I, with the cutoff scaled to m rather than to
// the shifted matrix.
RealMatrix eigenspace_of(const RealMatrix& m, double lambda, const Tolerances& tol) {
  const Eigen::Index n = m.rows();
  const RealMatrix shifted = m - lambda * RealMatrix::Identity(n, n);
  Eigen::JacobiSVD<RealMatrix> svd(shifted, Eigen::ComputeFullV);
  const double scale = std::max(std::abs(lambda), RealMatrix(m).norm());
  const RealVector& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol.rank_rel * scale) ++r;
  // A defective eigenvalue is only located to ~sqrt(eps); keep the best
  // available null direction.
  r = std::min(r, n - 1);
  return svd.matrixV().rightCols(n - r);
}

}  // namespace

CornerRep corner_rep(const CpMap& t, const Projection& v, const Tolerances& tol) {
  if (!leaves_invariant(t, v, tol)) throw NumericalError("corner is not invariant under the map");
  return build_rep(t, v);
}

Eigen::Index geometric_multiplicity(const CornerRep& rep, double lambda, const Tolerances& tol) {
  return eigenspace_of(rep.matrix, lambda, tol).cols();
}

PerronData spectral_radius_perron(const CpMap& t, const Projection& v, const Tolerances& tol,
                                  PerronMethod method) {
  PerronData out;
  out.rep = corner_rep(t, v, tol);
  const RealMatrix& m = out.rep.matrix;
  const Eigen::Index n = m.rows();
  if (n == 0 || max_abs(m) == 0.0) throw Error("corner map is zero");
  if (method == PerronMethod::Auto) method = n <= 256 ? PerronMethod::Dense : PerronMethod::Power;

  if (method == PerronMethod::Dense) {
    Eigen::EigenSolver<RealMatrix> es(m, false);
    const Eigen::VectorXcd ev = es.eigenvalues();
    const double rho = ev.cwiseAbs().maxCoeff();
    double closest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) closest = std::min(closest, std::abs(ev(i) - rho));
    if (closest > 1e-6 * std::max(rho, 1e-300)) {
      throw NumericalError("spectral radius is not an eigenvalue of the corner map");
    }
    out.lambda = rho;
    out.eigenspace = eigenspace_of(m, rho, tol);
    out.multiplicity = out.eigenspace.cols();
    out.gamma = normalize_eigenvector(out.rep.element(out.eigenspace.col(0)));
  } else {
    // Power iteration from the corner identity; a positive map keeps the
    // iterates PSD.
    ComplexMatrix x = v.matrix() / static_cast<double>(v.rank());
    double lambda = 0.0;
    for (int it = 0; it < tol.max_power_iters; ++it) {
      ComplexMatrix y = v.matrix() * apply_map(t, x) * v.matrix();
      lambda = y.trace().real();
      if (!(lambda > 0.0)) throw NumericalError("power iteration collapsed to zero");
      y /= lambda;
      const double step = max_abs(ComplexMatrix(y - x));
      x = std::move(y);
      if (step < 1e-14) break;
    }
    out.lambda = lambda;
    out.gamma = HermitianMatrix(x);
    out.eigenspace = eigenspace_of(m, lambda, tol);
    out.multiplicity = out.eigenspace.cols();
  }
  out.psd = psd_check(out.gamma, tol);
  return out;
}

double doubly_stochastic_residual(const CpMap& t) {
  const double k = static_cast<double>(t.src_dim());
  const double m = static_cast<double>(t.dst_dim());
  const ComplexMatrix ik = ComplexMatrix::Identity(t.src_dim(), t.src_dim()) / std::sqrt(k);
  const ComplexMatrix im = ComplexMatrix::Identity(t.dst_dim(), t.dst_dim()) / std::sqrt(m);
  const double fwd = max_abs(ComplexMatrix(apply_map(t, ik) - im));
  const double back = max_abs(ComplexMatrix(apply_map(adjoint(t), im) - ik));
  return std::max(fwd, back);
}

bool is_doubly_stochastic(const CpMap& t, double tol) { return doubly_stochastic_residual(t) < tol; }

bool is_irreducible(const CpMap& t, const Projection& v, const Tolerances& tol) {
  if (v.rank() == 0 || !leaves_invariant(t, v, tol)) return false;
  const auto full_support = [&](const PerronData& p) {
    return p.lambda > 0.0 && p.multiplicity == 1 && p.psd &&
           rank_eps(p.gamma.matrix(), tol) == v.rank();
  };
  try {
    const PerronData forward = spectral_radius_perron(t, v, tol);
    if (!full_support(forward)) return false;
    const PerronData backward = spectral_radius_perron(compressed_adjoint(t, v), v, tol);
    return full_support(backward);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace fnf

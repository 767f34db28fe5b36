#include "fnf/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fnf {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Equivalent: return "equivalent";
    case Outcome::NotEquivalent: return "not_equivalent";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(Stage s) {
  switch (s) {
    case Stage::None: return "none";
    case Stage::NoFullRankVector: return "no-full-rank-vector";
    case Stage::GramNotPositiveDefinite: return "gram-not-positive-definite";
    case Stage::FMinimumPositive: return "f-minimum-positive";
  }
  return "none";
}

RangeNormalization normalize_range_vector(const BipartiteState& b, const ComplexVector& v, const Tolerances& tol) {
  if (b.k() != b.m()) throw DimensionError("the transform needs square factors");
  if (v.size() != b.k() * b.m()) throw DimensionError("vector length must equal k*m");
  if (tensor_rank(v, b.k(), b.m(), tol) != b.k()) {
    throw Error("vector does not have full tensor rank");
  }
  const ComplexMatrix range = image_basis(b.matrix(), tol);
  const ComplexVector inside = range * (range.adjoint() * v);
  if ((v - inside).norm() > 1e-8 * v.norm()) throw Error("vector is not in the range of the state");
  const ComplexMatrix p = checked_inverse(vec_to_matrix(v, b.k(), b.m()), tol);
  return {p, apply_filter(b, p, ComplexMatrix::Identity(b.m(), b.m()), tol)};
}

namespace {

Projection shrink_to_kernel(const Projection& v, const ComplexMatrix& h, const Tolerances& tol) {
  const ComplexMatrix& basis = v.basis();
  const ComplexMatrix local = basis.adjoint() * h * basis;
  return projector_onto(ComplexMatrix(basis * kernel_basis(local, tol)), tol);
}

double rank_one_lambda(const CpMap& t, const Projection& v) {
  const ComplexVector b = v.basis().col(0);
  return (b.adjoint() * apply_map(t, v.matrix()) * b)(0, 0).real();
}

// Degenerate Perron eigenvalue: returns a strictly smaller invariant corner.
Projection split_degenerate(const CpMap& t, const PerronData& pd, const Tolerances& tol) {
  const Projection& v = pd.rep.v;
  const RealMatrix& m = pd.rep.matrix;
  const Eigen::Index n = m.rows();
  const double lambda = pd.lambda;

  Eigen::EigenSolver<RealMatrix> es(m, false);
  double next = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double mod = std::abs(es.eigenvalues()(i));
    if (std::abs(es.eigenvalues()(i) - lambda) > 1e-6 * lambda) next = std::max(next, mod);
  }
  const double gap = (lambda - next) / lambda;
  const double eta = 1e-6 * std::min(1.0, std::max(gap, 1e-3));

  // (t - T)^{-1} V is PSD for t above the spectral radius and is dominated by
  // the Perron part of V.
  const RealVector rhs = pd.rep.coords(v.matrix());
  const RealMatrix shifted = lambda * (1.0 + eta) * RealMatrix::Identity(n, n) - m;
  const RealVector x = shifted.partialPivLu().solve(rhs);
  const HermitianMatrix xt = pd.rep.element(x);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> xs(xt.matrix());
  const double top = xs.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < xs.eigenvalues().size(); ++i) {
    if (xs.eigenvalues()(i) > 1e-3 * top) keep.push_back(i);
  }
  if (static_cast<Eigen::Index>(keep.size()) < v.rank()) {
    ComplexMatrix z(v.dim(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
      z.col(static_cast<Eigen::Index>(c)) = xs.eigenvectors().col(keep[c]);
    }
    Projection smaller = projector_onto(orthonormalize(z, tol), tol);
    if (!leaves_invariant(t, smaller, tol)) {
      throw NumericalError("support of the resolvent is not invariant");
    }
    return smaller;
  }

  // Full support: move along an orthogonal eigenvector to the PSD boundary.
  const RealMatrix& e = pd.eigenspace;
  const RealVector xe = e * (e.transpose() * x);
  const HermitianMatrix gamma = pd.rep.element(xe);
  const ComplexMatrix& basis = v.basis();
  const ComplexMatrix g = basis.adjoint() * gamma.matrix() * basis;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> gs(g);
  if (!(gs.eigenvalues().minCoeff() > tol.rank_rel * gs.eigenvalues().maxCoeff())) {
    throw NumericalError("Perron eigenvector of a degenerate corner is not definite");
  }
  const RealVector xn = xe.normalized();
  RealVector other = RealVector::Zero(n);
  for (Eigen::Index c = 0; c < e.cols(); ++c) {
    other = e.col(c) - xn * xn.dot(e.col(c));
    if (other.norm() > 1e-6) break;
  }
  if (!(other.norm() > 1e-6)) throw NumericalError("eigenspace has no second direction");
  const ComplexMatrix h = basis.adjoint() * pd.rep.element(other).matrix() * basis;

  // sup{eps : G - eps H >= 0} = 1 / mu_max(G^{-1/2} H G^{-1/2}).
  const ComplexMatrix g_isqrt = gs.operatorInverseSqrt();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> hs(ComplexMatrix(g_isqrt * h * g_isqrt));
  double mu = hs.eigenvalues().maxCoeff();
  ComplexMatrix dir = h;
  if (!(mu > 0.0)) {
    mu = -hs.eigenvalues().minCoeff();
    dir = -h;
  }
  const ComplexMatrix boundary = g - dir / mu;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> bs(boundary);
  const double btop = bs.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < bs.eigenvalues().size(); ++i) {
    if (bs.eigenvalues()(i) > 1e-7 * btop) support.push_back(i);
  }
  if (support.empty() || static_cast<Eigen::Index>(support.size()) >= v.rank()) {
    throw NumericalError("boundary eigenvector did not drop rank");
  }
  ComplexMatrix z(v.dim(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    z.col(static_cast<Eigen::Index>(c)) = basis * bs.eigenvectors().col(support[c]);
  }
  return projector_onto(orthonormalize(z, tol), tol);
}

HermitianMatrix psd_oriented(const HermitianMatrix& h, const Tolerances& tol) {
  if (psd_check(h, tol)) return h;
  HermitianMatrix neg(ComplexMatrix(-h.matrix()));
  if (psd_check(neg, tol)) return neg;
  throw NumericalError("Perron eigenvector is not positive semidefinite");
}

}  // namespace

Block algorithm1_find_irreducible(const CpMap& t, const Projection& v, const Tolerances& tol) {
  if (!t.square() || v.dim() != t.src_dim()) throw DimensionError("projection/map mismatch");
  if (v.rank() == 0) throw Error("empty corner");
  Projection cur = v;
  const Eigen::Index guard = 4 * v.dim() + 4;
  for (Eigen::Index pass = 0; pass < guard; ++pass) {
    if (cur.rank() == 1) {
      if (!leaves_invariant(t, cur, tol)) throw NumericalError("corner is not invariant");
      const double lambda = rank_one_lambda(t, cur);
      if (!(lambda > 0.0)) throw Error("corner map is zero");
      return {cur, lambda};
    }
    const PerronData pd = spectral_radius_perron(t, cur, tol);
    if (!(pd.lambda > 0.0)) throw Error("corner map is zero");
    if (pd.multiplicity > 1) {
      cur = split_degenerate(t, pd, tol);
      continue;
    }
    const HermitianMatrix gamma = psd_oriented(pd.gamma, tol);
    const ComplexMatrix gamma_img = image_basis(gamma.matrix(), tol);
    if (gamma_img.cols() < cur.rank()) {
      cur = projector_onto(gamma_img, tol);
      continue;
    }
    const PerronData back = spectral_radius_perron(compressed_adjoint(t, cur), cur, tol);
    const HermitianMatrix delta = psd_oriented(back.gamma, tol);
    if (same_span(image_basis(delta.matrix(), tol), gamma_img, tol)) return {cur, pd.lambda};
    cur = shrink_to_kernel(cur, delta.matrix(), tol);
    if (cur.rank() == 0) throw NumericalError("adjoint Perron vector has full support");
  }
  throw NumericalError("irreducible block search did not terminate");
}

QTransform build_Q(const CpMap& t, const Projection& v, double lambda, const Tolerances& tol) {
  if (!(lambda > 0.0)) throw Error("spectral radius must be positive");
  const Eigen::Index k = v.dim();
  const Eigen::Index s = v.rank();
  const PerronData back = spectral_radius_perron(compressed_adjoint(t, v), v, tol);
  const HermitianMatrix delta = psd_oriented(back.gamma, tol);
  const SqrtPinv root = hermitian_sqrt_pinv(delta, tol);
  const ComplexMatrix r = root.sqrt.matrix() + v.complement().matrix();
  ComplexMatrix u(k, k);
  u << v.basis(), v.complement().basis();
  const ComplexMatrix q = u.adjoint() * r;
  CpMap t1 = conjugate(t, q, 1.0 / lambda, tol);

  ComplexMatrix lead = ComplexMatrix::Zero(k, k);
  lead.topLeftCorner(s, s).setIdentity();
  const Projection v1 = projector_onto(ComplexMatrix(lead.leftCols(s)), tol);
  if (!leaves_invariant(t1, v1, tol)) throw NumericalError("T1 does not leave V1 invariant");
  const ComplexMatrix back1 = v1.matrix() * apply_map(adjoint(t1), v1.matrix()) * v1.matrix();
  if (max_abs(ComplexMatrix(back1 - v1.matrix())) > 1e-8) {
    throw NumericalError("V1 T1^*(V1) V1 differs from V1");
  }
  const double radius = s == 1 ? rank_one_lambda(t1, v1) : spectral_radius_perron(t1, v1, tol).lambda;
  if (std::abs(radius - 1.0) > 1e-8) throw NumericalError("T1 corner spectral radius is not 1");
  return {q, std::move(t1), s};
}

namespace {

ComplexMatrix unit_direction(Eigen::Index k, Eigen::Index s, Eigen::Index p) {
  const Eigen::Index half = s * (k - s);
  ComplexMatrix x = ComplexMatrix::Zero(k - s, s);
  const Eigen::Index idx = p % half;
  x(idx % (k - s), idx / (k - s)) = p < half ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  return x;
}

ComplexMatrix off_diagonal(const ComplexMatrix& x, Eigen::Index k, Eigen::Index s) {
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  out.bottomLeftCorner(k - s, s) = x;
  out.topRightCorner(s, k - s) = x.adjoint();
  return out;
}

ComplexMatrix top_block(const ComplexMatrix& x, Eigen::Index k, Eigen::Index s) {
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  out.topLeftCorner(s, s) = x;
  return out;
}

ComplexMatrix bottom_block(const ComplexMatrix& x, Eigen::Index k, Eigen::Index s) {
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  out.bottomRightCorner(k - s, k - s) = x;
  return out;
}

double re_trace(const ComplexMatrix& a, const ComplexMatrix& b) { return (a * b).trace().real(); }

}  // namespace

double QuadraticModel::evaluate(const RealVector& x) const {
  if (x.size() != n) throw DimensionError("point has the wrong dimension");
  if (n == 0) return constant;
  return constant + linear.dot(x) + x.dot(gram * x);
}

ComplexMatrix QuadraticModel::to_matrix(const RealVector& x) const {
  if (x.size() != n) throw DimensionError("point has the wrong dimension");
  ComplexMatrix out = ComplexMatrix::Zero(k - s, s);
  for (Eigen::Index p = 0; p < n; ++p) out += x(p) * unit_direction(k, s, p);
  return out;
}

double quadratic_direct(const CpMap& t1, Eigen::Index s, const ComplexMatrix& x) {
  const Eigen::Index k = t1.src_dim();
  if (x.rows() != k - s || x.cols() != s) throw DimensionError("X must be (k-s) x s");
  ComplexMatrix left(k, k);
  left << ComplexMatrix::Identity(s, s), x.adjoint(), x, x * x.adjoint();
  ComplexMatrix right(k, k);
  right << x.adjoint() * x, -x.adjoint(), -x, ComplexMatrix::Identity(k - s, k - s);
  return re_trace(apply_map(adjoint(t1), left), right);
}

QuadraticModel build_quadratic(const CpMap& t1, Eigen::Index s, const Tolerances& tol) {
  (void)tol;
  const Eigen::Index k = t1.src_dim();
  if (s <= 0 || s > k) throw DimensionError("block size out of range");
  QuadraticModel model;
  model.k = k;
  model.s = s;
  model.n = 2 * s * (k - s);
  const CpMap adj = adjoint(t1);
  ComplexMatrix v1 = ComplexMatrix::Zero(k, k);
  v1.topLeftCorner(s, s).setIdentity();
  ComplexMatrix low = ComplexMatrix::Identity(k, k) - v1;
  const ComplexMatrix p = apply_map(adj, v1);
  model.constant = re_trace(p, low);

  const Eigen::Index n = model.n;
  model.linear = RealVector::Zero(n);
  model.gram = RealMatrix::Zero(n, n);
  std::vector<ComplexMatrix> dirs;
  std::vector<ComplexMatrix> adj_off;
  for (Eigen::Index i = 0; i < n; ++i) {
    dirs.push_back(unit_direction(k, s, i));
    adj_off.push_back(apply_map(adj, off_diagonal(dirs.back(), k, s)));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(i);
    model.linear(i) = re_trace(p, ComplexMatrix(-off_diagonal(dirs[a], k, s))) + re_trace(adj_off[a], low);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      model.gram(i, j) =
          re_trace(p, top_block(ComplexMatrix(dirs[a].adjoint() * dirs[b]), k, s)) +
          re_trace(apply_map(adj, bottom_block(ComplexMatrix(dirs[a] * dirs[b].adjoint()), k, s)), low) +
          re_trace(adj_off[a], ComplexMatrix(-off_diagonal(dirs[b], k, s)));
    }
  }
  model.gram = (0.5 * (model.gram + model.gram.transpose())).eval();

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 30 && n > 0; ++trial) {
    RealVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = unif(rng);
    const double direct = quadratic_direct(t1, s, model.to_matrix(x));
    const double modeled = model.evaluate(x);
    if (std::abs(direct - modeled) > 1e-8 * (1.0 + std::abs(direct))) {
      throw NumericalError("quadratic model disagrees with the direct evaluation");
    }
  }
  return model;
}

WSolution algorithm2_solve_W(const CpMap& t, const Projection& v, double lambda,
                             const Tolerances& tol) {
  const QTransform qt = build_Q(t, v, lambda, tol);
  const QuadraticModel model = build_quadratic(qt.t1, qt.s, tol);
  const Eigen::Index k = v.dim();
  const Eigen::Index s = qt.s;
  WSolution out;
  RealVector xmin = RealVector::Zero(model.n);
  if (model.n == 0) {
    out.min_f = model.constant;
  } else {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(model.gram);
    const RealVector& ev = es.eigenvalues();
    out.gram_min_eig = ev.minCoeff();
    const double top = ev.cwiseAbs().maxCoeff();
    out.gram_positive_definite = top > 0.0 && ev.minCoeff() > 1e-9 * top;
    // Pseudo-inverse on the numerically nonzero spectrum.
    RealVector inv = RealVector::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i)) > 1e-9 * top) inv(i) = 1.0 / ev(i);
    }
    xmin = -0.5 * es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose() * model.linear;
    out.min_f = model.evaluate(xmin);
  }
  if (!out.gram_positive_definite || out.min_f > tol.zero_f) return out;

  ComplexMatrix stacked(k, s);
  stacked << ComplexMatrix::Identity(s, s), model.to_matrix(xmin);
  const Projection w = projector_onto_image(ComplexMatrix(qt.q.adjoint() * stacked), tol);
  const CpMap adj = adjoint(t);
  if (w.rank() != v.rank()) throw NumericalError("W has the wrong rank");
  if (rank_eps(ComplexMatrix(w.matrix() * v.basis()), tol) != v.rank()) {
    throw NumericalError("ker(W) meets Im(V)");
  }
  if (!leaves_invariant(adj, w, tol)) throw NumericalError("W is not invariant under the adjoint");
  if (!is_irreducible(adj, w, tol)) throw NumericalError("adjoint is reducible on W");
  out.w = w;
  return out;
}

ComplexMatrix build_R(const Projection& vprime, const Projection& v, const Projection& w,
                      const Tolerances& tol) {
  const Eigen::Index k = vprime.dim();
  if (v.dim() != k || w.dim() != k) throw DimensionError("projection dimensions differ");
  if (w.rank() != v.rank()) throw Error("W and V must have equal rank");
  const auto inside = [&](const Projection& p) {
    return max_abs(ComplexMatrix(p.basis() - vprime.matrix() * p.basis())) <= tol.angle();
  };
  if (!inside(v) || !inside(w)) throw Error("V and W must lie inside V'");
  const ComplexMatrix id = ComplexMatrix::Identity(k, k);
  const ComplexMatrix fixed = image_basis(ComplexMatrix(id - vprime.matrix() + v.matrix()), tol);
  const ComplexMatrix moved =
      subspace_intersection(vprime.basis(), w.complement().basis(), tol);
  if (fixed.cols() + moved.cols() != k) throw SingularMatrixError("direct sum has the wrong size");
  ComplexMatrix polar(k, moved.cols());
  if (moved.cols() > 0) {
    const ComplexMatrix img = (vprime.matrix() - v.matrix()) * moved;
    Eigen::JacobiSVD<ComplexMatrix> svd(img, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > tol.angle() * std::max(sv(0), 1.0))) {
      throw SingularMatrixError("Im(V' - W) meets Im(V)");
    }
    polar = svd.matrixU() * svd.matrixV().adjoint();
  }
  ComplexMatrix domain(k, k);
  domain << fixed, moved;
  ComplexMatrix target(k, k);
  target << fixed, polar;
  const ComplexMatrix r = target * checked_inverse(domain, tol);

  const ComplexMatrix keep = id - vprime.matrix() + v.matrix();
  if (max_abs(ComplexMatrix(r * keep - keep)) > 1e-8) throw NumericalError("R does not fix Id - V' + V");
  const ComplexMatrix outside = vprime.matrix() - v.matrix();
  const ComplexMatrix mapped = r * (vprime.matrix() - w.matrix());
  if (max_abs(ComplexMatrix(mapped - outside * mapped)) > 1e-8) {
    throw NumericalError("R(V' - W) leaves Im(V' - V)");
  }
  return r;
}

double block_residual(const BipartiteState& c, const std::vector<Block>& blocks) {
  ComplexMatrix sum = ComplexMatrix::Zero(c.matrix().rows(), c.matrix().cols());
  for (const auto& b : blocks) {
    const ComplexMatrix f = kron(ComplexMatrix(b.v.matrix().transpose()), b.v.matrix());
    sum += f * c.matrix() * f;
  }
  return max_abs(ComplexMatrix(c.matrix() - sum));
}

namespace {

Verdict single_block(const BipartiteState& b, const Tolerances& tol) {
  const CpMap t = gmap_of_state(b, tol);
  const Projection id = Projection::identity(b.k());
  const double lambda = b.k() == 1 ? rank_one_lambda(t, id) : spectral_radius_perron(t, id, tol).lambda;
  Verdict out;
  out.outcome = Outcome::Equivalent;
  out.blocks = {Block{id, lambda}};
  out.iterations = 1;
  const ComplexMatrix eye = ComplexMatrix::Identity(b.k(), b.k());
  out.certificate = BlockCertificate{out.blocks, eye, eye, t, b};
  return out;
}

}  // namespace

Verdict algorithm3_decide(const BipartiteState& b, std::optional<ComplexVector> v,
                          const Tolerances& tol, std::uint64_t seed) {
  tol.validate();
  if (b.k() != b.m()) throw DimensionError("decision needs square factors; embed first");
  const Eigen::Index k = b.k();
  if (!is_ppt(b, tol)) {
    const CpMap t = gmap_of_state(b, tol);
    const ComplexMatrix fwd = apply_map(t, ComplexMatrix::Identity(k, k));
    const ComplexMatrix back = apply_map(adjoint(t), ComplexMatrix::Identity(k, k));
    const double c = fwd.trace().real() / static_cast<double>(k);
    const bool scaled_ds = c > 0.0 &&
                           max_abs(ComplexMatrix(fwd - c * ComplexMatrix::Identity(k, k))) <= 1e-10 * c &&
                           max_abs(ComplexMatrix(back - c * ComplexMatrix::Identity(k, k))) <= 1e-10 * c;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b.matrix(), Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    const bool definite = top > 0.0 && es.eigenvalues().minCoeff() > tol.rank_rel * top;
    if (scaled_ds || definite) return single_block(b, tol);
    throw NotPptError("state is not PPT");
  }

  if (!v) v = find_full_rank_vector(b, 64, seed, tol);
  if (!v) {
    Verdict out;
    out.outcome = Outcome::Inconclusive;
    out.witness = Witness{Stage::NoFullRankVector, Projection::identity(k), std::nullopt, std::nullopt};
    return out;
  }
  const RangeNormalization lp = normalize_range_vector(b, *v, tol);
  CpMap t = gmap_of_state(lp.a, tol);
  Projection vprime = Projection::identity(k);
  ComplexMatrix q = ComplexMatrix::Identity(k, k);
  Verdict out;
  for (Eigen::Index pass = 0; pass < k; ++pass) {
    out.iterations = static_cast<int>(pass) + 1;
    const Block block = algorithm1_find_irreducible(t, vprime, tol);
    if (block.v.rank() == vprime.rank()) {
      out.blocks.push_back(block);
      out.outcome = Outcome::Equivalent;
      const ComplexMatrix first = checked_inverse(q, tol).transpose() * lp.p;
      BipartiteState c = apply_filter(b, first, q, tol);
      out.certificate = BlockCertificate{out.blocks, lp.p, q, t, std::move(c)};
      return out;
    }
    const WSolution sol = algorithm2_solve_W(t, block.v, block.lambda, tol);
    if (!sol.w) {
      out.outcome = Outcome::NotEquivalent;
      const Stage stage =
          sol.gram_positive_definite ? Stage::FMinimumPositive : Stage::GramNotPositiveDefinite;
      out.witness = Witness{stage, block.v, sol.min_f, sol.gram_min_eig};
      if (sol.min_f >= tol.zero_f && sol.min_f <= 100.0 * tol.zero_f) {
        out.flags.emplace_back("min_f-near-threshold");
      }
      return out;
    }
    out.blocks.push_back(block);
    const ComplexMatrix r = build_R(vprime, block.v, *sol.w, tol);
    t = conjugate(t, r, 1.0, tol);
    q = r * q;
    vprime = shrink_to_kernel(vprime, block.v.matrix(), tol);
  }
  throw NumericalError("decision loop exceeded k iterations");
}

}  // namespace fnf

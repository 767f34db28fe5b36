#include <doctest.h>

#include "fnf/algorithms.hpp"
#include "support/oracles.hpp"

using namespace fnf;

namespace {

BipartiteState diag_state(const RealMatrix& w) { return oracle::diagonal_state(w / w.sum()); }

RealMatrix pattern(Eigen::Index k, std::initializer_list<double> d) {
  RealMatrix w(k, k);
  auto it = d.begin();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) w(i, j) = *it++;
  }
  return w;
}

BipartiteState neq2() { return diag_state(pattern(2, {1, 1, 0, 1})); }

Projection span_units(Eigen::Index n, std::initializer_list<Eigen::Index> idx) {
  ComplexMatrix b = ComplexMatrix::Zero(n, static_cast<Eigen::Index>(idx.size()));
  Eigen::Index c = 0;
  for (Eigen::Index i : idx) b(i, c++) = 1.0;
  return Projection(b, n);
}

// Separable blocks on span(e0, e1) ⊗ span(f0, f1) and span(e2, e3) ⊗ span(f2, f3).
BipartiteState two_block_state(oracle::Rng& rng) {
  ComplexMatrix rho = ComplexMatrix::Zero(16, 16);
  for (Eigen::Index blk = 0; blk < 2; ++blk) {
    const BipartiteState part = oracle::random_separable(rng, 2, 2, 6);
    for (Eigen::Index i = 0; i < 4; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) {
        const Eigen::Index r = (2 * blk + i / 2) * 4 + 2 * blk + i % 2;
        const Eigen::Index c = (2 * blk + j / 2) * 4 + 2 * blk + j % 2;
        rho(r, c) = part.matrix()(i, j) / 2.0;
      }
    }
  }
  return oracle::from_matrix(4, 4, rho);
}

}  // namespace

TEST_CASE("names") {
  CHECK(std::string(to_string(Outcome::Equivalent)) == "equivalent");
  CHECK(std::string(to_string(Outcome::NotEquivalent)) == "not_equivalent");
  CHECK(std::string(to_string(Outcome::Inconclusive)) == "inconclusive");
}

TEST_CASE("full-rank vector normalization") {
  oracle::Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    const BipartiteState b = oracle::random_state(rng, 3, 3, 9);
    const ComplexVector v = oracle::random_vector(rng, 9);
    const RangeNormalization lp = normalize_range_vector(b, v);
    const ComplexVector mapped = kron(lp.p, ComplexMatrix::Identity(3, 3)) * v;
    CHECK(max_abs(ComplexMatrix(vec_to_matrix(mapped, 3, 3) - ComplexMatrix::Identity(3, 3))) < 1e-10);
    const ComplexMatrix pi = kron(lp.p, ComplexMatrix::Identity(3, 3));
    CHECK(max_abs(ComplexMatrix(lp.a.matrix() - pi * b.matrix() * pi.adjoint())) < 1e-10);
  }
  ComplexVector low = ComplexVector::Zero(4);
  low(0) = 1.0;
  CHECK_THROWS(normalize_range_vector(neq2(), low));
}

TEST_CASE("irreducible corner") {
  const Block whole = algorithm1_find_irreducible(CpMap::identity(3), Projection::identity(3));
  CHECK(whole.v.rank() == 1);
  CHECK(std::abs(whole.lambda - 1.0) < 1e-12);
  CHECK(leaves_invariant(CpMap::identity(3), whole.v));

  const CpMap t = gmap_of_state(neq2());
  const Block b = algorithm1_find_irreducible(t, Projection::identity(2));
  REQUIRE(b.v.rank() == 1);
  CHECK(std::abs(std::abs(b.v.basis()(1, 0)) - 1.0) < 1e-10);
  CHECK(is_irreducible(t, b.v));

  oracle::Rng rng(2);
  const CpMap full = gmap_of_state(oracle::random_state(rng, 3, 3, 9));
  const Block f = algorithm1_find_irreducible(full, Projection::identity(3));
  CHECK(f.v.rank() == 3);

  // Upper block-triangular Kraus operators: the leading 2-dimensional corner is invariant.
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < 3; ++i) {
    ComplexMatrix k = oracle::random_complex(rng, 4, 4);
    k.bottomLeftCorner(2, 2).setZero();
    kraus.push_back(k);
  }
  const CpMap tri(4, 4, kraus);
  const Block tb = algorithm1_find_irreducible(tri, Projection::identity(4));
  CHECK(tb.v.rank() >= 1);
  CHECK(leaves_invariant(tri, tb.v));
  CHECK(is_irreducible(tri, tb.v));
  const PerronData whole_p = spectral_radius_perron(tri, Projection::identity(4));
  CHECK(std::abs(tb.lambda - whole_p.lambda) < 1e-8 * whole_p.lambda);
}

TEST_CASE("diagonal degenerate corner") {
  for (Eigen::Index k = 2; k <= 4; ++k) {
    const CpMap t = gmap_of_state(diag_state(RealMatrix::Identity(k, k)));
    const PerronData p = spectral_radius_perron(t, Projection::identity(k));
    CHECK(p.multiplicity == k);
    const Block b = algorithm1_find_irreducible(t, Projection::identity(k));
    CHECK(b.v.rank() == 1);
    CHECK(is_irreducible(t, b.v));
  }
}

TEST_CASE("congruence to a block-triangular map") {
  const CpMap t = gmap_of_state(neq2());
  const Block b = algorithm1_find_irreducible(t, Projection::identity(2));
  const QTransform q = build_Q(t, b.v, b.lambda);
  CHECK(q.s == 1);
  CHECK(leaves_invariant(q.t1, span_units(2, {0})));
  const PerronData p = spectral_radius_perron(q.t1, span_units(2, {0}));
  CHECK(std::abs(p.lambda - 1.0) < 1e-10);

  oracle::Rng rng(3);
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < 3; ++i) {
    ComplexMatrix k = oracle::random_complex(rng, 4, 4);
    k.bottomLeftCorner(2, 2).setZero();
    kraus.push_back(k);
  }
  const CpMap tri(4, 4, kraus);
  const Block tb = algorithm1_find_irreducible(tri, Projection::identity(4));
  const QTransform tq = build_Q(tri, tb.v, tb.lambda);
  const Projection lead = span_units(4, {0, 1});
  REQUIRE(tq.s == 2);
  CHECK(leaves_invariant(tq.t1, lead));
  const ComplexMatrix back = lead.matrix() * apply_map(adjoint(tq.t1), lead.matrix()) * lead.matrix();
  CHECK(max_abs(ComplexMatrix(back - lead.matrix())) < 1e-8);
  // T1 = Q T(Q^{-1} . Q^{-*}) Q^* / lambda.
  const ComplexMatrix x = oracle::random_complex(rng, 4, 4);
  const ComplexMatrix qi = tq.q.inverse();
  const ComplexMatrix direct = tq.q * apply_map(tri, ComplexMatrix(qi * x * qi.adjoint())) * tq.q.adjoint() / tb.lambda;
  CHECK(max_abs(ComplexMatrix(apply_map(tq.t1, x) - direct)) < 1e-8 * max_abs(direct));
}

TEST_CASE("quadratic model") {
  const CpMap t = gmap_of_state(neq2());
  const Block b = algorithm1_find_irreducible(t, Projection::identity(2));
  const QTransform q = build_Q(t, b.v, b.lambda);
  const QuadraticModel qm = build_quadratic(q.t1, q.s);
  CHECK(qm.n == 2);
  CHECK(std::abs(qm.constant - 1.0) < 1e-10);
  CHECK(max_abs(RealMatrix(qm.linear)) < 1e-10);
  CHECK(max_abs(RealMatrix(qm.gram - 2.0 * RealMatrix::Identity(2, 2))) < 1e-10);

  const QuadraticModel zero = build_quadratic(CpMap::identity(3), 1);
  CHECK(zero.n == 4);
  CHECK(std::abs(zero.constant) < 1e-12);
  CHECK(max_abs(RealMatrix(zero.linear)) < 1e-12);
  CHECK(max_abs(zero.gram) < 1e-12);

  oracle::Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index s = 1 + i % 3;
    std::vector<ComplexMatrix> kraus;
    for (int j = 0; j < 3; ++j) {
      ComplexMatrix kr = oracle::random_complex(rng, 4, 4);
      kr.bottomLeftCorner(4 - s, s).setZero();
      kraus.push_back(kr);
    }
    const CpMap tri(4, 4, kraus);
    const Block tb = algorithm1_find_irreducible(tri, Projection::identity(4));
    const QTransform tq = build_Q(tri, tb.v, tb.lambda);
    const QuadraticModel m = build_quadratic(tq.t1, tq.s);
    CHECK(m.n == 2 * (4 - tq.s) * tq.s);
    for (int j = 0; j < 5; ++j) {
      RealVector x(m.n);
      for (Eigen::Index c = 0; c < m.n; ++c) x(c) = std::normal_distribution<double>()(rng);
      const ComplexMatrix xm = m.to_matrix(x);
      const double oracle_f = oracle::direct_f(tq.t1, tq.s, xm);
      CHECK(std::abs(m.evaluate(x) - oracle_f) < 1e-9 * (1.0 + std::abs(oracle_f)));
      CHECK(std::abs(quadratic_direct(tq.t1, tq.s, xm) - oracle_f) < 1e-9 * (1.0 + std::abs(oracle_f)));
    }
  }
}

TEST_CASE("W subspace") {
  const CpMap t = gmap_of_state(neq2());
  const Block b = algorithm1_find_irreducible(t, Projection::identity(2));
  const WSolution none = algorithm2_solve_W(t, b.v, b.lambda);
  CHECK_FALSE(none.w);
  CHECK(none.gram_positive_definite);
  CHECK(std::abs(none.min_f - 1.0) < 1e-9);
  REQUIRE(none.gram_min_eig);
  CHECK(std::abs(*none.gram_min_eig - 2.0) < 1e-9);

  const CpMap id = gmap_of_state(diag_state(RealMatrix::Identity(2, 2)));
  const Block ib = algorithm1_find_irreducible(id, Projection::identity(2));
  const WSolution w = algorithm2_solve_W(id, ib.v, ib.lambda);
  REQUIRE(w.w);
  CHECK(w.w->rank() == 1);
  CHECK(w.min_f < 1e-10);
  CHECK(leaves_invariant(adjoint(id), *w.w));
  // A direct sum: the complementary invariant corner is V itself.
  CHECK(subspace_intersection(w.w->basis(), ib.v.basis()).cols() == 1);
}

TEST_CASE("R maps the complement of W onto the complement of V") {
  oracle::Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix u = oracle::random_unitary(rng, 5);
    const Projection vprime(u.leftCols(3), 5);
    const Projection v(u.leftCols(1), 5);
    ComplexVector wv = u.leftCols(3) * oracle::random_vector(rng, 3);
    wv.normalize();
    const Projection w(wv, 5);
    const ComplexMatrix r = build_R(vprime, v, w);
    const ComplexMatrix fixed = ComplexMatrix::Identity(5, 5) - vprime.matrix() + v.matrix();
    CHECK(max_abs(ComplexMatrix(r * fixed - fixed)) < 1e-10);
    const ComplexMatrix moved = vprime.matrix() - w.matrix();
    const ComplexMatrix target = vprime.matrix() - v.matrix();
    CHECK(max_abs(ComplexMatrix((ComplexMatrix::Identity(5, 5) - target) * r * moved)) < 1e-10);
    CHECK(rank_eps(r) == 5);
  }
}

TEST_CASE("decision") {
  const Verdict n = algorithm3_decide(neq2());
  CHECK(n.outcome == Outcome::NotEquivalent);
  REQUIRE(n.witness);
  CHECK(n.witness->stage == Stage::FMinimumPositive);
  CHECK(std::abs(*n.witness->min_f - 1.0) < 1e-9);
  CHECK_FALSE(n.certificate);

  const Verdict d = algorithm3_decide(diag_state(pattern(2, {1, 0, 0, 1})));
  CHECK(d.outcome == Outcome::Equivalent);
  CHECK(d.blocks.size() == 2);
  REQUIRE(d.certificate);
  CHECK(block_residual(d.certificate->filtered_state, d.blocks) < 1e-12);

  const Verdict perm = algorithm3_decide(diag_state(pattern(3, {0, 1, 0, 0, 0, 1, 1, 0, 0})));
  CHECK(perm.outcome == Outcome::Equivalent);
  CHECK(perm.blocks.size() == 3);
  CHECK(perm.iterations <= 3);

  const Verdict partial = algorithm3_decide(diag_state(pattern(3, {1, 1, 0, 0, 1, 0, 0, 0, 1})));
  CHECK(partial.outcome == Outcome::NotEquivalent);

  const Verdict none = algorithm3_decide(diag_state(pattern(2, {1, 1, 0, 0})));
  CHECK(none.outcome == Outcome::Inconclusive);
  REQUIRE(none.witness);
  CHECK(none.witness->stage == Stage::NoFullRankVector);

  for (Eigen::Index k = 2; k <= 4; ++k) {
    const Verdict eq = algorithm3_decide(diag_state(RealMatrix::Identity(k, k)));
    CHECK(eq.outcome == Outcome::Equivalent);
    CHECK(static_cast<Eigen::Index>(eq.blocks.size()) == k);
    CHECK(eq.iterations <= k);
  }
}

TEST_CASE("generic states have one block") {
  oracle::Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    const BipartiteState b = oracle::random_separable(rng, 3, 3, 12);
    const Verdict v = algorithm3_decide(b);
    CHECK(v.outcome == Outcome::Equivalent);
    CHECK(v.blocks.size() == 1);
    REQUIRE(v.certificate);
    const BlockCertificate& c = *v.certificate;
    const ComplexMatrix first = c.accumulated_transform.inverse().transpose() * c.p;
    const BipartiteState expect = apply_filter(b, first, c.accumulated_transform);
    CHECK(max_abs(ComplexMatrix(expect.matrix() - c.filtered_state.matrix())) < 1e-8 * max_abs(expect.matrix()));
    const ComplexMatrix x = oracle::random_complex(rng, 3, 3);
    const ComplexMatrix via_state = oracle::direct_gmap(c.filtered_state, x);
    CHECK(max_abs(ComplexMatrix(apply_map(c.final_map, x) - via_state)) < 1e-8 * max_abs(via_state));
  }
}

TEST_CASE("hidden direct sum") {
  oracle::Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const BipartiteState plain = two_block_state(rng);
    const BipartiteState hidden =
        apply_filter(plain, oracle::random_invertible(rng, 4), oracle::random_invertible(rng, 4));
    const Verdict v = algorithm3_decide(hidden);
    CHECK(v.outcome == Outcome::Equivalent);
    CHECK(v.blocks.size() == 2);
    REQUIRE(v.certificate);
    const double scale = max_abs(v.certificate->filtered_state.matrix());
    CHECK(block_residual(v.certificate->filtered_state, v.blocks) < 1e-8 * scale);
    CHECK(v.iterations <= 4);
  }
}

TEST_CASE("explicit vector and determinism") {
  oracle::Rng rng(8);
  const BipartiteState b = oracle::random_separable(rng, 3, 3, 12);
  const Verdict a1 = algorithm3_decide(b, std::nullopt, {}, 11);
  const Verdict a2 = algorithm3_decide(b, std::nullopt, {}, 11);
  CHECK(max_abs(ComplexMatrix(a1.certificate->accumulated_transform - a2.certificate->accumulated_transform)) == 0.0);
  const ComplexVector v = *find_full_rank_vector(b);
  const Verdict given = algorithm3_decide(b, v);
  CHECK(given.outcome == Outcome::Equivalent);
}

TEST_CASE("non-PPT input") {
  oracle::Rng rng(9);
  const BipartiteState pure = oracle::random_state(rng, 2, 2, 1);
  CHECK_FALSE(is_ppt(pure));
  CHECK_THROWS_AS(algorithm3_decide(pure), NotPptError);

  ComplexVector u = ComplexVector::Zero(4);
  u(0) = u(3) = 1.0 / std::sqrt(2.0);
  const Verdict me = algorithm3_decide(oracle::from_matrix(2, 2, u * u.adjoint()));
  CHECK(me.outcome == Outcome::Equivalent);
  CHECK(me.blocks.size() == 1);

  const BipartiteState full = oracle::random_state(rng, 2, 2, 4);
  if (!is_ppt(full)) CHECK(algorithm3_decide(full).outcome == Outcome::Equivalent);
}

#include <doctest.h>

#include "fnf/linalg.hpp"
#include "support/oracles.hpp"

using namespace fnf;

TEST_CASE("rank_eps") {
  CHECK(rank_eps(ComplexMatrix(ComplexMatrix::Identity(3, 3))) == 3);
  CHECK(rank_eps(ComplexMatrix(ComplexMatrix::Zero(3, 3))) == 0);
  oracle::Rng rng(1);
  const ComplexVector a = oracle::random_vector(rng, 4).normalized();
  const ComplexVector b = oracle::random_vector(rng, 4).normalized();
  const ComplexMatrix outer = a * b.adjoint();
  Eigen::BDCSVD<ComplexMatrix> svd(outer);
  int count = 0;
  for (Eigen::Index i = 0; i < 4; ++i) count += svd.singularValues()(i) > 1e-9 ? 1 : 0;
  CHECK(rank_eps(outer) == count);
  CHECK(count == 1);
}

TEST_CASE("image and kernel bases") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  const ComplexMatrix img = image_basis(d);
  REQUIRE(img.cols() == 1);
  CHECK(std::abs(std::abs(img(0, 0)) - 1.0) < 1e-12);
  const ComplexMatrix ker = kernel_basis(d);
  REQUIRE(ker.cols() == 1);
  CHECK(std::abs(std::abs(ker(1, 0)) - 1.0) < 1e-12);
  CHECK(image_basis(ComplexMatrix(ComplexMatrix::Zero(3, 3))).cols() == 0);
  CHECK(kernel_basis(ComplexMatrix(ComplexMatrix::Identity(3, 3))).cols() == 0);

  oracle::Rng rng(2);
  const ComplexMatrix g = oracle::random_complex(rng, 4, 2);
  const ComplexMatrix psd = g * g.adjoint();
  const ComplexMatrix u = image_basis(psd);
  REQUIRE(u.cols() == 2);
  CHECK(max_abs(ComplexMatrix(u * u.adjoint() * psd - psd)) < 1e-8);

  const ComplexMatrix n = oracle::random_complex(rng, 5, 3) * oracle::random_complex(rng, 3, 5);
  const ComplexMatrix k = kernel_basis(n);
  CHECK(k.cols() == 2);
  CHECK(max_abs(ComplexMatrix(n * k)) < 1e-8);
  CHECK(rank_eps(n) + k.cols() == 5);
}

TEST_CASE("subspace intersection") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix e12 = id.leftCols(2);
  const ComplexMatrix e23 = id.rightCols(2);
  const ComplexMatrix both = subspace_intersection(e12, e23);
  REQUIRE(both.cols() == 1);
  CHECK(std::abs(std::abs(both(1, 0)) - 1.0) < 1e-12);
  CHECK(subspace_intersection(id.leftCols(1), id.rightCols(2)).cols() == 0);

  oracle::Rng rng(3);
  const ComplexVector planted = oracle::random_vector(rng, 4).normalized();
  ComplexMatrix a(4, 3), b(4, 2);
  a << planted, oracle::random_complex(rng, 4, 2);
  b << planted, oracle::random_complex(rng, 4, 1);
  const ComplexMatrix ua = orthonormalize(a);
  const ComplexMatrix ub = orthonormalize(b);
  const ComplexMatrix ab = subspace_intersection(ua, ub);
  const ComplexMatrix ba = subspace_intersection(ub, ua);
  REQUIRE(ab.cols() == 1);
  CHECK(std::abs(std::abs(ab.col(0).dot(planted)) - 1.0) < 1e-8);
  CHECK(same_span(ab, ba));
  CHECK(max_principal_angle(ab, ba) < 1e-8);
}

TEST_CASE("projections") {
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  const Projection p = projector_onto(e1);
  CHECK(std::abs(p.matrix()(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(p.matrix()(1, 1)) < 1e-15);
  CHECK(max_abs(ComplexMatrix(projector_onto(ComplexMatrix::Identity(3, 3)).matrix() -
                              ComplexMatrix::Identity(3, 3))) < 1e-15);
  ComplexMatrix diag(2, 1);
  diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Projection half = projector_onto(diag);
  CHECK(max_abs(ComplexMatrix(half.matrix() - ComplexMatrix::Constant(2, 2, 0.5))) < 1e-12);
  ComplexMatrix bad(2, 1);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(projector_onto(bad), Error);

  oracle::Rng rng(4);
  const Projection r = projector_onto_image(oracle::random_complex(rng, 5, 2));
  CHECK(max_abs(ComplexMatrix(r.matrix() * r.matrix() - r.matrix())) < 1e-10);
  CHECK(max_abs(ComplexMatrix(r.matrix() - r.matrix().adjoint())) == 0.0);
  CHECK(r.complement().rank() == 3);
}

TEST_CASE("psd check") {
  CHECK(psd_check(HermitianMatrix::identity(3)));
  ComplexMatrix d = ComplexMatrix::Identity(2, 2);
  d(1, 1) = -1.0;
  CHECK_FALSE(psd_check(HermitianMatrix(d)));
  oracle::Rng rng(5);
  const ComplexVector g = oracle::random_vector(rng, 4);
  CHECK(psd_check(HermitianMatrix(ComplexMatrix(g * g.adjoint()))));
}

TEST_CASE("hermitian sqrt and pseudo-inverse sqrt") {
  const SqrtPinv id = hermitian_sqrt_pinv(HermitianMatrix::identity(2));
  CHECK(max_abs(ComplexMatrix(id.sqrt.matrix() - ComplexMatrix::Identity(2, 2))) < 1e-12);
  CHECK(max_abs(ComplexMatrix(id.pinv_sqrt.matrix() - ComplexMatrix::Identity(2, 2))) < 1e-12);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  const SqrtPinv r = hermitian_sqrt_pinv(HermitianMatrix(d));
  CHECK(std::abs(r.sqrt(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(r.pinv_sqrt(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(r.pinv_sqrt(1, 1)) < 1e-12);

  oracle::Rng rng(6);
  const ComplexMatrix g = oracle::random_complex(rng, 4, 3);
  const HermitianMatrix h(ComplexMatrix(g * g.adjoint()));
  const SqrtPinv s = hermitian_sqrt_pinv(h);
  CHECK(max_abs(ComplexMatrix(s.sqrt.matrix() * s.sqrt.matrix() - h.matrix())) < 1e-8);
  const ComplexMatrix proj = projector_onto_image(h.matrix()).matrix();
  CHECK(max_abs(ComplexMatrix(s.pinv_sqrt.matrix() * s.sqrt.matrix() - proj)) < 1e-8);
  CHECK(max_abs(ComplexMatrix(s.sqrt.matrix() * s.pinv_sqrt.matrix() * s.sqrt.matrix() -
                              s.sqrt.matrix())) < 1e-8);
  CHECK_THROWS_AS(hermitian_sqrt_pinv(HermitianMatrix(ComplexMatrix(-h.matrix()))), NotPsdError);
}

TEST_CASE("hermitian storage is exact") {
  oracle::Rng rng(7);
  const HermitianMatrix h(oracle::random_complex(rng, 4, 4));
  CHECK(max_abs(ComplexMatrix(h.matrix() - h.matrix().adjoint())) == 0.0);
}

TEST_CASE("checked inverse and tolerances") {
  CHECK_THROWS_AS(checked_inverse(ComplexMatrix::Zero(2, 2)), SingularMatrixError);
  oracle::Rng rng(8);
  const ComplexMatrix q = oracle::random_invertible(rng, 3);
  CHECK(max_abs(ComplexMatrix(checked_inverse(q) * q - ComplexMatrix::Identity(3, 3))) < 1e-10);
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.zero_f = 0.0;
  CHECK_THROWS_AS(t.validate(), Error);
}

#include <doctest.h>

#include "berezin/numerics.hpp"
#include "oracles.hpp"

using namespace berezin;

TEST_CASE("eigenvalues agree with an independent Jacobi iteration") {
  std::mt19937_64 rng(7);
  for (int n : {1, 2, 3, 5, 8, 13}) {
    const ComplexMatrix h = oracle::random_hermitian(n, rng);
    const RealVector ev = hermitian_eigenvalues(h);
    const auto ref = oracle::jacobi_eigenvalues(h);
    for (int i = 0; i < n; ++i) CHECK(ev[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    const auto full = hermitian_eigen(h);
    CHECK(max_abs(h * full.eigenvectors - full.eigenvectors * full.eigenvalues.asDiagonal()) < 1e-10);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(hermitian_eigen(m), Error);
  try {
    hermitian_eigen(m);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitian);
  }
}

TEST_CASE("PSD square root and clamp") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = oracle::random_matrix(4, rng);
  const ComplexMatrix p = a.adjoint() * a;
  const ComplexMatrix r = psd_sqrt(p);
  CHECK(max_abs(r * r - p) < 1e-10);
  CHECK(is_hermitian(r));

  ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
  neg(1, 1) = -0.5;
  try {
    psd_sqrt(neg);
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
  // a tiny negative eigenvalue from rounding is clamped
  ComplexMatrix nearly = ComplexMatrix::Identity(2, 2);
  nearly(1, 1) = -1e-14;
  CHECK(max_abs(psd_sqrt(nearly)) == doctest::Approx(1.0));
}

TEST_CASE("polar decomposition and Aluthge transform") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = oracle::random_matrix(5, rng);
  const auto pd = polar_decompose(a);
  CHECK(max_abs(pd.unitary * pd.absolute - a) < 1e-10);
  CHECK(max_abs(pd.unitary.adjoint() * pd.unitary - ComplexMatrix::Identity(5, 5)) < 1e-10);

  // normal matrices are fixed points of the Aluthge transform
  const ComplexMatrix h = oracle::random_hermitian(4, rng);
  CHECK(max_abs(aluthge(h) - h) < 1e-10);

  // rank-deficient input: U vanishes on ker |A|
  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  const auto pn = polar_decompose(nil);
  CHECK(max_abs(pn.unitary * pn.absolute - nil) < 1e-12);
  CHECK(max_abs(aluthge(nil)) < 1e-12);
}

TEST_CASE("norms") {
  std::mt19937_64 rng(5);
  const ComplexMatrix a = oracle::random_matrix(6, rng);
  const auto ev = oracle::jacobi_eigenvalues(a.adjoint() * a);
  CHECK(operator_norm(a) == doctest::Approx(std::sqrt(ev.back())).epsilon(1e-10));
  CHECK(inverse_norm(a) == doctest::Approx(1.0 / std::sqrt(ev.front())).epsilon(1e-8));

  ComplexMatrix singular = ComplexMatrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  try {
    inverse_norm(singular);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Singular);
    CHECK(e.is_numeric());
  }
}

TEST_CASE("Cartesian parts reassemble the matrix") {
  std::mt19937_64 rng(9);
  const ComplexMatrix a = oracle::random_matrix(3, rng);
  const auto parts = cartesian_parts(a);
  CHECK(is_hermitian(parts.re));
  CHECK(is_hermitian(parts.im));
  CHECK(max_abs(parts.re + Complex(0, 1) * parts.im - a) < 1e-13);
}

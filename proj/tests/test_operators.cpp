#include <doctest.h>

#include <numbers>

#include "berezin/operators.hpp"

using namespace berezin;

namespace {

HarmonicSymbol sample_symbol() {
  return HarmonicSymbol{Polynomial({Complex(0.2, 0.1), Complex(0.3, 0.0), Complex(0.0, -0.1)}),
                        Polynomial({Complex(0.0, 0.0), Complex(0.15, 0.05)})};
}

}  // namespace

TEST_CASE("D_phi compression is the weighted shift with weights (n+1) rho^n") {
  const auto d = OperatorModel::composition_differentiation(0.5);
  const ComplexMatrix m = truncate(d, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Complex expected = i == j + 1 ? Complex((j + 1) * std::pow(0.5, j), 0.0) : Complex(0.0, 0.0);
      CHECK(std::abs(m(i, j) - expected) < 1e-15);
    }
}

TEST_CASE("Toeplitz compression of z on the Bergman space") {
  const double alpha = 0.5;
  const auto space = KernelSpace::bergman(alpha);
  const auto t = OperatorModel::toeplitz(HarmonicSymbol{Polynomial({0.0, 1.0}), Polynomial()}, alpha);
  const ComplexMatrix m = truncate(t, 10);
  for (int n = 0; n + 1 < 10; ++n)
    CHECK(m(n + 1, n).real() == doctest::Approx(std::sqrt(monomial_norm_sq(space, n + 1) / monomial_norm_sq(space, n))));
  CHECK(std::abs(m(0, 1)) < 1e-15);
}

TEST_CASE("truncation consistency for banded models") {
  const std::vector<OperatorModel> ops = {
      OperatorModel::composition_differentiation(0.7),
      OperatorModel::toeplitz(sample_symbol(), 1.0),
      OperatorModel::dirichlet_shift(WeightRule::c_over_n(Complex(0.5, 0.2))),
      OperatorModel::dirichlet_shift(WeightRule::list({Complex(1, 0), Complex(0, 2), Complex(-1, 1)})),
  };
  for (const auto& op : ops) {
    const ComplexMatrix small = truncate(op, 12);
    const ComplexMatrix big = truncate(op, 24);
    CHECK(max_abs(big.topLeftCorner(12, 12) - small) == 0.0);
    CHECK(max_abs(truncate(adjoint(op), 12) - small.adjoint()) == 0.0);
  }
}

TEST_CASE("products are padded so their compressions are exact") {
  const auto a = OperatorModel::toeplitz(sample_symbol(), 0.0);
  const auto b = adjoint(OperatorModel::toeplitz(sample_symbol(), 0.0));
  const int n = 10;
  const int pad = bandwidth(a) + bandwidth(b);
  const ComplexMatrix expected = (truncate(a, n + pad) * truncate(b, n + pad)).topLeftCorner(n, n);
  CHECK(max_abs(truncate(compose(a, b), n) - expected) < 1e-14);
  // the naive product of two compressions differs at the corner
  CHECK(max_abs(truncate(a, n) * truncate(b, n) - expected) > 1e-6);
}

TEST_CASE("algebra on finite matrices") {
  ComplexMatrix s(2, 2), t(2, 2);
  s << Complex(1, 0.2), 0.0, 0.0, Complex(2, 0.5);
  t << 0.7, 0.0, 1.0, 0.0;
  const auto so = OperatorModel::matrix(s), to = OperatorModel::matrix(t);
  CHECK(max_abs(truncate(so * to - to * so, 1) - (s * t - t * s)) < 1e-15);
  CHECK(max_abs(truncate(real_part(so), 1) - (s + s.adjoint()) / 2.0) < 1e-15);
  CHECK(max_abs(truncate(imag_part(so), 1) - (s - s.adjoint()) / Complex(0, 2)) < 1e-15);
  CHECK(max_abs(truncate(power(so, 3), 1) - s * s * s) < 1e-14);
  CHECK(max_abs(truncate(shift_identity(so, Complex(0.3, -1)), 1) -
                (s + Complex(0.3, -1) * ComplexMatrix::Identity(2, 2))) < 1e-15);
  CHECK(max_abs(truncate(OperatorModel::identity(so.space()), 1) - ComplexMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("mixing spaces is rejected") {
  const auto h = OperatorModel::composition_differentiation(0.5);
  const auto m = OperatorModel::matrix(ComplexMatrix::Identity(2, 2));
  CHECK_THROWS_AS(h + m, Error);
  CHECK_THROWS_AS(compose(h, m), Error);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(OperatorModel::composition_differentiation(1.0), Error);
  CHECK_THROWS_AS(OperatorModel::composition_differentiation(0.0), Error);
  CHECK_THROWS_AS(OperatorModel::matrix(ComplexMatrix::Zero(2, 3)), Error);
  CHECK_THROWS_AS(truncate(OperatorModel::composition_differentiation(0.5), 0), Error);
}

TEST_CASE("symbol helpers") {
  const HarmonicSymbol phi = sample_symbol();
  const Complex z = std::polar(0.4, 1.1);
  CHECK(std::abs(phi(z) - (Complex(0.2, 0.1) + 0.3 * z + Complex(0, -0.1) * z * z +
                           Complex(0.15, 0.05) * std::conj(z))) < 1e-15);
  CHECK(std::abs(phi.conjugate()(z) - std::conj(phi(z))) < 1e-15);
  // |phi| on the circle is bounded by the sum of moduli and reached near the argmax
  double sampled = 0.0;
  for (int k = 0; k < 20000; ++k) sampled = std::max(sampled, std::abs(phi(std::polar(1.0, 2 * std::numbers::pi * k / 20000))));
  CHECK(phi.sup_norm() == doctest::Approx(sampled).epsilon(1e-6));
  CHECK(phi.sup_norm() >= sampled - 1e-12);
}

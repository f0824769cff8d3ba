#include <doctest.h>

#include <numbers>

#include "berezin/berezin.hpp"
#include "berezin/ranges.hpp"
#include "oracles.hpp"

using namespace berezin;

namespace {

/// <T k, k> / ||k||^2 with k built directly from monomial norms, 600 terms.
Complex series_oracle(const OperatorModel& op, Complex lambda) {
  const int n = 600;
  ComplexVector k(n);
  for (int j = 0; j < n; ++j) k[j] = std::pow(std::conj(lambda), j) / std::sqrt(monomial_norm_sq(op.space(), j));
  const ComplexMatrix m = truncate(op, n);
  return k.dot(m * k) / k.squaredNorm();
}

HarmonicSymbol symbol() {
  return HarmonicSymbol{Polynomial({Complex(0.1, 0.2), Complex(0.3, -0.1), Complex(0.0, 0.2)}),
                        Polynomial({Complex(0.0, 0.0), Complex(0.25, 0.0), Complex(0.0, 0.0), Complex(0.05, 0.1)})};
}

const std::vector<Complex> kProbe = {Complex(0.0, 0.0), Complex(0.3, 0.1), std::polar(0.55, 2.0),
                                     std::polar(0.7, -1.2), std::polar(0.8, 3.0)};

}  // namespace

TEST_CASE("closed forms agree with the kernel series") {
  const std::vector<OperatorModel> ops = {
      OperatorModel::composition_differentiation(0.5),
      shift_identity(OperatorModel::composition_differentiation(0.3), Complex(0.41, -0.2)),
      OperatorModel::toeplitz(symbol(), 0.0),
      OperatorModel::toeplitz(symbol(), 1.5),
      OperatorModel::dirichlet_shift(WeightRule::constant(Complex(0.5, 0.25))),
      OperatorModel::dirichlet_shift(WeightRule::c_over_n(Complex(0.5, 0.0))),
      OperatorModel::dirichlet_shift(WeightRule::real_list({1.0, -0.5, 2.0})),
      OperatorModel::finite_rank({{Polynomial({0.0, 1.0}), Polynomial({1.0, Complex(0, 1)})}}),
      adjoint(OperatorModel::toeplitz(symbol(), 0.5)),
  };
  for (const auto& op : ops)
    for (Complex lambda : kProbe) {
      INFO(op.describe(), " at ", lambda);
      const Complex oracle = series_oracle(op, lambda);
      CHECK(std::abs(berezin_transform(op, lambda) - oracle) < 1e-10);
      CHECK(std::abs(berezin_transform_series(op, lambda) - oracle) < 1e-10);
      REQUIRE(berezin_closed_form(op, lambda).has_value());
    }
}

TEST_CASE("products fall back to the series") {
  const auto t = OperatorModel::toeplitz(symbol(), 0.0);
  const auto p = compose(adjoint(t), t);
  CHECK(!berezin_closed_form(p, 0.3).has_value());
  CHECK(std::abs(berezin_transform(p, Complex(0.3, 0.2)) - series_oracle(p, Complex(0.3, 0.2))) < 1e-10);
}

TEST_CASE("D_phi transform") {
  const double rho = 0.5;
  const auto d = OperatorModel::composition_differentiation(rho);
  for (Complex lambda : kProbe) {
    const double r2 = std::norm(lambda);
    const Complex expected = (1.0 - r2) * lambda / std::pow(1.0 - rho * r2, 2);
    CHECK(std::abs(berezin_transform(d, lambda) - expected) < 1e-14);
  }
  const double sup = oracle::golden_max([&](double r) { return (1 - r * r) * r / std::pow(1 - rho * r * r, 2); }, 0, 1);
  const BerezinMax bm = berezin_number(d, DiskGrid::standard(), 3);
  CHECK(bm.value == doctest::Approx(sup).epsilon(1e-6));
  CHECK(bm.value <= sup + 1e-12);
}

TEST_CASE("Toeplitz transforms reproduce harmonic symbols") {
  for (double alpha : {0.0, 0.5, 2.0}) {
    const auto t = OperatorModel::toeplitz(symbol(), alpha);
    for (Complex lambda : kProbe) CHECK(std::abs(berezin_transform(t, lambda) - symbol()(lambda)) < 1e-12);
  }
}

TEST_CASE("Dirichlet-space shifts and finite-rank operators") {
  const Complex c(0.4, -0.3);
  const auto constant = OperatorModel::dirichlet_shift(WeightRule::constant(c));
  const auto real_w = OperatorModel::dirichlet_shift(WeightRule::real_list({0.5, -1.0, 0.25, 2.0}));
  const auto imag_w = OperatorModel::dirichlet_shift(WeightRule::imaginary_list({0.5, -1.0, 0.25}));
  const auto rank = OperatorModel::finite_rank({{Polynomial({1.0, 0.5, -0.25}), Polynomial({1.0, 0.5, -0.25})},
                                                {Polynomial({0.0, 2.0}), Polynomial({0.0, 2.0})}});
  for (Complex lambda : DiskGrid::coarse(50, 64, 0.95).points()) {
    CHECK(std::abs(berezin_transform(constant, lambda) - c * lambda) <= 1e-10);
    CHECK(std::abs(berezin_transform(real_w, std::conj(lambda)) - std::conj(berezin_transform(real_w, lambda))) <= 1e-12);
    CHECK(std::abs(berezin_transform(imag_w, std::conj(lambda)) + std::conj(berezin_transform(imag_w, lambda))) <= 1e-12);
    const Complex v = berezin_transform(rank, lambda);
    CHECK(std::abs(v.imag()) <= 1e-12);
    CHECK(v.real() >= -1e-12);
  }
}

TEST_CASE("grids") {
  DiskGrid g = DiskGrid::coarse(3, 4, 0.5);
  const auto pts = g.points();
  REQUIRE(pts.size() == 12);
  CHECK(std::abs(pts[0]) == 0.0);
  CHECK(std::abs(pts[4 * 2 + 1] - Complex(0.0, 0.5)) < 1e-15);
  const DiskGrid w = g.refined_around(std::polar(0.25, 1.0));
  CHECK(w.size() == g.size());
  CHECK(w.r_max - w.r_min < g.r_max - g.r_min);
  g.radial = 1;
  CHECK_THROWS_AS(g.points(), Error);
  CHECK_THROWS_AS(DiskGrid::coarse(3, 4, 1.0).points(), Error);
}

TEST_CASE("Berezin number never decreases under refinement") {
  const auto t = shift_identity(OperatorModel::toeplitz(symbol(), 0.5), Complex(0.2, 0.0));
  const DiskGrid g = DiskGrid::coarse(20, 24);
  double last = 0.0;
  for (int rounds = 0; rounds <= 4; ++rounds) {
    const double v = berezin_number(t, g, rounds).value;
    CHECK(v >= last);
    last = v;
  }
  CHECK(last <= symbol().sup_norm() + 0.2 + 1e-9);
}

TEST_CASE("finite spaces use the standard basis") {
  ComplexMatrix m(3, 3);
  m << 1.0, 4.0, 0.0, 0.0, Complex(0, -2.5), 0.0, 1.0, 0.0, 0.5;
  const auto op = OperatorModel::matrix(m);
  CHECK(berezin_number(op, DiskGrid::standard()).value == doctest::Approx(2.5));
  CHECK(berezin_norm(op, DiskGrid::standard()) == doctest::Approx(4.0));
  const RangeSampling s = sample_range(op, DiskGrid::standard());
  REQUIRE(s.values.size() == 3);
  CHECK(s.values[1] == Complex(0, -2.5));
}

TEST_CASE("kernel frame matches pointwise transforms") {
  const auto t = OperatorModel::toeplitz(symbol(), 0.5);
  DiskGrid g = DiskGrid::coarse(6, 8, 0.5);
  const KernelFrame frame = KernelFrame::disk(t.space(), g, 64);
  const auto values = frame.transform(truncate(t, 64));
  const auto pts = frame.points();
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(values[i] - symbol()(pts[i])) < 1e-9);
  const ComplexMatrix m = truncate(t, 64);
  const ComplexMatrix gram = frame.gram(m);
  CHECK(frame.norm(m) == doctest::Approx(max_abs(gram)).epsilon(1e-14));
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(gram(i, i) - values[i]) < 1e-13);
  CHECK(frame.norm(m) >= frame.number(m) - 1e-15);
}

TEST_CASE("positive operators: Berezin norm equals Berezin number on the frame") {
  const auto d = OperatorModel::composition_differentiation(0.5);
  const auto p = compose(adjoint(d), d);
  const KernelFrame frame = KernelFrame::disk(p.space(), DiskGrid::coarse(12, 16, 0.6), 64);
  const ComplexMatrix m = truncate(p, 64);
  CHECK(frame.norm(m) == doctest::Approx(frame.number(m)).epsilon(1e-12));
}

TEST_CASE("sampled Berezin values lie in the numerical range") {
  const auto op = shift_identity(OperatorModel::composition_differentiation(0.5), 0.41);
  const ComplexMatrix m = truncate(op, 128);
  const RangeSampling s = sample_range(op, DiskGrid::coarse(20, 32));
  for (int k = 0; k < 64; ++k) {
    const Complex rot = std::polar(1.0, -2.0 * std::numbers::pi * k / 64);
    const double support = hermitian_eigenvalues((rot * m + std::conj(rot) * m.adjoint()) * 0.5).maxCoeff();
    for (Complex z : s.values) CHECK((rot * z).real() <= support + 1e-6);
  }
}

TEST_CASE("power class membership") {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = Complex(1, 0.2);
  s(1, 1) = Complex(2, 0.5);
  PowerClassOptions o;
  o.theta = std::numbers::pi / 12;
  o.n_max = 5;
  const auto r = power_class_check(OperatorModel::matrix(s), o);
  CHECK(r.member);
  CHECK(r.sectorial);
  REQUIRE(r.re_margins.size() == 4);
  for (double m : r.re_margins) CHECK(m >= 0.0);

  o.theta = 0.1;  // narrower than the sampled index 0.245
  CHECK(!power_class_check(OperatorModel::matrix(s), o).member);

  PowerClassOptions t;
  t.theta = std::numbers::pi / 2 - 1e-6;
  t.grid = DiskGrid::coarse(40, 48);
  t.frame_grid = DiskGrid::coarse(10, 16);
  const auto lifted = OperatorModel::toeplitz(
      HarmonicSymbol{Polynomial({1.2, 0.3}), Polynomial({0.0, Complex(0.1, 0.2)})}, 0.5);
  CHECK(power_class_check(lifted, t).member);
  CHECK_THROWS_AS(power_class_check(lifted, PowerClassOptions{.n_max = 1}), Error);
}

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "berezin/numerics.hpp"
#include "berezin/rkhs.hpp"

namespace berezin {

/// Complex polynomial, coefficient index = degree. Trailing zeros are allowed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {}

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  /// Index of the highest nonzero coefficient, -1 for the zero polynomial.
  int degree() const;
  Complex operator()(Complex z) const;
  bool has_real_coefficients() const;

 private:
  std::vector<Complex> coeffs_;
};

/**
 * Harmonic polynomial symbol f(z) + g(conj z): analytic coefficients a_k of z^k
 * (k >= 0) and coanalytic coefficients b_k of conj(z)^k (k >= 1). The coanalytic
 * polynomial is stored by degree; its constant coefficient must be zero.
 */
struct HarmonicSymbol {
  Polynomial analytic;
  Polynomial coanalytic;

  Complex operator()(Complex z) const;
  int degree() const;
  /// Symbol conj(phi): swaps and conjugates the two parts.
  HarmonicSymbol conjugate() const;
  /// max over |z| = 1 of |phi(z)|, sampled on `samples` boundary points with golden polish.
  double sup_norm(int samples = 4096) const;
};

/// Weight rule for the Dirichlet-space weighted shift z^n -> beta_{n+1} z^{n+1}.
struct WeightRule {
  enum class Kind { Constant, COverN, RealList, ImaginaryList, List };
  Kind kind = Kind::Constant;
  Complex c{0.0, 0.0};          ///< Constant and COverN
  std::vector<Complex> values;  ///< beta_1, beta_2, ...; zero afterwards

  static WeightRule constant(Complex c);
  static WeightRule c_over_n(Complex c);
  static WeightRule real_list(std::vector<double> values);
  static WeightRule imaginary_list(std::vector<double> values);
  static WeightRule list(std::vector<Complex> values);

  /// beta_n for n >= 1.
  Complex weight(int n) const;
  double sup_modulus() const;
  std::string name() const;
};

/// One term <f, g> h of a finite-rank operator.
struct RankOnePair {
  Polynomial g;
  Polynomial h;
};

class OperatorModel;
using OperatorPtr = std::shared_ptr<const OperatorModel>;

namespace model {

struct Matrix {
  ComplexMatrix entries;
};
/// D_phi f = f' o phi on the Hardy space with phi(z) = rho z.
struct CompositionDifferentiation {
  double rho;
};
struct ToeplitzHarmonic {
  HarmonicSymbol symbol;
  double alpha;
};
struct DirichletShift {
  WeightRule rule;
};
/// T f = sum_j <f, g_j> h_j on the Dirichlet space.
struct FiniteRank {
  std::vector<RankOnePair> pairs;
};
/// sum_i c_i A_i + shift I
struct Linear {
  std::vector<std::pair<Complex, OperatorPtr>> terms;
  Complex shift{0.0, 0.0};
};
struct Product {
  OperatorPtr left;
  OperatorPtr right;
};
struct Adjoint {
  OperatorPtr inner;
};

using Node = std::variant<Matrix, CompositionDifferentiation, ToeplitzHarmonic, DirichletShift,
                          FiniteRank, Linear, Product, Adjoint>;

}  // namespace model

/**
 * Immutable operator on a kernel space. Leaves are the concrete models;
 * algebraic combinations are kept as a lazy expression tree and only
 * materialized by truncate().
 */
class OperatorModel {
 public:
  static OperatorModel matrix(ComplexMatrix entries);
  static OperatorModel composition_differentiation(double rho);
  static OperatorModel toeplitz(HarmonicSymbol symbol, double alpha);
  static OperatorModel dirichlet_shift(WeightRule rule);
  static OperatorModel finite_rank(std::vector<RankOnePair> pairs);
  static OperatorModel identity(const KernelSpace& space);
  static OperatorModel zero(const KernelSpace& space);

  const KernelSpace& space() const { return space_; }
  const model::Node& node() const { return node_; }
  /// Short human-readable description, stable across runs.
  std::string describe() const;

  OperatorModel(KernelSpace space, model::Node node)
      : space_(std::move(space)), node_(std::move(node)) {}

 private:
  KernelSpace space_;
  model::Node node_;
};

OperatorModel adjoint(const OperatorModel& op);
OperatorModel add(const OperatorModel& a, const OperatorModel& b);
OperatorModel scale(Complex c, const OperatorModel& op);
OperatorModel shift_identity(const OperatorModel& op, Complex c);
OperatorModel compose(const OperatorModel& a, const OperatorModel& b);
/// op^n by repeated composition, n >= 1.
OperatorModel power(const OperatorModel& op, int n);
OperatorModel real_part(const OperatorModel& op);
OperatorModel imag_part(const OperatorModel& op);

inline OperatorModel operator+(const OperatorModel& a, const OperatorModel& b) { return add(a, b); }
inline OperatorModel operator-(const OperatorModel& a, const OperatorModel& b) {
  return add(a, scale(-1.0, b));
}
inline OperatorModel operator*(const OperatorModel& a, const OperatorModel& b) {
  return compose(a, b);
}
inline OperatorModel operator*(Complex c, const OperatorModel& a) { return scale(c, a); }

/// Number of off-diagonals needed to pad products so their compression is exact.
int bandwidth(const OperatorModel& op);

/// Smallest N accepted by truncate() (polynomial content must fit).
int minimum_truncation(const OperatorModel& op);

/**
 * Compression to span{e_0, ..., e_{N-1}}, e_n = z^n / ||z^n||. Products are
 * formed at N + bandwidth and cropped. Finite-space models ignore N and
 * return their full n x n matrix.
 */
ComplexMatrix truncate(const OperatorModel& op, int n);

}  // namespace berezin

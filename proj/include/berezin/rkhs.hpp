#pragma once

#include <string>
#include <variant>

#include "berezin/numerics.hpp"

namespace berezin {

/// Largest admissible modulus for a kernel index on the disk.
inline constexpr double kDiskCutoff = 1.0 - 1e-9;

struct Hardy {};
struct Bergman {
  double alpha = 0.0;  ///< weight exponent, alpha > -1
};
struct Dirichlet {};
struct StandardFinite {
  int n = 1;  ///< kernel index set {1, ..., n}
};

/**
 * A reproducing-kernel space whose kernel is diagonal in the monomials:
 * k_lambda(z) = sum_n c_n conj(lambda)^n z^n with c_n = 1 / ||z^n||^2.
 * StandardFinite is C^n with the standard basis as kernels.
 */
class KernelSpace {
 public:
  using Variant = std::variant<Hardy, Bergman, Dirichlet, StandardFinite>;

  static KernelSpace hardy() { return KernelSpace(Hardy{}); }
  static KernelSpace bergman(double alpha);
  static KernelSpace dirichlet() { return KernelSpace(Dirichlet{}); }
  static KernelSpace standard_finite(int n);

  const Variant& variant() const { return variant_; }
  bool is_disk() const { return !std::holds_alternative<StandardFinite>(variant_); }
  bool is_finite() const { return !is_disk(); }
  int dimension() const;  ///< n for StandardFinite, throws for disk spaces
  std::string name() const;

  bool operator==(const KernelSpace& other) const;

 private:
  explicit KernelSpace(Variant v) : variant_(v) {}
  Variant variant_;
};

/// ||z^n||^2 in the space.
double monomial_norm_sq(const KernelSpace& space, int n);

/// c_n = 1 / ||z^n||^2.
double kernel_coefficient(const KernelSpace& space, int n);

/// ratio ||z^{n+k}|| / ||z^n||; used for shift entries in the normalized basis.
double monomial_norm_ratio(const KernelSpace& space, int n, int k);

/// ||k_lambda||^2 by closed form.
double kernel_norm_sq(const KernelSpace& space, Complex lambda);

/// Kernel in the orthonormal basis e_n = z^n / ||z^n||: component n is sqrt(c_n) conj(lambda)^n.
ComplexVector truncated_kernel_vector(const KernelSpace& space, Complex lambda, int n_terms);

/**
 * Smallest N with relative tail sum_{n>=N} c_n |lambda|^{2n} / ||k_lambda||^2 below rel_tol,
 * or -1 if more than max_terms would be needed.
 */
int kernel_terms_for(const KernelSpace& space, double modulus, double rel_tol, int max_terms);

void check_disk_point(Complex lambda);

}  // namespace berezin

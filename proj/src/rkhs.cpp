#include "berezin/rkhs.hpp"

#include <cmath>
#include <sstream>

namespace berezin {

namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require_disk(const KernelSpace& space) {
  if (!space.is_disk())
    throw Error(ErrorCode::UnsupportedSpace, "operation needs a disk space, got " + space.name());
}

}  // namespace

KernelSpace KernelSpace::bergman(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "Bergman weight must satisfy alpha > -1");
  return KernelSpace(Bergman{alpha});
}

KernelSpace KernelSpace::standard_finite(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "StandardFinite needs n >= 1");
  return KernelSpace(StandardFinite{n});
}

int KernelSpace::dimension() const {
  if (const auto* f = std::get_if<StandardFinite>(&variant_)) return f->n;
  throw Error(ErrorCode::UnsupportedSpace, "disk spaces are infinite dimensional");
}

std::string KernelSpace::name() const {
  return std::visit(Overloaded{
                        [](const Hardy&) { return std::string("Hardy"); },
                        [](const Bergman& b) {
                          std::ostringstream os;
                          os << "Bergman(alpha=" << b.alpha << ")";
                          return os.str();
                        },
                        [](const Dirichlet&) { return std::string("Dirichlet"); },
                        [](const StandardFinite& f) {
                          return "StandardFinite(" + std::to_string(f.n) + ")";
                        },
                    },
                    variant_);
}

bool KernelSpace::operator==(const KernelSpace& other) const {
  if (variant_.index() != other.variant_.index()) return false;
  if (const auto* b = std::get_if<Bergman>(&variant_))
    return b->alpha == std::get<Bergman>(other.variant_).alpha;
  if (const auto* f = std::get_if<StandardFinite>(&variant_))
    return f->n == std::get<StandardFinite>(other.variant_).n;
  return true;
}

double kernel_coefficient(const KernelSpace& space, int n) {
  require_disk(space);
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "monomial degree must be >= 0");
  return std::visit(Overloaded{
                        [](const Hardy&) { return 1.0; },
                        [n](const Bergman& b) {
                          // c_{k+1} = c_k (k + alpha + 2) / (k + 1), c_0 = 1
                          double c = 1.0;
                          for (int k = 0; k < n; ++k) c *= (k + b.alpha + 2.0) / (k + 1.0);
                          return c;
                        },
                        [n](const Dirichlet&) { return 1.0 / (n + 1.0); },
                        [](const StandardFinite&) { return 0.0; },
                    },
                    space.variant());
}

double monomial_norm_sq(const KernelSpace& space, int n) {
  return 1.0 / kernel_coefficient(space, n);
}

double monomial_norm_ratio(const KernelSpace& space, int n, int k) {
  require_disk(space);
  return std::visit(Overloaded{
                        [](const Hardy&) { return 1.0; },
                        [n, k](const Bergman& b) {
                          // ||z^{n+k}||^2 / ||z^n||^2 = prod_{j=n}^{n+k-1} (j+1)/(j+alpha+2)
                          double r = 1.0;
                          for (int j = n; j < n + k; ++j) r *= (j + 1.0) / (j + b.alpha + 2.0);
                          return std::sqrt(r);
                        },
                        [n, k](const Dirichlet&) {
                          return std::sqrt((n + k + 1.0) / (n + 1.0));
                        },
                        [](const StandardFinite&) { return 0.0; },
                    },
                    space.variant());
}

void check_disk_point(Complex lambda) {
  // a few ulps of slack for grid points placed exactly on the cutoff
  if (!(std::abs(lambda) <= kDiskCutoff + 4e-16))
    throw Error(ErrorCode::OutOfDomain, "kernel index must satisfy |lambda| <= 1 - 1e-9");
}

double kernel_norm_sq(const KernelSpace& space, Complex lambda) {
  require_disk(space);
  check_disk_point(lambda);
  const double r2 = std::norm(lambda);
  return std::visit(Overloaded{
                        [r2](const Hardy&) { return 1.0 / (1.0 - r2); },
                        [r2](const Bergman& b) { return std::pow(1.0 - r2, -(b.alpha + 2.0)); },
                        [r2](const Dirichlet&) {
                          if (r2 == 0.0) return 1.0;
                          return -std::log1p(-r2) / r2;
                        },
                        [](const StandardFinite&) { return 0.0; },
                    },
                    space.variant());
}

ComplexVector truncated_kernel_vector(const KernelSpace& space, Complex lambda, int n_terms) {
  require_disk(space);
  check_disk_point(lambda);
  if (n_terms < 1) throw Error(ErrorCode::InvalidArgument, "kernel truncation needs N >= 1");
  ComplexVector v(n_terms);
  const Complex conj_lambda = std::conj(lambda);
  Complex power(1.0, 0.0);
  double c = 1.0;  // c_0 = 1 for every disk space
  const auto* bergman = std::get_if<Bergman>(&space.variant());
  const bool dirichlet = std::holds_alternative<Dirichlet>(space.variant());
  for (int n = 0; n < n_terms; ++n) {
    if (dirichlet) c = 1.0 / (n + 1.0);
    v[n] = std::sqrt(c) * power;
    power *= conj_lambda;
    if (bergman) c *= (n + bergman->alpha + 2.0) / (n + 1.0);
  }
  return v;
}

int kernel_terms_for(const KernelSpace& space, double modulus, double rel_tol, int max_terms) {
  require_disk(space);
  const double total = kernel_norm_sq(space, Complex(modulus, 0.0));
  const double r2 = modulus * modulus;
  const auto* bergman = std::get_if<Bergman>(&space.variant());
  const bool dirichlet = std::holds_alternative<Dirichlet>(space.variant());
  double c = 1.0;
  double power = 1.0;
  double partial = 0.0;
  for (int n = 0; n < max_terms; ++n) {
    if (dirichlet) c = 1.0 / (n + 1.0);
    const double term = c * power;
    partial += term;
    const double gap = (total - partial) / total;
    if (gap <= rel_tol) return n + 1;
    if (bergman) c *= (n + bergman->alpha + 2.0) / (n + 1.0);
    power *= r2;
    if (power == 0.0) return n + 1;
  }
  return -1;
}

}  // namespace berezin

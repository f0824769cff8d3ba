#include "berezin/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace berezin {

namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require_same_space(const OperatorModel& a, const OperatorModel& b) {
  if (!(a.space() == b.space()))
    throw Error(ErrorCode::SpaceMismatch,
                "operands live on " + a.space().name() + " and " + b.space().name());
}

OperatorPtr share(const OperatorModel& op) { return std::make_shared<const OperatorModel>(op); }

std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return os.str();
}

// Column n of the compression: coefficients of the polynomial p in the basis e_m.
ComplexVector onb_coefficients(const KernelSpace& space, const Polynomial& p, int n) {
  ComplexVector v = ComplexVector::Zero(n);
  const auto& c = p.coefficients();
  for (int m = 0; m < static_cast<int>(c.size()) && m < n; ++m)
    v[m] = c[m] * std::sqrt(monomial_norm_sq(space, m));
  return v;
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

int Polynomial::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
    if (coeffs_[k] != Complex(0.0, 0.0)) return k;
  return -1;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

bool Polynomial::has_real_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c.imag() == 0.0; });
}

// ------------------------------------------------------------ HarmonicSymbol

Complex HarmonicSymbol::operator()(Complex z) const {
  return analytic(z) + coanalytic(std::conj(z));
}

int HarmonicSymbol::degree() const { return std::max(analytic.degree(), coanalytic.degree()); }

HarmonicSymbol HarmonicSymbol::conjugate() const {
  std::vector<Complex> a = coanalytic.coefficients();
  std::vector<Complex> b = analytic.coefficients();
  for (auto& x : a) x = std::conj(x);
  for (auto& x : b) x = std::conj(x);
  if (a.empty()) a.push_back(0.0);
  if (!b.empty()) {
    // the constant term stays with the analytic part
    a[0] += b[0];
    b[0] = 0.0;
  }
  return HarmonicSymbol{Polynomial(std::move(a)), Polynomial(std::move(b))};
}

double HarmonicSymbol::sup_norm(int samples) const {
  // |phi| is subharmonic, so its sup over the disk is attained on the circle.
  const double step = 2.0 * std::numbers::pi / samples;
  auto value = [this](double t) { return std::abs((*this)(std::polar(1.0, t))); };
  double best = -1.0;
  double best_t = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double v = value(k * step);
    if (v > best) {
      best = v;
      best_t = k * step;
    }
  }
  double lo = best_t - step, hi = best_t + step;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = value(x1);
    }
  }
  return std::max({best, f1, f2});
}

// ---------------------------------------------------------------- WeightRule

WeightRule WeightRule::constant(Complex c) { return WeightRule{Kind::Constant, c, {}}; }
WeightRule WeightRule::c_over_n(Complex c) { return WeightRule{Kind::COverN, c, {}}; }

WeightRule WeightRule::real_list(std::vector<double> values) {
  WeightRule r{Kind::RealList, 0.0, {}};
  for (double v : values) r.values.emplace_back(v, 0.0);
  return r;
}

WeightRule WeightRule::imaginary_list(std::vector<double> values) {
  WeightRule r{Kind::ImaginaryList, 0.0, {}};
  for (double v : values) r.values.emplace_back(0.0, v);
  return r;
}

WeightRule WeightRule::list(std::vector<Complex> values) {
  return WeightRule{Kind::List, 0.0, std::move(values)};
}

Complex WeightRule::weight(int n) const {
  switch (kind) {
    case Kind::Constant: return c;
    case Kind::COverN: return c / static_cast<double>(n);
    default:
      return n >= 1 && n <= static_cast<int>(values.size()) ? values[n - 1] : Complex(0.0, 0.0);
  }
}

double WeightRule::sup_modulus() const {
  switch (kind) {
    case Kind::Constant:
    case Kind::COverN: return std::abs(c);
    default: {
      double m = 0.0;
      for (Complex v : values) m = std::max(m, std::abs(v));
      return m;
    }
  }
}

std::string WeightRule::name() const {
  switch (kind) {
    case Kind::Constant: return "constant" + format_complex(c);
    case Kind::COverN: return "c_over_n" + format_complex(c);
    case Kind::RealList: return "real_list[" + std::to_string(values.size()) + "]";
    case Kind::ImaginaryList: return "imaginary_list[" + std::to_string(values.size()) + "]";
    case Kind::List: return "list[" + std::to_string(values.size()) + "]";
  }
  return "?";
}

// ------------------------------------------------------------- OperatorModel

OperatorModel OperatorModel::matrix(ComplexMatrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw Error(ErrorCode::InvalidArgument, "matrix operand must be square and non-empty");
  if (!entries.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
  const int n = static_cast<int>(entries.rows());
  return OperatorModel(KernelSpace::standard_finite(n), model::Matrix{std::move(entries)});
}

OperatorModel OperatorModel::composition_differentiation(double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw Error(ErrorCode::InvalidArgument, "composition-differentiation needs 0 < rho < 1");
  return OperatorModel(KernelSpace::hardy(), model::CompositionDifferentiation{rho});
}

OperatorModel OperatorModel::toeplitz(HarmonicSymbol symbol, double alpha) {
  const auto& b = symbol.coanalytic.coefficients();
  if (!b.empty() && b[0] != Complex(0.0, 0.0))
    throw Error(ErrorCode::InvalidArgument, "coanalytic part must have no constant term");
  return OperatorModel(KernelSpace::bergman(alpha), model::ToeplitzHarmonic{std::move(symbol), alpha});
}

OperatorModel OperatorModel::dirichlet_shift(WeightRule rule) {
  for (Complex v : rule.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::InvalidArgument, "weights must be finite");
  return OperatorModel(KernelSpace::dirichlet(), model::DirichletShift{std::move(rule)});
}

OperatorModel OperatorModel::finite_rank(std::vector<RankOnePair> pairs) {
  return OperatorModel(KernelSpace::dirichlet(), model::FiniteRank{std::move(pairs)});
}

OperatorModel OperatorModel::identity(const KernelSpace& space) {
  return OperatorModel(space, model::Linear{{}, Complex(1.0, 0.0)});
}

OperatorModel OperatorModel::zero(const KernelSpace& space) {
  return OperatorModel(space, model::Linear{{}, Complex(0.0, 0.0)});
}

std::string OperatorModel::describe() const {
  return std::visit(
      Overloaded{
          [](const model::Matrix& m) { return "Matrix(" + std::to_string(m.entries.rows()) + ")"; },
          [](const model::CompositionDifferentiation& d) {
            std::ostringstream os;
            os << "Dphi(rho=" << d.rho << ")";
            return os.str();
          },
          [](const model::ToeplitzHarmonic& t) {
            std::ostringstream os;
            os << "Toeplitz(deg=" << t.symbol.degree() << ",alpha=" << t.alpha << ")";
            return os.str();
          },
          [](const model::DirichletShift& s) { return "DirichletShift(" + s.rule.name() + ")"; },
          [](const model::FiniteRank& f) {
            return "FiniteRank(" + std::to_string(f.pairs.size()) + ")";
          },
          [](const model::Linear& l) {
            std::string s = "Linear[";
            for (const auto& [c, op] : l.terms) s += format_complex(c) + "*" + op->describe() + ";";
            return s + "shift=" + format_complex(l.shift) + "]";
          },
          [](const model::Product& p) {
            return "(" + p.left->describe() + ")*(" + p.right->describe() + ")";
          },
          [](const model::Adjoint& a) { return "adj(" + a.inner->describe() + ")"; },
      },
      node_);
}

OperatorModel adjoint(const OperatorModel& op) {
  if (const auto* a = std::get_if<model::Adjoint>(&op.node())) return *a->inner;
  return OperatorModel(op.space(), model::Adjoint{share(op)});
}

OperatorModel add(const OperatorModel& a, const OperatorModel& b) {
  require_same_space(a, b);
  return OperatorModel(a.space(),
                       model::Linear{{{Complex(1.0, 0.0), share(a)}, {Complex(1.0, 0.0), share(b)}},
                                     Complex(0.0, 0.0)});
}

OperatorModel scale(Complex c, const OperatorModel& op) {
  return OperatorModel(op.space(), model::Linear{{{c, share(op)}}, Complex(0.0, 0.0)});
}

OperatorModel shift_identity(const OperatorModel& op, Complex c) {
  return OperatorModel(op.space(), model::Linear{{{Complex(1.0, 0.0), share(op)}}, c});
}

OperatorModel compose(const OperatorModel& a, const OperatorModel& b) {
  require_same_space(a, b);
  return OperatorModel(a.space(), model::Product{share(a), share(b)});
}

OperatorModel power(const OperatorModel& op, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "power needs n >= 1");
  OperatorModel out = op;
  for (int k = 1; k < n; ++k) out = compose(out, op);
  return out;
}

OperatorModel real_part(const OperatorModel& op) { return scale(0.5, add(op, adjoint(op))); }

OperatorModel imag_part(const OperatorModel& op) {
  return scale(Complex(0.0, -0.5), add(op, scale(-1.0, adjoint(op))));
}

int bandwidth(const OperatorModel& op) {
  if (op.space().is_finite()) return 0;
  return std::visit(Overloaded{
                        [](const model::Matrix&) { return 0; },
                        [](const model::CompositionDifferentiation&) { return 1; },
                        [](const model::ToeplitzHarmonic& t) { return std::max(0, t.symbol.degree()); },
                        [](const model::DirichletShift&) { return 1; },
                        [](const model::FiniteRank&) { return 0; },
                        [](const model::Linear& l) {
                          int b = 0;
                          for (const auto& term : l.terms) b = std::max(b, bandwidth(*term.second));
                          return b;
                        },
                        [](const model::Product& p) {
                          return bandwidth(*p.left) + bandwidth(*p.right);
                        },
                        [](const model::Adjoint& a) { return bandwidth(*a.inner); },
                    },
                    op.node());
}

int minimum_truncation(const OperatorModel& op) {
  return std::visit(Overloaded{
                        [](const model::Matrix& m) { return static_cast<int>(m.entries.rows()); },
                        [](const model::CompositionDifferentiation&) { return 1; },
                        [](const model::ToeplitzHarmonic& t) { return t.symbol.degree() + 1; },
                        [](const model::DirichletShift&) { return 1; },
                        [](const model::FiniteRank& f) {
                          int d = 0;
                          for (const auto& p : f.pairs)
                            d = std::max({d, p.g.degree(), p.h.degree()});
                          return d + 1;
                        },
                        [](const model::Linear& l) {
                          int m = 1;
                          for (const auto& t : l.terms) m = std::max(m, minimum_truncation(*t.second));
                          return m;
                        },
                        [](const model::Product& p) {
                          return std::max(minimum_truncation(*p.left), minimum_truncation(*p.right));
                        },
                        [](const model::Adjoint& a) { return minimum_truncation(*a.inner); },
                    },
                    op.node());
}

ComplexMatrix truncate(const OperatorModel& op, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "truncation needs N >= 1");
  const KernelSpace& space = op.space();
  if (space.is_finite()) n = space.dimension();
  if (n < minimum_truncation(op))
    throw Error(ErrorCode::TruncationTooSmall,
                "N = " + std::to_string(n) + " cannot hold " + op.describe());
  return std::visit(
      Overloaded{
          [](const model::Matrix& m) -> ComplexMatrix { return m.entries; },
          [n](const model::CompositionDifferentiation& d) -> ComplexMatrix {
            // D_phi z^n = n rho^{n-1} z^{n-1}; Hardy monomials are orthonormal.
            ComplexMatrix out = ComplexMatrix::Zero(n, n);
            double w = 1.0;
            for (int k = 0; k + 1 < n; ++k) {
              out(k + 1, k) = (k + 1) * w;
              w *= d.rho;
            }
            return out;
          },
          [n, &space](const model::ToeplitzHarmonic& t) -> ComplexMatrix {
            ComplexMatrix out = ComplexMatrix::Zero(n, n);
            const auto& a = t.symbol.analytic.coefficients();
            const auto& b = t.symbol.coanalytic.coefficients();
            for (int k = 0; k < static_cast<int>(a.size()); ++k) {
              if (a[k] == Complex(0.0, 0.0)) continue;
              for (int m = 0; m + k < n; ++m)
                out(m + k, m) += a[k] * monomial_norm_ratio(space, m, k);
            }
            for (int k = 1; k < static_cast<int>(b.size()); ++k) {
              if (b[k] == Complex(0.0, 0.0)) continue;
              for (int m = 0; m + k < n; ++m)
                out(m, m + k) += b[k] * monomial_norm_ratio(space, m, k);
            }
            return out;
          },
          [n, &space](const model::DirichletShift& s) -> ComplexMatrix {
            ComplexMatrix out = ComplexMatrix::Zero(n, n);
            for (int k = 0; k + 1 < n; ++k)
              out(k + 1, k) = s.rule.weight(k + 1) * monomial_norm_ratio(space, k, 1);
            return out;
          },
          [n, &space](const model::FiniteRank& f) -> ComplexMatrix {
            ComplexMatrix out = ComplexMatrix::Zero(n, n);
            for (const auto& p : f.pairs)
              out += onb_coefficients(space, p.h, n) * onb_coefficients(space, p.g, n).adjoint();
            return out;
          },
          [n](const model::Linear& l) -> ComplexMatrix {
            ComplexMatrix out = l.shift * ComplexMatrix::Identity(n, n);
            for (const auto& [c, term] : l.terms) out += c * truncate(*term, n);
            return out;
          },
          [n, &op](const model::Product& p) -> ComplexMatrix {
            const int padded = n + (op.space().is_finite() ? 0 : bandwidth(op));
            const ComplexMatrix full = truncate(*p.left, padded) * truncate(*p.right, padded);
            return full.topLeftCorner(n, n);
          },
          [n](const model::Adjoint& a) -> ComplexMatrix { return truncate(*a.inner, n).adjoint(); },
      },
      op.node());
}

}  // namespace berezin

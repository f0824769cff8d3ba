#include "berezin/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "berezin/parallel.hpp"

namespace berezin {

namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Li_2(x) for 0 <= x <= 1.
double dilog(double x) {
  if (x <= 0.5) {
    double sum = 0.0, power = x;
    for (int k = 1; k < 200 && power > 1e-18 * (sum + 1e-300); ++k) {
      sum += power / (static_cast<double>(k) * k);
      power *= x;
    }
    return sum;
  }
  const double y = 1.0 - x;
  const double log_term = y > 0.0 ? std::log(x) * std::log(y) : 0.0;
  return std::numbers::pi * std::numbers::pi / 6.0 - log_term - dilog(y);
}

// sum_{n>=0} beta_{n+1} r2^n / (n+1)
Complex dirichlet_weight_series(const WeightRule& rule, double r2) {
  switch (rule.kind) {
    case WeightRule::Kind::Constant:
      return rule.c * (r2 == 0.0 ? 1.0 : -std::log1p(-r2) / r2);
    case WeightRule::Kind::COverN:
      return rule.c * (r2 == 0.0 ? 1.0 : dilog(r2) / r2);
    default: {
      Complex sum(0.0, 0.0);
      double power = 1.0;
      for (std::size_t n = 0; n < rule.values.size(); ++n) {
        sum += rule.values[n] * power / (n + 1.0);
        power *= r2;
      }
      return sum;
    }
  }
}

bool has_closed_form(const OperatorModel& op) {
  return std::visit(Overloaded{
                        [](const model::Matrix&) { return false; },
                        [](const model::Product&) { return false; },
                        [](const model::Linear& l) {
                          return std::all_of(l.terms.begin(), l.terms.end(), [](const auto& t) {
                            return has_closed_form(*t.second);
                          });
                        },
                        [](const model::Adjoint& a) { return has_closed_form(*a.inner); },
                        [](const auto&) { return true; },
                    },
                    op.node());
}

Complex closed_form_unchecked(const OperatorModel& op, Complex lambda) {
  const KernelSpace& space = op.space();
  return std::visit(
      Overloaded{
          [](const model::Matrix&) -> Complex {
            throw Error(ErrorCode::UnsupportedSpace, "matrix models have no disk transform");
          },
          [](const model::Product&) -> Complex {
            throw Error(ErrorCode::UnsupportedSpace, "products have no closed form");
          },
          [lambda](const model::CompositionDifferentiation& d) -> Complex {
            const double r2 = std::norm(lambda);
            const double denom = 1.0 - d.rho * r2;
            return (1.0 - r2) * lambda / (denom * denom);
          },
          [lambda](const model::ToeplitzHarmonic& t) -> Complex { return t.symbol(lambda); },
          [lambda, &space](const model::DirichletShift& s) -> Complex {
            const double r2 = std::norm(lambda);
            return lambda * dirichlet_weight_series(s.rule, r2) / kernel_norm_sq(space, lambda);
          },
          [lambda, &space](const model::FiniteRank& f) -> Complex {
            Complex sum(0.0, 0.0);
            for (const auto& p : f.pairs) sum += std::conj(p.g(lambda)) * p.h(lambda);
            return sum / kernel_norm_sq(space, lambda);
          },
          [lambda](const model::Linear& l) -> Complex {
            Complex sum = l.shift;
            for (const auto& [c, term] : l.terms) sum += c * closed_form_unchecked(*term, lambda);
            return sum;
          },
          [lambda](const model::Adjoint& a) -> Complex {
            return std::conj(closed_form_unchecked(*a.inner, lambda));
          },
      },
      op.node());
}

Complex series_value(const ComplexMatrix& m, const ComplexVector& v) {
  return v.dot(m * v) / v.squaredNorm();
}

int finite_index(const KernelSpace& space, Complex lambda) {
  const int n = space.dimension();
  const double idx = lambda.real();
  if (lambda.imag() != 0.0 || idx != std::floor(idx) || idx < 1 || idx > n)
    throw Error(ErrorCode::OutOfDomain, "finite kernel index must be an integer in 1..n");
  return static_cast<int>(idx) - 1;
}

std::vector<Complex> evaluate_points(const OperatorModel& op, const std::vector<Complex>& pts,
                                     double r_max) {
  std::vector<Complex> values(pts.size());
  if (has_closed_form(op)) {
    parallel_for(pts.size(), [&](std::size_t i) { values[i] = closed_form_unchecked(op, pts[i]); });
    return values;
  }
  const int n = truncation_for_radius(op.space(), r_max);
  const ComplexMatrix m = truncate(op, n);
  parallel_for(pts.size(), [&](std::size_t i) {
    values[i] = series_value(m, truncated_kernel_vector(op.space(), pts[i], n));
  });
  return values;
}

std::size_t argmax_abs(const std::vector<Complex>& values) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

}  // namespace

// ------------------------------------------------------------------ DiskGrid

DiskGrid DiskGrid::coarse(int radial, int angular, double r_max) {
  DiskGrid g;
  g.radial = radial;
  g.angular = angular;
  g.r_max = r_max;
  return g;
}

void DiskGrid::validate() const {
  if (radial < 2 || angular < 4)
    throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 radii and 4 angles");
  if (!(r_min >= 0.0 && r_min <= r_max && r_max <= kDiskCutoff))
    throw Error(ErrorCode::OutOfDomain, "grid radii must lie in [0, 1 - 1e-9]");
}

std::vector<Complex> DiskGrid::points() const {
  validate();
  std::vector<Complex> pts;
  pts.reserve(size());
  const bool full = zeta_span <= 0.0;
  const double dz = full ? kTwoPi / angular : zeta_span / (angular - 1);
  for (int i = 0; i < radial; ++i) {
    const double r = r_min + (r_max - r_min) * i / (radial - 1);
    for (int j = 0; j < angular; ++j) pts.push_back(std::polar(r, zeta_min + dz * j));
  }
  return pts;
}

DiskGrid DiskGrid::refined_around(Complex center) const {
  DiskGrid g = *this;
  const double r_half = (r_max - r_min) / 8.0;
  const double r0 = std::abs(center);
  g.r_min = std::max(0.0, r0 - r_half);
  g.r_max = std::min(kDiskCutoff, r0 + r_half);
  if (g.r_max - g.r_min < 1e-300) g.r_max = std::min(kDiskCutoff, g.r_min + 1e-15);
  const double span = (zeta_span <= 0.0 ? kTwoPi : zeta_span) / 4.0;
  g.zeta_min = (r0 == 0.0 ? 0.0 : std::arg(center)) - span / 2.0;
  g.zeta_span = span;
  g.refinement_depth = refinement_depth + 1;
  return g;
}

// --------------------------------------------------------------- transforms

int truncation_for_radius(const KernelSpace& space, double r) {
  const double rr = std::min(std::abs(r), kDiskCutoff);
  int n = kernel_terms_for(space, rr, kKernelTailTarget, kMaxKernelTerms);
  if (n > 0) return n;
  n = kernel_terms_for(space, rr, kKernelTailLimit, kMaxKernelTerms);
  if (n > 0) return kMaxKernelTerms;
  throw Error(ErrorCode::SeriesNotConverged,
              "kernel series at |lambda| = " + std::to_string(rr) + " needs more than 4096 terms");
}

std::optional<Complex> berezin_closed_form(const OperatorModel& op, Complex lambda) {
  if (op.space().is_finite() || !has_closed_form(op)) return std::nullopt;
  check_disk_point(lambda);
  return closed_form_unchecked(op, lambda);
}

Complex berezin_transform_series(const OperatorModel& op, Complex lambda) {
  if (op.space().is_finite()) {
    const int i = finite_index(op.space(), lambda);
    return truncate(op, 1)(i, i);
  }
  check_disk_point(lambda);
  const int n = std::max(truncation_for_radius(op.space(), std::abs(lambda)), minimum_truncation(op));
  return series_value(truncate(op, n), truncated_kernel_vector(op.space(), lambda, n));
}

Complex berezin_transform(const OperatorModel& op, Complex lambda) {
  if (auto v = berezin_closed_form(op, lambda)) return *v;
  return berezin_transform_series(op, lambda);
}

RangeSampling sample_range(const OperatorModel& op, const DiskGrid& grid) {
  RangeSampling out;
  out.space = op.space();
  out.digest = op.describe();
  if (op.space().is_finite()) {
    const ComplexMatrix m = truncate(op, 1);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out.lambdas.emplace_back(static_cast<double>(i + 1), 0.0);
      out.values.push_back(m(i, i));
    }
    return out;
  }
  out.lambdas = grid.points();
  out.values = evaluate_points(op, out.lambdas, grid.r_max);
  return out;
}

BerezinMax berezin_number(const OperatorModel& op, const DiskGrid& grid, int refine_iters) {
  if (refine_iters < 0) throw Error(ErrorCode::InvalidArgument, "refine_iters must be >= 0");
  RangeSampling s = sample_range(op, grid);
  std::size_t i = argmax_abs(s.values);
  BerezinMax best{std::abs(s.values[i]), s.lambdas[i]};
  if (op.space().is_finite()) return best;
  DiskGrid window = grid;
  for (int it = 0; it < refine_iters; ++it) {
    window = window.refined_around(best.argmax);
    const auto pts = window.points();
    const auto values = evaluate_points(op, pts, window.r_max);
    const std::size_t j = argmax_abs(values);
    if (std::abs(values[j]) > best.value) best = {std::abs(values[j]), pts[j]};
  }
  return best;
}

double berezin_norm(const OperatorModel& op, const DiskGrid& grid) {
  if (op.space().is_finite()) return max_abs(truncate(op, 1));
  const int n = std::max(truncation_for_radius(op.space(), grid.r_max), minimum_truncation(op));
  return KernelFrame::disk(op.space(), grid, n).norm(truncate(op, n));
}

// ------------------------------------------------------------- KernelFrame

KernelFrame KernelFrame::finite(int n) {
  KernelFrame f;
  f.finite_ = true;
  f.truncation_ = n;
  for (int i = 1; i <= n; ++i) f.points_.emplace_back(static_cast<double>(i), 0.0);
  return f;
}

KernelFrame KernelFrame::disk(const KernelSpace& space, const DiskGrid& grid, int truncation) {
  if (!space.is_disk()) throw Error(ErrorCode::UnsupportedSpace, "disk frame needs a disk space");
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "frame truncation must be >= 1");
  KernelFrame f;
  f.finite_ = false;
  f.truncation_ = truncation;
  f.points_ = grid.points();
  f.vectors_.resize(truncation, static_cast<Eigen::Index>(f.points_.size()));
  for (std::size_t p = 0; p < f.points_.size(); ++p) {
    const ComplexVector v = truncated_kernel_vector(space, f.points_[p], truncation);
    f.vectors_.col(static_cast<Eigen::Index>(p)) = v / v.norm();
  }
  return f;
}

std::vector<Complex> KernelFrame::transform(const ComplexMatrix& m) const {
  if (m.rows() != truncation_ || m.cols() != truncation_)
    throw Error(ErrorCode::InvalidArgument, "matrix size does not match the frame truncation");
  std::vector<Complex> out(points_.size());
  if (finite_) {
    for (int i = 0; i < truncation_; ++i) out[i] = m(i, i);
    return out;
  }
  const ComplexMatrix w = m * vectors_;
  for (Eigen::Index p = 0; p < vectors_.cols(); ++p) out[p] = vectors_.col(p).dot(w.col(p));
  return out;
}

double KernelFrame::number(const ComplexMatrix& m) const {
  double best = 0.0;
  for (Complex v : transform(m)) best = std::max(best, std::abs(v));
  return best;
}

double KernelFrame::norm(const ComplexMatrix& m) const {
  if (m.rows() != truncation_ || m.cols() != truncation_)
    throw Error(ErrorCode::InvalidArgument, "matrix size does not match the frame truncation");
  if (finite_) return max_abs(m);
  const ComplexMatrix w = m * vectors_;
  double best = 0.0;
  constexpr Eigen::Index kBlock = 512;
  for (Eigen::Index start = 0; start < vectors_.cols(); start += kBlock) {
    const Eigen::Index len = std::min(kBlock, vectors_.cols() - start);
    const ComplexMatrix g = vectors_.middleCols(start, len).adjoint() * w;
    best = std::max(best, max_abs(g));
  }
  return best;
}

ComplexMatrix KernelFrame::gram(const ComplexMatrix& m) const {
  if (m.rows() != truncation_ || m.cols() != truncation_)
    throw Error(ErrorCode::InvalidArgument, "matrix size does not match the frame truncation");
  if (finite_) return m;
  return vectors_.adjoint() * (m * vectors_);
}

double accurate_radius(const KernelSpace& space, int n) {
  double lo = 0.0, hi = kDiskCutoff;
  if (kernel_terms_for(space, hi, kKernelTailTarget, n) > 0) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kernel_terms_for(space, mid, kKernelTailTarget, n) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}


namespace {

DiskGrid clipped(DiskGrid g, const KernelSpace& space, int n) {
  g.r_max = std::min(g.r_max, accurate_radius(space, n));
  return g;
}

}  // namespace

// -------------------------------------------------------------- power class

PowerClassReport power_class_check(const OperatorModel& op, const PowerClassOptions& options) {
  if (options.n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 2");
  PowerClassReport report;
  const KernelSpace& space = op.space();
  const bool finite = space.is_finite();
  const int n = finite ? space.dimension() : options.truncation;
  const KernelFrame frame =
      finite ? KernelFrame::finite(n) : KernelFrame::disk(space, clipped(options.frame_grid, space, n), n);
  const bool best = options.semantics == Semantics::Best && !finite;

  std::vector<Complex> range;
  if (best && has_closed_form(op))
    range = sample_range(op, options.grid).values;
  else
    range = frame.transform(truncate(op, n));
  report.sector = sector_index(range);
  report.sectorial = report.sector.success && report.sector.index <= options.theta + 1e-9;
  if (!report.sectorial) report.failure = "not Berezin sectorial at the requested angle";

  auto base_number = [&](const OperatorModel& h) {
    if (best && has_closed_form(h)) return berezin_number(h, options.grid, options.refine_iters).value;
    return frame.number(truncate(h, n));
  };
  const OperatorModel parts[2] = {real_part(op), imag_part(op)};
  std::vector<double>* margins[2] = {&report.re_margins, &report.im_margins};
  bool powers_ok = true;
  for (int which = 0; which < 2; ++which) {
    const double base = base_number(parts[which]);
    OperatorModel h_power = parts[which];
    for (int k = 2; k <= options.n_max; ++k) {
      h_power = compose(h_power, parts[which]);
      const double lhs = frame.number(truncate(h_power, n));
      const double margin = std::pow(base, k) - lhs;
      margins[which]->push_back(margin);
      if (margin < -options.slack) powers_ok = false;
    }
  }
  if (!powers_ok && report.failure.empty()) report.failure = "power inequality fails for a Cartesian part";
  report.member = report.sectorial && powers_ok;
  return report;
}

}  // namespace berezin

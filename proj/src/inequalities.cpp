#include "berezin/inequalities.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "berezin/ranges.hpp"

namespace berezin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCommuteTol = 1e-10;

struct Entry {
  TheoremId id;
  const char* name;
  std::vector<std::string> signature;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {TheoremId::LEMMA_MAIN, "LEMMA_MAIN", {"T"}},
      {TheoremId::THM_FIRST, "THM_FIRST", {"T"}},
      {TheoremId::COR_COW, "COR_COW", {"T"}},
      {TheoremId::THM_KALI0, "THM_KALI0", {"S", "T"}},
      {TheoremId::COR_KALI0_SQUARE, "COR_KALI0_SQUARE", {"S"}},
      {TheoremId::COR_KALI0_IDENT, "COR_KALI0_IDENT", {"S"}},
      {TheoremId::CMP_KALI1, "CMP_KALI1", {"S", "T"}},
      {TheoremId::CMP_SAD1, "CMP_SAD1", {"S", "T"}},
      {TheoremId::CMP_PPSSKK, "CMP_PPSSKK", {"S", "T"}},
      {TheoremId::THM_SAD4, "THM_SAD4", {"S", "T"}},
      {TheoremId::CMP_SAD5, "CMP_SAD5", {"S", "T"}},
      {TheoremId::COR_SAD4_SQUARE, "COR_SAD4_SQUARE", {"T"}},
      {TheoremId::LEMMA_LAST30, "LEMMA_LAST30", {}},
      {TheoremId::THM_LAST31, "THM_LAST31", {"T"}},
      {TheoremId::CMP_LAST32, "CMP_LAST32", {"T"}},
      {TheoremId::PROP_IIXX, "PROP_IIXX", {"T"}},
      {TheoremId::LEMMA_AA, "LEMMA_AA", {"T"}},
      {TheoremId::THM_AXB, "THM_AXB", {"S", "T", "X", "Y"}},
      {TheoremId::COR_ABBA, "COR_ABBA", {"S", "T"}},
      {TheoremId::CMP_BLOCKPINTU, "CMP_BLOCKPINTU", {"S", "T"}},
      {TheoremId::COR_ABBA_MIN, "COR_ABBA_MIN", {"S", "T"}},
      {TheoremId::THM_COMMUTING, "THM_COMMUTING", {"S1", "T1"}},
      {TheoremId::PROP_PF1, "PROP_PF1", {"T"}},
  };
  return entries;
}

const Entry& entry(TheoremId id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw Error(ErrorCode::InvalidArgument, "unknown theorem id");
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

// Largest modulus at which a kernel truncated to n terms keeps a 1e-12 relative tail.
/**
 * Berezin quantities on a fixed frame: the standard basis on finite spaces,
 * normalized truncated kernels on disk spaces. Operators enter through their
 * padded compressions, so products are exact on the frame vectors.
 */
class Evaluator {
 public:
  Evaluator(const KernelSpace& space, const VerifyParams& params)
      : finite_(space.is_finite()),
        n_(finite_ ? space.dimension() : params.truncation),
        grid_(params.frame_grid),
        frame_(finite_ ? KernelFrame::finite(n_) : make_disk(space, params)) {}

  const DiskGrid& frame_grid() const { return grid_; }
  int truncation() const { return n_; }

  ComplexMatrix mat(const OperatorModel& op) const { return truncate(op, finite_ ? 1 : n_); }
  ComplexMatrix identity() const { return ComplexMatrix::Identity(n_, n_); }

  std::vector<Complex> range(const ComplexMatrix& m) const { return frame_.transform(m); }
  double ber(const ComplexMatrix& m) const { return frame_.number(m); }
  double ber(const OperatorModel& op) const { return ber(mat(op)); }
  double norm_ber(const ComplexMatrix& m) const { return frame_.norm(m); }
  double norm_ber(const OperatorModel& op) const { return norm_ber(mat(op)); }
  ComplexMatrix gram(const ComplexMatrix& m) const { return frame_.gram(m); }

 private:
  KernelFrame make_disk(const KernelSpace& space, const VerifyParams& params) {
    if (params.truncation < 1)
      throw Error(ErrorCode::HypothesisUncheckable, "disk operands need a truncation budget N >= 1");
    grid_.r_max = std::min(grid_.r_max, accurate_radius(space, params.truncation));
    return KernelFrame::disk(space, grid_, params.truncation);
  }

  bool finite_;
  int n_;
  DiskGrid grid_;
  KernelFrame frame_;
};

const OperatorModel& operand(const Operands& ops, const std::string& name, TheoremId id) {
  auto it = ops.find(name);
  if (it == ops.end())
    throw Error(ErrorCode::SignatureMismatch,
                theorem_name(id) + " needs operand '" + name + "'");
  return it->second;
}

const KernelSpace& common_space(const Operands& ops, TheoremId id) {
  if (ops.empty()) throw Error(ErrorCode::SignatureMismatch, theorem_name(id) + " needs operands");
  const KernelSpace& space = ops.begin()->second.space();
  for (const auto& [name, op] : ops)
    if (!(op.space() == space))
      throw Error(ErrorCode::SignatureMismatch, "operand '" + name + "' lives on another space");
  return space;
}

class Builder {
 public:
  Builder(TheoremId id, const VerifyParams& params) {
    report_.theorem = id;
    report_.params = params;
  }

  InequalityReport& report() { return report_; }

  void hypothesis(std::string name, bool pass, std::string evidence) {
    report_.hypotheses.push_back({std::move(name), pass, std::move(evidence)});
  }

  void detail(std::string key, double value) { report_.details.emplace_back(std::move(key), value); }

  /// Sector membership of sampled Berezin values; returns the sampled index (or nullopt).
  std::optional<double> sector(const std::string& who, const std::vector<Complex>& values,
                               std::optional<double> theta) {
    const SectorReport s = sector_index(values);
    std::optional<double> index;
    if (s.success) index = s.index;
    if (theta) {
      const bool pass = s.success && s.index <= *theta + 1e-9;
      hypothesis(who + " Berezin sectorial at theta", pass,
                 s.success ? "sampled index " + fmt(s.index) + " vs theta " + fmt(*theta)
                           : std::to_string(s.violations.size()) + " samples outside the right half plane");
    } else {
      hypothesis(who + " Berezin sectorial", s.success,
                 s.success ? "sampled index " + fmt(s.index)
                           : std::to_string(s.violations.size()) + " samples outside the right half plane");
    }
    return index;
  }

  void finish(double lhs, double rhs, Direction dir) {
    report_.lhs = lhs;
    report_.rhs = rhs;
    report_.direction = dir;
    report_.margin = dir == Direction::LessEqual ? rhs - lhs : lhs - rhs;
    report_.satisfied = report_.margin >= -report_.params.slack;
    report_.vacuous = std::any_of(report_.hypotheses.begin(), report_.hypotheses.end(),
                                  [](const HypothesisCheck& h) { return !h.pass; });
  }

 private:
  InequalityReport report_;
};

double resolve_theta(Builder& b, const VerifyParams& params, std::optional<double> sampled) {
  double theta = params.theta ? *params.theta : sampled.value_or(kPi / 2);
  if (params.theta && (theta < 0.0 || theta >= kPi / 2))
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, pi/2)");
  b.report().theta_used = theta;
  return theta;
}

void require_nonzero_theta(Builder& b, double theta) {
  b.hypothesis("theta != 0", theta > 1e-12, "theta = " + fmt(theta));
}

void power_class(Builder& b, const Evaluator& ev, const std::string& who, const OperatorModel& op,
                 double theta, const VerifyParams& params, int n_max = 4) {
  PowerClassOptions opt;
  opt.theta = theta;
  opt.n_max = std::max(2, n_max);
  opt.grid = params.grid;
  opt.frame_grid = ev.frame_grid();
  opt.truncation = ev.truncation();
  opt.refine_iters = params.refine_iters;
  opt.semantics = Semantics::Frame;
  const PowerClassReport r = power_class_check(op, opt);
  double worst = 0.0;
  for (double m : r.re_margins) worst = std::min(worst, m);
  for (double m : r.im_margins) worst = std::min(worst, m);
  b.hypothesis(who + " in the power class at theta", r.member,
               r.member ? "sector index " + fmt(r.sector.index) + ", worst power margin " + fmt(worst)
                        : r.failure);
}

bool invertible(Builder& b, const std::string& who, const ComplexMatrix& m, double& inv_norm) {
  try {
    inv_norm = inverse_norm(m);
    b.hypothesis(who + " invertible", true, "||" + who + "^-1|| = " + fmt(inv_norm));
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    inv_norm = 0.0;
    b.hypothesis(who + " invertible", false, "smallest singular value below 1e-12");
    return false;
  }
}

double csc(double theta) { return 1.0 / std::sin(theta); }

// ----------------------------------------------------------- single operator

InequalityReport verify_lemma_main(const Operands& ops, const VerifyParams& p) {
  Builder b(TheoremId::LEMMA_MAIN, p);
  const OperatorModel& t = operand(ops, "T", TheoremId::LEMMA_MAIN);
  Evaluator ev(t.space(), p);
  const ComplexMatrix mt = ev.mat(t);
  const double theta = resolve_theta(b, p, b.sector("T", ev.range(mt), p.theta));
  const double ber_im = ev.ber(cartesian_parts(mt).im);
  b.detail("ber_T", ev.ber(mt));
  b.finish(std::sin(theta) * ev.ber(mt), ber_im, Direction::GreaterEqual);
  return b.report();
}

InequalityReport verify_first(const Operands& ops, const VerifyParams& p, bool cow) {
  const TheoremId id = cow ? TheoremId::COR_COW : TheoremId::THM_FIRST;
  Builder b(id, p);
  const OperatorModel& t = operand(ops, "T", id);
  Evaluator ev(t.space(), p);
  const ComplexMatrix mt = ev.mat(t);
  const auto values = ev.range(mt);
  double theta;
  if (cow) {
    double th1 = kPi, th2 = -kPi;
    bool any = false;
    for (Complex z : values) {
      if (std::abs(z) <= kVertexTolerance) continue;
      const double psi = -std::arg(z);
      th1 = std::min(th1, psi);
      th2 = std::max(th2, psi);
      any = true;
    }
    const bool pass = any && th1 > 0.0 && th2 < kPi / 2;
    b.hypothesis("Ber(T) in {r e^{-i psi}: theta1 <= psi <= theta2}", pass,
                 any ? "theta1 = " + fmt(th1) + ", theta2 = " + fmt(th2) : "no nonzero samples");
    const double derived = pass ? std::max(th2, kPi / 2 - th1) : kPi / 2;
    theta = p.theta ? *p.theta : derived;
    if (p.theta)
      b.hypothesis("theta >= max(theta2, pi/2 - theta1)", *p.theta + 1e-9 >= derived,
                   "derived " + fmt(derived));
    b.report().theta_used = theta;
  } else {
    theta = resolve_theta(b, p, b.sector("T", values, p.theta));
    require_nonzero_theta(b, theta);
  }
  const auto parts = cartesian_parts(mt);
  const double br = ev.ber(parts.re), bi = ev.ber(parts.im);
  const double c = csc(theta);
  const double plus = ev.ber(ComplexMatrix(parts.re + parts.im));
  const double minus = ev.ber(ComplexMatrix(parts.re - parts.im));
  const double tail = cow ? std::abs(br - bi) : bi - br;
  const double rhs_plus = 0.5 * c * plus + 0.5 * c * tail;
  const double rhs_minus = 0.5 * c * minus + 0.5 * c * tail;
  b.detail("ber_re", br);
  b.detail("ber_im", bi);
  b.detail("rhs_plus", rhs_plus);
  b.detail("rhs_minus", rhs_minus);
  if (cow) {
    b.detail("earlier_bound_plus", 0.5 * (br + bi) + 0.5 * std::abs(br - bi));
    b.detail("earlier_bound_minus", 0.5 * (br - bi) + 0.5 * std::abs(br - bi));
  }
  b.finish(ev.ber(mt), std::max(rhs_plus, rhs_minus), Direction::GreaterEqual);
  return b.report();
}

InequalityReport verify_last31(const Operands& ops, const VerifyParams& p, bool comparison) {
  const TheoremId id = comparison ? TheoremId::CMP_LAST32 : TheoremId::THM_LAST31;
  Builder b(id, p);
  const OperatorModel& t = operand(ops, "T", id);
  Evaluator ev(t.space(), p);
  const ComplexMatrix mt = ev.mat(t);
  double theta = kPi / 2;
  if (!comparison) theta = resolve_theta(b, p, b.sector("T", ev.range(mt), p.theta));
  const ComplexMatrix tt = ev.mat(compose(adjoint(t), t));
  const ComplexMatrix re2 = mt + mt.adjoint();
  const ComplexMatrix im2 = Complex(0.0, 1.0) * (mt - mt.adjoint());
  const ComplexMatrix id_n = ev.identity();
  const ComplexMatrix g_tt = ev.gram(tt), g_re = ev.gram(re2), g_im = ev.gram(im2), g_id = ev.gram(id_n);
  auto g = [&](double s) {
    return max_abs(g_tt - s * g_re + s * s * g_id) +
           max_abs(g_tt + s * g_im + s * s * g_id);
  };
  if (p.t_grid < 3) throw Error(ErrorCode::InvalidArgument, "t grid needs at least 3 points");
  const double span = 2.0 * operator_norm(mt);
  double best_t = 0.0, best = g(0.0);
  if (span > 0.0) {
    const double step = 2.0 * span / (p.t_grid - 1);
    for (int k = 0; k < p.t_grid; ++k) {
      const double s = -span + step * k;
      const double v = g(s);
      if (v < best) {
        best = v;
        best_t = s;
      }
    }
    const double s = golden_section_max([&](double x) { return -g(x); }, best_t - step, best_t + step,
                                        1e-10);
    const double v = g(s);
    if (v < best) {
      best = v;
      best_t = s;
    }
  }
  b.report().t_used = best_t;
  const double ber_t = ev.ber(mt);
  const double lhs = ev.norm_ber(tt);
  const double last32 = 0.5 * ber_t * ber_t + 0.5 * best;
  b.detail("inf_t", best);
  b.detail("ber_T", ber_t);
  b.detail("last32_rhs", last32);
  if (comparison) {
    b.finish(lhs, last32, Direction::LessEqual);
  } else {
    const double s1 = std::sin(theta) + 1.0;
    b.finish(lhs, 0.25 * s1 * s1 * ber_t * ber_t + 0.5 * best, Direction::LessEqual);
  }
  return b.report();
}

InequalityReport verify_iixx(const Operands& ops, const VerifyParams& p) {
  Builder b(TheoremId::PROP_IIXX, p);
  const OperatorModel& t = operand(ops, "T", TheoremId::PROP_IIXX);
  if (p.n < 1) throw Error(ErrorCode::InvalidArgument, "power n must be >= 1");
  const bool toeplitz = std::holds_alternative<model::ToeplitzHarmonic>(t.node());
  b.hypothesis("T is a harmonic-symbol Toeplitz operator on a weighted Bergman space", toeplitz,
               t.describe());
  if (!toeplitz) {
    b.finish(0.0, 0.0, Direction::LessEqual);
    return b.report();
  }
  Evaluator ev(t.space(), p);
  const double ber_t = berezin_number(t, p.grid, p.refine_iters).value;
  const double lhs = ev.ber(power(t, p.n));
  b.detail("ber_T", ber_t);
  b.detail("sup_norm_symbol", std::get<model::ToeplitzHarmonic>(t.node()).symbol.sup_norm());
  b.finish(lhs, std::pow(ber_t, p.n), Direction::LessEqual);
  return b.report();
}

InequalityReport verify_lemma_aa(const Operands& ops, const VerifyParams& p) {
  Builder b(TheoremId::LEMMA_AA, p);
  const OperatorModel& t = operand(ops, "T", TheoremId::LEMMA_AA);
  Evaluator ev(t.space(), p);
  const ComplexMatrix mt = ev.mat(t);
  const double theta = resolve_theta(b, p, b.sector("T", ev.range(mt), p.theta));
  require_nonzero_theta(b, theta);
  power_class(b, ev, "T", t, theta, p);
  const auto parts = cartesian_parts(mt);
  const double br = ev.ber(parts.re), bi = ev.ber(parts.im), bt = ev.ber(mt);
  const double c2 = csc(theta) * csc(theta);
  const double sum = ev.norm_ber(compose(adjoint(t), t) + compose(t, adjoint(t)));
  b.finish(bt * bt, 0.25 * c2 * sum + 0.5 * c2 * (bi * bi - br * br), Direction::GreaterEqual);
  return b.report();
}

InequalityReport verify_pf1(const Operands& ops, const VerifyParams& p) {
  Builder b(TheoremId::PROP_PF1, p);
  const OperatorModel& t = operand(ops, "T", TheoremId::PROP_PF1);
  if (p.n < 1) throw Error(ErrorCode::InvalidArgument, "power n must be >= 1");
  Evaluator ev(t.space(), p);
  const ComplexMatrix mt = ev.mat(t);
  const double theta = resolve_theta(b, p, b.sector("T", ev.range(mt), p.theta));
  power_class(b, ev, "T", t, theta, p, std::max(4, p.n));
  const double s2 = std::sin(theta) * std::sin(theta);
  const double bt = ev.ber(mt);
  b.finish(ev.ber(power(t, p.n)), std::pow(1.0 + s2, p.n - 1) * std::pow(bt, p.n),
           Direction::LessEqual);
  return b.report();
}

// ------------------------------------------------------------- two operators

InequalityReport verify_kali0(TheoremId id, const Operands& ops, const VerifyParams& p) {
  Builder b(id, p);
  OperatorModel s = operand(ops, "S", id);
  OperatorModel t = id == TheoremId::THM_KALI0        ? operand(ops, "T", id)
                    : id == TheoremId::COR_KALI0_SQUARE ? adjoint(s)
                                                        : OperatorModel::identity(s.space());
  if (id == TheoremId::THM_KALI0) common_space(ops, id);
  Evaluator ev(s.space(), p);
  const ComplexMatrix c = ev.mat(compose(adjoint(t), s));  // T*S
  const double theta = resolve_theta(b, p, b.sector("T*S", ev.range(c), p.theta));
  require_nonzero_theta(b, theta);
  const ComplexMatrix a = ev.mat(compose(adjoint(s), s));
  const ComplexMatrix bb = ev.mat(compose(adjoint(t), t));
  const ComplexMatrix cross = Complex(0.0, 1.0) * (c.adjoint() - c);
  const double k = csc(theta);
  // Gram tables make each alpha evaluation a cheap combination
  const ComplexMatrix ga = ev.gram(a), gb = ev.gram(bb), gc = ev.gram(cross);
  auto betas = [&](double al) {
    const ComplexMatrix mid = ga + al * al * gb;
    const double n_mid = max_abs(mid);
    const double n_plus = max_abs(mid + al * gc);
    const double n_minus = max_abs(mid - al * gc);
    return std::pair{k / (2 * al) * (n_plus - n_mid), k / (2 * al) * (n_mid - n_minus)};
  };
  auto bound = [&](double al) {
    const auto [b1, b2] = betas(al);
    return std::max(b1, b2);
  };
  double alpha;
  if (p.alpha) {
    if (!(*p.alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
    alpha = *p.alpha;
  } else {
    int best_k = -8;
    double best = bound(std::ldexp(1.0, -8));
    for (int e = -7; e <= 8; ++e) {
      const double v = bound(std::ldexp(1.0, e));
      if (v > best) {
        best = v;
        best_k = e;
      }
    }
    const double lo = std::max(-8.0, best_k - 1.0), hi = std::min(8.0, best_k + 1.0);
    const double e = golden_section_max([&](double x) { return bound(std::exp2(x)); }, lo, hi, 1e-7);
    alpha = bound(std::exp2(e)) > best ? std::exp2(e) : std::ldexp(1.0, best_k);
  }
  b.report().alpha_used = alpha;
  const auto [b1, b2] = betas(alpha);
  b.detail("beta1", b1);
  b.detail("beta2", b2);
  b.detail("kali0_alpha1", bound(1.0));
  const double n_sit = ev.norm_ber(ComplexMatrix(ev.mat(s) + Complex(0.0, 1.0) * ev.mat(t)));
  b.detail("kali1_bound", 0.5 * (n_sit * n_sit - ev.norm_ber(ComplexMatrix(a + bb))));
  b.finish(ev.ber(c), std::max(b1, b2), Direction::GreaterEqual);
  return b.report();
}

InequalityReport verify_lower_comparison(TheoremId id, const Operands& ops, const VerifyParams& p) {
  Builder b(id, p);
  const OperatorModel& s = operand(ops, "S", id);
  const OperatorModel& t = operand(ops, "T", id);
  common_space(ops, id);
  Evaluator ev(s.space(), p);
  const ComplexMatrix ms = ev.mat(s), mt = ev.mat(t);
  const ComplexMatrix a = ev.mat(compose(adjoint(s), s));
  const ComplexMatrix bb = ev.mat(compose(adjoint(t), t));
  const double rhs = ev.ber(compose(adjoint(t), s));
  double lhs = 0.0;
  switch (id) {
    case TheoremId::CMP_KALI1: {
      const double n = ev.norm_ber(ComplexMatrix(ms + Complex(0.0, 1.0) * mt));
      lhs = 0.5 * (n * n - ev.norm_ber(ComplexMatrix(a + bb)));
      break;
    }
    case TheoremId::CMP_SAD1: {
      const double r = operator_norm(ComplexMatrix(ms - Complex(0.0, 1.0) * mt));
      b.detail("r", r);
      lhs = 0.5 * ev.ber(ComplexMatrix(a + bb)) - 0.5 * r * r;
      break;
    }
    default: {  // CMP_PPSSKK
      const double n = ev.norm_ber(ComplexMatrix(ms + Complex(0.0, 1.0) * mt));
      const double ns = ev.norm_ber(ms), nt = ev.norm_ber(mt);
      lhs = n * n - (ns * ns + nt * nt + std::sqrt(ev.ber(a)) * std::sqrt(ev.ber(bb)));
      break;
    }
  }
  b.report().theta_used = 0.0;
  b.finish(lhs, rhs, Direction::LessEqual);
  return b.report();
}

InequalityReport verify_sad4(TheoremId id, const Operands& ops, const VerifyParams& p) {
  Builder b(id, p);
  OperatorModel t = operand(ops, "T", id);
  OperatorModel s = id == TheoremId::COR_SAD4_SQUARE ? adjoint(t) : operand(ops, "S", id);
  if (id != TheoremId::COR_SAD4_SQUARE) common_space(ops, id);
  Evaluator ev(t.space(), p);
  double inv = 0.0;
  if (id == TheoremId::COR_SAD4_SQUARE)
    invertible(b, "T", ev.mat(t), inv);
  else
    invertible(b, "S", ev.mat(s), inv);
  const ComplexMatrix st = ev.mat(compose(adjoint(s), t));
  double theta = 0.0;
  if (id != TheoremId::CMP_SAD5) theta = resolve_theta(b, p, b.sector("S*T", ev.range(st), p.theta));
  const OperatorModel diff = t - Complex(0.0, 1.0) * s;
  const double n_diff = ev.norm_ber(compose(adjoint(diff), diff));
  const double ber_st = ev.ber(st);
  const double lhs = std::sqrt(std::max(0.0, ev.norm_ber(compose(adjoint(t), t))));
  const double sad5 = inv * (ber_st + 0.5 * n_diff);
  b.detail("sad5_rhs", sad5);
  b.detail("ber_S*T", ber_st);
  if (id == TheoremId::CMP_SAD5)
    b.finish(lhs, sad5, Direction::LessEqual);
  else
    b.finish(lhs, inv * (std::sin(theta) * ber_st + 0.5 * n_diff), Direction::LessEqual);
  return b.report();
}

double abba_bound(const Evaluator& ev, const OperatorModel& s, const ComplexMatrix& g, double theta,
                  bool norm_parts) {
  const ComplexMatrix ms = ev.mat(s);
  const auto parts = cartesian_parts(ms);
  const double bs = ev.ber(ms);
  const double bi = norm_parts ? ev.norm_ber(parts.im) : ev.ber(parts.im);
  const double br = norm_parts ? ev.norm_ber(parts.re) : ev.ber(parts.re);
  const double c2 = csc(theta) * csc(theta);
  const double inner = bs * bs - 0.5 * c2 * (bi * bi - br * br);
  return 2.0 * std::sin(theta) * std::sqrt(std::max(0.0, ev.norm_ber(g))) *
         std::sqrt(std::max(0.0, inner));
}

double anticommutator_ber(Builder& b, const Evaluator& ev, const OperatorModel& left,
                          const OperatorModel& right) {
  const ComplexMatrix l = ev.mat(left), r = ev.mat(right);
  const double plus = ev.ber(ComplexMatrix(l + r)), minus = ev.ber(ComplexMatrix(l - r));
  b.detail("ber_plus", plus);
  b.detail("ber_minus", minus);
  return std::max(plus, minus);
}

InequalityReport verify_axb(TheoremId id, const Operands& ops, const VerifyParams& p) {
  Builder b(id, p);
  const OperatorModel& s = operand(ops, "S", id);
  const OperatorModel& t = operand(ops, "T", id);
  const bool general = id == TheoremId::THM_AXB;
  const OperatorModel x = general ? operand(ops, "X", id) : OperatorModel::identity(s.space());
  const OperatorModel y = general ? operand(ops, "Y", id) : OperatorModel::identity(s.space());
  common_space(ops, id);
  Evaluator ev(s.space(), p);
  const double theta = resolve_theta(b, p, b.sector("S", ev.range(ev.mat(s)), p.theta));
  require_nonzero_theta(b, theta);
  power_class(b, ev, "S", s, theta, p);
  const OperatorModel xt = compose(x, t);
  const OperatorModel yts = compose(y, adjoint(t));
  const ComplexMatrix g = ev.mat(compose(adjoint(xt), xt) + compose(adjoint(yts), yts));
  const double lhs = anticommutator_ber(b, ev, compose(s, xt), compose(compose(t, y), s));
  b.finish(lhs, abba_bound(ev, s, g, theta, false), Direction::LessEqual);
  return b.report();
}

InequalityReport verify_blockpintu(const Operands& ops, const VerifyParams& p) {
  const TheoremId id = TheoremId::CMP_BLOCKPINTU;
  Builder b(id, p);
  const OperatorModel& s = operand(ops, "S", id);
  const OperatorModel& t = operand(ops, "T", id);
  common_space(ops, id);
  Evaluator ev(s.space(), p);
  const double lhs = anticommutator_ber(b, ev, compose(s, t), compose(t, s));
  const OperatorModel sum = compose(adjoint(t), t) + compose(adjoint(s), s) + compose(t, adjoint(t)) +
                            compose(s, adjoint(s));
  b.report().theta_used = 0.0;
  b.finish(lhs, 0.5 * ev.norm_ber(sum), Direction::LessEqual);
  return b.report();
}

InequalityReport verify_abba_min(const Operands& ops, const VerifyParams& p) {
  const TheoremId id = TheoremId::COR_ABBA_MIN;
  Builder b(id, p);
  const OperatorModel& s = operand(ops, "S", id);
  const OperatorModel& t = operand(ops, "T", id);
  common_space(ops, id);
  Evaluator ev(s.space(), p);
  const auto is = b.sector("S", ev.range(ev.mat(s)), p.theta);
  const auto it = b.sector("T", ev.range(ev.mat(t)), p.theta);
  std::optional<double> sampled;
  if (is && it) sampled = std::max(*is, *it);
  const double theta = resolve_theta(b, p, sampled);
  require_nonzero_theta(b, theta);
  power_class(b, ev, "S", s, theta, p);
  power_class(b, ev, "T", t, theta, p);
  const ComplexMatrix gt = ev.mat(compose(adjoint(t), t) + compose(t, adjoint(t)));
  const ComplexMatrix gs = ev.mat(compose(adjoint(s), s) + compose(s, adjoint(s)));
  const double b1 = abba_bound(ev, s, gt, theta, true);
  const double b2 = abba_bound(ev, t, gs, theta, true);
  b.detail("beta1", b1);
  b.detail("beta2", b2);
  const double lhs = anticommutator_ber(b, ev, compose(s, t), compose(t, s));
  b.finish(lhs, std::min(b1, b2), Direction::LessEqual);
  return b.report();
}

InequalityReport verify_commuting(const Operands& ops, const VerifyParams& p) {
  const TheoremId id = TheoremId::THM_COMMUTING;
  Builder b(id, p);
  std::vector<std::pair<std::string, std::string>> names;
  if (ops.count("S") && ops.count("T")) names.emplace_back("S", "T");
  for (int j = 1; ops.count("S" + std::to_string(j)); ++j) {
    if (!ops.count("T" + std::to_string(j)))
      throw Error(ErrorCode::SignatureMismatch, "operand S" + std::to_string(j) + " has no partner T" +
                                                    std::to_string(j));
    names.emplace_back("S" + std::to_string(j), "T" + std::to_string(j));
  }
  if (names.empty()) throw Error(ErrorCode::SignatureMismatch, "THM_COMMUTING needs S1, T1, ...");
  const KernelSpace& space = common_space(ops, id);
  Evaluator ev(space, p);
  double widest = 0.0;
  bool all_sectorial = true;
  for (const auto& [sn, tn] : names) {
    for (const auto& name : {sn, tn}) {
      const auto idx = b.sector(name, ev.range(ev.mat(ops.at(name))), p.theta);
      if (idx)
        widest = std::max(widest, *idx);
      else
        all_sectorial = false;
    }
  }
  const double theta =
      resolve_theta(b, p, all_sectorial ? std::optional<double>(widest) : std::nullopt);
  double sum_s = 0.0, sum_t = 0.0;
  ComplexMatrix total = ComplexMatrix::Zero(ev.truncation(), ev.truncation());
  for (const auto& [sn, tn] : names) {
    const OperatorModel& s = ops.at(sn);
    const OperatorModel& t = ops.at(tn);
    power_class(b, ev, sn, s, theta, p);
    power_class(b, ev, tn, t, theta, p);
    const ComplexMatrix st = ev.mat(compose(s, t));
    const double comm = max_abs(ComplexMatrix(st - ev.mat(compose(t, s))));
    b.hypothesis(sn + " " + tn + " commute", comm <= kCommuteTol, "||[S,T]||_max = " + fmt(comm));
    total += st;
    const double bs = ev.ber(s), bt = ev.ber(t);
    sum_s += bs * bs;
    sum_t += bt * bt;
  }
  const double s2 = std::sin(theta) * std::sin(theta);
  const double lhs = ev.ber(total);
  b.finish(lhs * lhs, (1.0 + s2) * (1.0 + s2) * sum_s * sum_t, Direction::LessEqual);
  return b.report();
}

}  // namespace

// ------------------------------------------------------------------- public

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& e : registry()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string theorem_name(TheoremId id) { return entry(id).name; }

TheoremId parse_theorem(const std::string& name) {
  const std::string key = upper(name);
  for (const auto& e : registry())
    if (key == e.name) return e.id;
  throw Error(ErrorCode::InvalidArgument, "unknown theorem '" + name + "'");
}

std::vector<std::string> theorem_signature(TheoremId id) { return entry(id).signature; }

std::optional<double> InequalityReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details)
    if (k == key) return v;
  return std::nullopt;
}

InequalityReport verify(TheoremId id, const Operands& operands, const VerifyParams& params) {
  switch (id) {
    case TheoremId::LEMMA_MAIN: return verify_lemma_main(operands, params);
    case TheoremId::THM_FIRST: return verify_first(operands, params, false);
    case TheoremId::COR_COW: return verify_first(operands, params, true);
    case TheoremId::THM_KALI0:
    case TheoremId::COR_KALI0_SQUARE:
    case TheoremId::COR_KALI0_IDENT: return verify_kali0(id, operands, params);
    case TheoremId::CMP_KALI1:
    case TheoremId::CMP_SAD1:
    case TheoremId::CMP_PPSSKK: return verify_lower_comparison(id, operands, params);
    case TheoremId::THM_SAD4:
    case TheoremId::CMP_SAD5:
    case TheoremId::COR_SAD4_SQUARE: return verify_sad4(id, operands, params);
    case TheoremId::LEMMA_LAST30:
      throw Error(ErrorCode::SignatureMismatch, "LEMMA_LAST30 takes vectors; use the vector lemma check");
    case TheoremId::THM_LAST31: return verify_last31(operands, params, false);
    case TheoremId::CMP_LAST32: return verify_last31(operands, params, true);
    case TheoremId::PROP_IIXX: return verify_iixx(operands, params);
    case TheoremId::LEMMA_AA: return verify_lemma_aa(operands, params);
    case TheoremId::THM_AXB:
    case TheoremId::COR_ABBA: return verify_axb(id, operands, params);
    case TheoremId::CMP_BLOCKPINTU: return verify_blockpintu(operands, params);
    case TheoremId::COR_ABBA_MIN: return verify_abba_min(operands, params);
    case TheoremId::THM_COMMUTING: return verify_commuting(operands, params);
    case TheoremId::PROP_PF1: return verify_pf1(operands, params);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown theorem id");
}

InequalityReport verify_vector_lemma(const ComplexVector& x, const ComplexVector& y, double t) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "x and y differ in length");
  if (x.size() < 1) throw Error(ErrorCode::LengthMismatch, "vectors must be nonempty");
  VerifyParams params;
  params.slack = 1e-12;
  Builder b(TheoremId::LEMMA_LAST30, params);
  const Complex xy = y.dot(x);  // <x, y>
  const double ny2 = y.squaredNorm();
  const double lhs = x.squaredNorm() * ny2;
  const double s = xy.imag() + xy.real();
  const double rhs = 0.25 * s * s + 0.5 * ny2 *
                                        ((x - t * y).squaredNorm() +
                                         (x - Complex(0.0, t) * y).squaredNorm());
  b.report().t_used = t;
  b.finish(lhs, rhs, Direction::LessEqual);
  return b.report();
}

}  // namespace berezin

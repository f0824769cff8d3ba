#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "berezin/inequalities.hpp"
#include "berezin/parallel.hpp"

namespace berezin {

namespace {

constexpr double kPi = std::numbers::pi;

class Sampler {
 public:
  Sampler(std::uint64_t seed, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    rng_.seed(seq);
  }

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  Complex gaussian() {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng_);
    return {re, n(rng_)};
  }

  ComplexMatrix gaussian_matrix(int d) {
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = gaussian() / std::sqrt(2.0 * d);
    return m;
  }

  ComplexVector gaussian_vector(int d) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v[i] = gaussian();
    return v;
  }

  ComplexMatrix unitary(int d) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(d));
    return qr.householderQ();
  }

  /// d points of the sector |arg z| <= theta with moduli in [0.1, 3].
  std::vector<Complex> sector_points(int d, double theta) {
    std::vector<Complex> z(d);
    for (auto& v : z) v = std::polar(uniform(0.1, 3.0), uniform(-theta, theta));
    return z;
  }

 private:
  std::mt19937_64 rng_;
};

ComplexMatrix diagonal(const std::vector<Complex>& z) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(z.size()), static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) m(i, i) = z[i];
  return m;
}

HarmonicSymbol random_symbol(Sampler& s, bool analytic_only) {
  const int degree = s.integer(1, 3);
  std::vector<Complex> a(degree + 1, Complex(0.0, 0.0)), b(degree + 1, Complex(0.0, 0.0));
  for (int k = 0; k <= degree; ++k) a[k] = s.gaussian();
  if (!analytic_only)
    for (int k = 1; k <= degree; ++k) b[k] = s.gaussian();
  HarmonicSymbol phi{Polynomial(a), Polynomial(b)};
  const double scale = s.uniform(0.2, 0.9) / phi.sup_norm();
  for (auto& c : a) c *= scale;
  for (auto& c : b) c *= scale;
  return HarmonicSymbol{Polynomial(a), Polynomial(b)};
}

HarmonicSymbol lifted(HarmonicSymbol phi, double m) {
  auto a = phi.analytic.coefficients();
  a[0] += m;
  return HarmonicSymbol{Polynomial(a), phi.coanalytic};
}

HarmonicSymbol rotated(HarmonicSymbol phi, Complex c) {
  auto a = phi.analytic.coefficients();
  auto b = phi.coanalytic.coefficients();
  for (auto& v : a) v *= c;
  for (auto& v : b) v *= c;
  return HarmonicSymbol{Polynomial(a), Polynomial(b)};
}

struct TrialInput {
  Operands operands;
  ComplexVector x, y;
  double t = 0.0;
};

/**
 * Operands for one trial. Every family is built to land in the hypothesis
 * class where that is possible by construction: diagonal and normal draws sit
 * in a random sector, shifted draws are pushed into the right half plane, and
 * Toeplitz draws use phi + M with ||phi|| < 1 <= M.
 */
TrialInput draw(TheoremId id, Family family, int dim, Sampler& s) {
  TrialInput in;
  if (id == TheoremId::LEMMA_LAST30) {
    const int d = s.integer(1, std::max(1, dim));
    in.x = s.gaussian_vector(d) * s.uniform(0.1, 3.0);
    in.y = s.gaussian_vector(d) * s.uniform(0.1, 3.0);
    in.t = s.uniform(-3.0, 3.0);
    return in;
  }
  const bool commuting = id == TheoremId::THM_COMMUTING;
  std::vector<std::string> names = theorem_signature(id);
  if (commuting) names = {"S1", "T1", "S2", "T2"};

  // the cow corollary needs the range inside the open fourth quadrant
  const bool tilted = id == TheoremId::COR_COW;
  const double theta = tilted ? s.uniform(0.05, 0.7) : s.uniform(0.05, 1.45);
  const Complex tilt = tilted ? std::polar(1.0, -kPi / 4) : Complex(1.0, 0.0);
  const double alpha = s.uniform(-0.5, 2.0);
  ComplexMatrix shared_u;
  ComplexMatrix pair_base;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::string& name = names[k];
    const bool partner = commuting && name[0] == 'T';
    const bool free_operand = name == "X" || name == "Y";
    switch (family) {
      case Family::DiagonalSectorial: {
        in.operands.emplace(name, OperatorModel::matrix(tilt * diagonal(s.sector_points(dim, theta))));
        break;
      }
      case Family::Normal: {
        if (!partner) shared_u = s.unitary(dim);
        const ComplexMatrix d = diagonal(s.sector_points(dim, theta));
        in.operands.emplace(name, OperatorModel::matrix(tilt * shared_u * d * shared_u.adjoint()));
        break;
      }
      case Family::ShiftedRandom: {
        if (partner) {
          // a polynomial in the partner commutes with it
          const double c1 = s.uniform(0.1, 1.0), c2 = s.uniform(0.0, 0.3);
          const ComplexMatrix m =
              c1 * pair_base + c2 * pair_base * pair_base +
              s.uniform(0.0, 1.0) * ComplexMatrix::Identity(dim, dim);
          in.operands.emplace(name, OperatorModel::matrix(m));
          break;
        }
        const ComplexMatrix g = s.gaussian_matrix(dim);
        const double shift = free_operand ? 0.0 : operator_norm(g) + s.uniform(0.1, 2.0);
        pair_base = g + shift * ComplexMatrix::Identity(dim, dim);
        in.operands.emplace(name, OperatorModel::matrix(tilt * pair_base));
        break;
      }
      case Family::ToeplitzHarmonic: {
        HarmonicSymbol phi = random_symbol(s, commuting);
        if (id != TheoremId::PROP_IIXX && !free_operand) phi = lifted(phi, s.uniform(1.0, 2.0));
        if (tilted) phi = rotated(phi, tilt);
        in.operands.emplace(name, OperatorModel::toeplitz(phi, alpha));
        break;
      }
    }
  }
  return in;
}

struct TrialResult {
  bool ok = false;
  InequalityReport report;
  std::vector<ChainFailure> chain_failures;
  int chain_checks = 0;
  std::string error;
};

void check_chain(TrialResult& r, int trial, const std::string& name, double better, double weaker,
                 bool lower_bound, double slack) {
  ++r.chain_checks;
  const bool holds = lower_bound ? better >= weaker - slack : better <= weaker + slack;
  if (!holds) r.chain_failures.push_back({trial, name, better, weaker});
}

void chains(TrialResult& r, int trial) {
  const InequalityReport& rep = r.report;
  if (rep.vacuous) return;
  const double eps = rep.params.slack;
  switch (rep.theorem) {
    case TheoremId::THM_KALI0:
    case TheoremId::COR_KALI0_SQUARE:
    case TheoremId::COR_KALI0_IDENT:
      check_chain(r, trial, "kali0 at alpha=1 >= kali1", *rep.detail("kali0_alpha1"),
                  *rep.detail("kali1_bound"), true, eps);
      break;
    case TheoremId::THM_SAD4:
    case TheoremId::COR_SAD4_SQUARE:
      check_chain(r, trial, "sad4 rhs <= sad5 rhs", rep.rhs, *rep.detail("sad5_rhs"), false, eps);
      break;
    case TheoremId::THM_LAST31:
      if (rep.theta_used < std::asin(std::sqrt(2.0) - 1.0))
        check_chain(r, trial, "last31 rhs <= last32 rhs", rep.rhs, *rep.detail("last32_rhs"), false,
                    eps);
      break;
    case TheoremId::COR_COW:
      check_chain(r, trial, "cow(-) >= earlier bound(-)", *rep.detail("rhs_minus"),
                  *rep.detail("earlier_bound_minus"), true, eps);
      check_chain(r, trial, "cow(+) >= earlier bound(+)", *rep.detail("rhs_plus"),
                  *rep.detail("earlier_bound_plus"), true, eps);
      break;
    default:
      break;
  }
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::DiagonalSectorial: return "diagonal-sectorial";
    case Family::ShiftedRandom: return "shifted-random";
    case Family::Normal: return "normal";
    case Family::ToeplitzHarmonic: return "toeplitz-harmonic";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::DiagonalSectorial, Family::ShiftedRandom, Family::Normal,
                   Family::ToeplitzHarmonic})
    if (family_name(f) == name) return f;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

Family default_family(TheoremId id) {
  return id == TheoremId::PROP_IIXX ? Family::ToeplitzHarmonic : Family::DiagonalSectorial;
}

FalsifyReport falsify(TheoremId id, const FalsifyOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (options.dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
  if (id == TheoremId::PROP_IIXX && options.family != Family::ToeplitzHarmonic)
    throw Error(ErrorCode::InvalidArgument, "PROP_IIXX draws from the toeplitz-harmonic family");

  std::vector<TrialInput> inputs(options.trials);
  std::vector<TrialResult> results(options.trials);
  parallel_for(static_cast<std::size_t>(options.trials), [&](std::size_t k) {
    const int trial = static_cast<int>(k);
    Sampler s(options.seed, trial);
    inputs[k] = draw(id, options.family, options.dim, s);
    TrialResult& r = results[k];
    try {
      if (id == TheoremId::LEMMA_LAST30)
        r.report = verify_vector_lemma(inputs[k].x, inputs[k].y, inputs[k].t);
      else
        r.report = verify(id, inputs[k].operands, options.params);
      r.report.seed = options.seed;
      r.ok = true;
      chains(r, trial);
    } catch (const Error& e) {
      if (!e.is_numeric()) throw;
      r.error = e.what();
    }
  });

  FalsifyReport out;
  out.theorem = id;
  out.options = options;
  out.trials = options.trials;
  bool have_min = false;
  for (int k = 0; k < options.trials; ++k) {
    const TrialResult& r = results[k];
    out.chain_checks += r.chain_checks;
    out.chain_failures.insert(out.chain_failures.end(), r.chain_failures.begin(), r.chain_failures.end());
    if (!r.ok || r.report.vacuous) {
      ++out.vacuous;
      continue;
    }
    if (!r.report.satisfied) {
      ++out.violations;
      out.violating_trials.push_back(k);
    }
    if (!have_min || r.report.margin < out.min_margin) {
      have_min = true;
      out.min_margin = r.report.margin;
      out.argmin_trial = k;
    }
  }
  if (out.argmin_trial >= 0) {
    const TrialInput& in = inputs[out.argmin_trial];
    out.argmin_operands = in.operands;
    if (id == TheoremId::LEMMA_LAST30) {
      out.argmin_vectors = {in.x, in.y};
      out.argmin_t = in.t;
    }
  }
  return out;
}

}  // namespace berezin

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "berezin/berezin.hpp"

namespace berezin {

enum class TheoremId {
  LEMMA_MAIN,
  THM_FIRST,
  COR_COW,
  THM_KALI0,
  COR_KALI0_SQUARE,
  COR_KALI0_IDENT,
  CMP_KALI1,
  CMP_SAD1,
  CMP_PPSSKK,
  THM_SAD4,
  CMP_SAD5,
  COR_SAD4_SQUARE,
  LEMMA_LAST30,
  THM_LAST31,
  CMP_LAST32,
  PROP_IIXX,
  LEMMA_AA,
  THM_AXB,
  COR_ABBA,
  CMP_BLOCKPINTU,
  COR_ABBA_MIN,
  THM_COMMUTING,
  PROP_PF1,
};

const std::vector<TheoremId>& all_theorems();
std::string theorem_name(TheoremId id);
/// Case-insensitive: "cor_abba" and "COR_ABBA" both parse.
TheoremId parse_theorem(const std::string& name);
/// Operand names the entry expects, e.g. {"S", "T"}.
std::vector<std::string> theorem_signature(TheoremId id);

enum class Direction { LessEqual, GreaterEqual };

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  std::string evidence;
};

struct VerifyParams {
  /// Hypothesis sector angle; unset means the sampled sector index of the hypothesis operator.
  std::optional<double> theta;
  /// Fixed alpha for the kali0 family; unset means the 2^k grid with golden polish.
  std::optional<double> alpha;
  int t_grid = 129;  ///< points on [-2||T||, 2||T||] before polishing
  int n = 2;
  DiskGrid grid = DiskGrid::standard();
  DiskGrid frame_grid = DiskGrid::coarse(24, 48);
  int truncation = 64;
  int refine_iters = 3;
  double slack = 1e-9;
};

struct InequalityReport {
  TheoremId theorem = TheoremId::LEMMA_MAIN;
  double lhs = 0.0;
  double rhs = 0.0;
  Direction direction = Direction::LessEqual;
  bool satisfied = false;
  double margin = 0.0;
  bool vacuous = false;
  std::vector<HypothesisCheck> hypotheses;
  VerifyParams params;
  double theta_used = 0.0;
  std::optional<double> alpha_used;
  std::optional<double> t_used;
  std::uint64_t seed = 0;
  /// Intermediate quantities (comparison bounds, per-sign values) in insertion order.
  std::vector<std::pair<std::string, double>> details;

  std::optional<double> detail(const std::string& key) const;
};

using Operands = std::map<std::string, OperatorModel>;

/**
 * Evaluates one registry entry. Hypotheses are checked first; a failed
 * hypothesis marks the report vacuous, never violated. Disk-space operands
 * are evaluated on a fixed kernel frame so every pointwise estimate is exact
 * for the sampled vectors; the Toeplitz power inequality compares frame
 * values of T^n against the grid Berezin number of T.
 */
InequalityReport verify(TheoremId id, const Operands& operands, const VerifyParams& params);

InequalityReport verify_vector_lemma(const ComplexVector& x, const ComplexVector& y, double t);

enum class Family { DiagonalSectorial, ShiftedRandom, Normal, ToeplitzHarmonic };

std::string family_name(Family f);
Family parse_family(const std::string& name);
/// Family used when none is requested.
Family default_family(TheoremId id);

struct FalsifyOptions {
  Family family = Family::DiagonalSectorial;
  int dim = 4;
  std::uint64_t seed = 42;
  int trials = 1000;
  VerifyParams params;
};

struct ChainFailure {
  int trial = 0;
  std::string chain;
  double better = 0.0;
  double weaker = 0.0;
};

struct FalsifyReport {
  TheoremId theorem = TheoremId::LEMMA_MAIN;
  FalsifyOptions options;
  int trials = 0;
  int vacuous = 0;
  int violations = 0;
  double min_margin = 0.0;
  int argmin_trial = -1;
  Operands argmin_operands;
  /// Vector lemma only: x, y and t of the argmin trial.
  std::vector<ComplexVector> argmin_vectors;
  std::optional<double> argmin_t;
  std::vector<int> violating_trials;
  int chain_checks = 0;
  std::vector<ChainFailure> chain_failures;
};

FalsifyReport falsify(TheoremId id, const FalsifyOptions& options);

}  // namespace berezin

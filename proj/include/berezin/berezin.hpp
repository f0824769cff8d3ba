#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berezin/operators.hpp"
#include "berezin/sector.hpp"

namespace berezin {

/// Largest kernel truncation the generic path will use.
inline constexpr int kMaxKernelTerms = 4096;
/// Relative kernel-norm tail targeted by the generic path.
inline constexpr double kKernelTailTarget = 1e-12;
/// Tail at which the generic path gives up.
inline constexpr double kKernelTailLimit = 1e-10;

/**
 * Polar sampling grid lambda = r e^{i zeta}: `radial` radii uniform on
 * [r_min, r_max] and `angular` angles. A full-circle grid samples
 * zeta = 2 pi j / angular; a window (after refinement) samples its angular
 * interval inclusively.
 */
struct DiskGrid {
  int radial = 200;
  int angular = 256;
  double r_min = 0.0;
  double r_max = kDiskCutoff;
  double zeta_min = 0.0;
  double zeta_span = 0.0;  ///< 0 means the full circle
  int refinement_depth = 0;

  static DiskGrid standard() { return DiskGrid{}; }
  static DiskGrid coarse(int radial, int angular, double r_max = kDiskCutoff);

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(radial) * angular; }
  /// Radial-major ordering: index = i * angular + j.
  std::vector<Complex> points() const;
  /// Window shrunk by a factor 4 in r and zeta around `center`, same point counts.
  DiskGrid refined_around(Complex center) const;
};

struct RangeSampling {
  KernelSpace space = KernelSpace::hardy();
  std::string digest;
  std::vector<Complex> lambdas;
  std::vector<Complex> values;
};

/// Closed form where the model admits one (all leaves except products and matrices).
std::optional<Complex> berezin_closed_form(const OperatorModel& op, Complex lambda);

/**
 * Berezin transform <T k_l, k_l> / ||k_l||^2. Closed form where available,
 * otherwise the truncated series with N picked from the kernel tail. For
 * StandardFinite spaces lambda is the 1-based index (real part).
 */
Complex berezin_transform(const OperatorModel& op, Complex lambda);

/// Same, forced through the truncated series (used to cross-check closed forms).
Complex berezin_transform_series(const OperatorModel& op, Complex lambda);

/// Evaluates the transform on every grid point (every index for finite spaces).
RangeSampling sample_range(const OperatorModel& op, const DiskGrid& grid);

struct BerezinMax {
  double value = 0.0;
  Complex argmax{0.0, 0.0};
};

/**
 * Grid maximum of |T~| followed by `refine_iters` local refinements. The
 * returned value never decreases under refinement and is a lower bound on the
 * supremum.
 */
BerezinMax berezin_number(const OperatorModel& op, const DiskGrid& grid, int refine_iters = 3);

/// sup |<T k^_l, k^_m>| over pairs of grid points (exact max |entry| on finite spaces).
double berezin_norm(const OperatorModel& op, const DiskGrid& grid);

/// Truncation N needed to evaluate kernels up to modulus r (throws SeriesNotConverged).
int truncation_for_radius(const KernelSpace& space, double r);

/// Largest radius whose kernel keeps a relative tail below 1e-12 with n terms.
double accurate_radius(const KernelSpace& space, int n);

/**
 * A fixed family of unit vectors standing in for the normalized kernels: the
 * standard basis on StandardFinite spaces, or normalized truncated kernels
 * at grid points on disk spaces. Operators enter as compressions to the
 * first N basis vectors.
 */
class KernelFrame {
 public:
  static KernelFrame finite(int n);
  static KernelFrame disk(const KernelSpace& space, const DiskGrid& grid, int truncation);

  bool is_finite() const { return finite_; }
  int truncation() const { return truncation_; }
  const std::vector<Complex>& points() const { return points_; }

  /// <M v_p, v_p> for every frame vector.
  std::vector<Complex> transform(const ComplexMatrix& m) const;
  double number(const ComplexMatrix& m) const;
  /// max_{p,q} |<M v_p, v_q>|
  double norm(const ComplexMatrix& m) const;
  /// Full table G(q, p) = <M v_p, v_q>; norm(m) is max |G|.
  ComplexMatrix gram(const ComplexMatrix& m) const;

 private:
  bool finite_ = true;
  int truncation_ = 0;
  std::vector<Complex> points_;
  ComplexMatrix vectors_;  // N x P, unit columns
};

enum class Semantics {
  Best,   ///< closed forms on the grid where possible, frame compressions otherwise
  Frame,  ///< everything through one KernelFrame
};

struct PowerClassOptions {
  double theta = 0.0;
  int n_max = 4;
  DiskGrid grid = DiskGrid::standard();
  DiskGrid frame_grid = DiskGrid::coarse(24, 48);
  int truncation = 64;
  int refine_iters = 3;
  double slack = 1e-8;
  Semantics semantics = Semantics::Best;
};

struct PowerClassReport {
  bool member = false;
  bool sectorial = false;
  SectorReport sector;
  std::vector<double> re_margins;  ///< index n - 2: ber(Re^n) margin
  std::vector<double> im_margins;
  std::string failure;
};

/// Membership in the Berezin-sectorial power class at semi-angle theta.
PowerClassReport power_class_check(const OperatorModel& op, const PowerClassOptions& options);

}  // namespace berezin

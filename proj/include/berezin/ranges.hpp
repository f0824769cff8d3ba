#pragma once

#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/sector.hpp"

namespace berezin {

/// Support-function sweep: for each of K angles the top eigenvector of Re(e^{-i phi} M) gives a boundary point.
std::vector<Complex> numerical_range_boundary(const ComplexMatrix& m, int angles = 720);

/// max over phi of the top eigenvalue of Re(e^{-i phi} M), sweep of `angles` plus golden polish.
double numerical_radius(const ComplexMatrix& m, int angles = 720);

struct DphiBounds {
  double rho = 0.0;
  double norm = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double aluthge_norm = 0.0;
  /// sup |D~| computed from the kernel reproducing property, r1 / rho
  double berezin_radius = 0.0;
  /// (norm + aluthge_norm) / 2
  double r3_aluthge = 0.0;
  /// max of f(r) = (1 - r^2) rho r / (1 - rho r^2)^2 by golden section
  double r1_numeric = 0.0;
  /// sup over n <= 10^4 of n rho^{n-1} and of sqrt(w_n w_{n+1})
  double norm_numeric = 0.0;
  double aluthge_norm_numeric = 0.0;
};

DphiBounds dphi_closed_bounds(double rho);

/// Maximizer of a unimodal f on [a, b].
template <typename F>
double golden_section_max(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
  const double g = 0.6180339887498949;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && b - a > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

struct Classification {
  SectorReport berezin_index;
  SectorReport classical_index;
  /// Same classical computation at truncation 2N (disk spaces only).
  SectorReport classical_index_2n;
  int truncation = 0;
  double radius_drift = 0.0;  ///< |w(T_2N) - w(T_N)|
  bool advisory = false;      ///< drift above 1e-6
};

Classification classify(const OperatorModel& op, const DiskGrid& grid, int truncation = 64,
                        int angles = 720);

}  // namespace berezin

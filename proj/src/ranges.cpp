#include "berezin/ranges.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "berezin/parallel.hpp"

namespace berezin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double support(const ComplexMatrix& m, double phi) {
  const Complex rot = std::polar(1.0, -phi);
  return hermitian_eigenvalues(hermitian_part(rot * m)).maxCoeff();
}

}  // namespace

SectorReport sector_index(const std::vector<Complex>& points, double tol) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "sector_index needs at least one point");
  SectorReport report;
  report.success = true;
  bool have_witness = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex z = points[i];
    if (std::abs(z) <= tol) continue;
    const double angle = std::abs(std::arg(z));
    if (z.real() <= -tol || angle >= std::numbers::pi / 2) {
      report.success = false;
      report.violations.push_back(z);
      continue;
    }
    if (!have_witness || angle > report.index) {
      have_witness = true;
      report.index = angle;
      report.witness = z;
      report.witness_index = i;
    }
  }
  if (!report.success) report.index = 0.0;
  return report;
}

std::vector<Complex> numerical_range_boundary(const ComplexMatrix& m, int angles) {
  if (angles < 8) throw Error(ErrorCode::InvalidArgument, "numerical range sweep needs K >= 8");
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
  std::vector<Complex> out(angles);
  parallel_for(static_cast<std::size_t>(angles), [&](std::size_t k) {
    const double phi = kTwoPi * static_cast<double>(k) / angles;
    const auto eig = hermitian_eigen(hermitian_part(std::polar(1.0, -phi) * m));
    const ComplexVector v = eig.eigenvectors.col(eig.eigenvalues.size() - 1);
    out[k] = v.dot(m * v);
  });
  return out;
}

double numerical_radius(const ComplexMatrix& m, int angles) {
  if (angles < 8) throw Error(ErrorCode::InvalidArgument, "numerical radius sweep needs K >= 8");
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
  std::vector<double> h(angles);
  parallel_for(static_cast<std::size_t>(angles), [&](std::size_t k) {
    h[k] = support(m, kTwoPi * static_cast<double>(k) / angles);
  });
  const auto best = std::max_element(h.begin(), h.end()) - h.begin();
  const double center = kTwoPi * static_cast<double>(best) / angles;
  const double window = kTwoPi / angles * 2.0;
  const double phi = golden_section_max([&](double p) { return support(m, p); }, center - window,
                                        center + window, 1e-10);
  return std::max({h[best], support(m, phi), 0.0});
}

DphiBounds dphi_closed_bounds(double rho) {
  if (!(rho >= 1e-6 && rho <= 1.0 - 1e-6))
    throw Error(ErrorCode::OutOfDomain, "rho must lie in [1e-6, 1 - 1e-6]");
  DphiBounds b;
  b.rho = rho;
  const double s = std::sqrt(9.0 * rho * rho - 14.0 * rho + 9.0);
  const double den = 3.0 * rho + s - 5.0;
  b.r1 = (3.0 - s - rho) * std::sqrt(6.0 * rho + 2.0 * s - 6.0) / (std::sqrt(rho) * den * den);
  const double m = std::floor(1.0 / (1.0 - rho));
  const double q = std::floor((1.0 + rho * rho) / (1.0 - rho * rho));
  b.norm = m * std::pow(rho, m - 1.0);
  b.r2 = 0.5 * b.norm;
  b.r3 = 0.5 * (b.norm + std::sqrt(q) * std::pow(rho, q - 0.5));
  b.aluthge_norm = std::sqrt(q * (q + 1.0)) * std::pow(rho, q - 0.5);
  b.berezin_radius = b.r1 / rho;
  b.r3_aluthge = 0.5 * (b.norm + b.aluthge_norm);

  auto f = [rho](double r) {
    const double d = 1.0 - rho * r * r;
    return (1.0 - r * r) * rho * r / (d * d);
  };
  b.r1_numeric = f(golden_section_max(f, 0.0, 1.0, 1e-12));
  double w_prev = 1.0;  // w_1
  b.norm_numeric = 1.0;
  for (int n = 2; n <= 10000; ++n) {
    const double w = n * std::pow(rho, n - 1);
    b.norm_numeric = std::max(b.norm_numeric, w);
    b.aluthge_norm_numeric = std::max(b.aluthge_norm_numeric, std::sqrt(w_prev * w));
    w_prev = w;
  }
  return b;
}

Classification classify(const OperatorModel& op, const DiskGrid& grid, int truncation, int angles) {
  Classification c;
  c.truncation = truncation;
  c.berezin_index = sector_index(sample_range(op, grid).values);
  const ComplexMatrix m = truncate(op, truncation);
  c.classical_index = sector_index(numerical_range_boundary(m, angles));
  if (op.space().is_disk()) {
    const ComplexMatrix m2 = truncate(op, 2 * truncation);
    c.classical_index_2n = sector_index(numerical_range_boundary(m2, angles));
    c.radius_drift = std::abs(numerical_radius(m2, angles) - numerical_radius(m, angles));
    c.advisory = c.radius_drift > 1e-6;
  } else {
    c.classical_index_2n = c.classical_index;
  }
  return c;
}

}  // namespace berezin

#include "posh/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "posh/errors.hpp"

namespace posh {

namespace {

using Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void check_config(std::size_t n, const PointConfig& cfg) {
  if (cfg.size() == 0) throw Error("point configuration is empty");
  if (cfg.dim() != n) {
    throw DimensionMismatch("configuration lives in C^" + std::to_string(cfg.dim()) +
                            ", expected C^" + std::to_string(n));
  }
}

// Row i holds the values of every component at z_i: f columns, then g columns.
Eigen::MatrixXcd component_values(const HolomorphicRep& rep, const PointConfig& cfg) {
  check_config(rep.dim(), cfg);
  const auto p = idx(rep.p());
  const auto q = idx(rep.q());
  Eigen::MatrixXcd out(idx(cfg.size()), p + q);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (p) out.row(idx(i)).head(p) = rep.f_values(cfg[i]).transpose();
    if (q) out.row(idx(i)).tail(q) = rep.g_values(cfg[i]).transpose();
  }
  return out;
}

}  // namespace

PointConfig::PointConfig(std::vector<Point> points, std::optional<std::vector<Complex>> coeffs)
    : points_(std::move(points)), coeffs_(std::move(coeffs)) {
  if (points_.empty()) throw Error("a point configuration needs k >= 1 points");
  for (const auto& z : points_) {
    if (z.size() != points_[0].size()) throw DimensionMismatch("points of differing dimension");
  }
  if (coeffs_ && coeffs_->size() != points_.size()) {
    throw DimensionMismatch("coefficient vector length differs from the number of points");
  }
}

PointConfig PointConfig::with_coeffs(std::vector<Complex> a) const {
  return PointConfig(points_, std::move(a));
}

PointConfig PointConfig::padded_to(std::size_t k) const {
  auto pts = points_;
  while (pts.size() < k) pts.push_back(pts.back());
  return PointConfig(std::move(pts));
}

double matrix_scale(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
}

GramReport gram_matrix(const HermitianPoly& r, const PointConfig& cfg, double tol) {
  check_config(r.dim(), cfg);
  GramReport report;
  report.matrix = CompiledPoly(r).gram(cfg.points());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(report.matrix, Eigen::EigenvaluesOnly);
  report.eigenvalues = solver.eigenvalues();
  report.min_eigenvalue = report.eigenvalues.minCoeff();
  report.determinant = report.eigenvalues.prod();
  report.scale = matrix_scale(report.matrix);
  report.psd = report.min_eigenvalue >= -tol * report.scale;
  if (cfg.coeffs()) {
    Eigen::VectorXcd v(idx(cfg.size()));
    for (std::size_t i = 0; i < cfg.size(); ++i) v[idx(i)] = std::conj((*cfg.coeffs())[i]);
    report.quadratic_form = v.dot(report.matrix * v).real();
  }
  return report;
}

bool is_psd(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw NotHermitian("matrix is not square");
  const double scale = matrix_scale(m);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NotHermitian("matrix is not Hermitian");
  }
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol * scale;
}

DeltaDirect delta_k_direct(const HermitianPoly& r, const PointConfig& cfg) {
  check_config(r.dim(), cfg);
  const auto k = idx(cfg.size());
  Eigen::MatrixXcd g(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) g(i, j) = r.evaluate(cfg[std::size_t(i)], cfg[std::size_t(j)]);
  }
  const Complex det = g.partialPivLu().determinant();
  const double scale = std::pow(matrix_scale(g), static_cast<double>(k));
  DeltaDirect out;
  out.value = det.real();
  out.imag_residue = std::abs(det.imag());
  out.numerical_warning = out.imag_residue > 1e-9 * scale;
  return out;
}

ExpansionResult delta_k_expansion(const HolomorphicRep& rep, const PointConfig& cfg,
                                  double max_subsets) {
  const Eigen::MatrixXcd values = component_values(rep, cfg);
  const std::size_t k = cfg.size();
  const std::size_t cols = rep.p() + rep.q();
  ExpansionResult out;
  for (std::size_t m = 0; m <= k; ++m) out.parts.push_back({static_cast<int>(m), 0.0});
  if (cols < k) return out;

  double count = 1.0;
  for (std::size_t i = 0; i < k; ++i) count = count * double(cols - i) / double(i + 1);
  if (std::round(count) > max_subsets) {
    throw CombinatorialBudgetExceeded("C(" + std::to_string(cols) + ", " + std::to_string(k) +
                                      ") column subsets exceed the cap");
  }

  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  Eigen::MatrixXcd block(idx(k), idx(k));
  while (true) {
    std::size_t from_g = 0;
    for (std::size_t c = 0; c < k; ++c) {
      block.col(idx(c)) = values.col(idx(subset[c]));
      if (subset[c] >= rep.p()) ++from_g;
    }
    out.parts[from_g].norm_sq += std::norm(block.partialPivLu().determinant());

    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == cols - k + (i - 1)) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  for (const auto& part : out.parts) {
    out.value += (part.g_columns % 2 == 0 ? 1.0 : -1.0) * part.norm_sq;
  }
  return out;
}

ScalarGDelta delta_k_scalar_g(const HolomorphicRep& rep, const PointConfig& cfg) {
  if (rep.q() != 1 || rep.p() != cfg.size()) {
    throw ShapeMismatch("scalar-g determinant needs q = 1 and p = k (got p = " +
                        std::to_string(rep.p()) + ", q = " + std::to_string(rep.q()) +
                        ", k = " + std::to_string(cfg.size()) + ")");
  }
  const Eigen::MatrixXcd values = component_values(rep, cfg);
  const auto k = idx(cfg.size());
  const Eigen::MatrixXcd a = values.leftCols(k);
  const Eigen::VectorXcd g = values.col(k);
  ScalarGDelta out;
  out.det_a = a.partialPivLu().determinant();
  out.value = std::norm(out.det_a);
  for (Index j = 0; j < k; ++j) {
    Eigen::MatrixXcd b = a;
    b.col(j) = g;
    const Complex det_b = b.partialPivLu().determinant();
    out.det_b.push_back(det_b);
    out.value -= std::norm(det_b);
  }
  return out;
}

std::optional<std::vector<Complex>> cramer_coefficients(const HolomorphicRep& rep,
                                                        const PointConfig& cfg, double tol) {
  const ScalarGDelta d = delta_k_scalar_g(rep, cfg);
  const Eigen::MatrixXcd a = component_values(rep, cfg).leftCols(idx(cfg.size()));
  double hadamard = 1.0;
  for (Index j = 0; j < a.cols(); ++j) hadamard *= a.col(j).norm();
  if (!(std::abs(d.det_a) > tol * hadamard) || hadamard == 0.0) return std::nullopt;
  std::vector<Complex> c;
  c.reserve(d.det_b.size());
  for (const Complex& b : d.det_b) c.push_back(b / d.det_a);
  return c;
}

WedgeCheck p2_wedge_check(const HolomorphicRep& rep, const Point& z, const Point& w, double tol) {
  const Eigen::VectorXcd fz = rep.f_values(z), fw = rep.f_values(w);
  const Eigen::VectorXcd gz = rep.g_values(z), gw = rep.g_values(w);
  WedgeCheck out;
  if (rep.p() && rep.q()) {
    const Eigen::MatrixXcd wedge = fz * gw.transpose() - fw * gz.transpose();
    out.wedge_norm_sq = wedge.squaredNorm();
  }
  const double ff = rep.p() ? std::norm(fw.dot(fz)) : 0.0;
  const double gg = rep.q() ? std::norm(gw.dot(gz)) : 0.0;
  out.lhs = out.wedge_norm_sq + ff + gg;
  out.rhs = fz.squaredNorm() * fw.squaredNorm() + gz.squaredNorm() * gw.squaredNorm();
  out.holds = out.lhs <= out.rhs + tol * std::max(1.0, out.rhs);
  return out;
}

}  // namespace posh

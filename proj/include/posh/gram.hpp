#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "posh/hermpoly.hpp"

namespace posh {

/// Ordered tuple of k points in C^n with an optional coefficient vector a
/// for the quadratic form sum R(z_i, conj z_j) a_i conj(a_j).
class PointConfig {
 public:
  PointConfig() = default;
  explicit PointConfig(std::vector<Point> points,
                       std::optional<std::vector<Complex>> coeffs = std::nullopt);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.empty() ? 0 : static_cast<std::size_t>(points_[0].size()); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::optional<std::vector<Complex>>& coeffs() const { return coeffs_; }

  PointConfig with_coeffs(std::vector<Complex> a) const;
  /// Appends copies of the last point until the configuration has k points.
  PointConfig padded_to(std::size_t k) const;

 private:
  std::vector<Point> points_;
  std::optional<std::vector<Complex>> coeffs_;
};

inline constexpr double kPsdTol = 1e-9;

struct GramReport {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  double determinant = 0.0;
  double scale = 1.0;  // max(1, max |entry|)
  bool psd = true;
  /// sum G_ij a_i conj(a_j) when the configuration carries a coefficient vector.
  std::optional<double> quadratic_form;
};

double matrix_scale(const Eigen::MatrixXcd& m);

GramReport gram_matrix(const HermitianPoly& r, const PointConfig& cfg, double tol = kPsdTol);

/// Eigenvalue test: min eigenvalue >= -tol * max(1, max |entry|). Throws
/// NotHermitian when the input is not Hermitian to 1e-10 relative.
bool is_psd(const Eigen::MatrixXcd& m, double tol = kPsdTol);

struct DeltaDirect {
  double value = 0.0;
  double imag_residue = 0.0;
  bool numerical_warning = false;  // imaginary residue above 1e-9 * scale
};

/// det(R(z_i, conj z_j)) by LU on the directly evaluated Gram matrix.
DeltaDirect delta_k_direct(const HermitianPoly& r, const PointConfig& cfg);

struct ExpansionPart {
  int g_columns = 0;      // m: number of columns drawn from g
  double norm_sq = 0.0;   // sum of |det|^2 over those column subsets
};

struct ExpansionResult {
  double value = 0.0;
  std::vector<ExpansionPart> parts;  // one entry per m = 0..k
};

/// Sum over unordered k-subsets S of the p + q component functions of
/// (-1)^{|S cap g|} |det h_S(z_i)|^2. Throws CombinatorialBudgetExceeded when
/// C(p + q, k) exceeds `max_subsets`.
ExpansionResult delta_k_expansion(const HolomorphicRep& rep, const PointConfig& cfg,
                                  double max_subsets = 1e6);

struct ScalarGDelta {
  double value = 0.0;
  Complex det_a;
  std::vector<Complex> det_b;
};

/// |det A(f)|^2 - sum_j |det B_j(f, g)|^2 for q = 1 and p = k. Throws
/// ShapeMismatch otherwise.
ScalarGDelta delta_k_scalar_g(const HolomorphicRep& rep, const PointConfig& cfg);

/// Cramer's-rule solution c of A(f) c = G at the configuration; empty when
/// A(f) is numerically singular relative to its Hadamard bound.
std::optional<std::vector<Complex>> cramer_coefficients(const HolomorphicRep& rep,
                                                        const PointConfig& cfg,
                                                        double tol = 1e-10);

struct WedgeCheck {
  double wedge_norm_sq = 0.0;  // ||f(z) (x) g(w) - f(w) (x) g(z)||^2
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// Two-point Cauchy-Schwarz comparison written through the wedge of f and g.
/// rhs - lhs equals R(z,z) R(w,w) - |R(z,w)|^2.
WedgeCheck p2_wedge_check(const HolomorphicRep& rep, const Point& z, const Point& w,
                          double tol = kPsdTol);

}  // namespace posh

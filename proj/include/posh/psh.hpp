#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "posh/families.hpp"
#include "posh/hermpoly.hpp"
#include "posh/witness.hpp"

namespace posh {

/// Matrix of d^2/dz_i dconj(z_j) applied to z -> R(z, conj z).
struct ComplexHessian {
  Eigen::MatrixXcd matrix;
};

/// Exact term-by-term differentiation of the monomial representation.
ComplexHessian complex_hessian(const HermitianPoly& r, const Point& z);

/// (dR/dz_i)(z, conj z).
Eigen::VectorXcd holomorphic_gradient(const HermitianPoly& r, const Point& z);

/// (R H - dR (dR)^*) / R^2, the complex Hessian of log R. Throws
/// NonPositiveValue when R(z, conj z) <= 0.
Eigen::MatrixXcd log_hessian(const HermitianPoly& r, const Point& z);

bool is_psh_at(const HermitianPoly& r, const Point& z, double tol = kPsdTol);
bool is_log_psh_at(const HermitianPoly& r, const Point& z, double tol = kPsdTol);

enum class PshMode { Psh, LogPsh };
std::string to_string(PshMode mode);

struct PshViolation {
  Point point;
  double min_eigenvalue = 0.0;
};

struct PshVerdict {
  PshMode mode = PshMode::Psh;
  std::variant<PshViolation, NoViolationFound> outcome;

  bool violated() const { return std::holds_alternative<PshViolation>(outcome); }
  const PshViolation& violation() const { return std::get<PshViolation>(outcome); }
};

/// Random restarts (unit sphere for bihomogeneous R, ball of budget.radius
/// otherwise) with pattern descent on the minimum eigenvalue of the chosen
/// Hessian. Points with R <= 0 are skipped in log mode.
PshVerdict psh_region_test(const HermitianPoly& r, PshMode mode, const SearchBudget& budget,
                           std::uint64_t seed, std::span<const Point> hints = {});

/// Restriction to the affine chart z_var = 1 as a polynomial in the remaining
/// n - 1 variables; all Hessian machinery applies to the result.
HermitianPoly dehomogenize(const HermitianPoly& r, std::size_t var_index);

struct PshThreshold {
  double lower = 0.0;
  double upper = 0.0;
  PshViolation violation_at_upper;
};

/// Bisection for sup{lambda : member(lambda) passes the psh test}, optionally
/// after dehomogenizing every member at `dehomogenize_var`.
PshThreshold psh_threshold(const FamilySpec& fam, PshMode mode, std::pair<double, double> bracket,
                           double tol, const SearchBudget& budget, std::uint64_t seed,
                           std::optional<std::size_t> dehomogenize_var = std::nullopt);

}  // namespace posh

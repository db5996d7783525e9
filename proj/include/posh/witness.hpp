#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "posh/gram.hpp"
#include "posh/hermpoly.hpp"

namespace posh {

struct SearchBudget {
  int restarts = 64;
  int steps = 400;      // descent sweeps per restart
  double radius = 2.0;  // sampling ball for inputs that are not bihomogeneous
  double tol = kPsdTol;
};

enum class WitnessKind { Stochastic, RootsOfUnity, OrthogonalPair, Prop5Points, UserSupplied };

std::string to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(const std::string& name);

/// A configuration whose Gram matrix has a certified negative eigenvalue.
struct Witness {
  PointConfig cfg;
  double min_eigenvalue = 0.0;
  double determinant = 0.0;
  WitnessKind kind = WitnessKind::Stochastic;
};

struct Violated {
  Witness witness;
};

/// Evidence only: no restart found a negative eigenvalue.
struct NoViolationFound {
  int restarts = 0;
  double best_min_eigenvalue = 0.0;
  std::uint64_t seed = 0;
};

struct MembershipVerdict {
  int k = 1;
  std::variant<Violated, NoViolationFound> outcome;
  SearchBudget budget;

  bool violated() const { return std::holds_alternative<Violated>(outcome); }
  const Witness& witness() const { return std::get<Violated>(outcome).witness; }
};

/// Numerical test of R in P_k: for j = 1..k, random restarts of j points
/// followed by pattern descent on the minimum Gram eigenvalue. `hints` are
/// refined before the random restarts at the level matching their size.
/// Identical arguments give identical verdicts for any thread count.
MembershipVerdict test_membership(const HermitianPoly& r, int k, const SearchBudget& budget,
                                  std::uint64_t seed, std::span<const PointConfig> hints = {});

/// Local descent from `cfg` that never returns a configuration with a larger
/// minimum Gram eigenvalue than the input.
PointConfig refine_witness(const HermitianPoly& r, int k, const PointConfig& cfg, int steps,
                           const SearchBudget& budget = {});

/// m + 1 points (w_i, 1/w_i) with w_i^2 = eta^(i-1), eta = exp(2 pi i/(m+1)).
PointConfig roots_of_unity_witness(int m);

/// ((1, 1), (1, -1)).
PointConfig orthogonal_pair_witness();

/// m points (1, eta^(k-1)) with eta = exp(2 pi i/m).
PointConfig prop5_points(int m);

struct WitnessCheck {
  double min_eigenvalue = 0.0;
  double determinant = 0.0;
  double scale = 1.0;
  bool certified = false;  // min_eigenvalue < -tol * scale
  std::optional<double> quadratic_form;
};

/// Independent recomputation from R.evaluate, not shared with the search path.
WitnessCheck verify_witness(const HermitianPoly& r, const PointConfig& cfg, double tol = kPsdTol);

}  // namespace posh

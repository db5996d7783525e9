#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "posh/hermpoly.hpp"
#include "posh/witness.hpp"

namespace posh {

/// One-parameter family member(lambda) = base - lambda * perturbation.
struct FamilySpec {
  HermitianPoly base;
  HermitianPoly perturbation;
  std::string description;
};

HermitianPoly member(const FamilySpec& fam, double lambda);

/// <z,w>^(2m) - lambda (z1 z2 conj(w1 w2))^m.
FamilySpec dangelo_spec(int m);

/// Example-1 family with lambda = 2 - c, so member(lambda) == example1_family(2 - lambda).
FamilySpec example1_spec();
inline double example1_c_from_lambda(double lambda) { return 2.0 - lambda; }

/// Split ||f||^2 - ||g||^2 with f the binomially weighted non-middle monomials
/// of degree 2m and g = (z1 z2)^m, so dangelo_family(m, lambda) equals
/// ||f||^2 - (lambda - C(2m, m)) |g|^2.
HolomorphicRep dangelo_split_rep(int m);

/// Bracket for sup{lambda : member(lambda) in P_k}. `upper` is certified by
/// `witness_at_upper`; `lower` only carries search evidence.
struct ThresholdResult {
  int k = 1;
  double lower = 0.0;
  double upper = 0.0;
  Witness witness_at_upper;
  double bisection_tol = 1e-3;
  int probes = 0;
};

/// Bisection on lambda using test_membership. Throws BadBracket unless the
/// lower end shows no violation and the upper end is violated. Each probe
/// first refines the most recent witness (initially `hints`).
ThresholdResult threshold(const FamilySpec& fam, int k, std::pair<double, double> bracket,
                          double tol, const SearchBudget& budget, std::uint64_t seed,
                          std::span<const PointConfig> hints = {});

/// Largest lambda whose coefficient matrix is positive semidefinite, by
/// eigenvalue bisection. Throws Unbounded when the perturbation's matrix is
/// negative semidefinite.
double pinf_threshold(const FamilySpec& fam, double tol = 1e-12);

struct SigmaEval {
  Eigen::VectorXcd f_sum;
  Eigen::VectorXcd g_sum;
};

/// Componentwise sums of f and g over the configuration.
SigmaEval sigma_eval(const HolomorphicRep& rep, const PointConfig& cfg);

struct RatioInfimum {
  double estimate = 0.0;
  PointConfig argmin;
};

/// Minimizes ||sum f||^2 / ||sum g||^2 over k-point configurations normalized
/// to the unit sphere of C^(nk), skipping points where the denominator is
/// below 1e-12. Throws DegenerateFamily when every sample is skipped.
RatioInfimum sigma_ratio_infimum(const HolomorphicRep& rep, int k, const SearchBudget& budget,
                                 std::uint64_t seed);

struct StabilityTable {
  int index = 0;
  double pinf = 0.0;
  std::map<int, ThresholdResult> thresholds;
};

/// Thresholds for k = 1..k_max bracketed between the P_infinity threshold and
/// an automatically found violated lambda; the index is the smallest k whose
/// certified upper end is within `match_tol` of the P_infinity threshold.
/// Throws Inconclusive when no k <= k_max matches.
StabilityTable stability_index_estimate(const FamilySpec& fam, int k_max, double tol,
                                        const SearchBudget& budget, std::uint64_t seed,
                                        double match_tol = 2e-3);

/// Smallest lambda > lo (tried as lo + span * 2^i) whose member is violated at
/// level k; throws BadBracket after `attempts` doublings.
double find_violated_lambda(const FamilySpec& fam, int k, double lo, const SearchBudget& budget,
                            std::uint64_t seed, int attempts = 40);

}  // namespace posh

#include "posh/families.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "posh/errors.hpp"
#include "posh/local_search.hpp"
#include "posh/parallel.hpp"

namespace posh {

HermitianPoly member(const FamilySpec& fam, double lambda) {
  return add(fam.base, scale(fam.perturbation, -lambda));
}

FamilySpec dangelo_spec(int m) {
  if (m < 1) throw Error("dangelo family requires m >= 1");
  const MultiIndex middle{m, m};
  const std::vector<Term> q{{middle, middle, Complex(1.0, 0.0)}};
  return {dangelo_family(m, 0.0), HermitianPoly::from_terms(2, q),
          "dangelo m=" + std::to_string(m)};
}

FamilySpec example1_spec() {
  const MultiIndex middle{1, 1};
  const std::vector<Term> q{{middle, middle, Complex(1.0, 0.0)}};
  return {example1_family(2.0), HermitianPoly::from_terms(2, q), "example1 (lambda = 2 - c)"};
}

HolomorphicRep dangelo_split_rep(int m) {
  if (m < 1) throw Error("dangelo split requires m >= 1");
  std::vector<HolomorphicPoly> f;
  for (int j = 0; j <= 2 * m; ++j) {
    if (j == m) continue;
    f.emplace_back(2, std::map<MultiIndex, Complex>{
                          {MultiIndex{2 * m - j, j}, Complex(std::sqrt(binomial(2 * m, j)), 0.0)}});
  }
  std::vector<HolomorphicPoly> g{
      HolomorphicPoly(2, std::map<MultiIndex, Complex>{{MultiIndex{m, m}, Complex(1.0, 0.0)}})};
  return HolomorphicRep(2, std::move(f), std::move(g));
}

ThresholdResult threshold(const FamilySpec& fam, int k, std::pair<double, double> bracket,
                          double tol, const SearchBudget& budget, std::uint64_t seed,
                          std::span<const PointConfig> initial_hints) {
  auto [lo, hi] = bracket;
  if (!(lo < hi) || !(tol > 0.0)) throw BadBracket("bracket must satisfy lo < hi and tol > 0");

  const MembershipVerdict at_hi = test_membership(member(fam, hi), k, budget, seed, initial_hints);
  if (!at_hi.violated()) {
    std::ostringstream os;
    os << "no violation found at the upper end lambda = " << hi << " (k = " << k << ")";
    throw BadBracket(os.str());
  }
  ThresholdResult result;
  result.k = k;
  result.bisection_tol = tol;
  result.witness_at_upper = at_hi.witness();
  result.probes = 1;

  std::vector<PointConfig> hints{result.witness_at_upper.cfg};
  const MembershipVerdict at_lo = test_membership(member(fam, lo), k, budget, seed, hints);
  ++result.probes;
  if (at_lo.violated()) {
    std::ostringstream os;
    os << "member at the lower end lambda = " << lo << " is already violated (k = " << k << ")";
    throw BadBracket(os.str());
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const MembershipVerdict v = test_membership(member(fam, mid), k, budget, seed, hints);
    ++result.probes;
    if (v.violated()) {
      hi = mid;
      result.witness_at_upper = v.witness();
      hints.assign(1, v.witness().cfg);
    } else {
      lo = mid;
    }
  }
  result.lower = lo;
  result.upper = hi;
  return result;
}

double pinf_threshold(const FamilySpec& fam, double tol) {
  if (fam.perturbation.is_zero() || signature(fam.perturbation).positive == 0) {
    throw Unbounded("perturbation is negative semidefinite; every lambda >= the feasible set stays PSD");
  }
  const HermitianPoly shape = add(fam.base, fam.perturbation);
  const auto basis = shape.support();
  const Eigen::MatrixXcd p = fam.base.coefficient_matrix(basis);
  const Eigen::MatrixXcd q = fam.perturbation.coefficient_matrix(basis);
  auto psd_at = [&](double lambda) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(p - lambda * q, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return ev[0] >= -1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  };

  double lo = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < 64 && std::isnan(lo); ++i) {
    const double step = i == 0 ? 0.0 : std::ldexp(1.0, i - 1);
    if (psd_at(-step)) lo = 0.0 - step;  // +0.0 rather than -0.0 at step 0
    else if (psd_at(step)) lo = step;
  }
  if (std::isnan(lo)) throw BadBracket("no lambda gives a positive semidefinite coefficient matrix");

  double span = 1.0;
  while (psd_at(lo + span)) {
    span *= 2.0;
    if (span > 1e18) throw Unbounded("coefficient matrix stays PSD for arbitrarily large lambda");
  }
  double hi = lo + span;
  while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    (psd_at(mid) ? lo : hi) = mid;
  }
  return lo;
}

SigmaEval sigma_eval(const HolomorphicRep& rep, const PointConfig& cfg) {
  if (cfg.dim() != rep.dim()) throw DimensionMismatch("configuration and representation dimensions differ");
  SigmaEval out{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rep.p())),
                Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rep.q()))};
  for (const auto& z : cfg.points()) {
    if (rep.p()) out.f_sum += rep.f_values(z);
    if (rep.q()) out.g_sum += rep.g_values(z);
  }
  return out;
}

RatioInfimum sigma_ratio_infimum(const HolomorphicRep& rep, int k, const SearchBudget& budget,
                                 std::uint64_t seed) {
  if (rep.q() == 0) throw DegenerateFamily("representation has no g components");
  if (k < 1) throw Error("k must be at least 1");

  auto normalized = [](std::vector<Point> pts) {
    double total = 0.0;
    for (const auto& z : pts) total += z.squaredNorm();
    const double s = std::sqrt(total);
    if (s > 0.0) for (auto& z : pts) z /= s;
    return pts;
  };
  const auto objective = [&](const std::vector<Point>& raw) {
    const SigmaEval s = sigma_eval(rep, PointConfig(normalized(raw)));
    const double den = s.g_sum.squaredNorm();
    if (den < 1e-12) return std::numeric_limits<double>::infinity();
    return s.f_sum.squaredNorm() / den;
  };

  // The objective is invariant under a common rescaling, so points only need
  // to stay away from the origin; a wide ball keeps the descent unconstrained.
  const SearchDomain domain{false, 1e6};
  const SearchDomain sampler{true, 1.0};
  std::vector<DescentResult> results(static_cast<std::size_t>(budget.restarts));
  parallel_for(results.size(), [&](std::size_t i) {
    auto rng = restart_rng(seed, static_cast<std::uint64_t>(k), i);
    std::vector<Point> start;
    for (int p = 0; p < k; ++p) start.push_back(sampler.sample(rep.dim(), rng));
    DescentOptions options;
    options.sweeps = budget.steps;
    options.initial_step = 0.1;
    results[i] = pattern_descent(normalized(std::move(start)), domain, objective, options);
  });

  const DescentResult* best = nullptr;
  for (const auto& r : results) {
    if (std::isfinite(r.value) && (!best || r.value < best->value)) best = &r;
  }
  if (!best) throw DegenerateFamily("sum of g vanished on every sampled configuration");
  return {best->value, PointConfig(normalized(best->points))};
}

double find_violated_lambda(const FamilySpec& fam, int k, double lo, const SearchBudget& budget,
                            std::uint64_t seed, int attempts) {
  const double span = std::max(1.0, std::abs(lo));
  for (int i = 0; i < attempts; ++i) {
    const double lambda = lo + span * std::ldexp(1.0, i);
    if (test_membership(member(fam, lambda), k, budget, seed).violated()) return lambda;
  }
  throw BadBracket("no violated member found above lambda = " + std::to_string(lo));
}

StabilityTable stability_index_estimate(const FamilySpec& fam, int k_max, double tol,
                                        const SearchBudget& budget, std::uint64_t seed,
                                        double match_tol) {
  if (k_max < 1) throw Error("k_max must be at least 1");
  StabilityTable table;
  table.pinf = pinf_threshold(fam);
  double hi = find_violated_lambda(fam, 1, table.pinf, budget, seed);
  PointConfig hint;
  for (int k = 1; k <= k_max; ++k) {
    // P_{k+1} is contained in P_k, so the previous certified upper end is
    // also violated at level k.
    const std::vector<PointConfig> hints{hint};
    ThresholdResult t = threshold(fam, k, {table.pinf, hi}, tol, budget, seed, hints);
    hi = t.upper;
    hint = t.witness_at_upper.cfg.padded_to(static_cast<std::size_t>(k + 1));
    const bool matches = t.upper <= table.pinf + match_tol;
    table.thresholds.emplace(k, std::move(t));
    if (matches && table.index == 0) table.index = k;
  }
  if (table.index == 0) {
    std::ostringstream os;
    os << "threshold at k = " << k_max << " is " << table.thresholds.at(k_max).upper
       << ", still above the P_inf threshold " << table.pinf;
    throw Inconclusive(os.str());
  }
  return table;
}

}  // namespace posh

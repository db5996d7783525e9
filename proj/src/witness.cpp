#include "posh/witness.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "posh/errors.hpp"
#include "posh/local_search.hpp"
#include "posh/parallel.hpp"

namespace posh {

namespace {

// Restarts run in fixed-size batches so the early exit after a certified
// witness does not depend on how many threads are available.
constexpr int kBatch = 8;

SearchDomain domain_for(const HermitianPoly& r, const SearchBudget& budget) {
  return SearchDomain{r.bihomogeneous_degree().has_value(), budget.radius};
}

std::function<double(const std::vector<Point>&)> min_eigenvalue_objective(const CompiledPoly& poly) {
  return [&poly](const std::vector<Point>& pts) {
    const Eigen::MatrixXcd g = poly.gram(pts);
    if (g.rows() == 1) return g(0, 0).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()[0];
  };
}

struct RestartResult {
  std::vector<Point> points;
  double value = std::numeric_limits<double>::infinity();
  std::optional<WitnessCheck> check;
};

std::optional<Witness> certify(const HermitianPoly& r, std::vector<Point> points, double tol,
                               WitnessKind kind) {
  PointConfig cfg(std::move(points));
  const WitnessCheck check = verify_witness(r, cfg, tol);
  if (!check.certified) return std::nullopt;
  return Witness{std::move(cfg), check.min_eigenvalue, check.determinant, kind};
}

}  // namespace

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::Stochastic: return "Stochastic";
    case WitnessKind::RootsOfUnity: return "RootsOfUnity";
    case WitnessKind::OrthogonalPair: return "OrthogonalPair";
    case WitnessKind::Prop5Points: return "Prop5Points";
    case WitnessKind::UserSupplied: return "UserSupplied";
  }
  return "Stochastic";
}

WitnessKind witness_kind_from_string(const std::string& name) {
  for (auto kind : {WitnessKind::Stochastic, WitnessKind::RootsOfUnity, WitnessKind::OrthogonalPair,
                    WitnessKind::Prop5Points, WitnessKind::UserSupplied}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParseError("unknown witness kind '" + name + "'");
}

WitnessCheck verify_witness(const HermitianPoly& r, const PointConfig& cfg, double tol) {
  if (cfg.dim() != r.dim()) {
    throw DimensionMismatch("witness points live in C^" + std::to_string(cfg.dim()) +
                            ", polynomial in C^" + std::to_string(r.dim()));
  }
  const auto k = static_cast<Eigen::Index>(cfg.size());
  Eigen::MatrixXcd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      g(i, j) = r.evaluate(cfg[std::size_t(i)], cfg[std::size_t(j)]);
      g(j, i) = std::conj(g(i, j));
    }
    g(i, i) = g(i, i).real();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
  WitnessCheck out;
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.determinant = solver.eigenvalues().prod();
  out.scale = matrix_scale(g);
  out.certified = out.min_eigenvalue < -tol * out.scale;
  if (cfg.coeffs()) {
    Eigen::VectorXcd v(k);
    for (Eigen::Index i = 0; i < k; ++i) v[i] = std::conj((*cfg.coeffs())[std::size_t(i)]);
    out.quadratic_form = v.dot(g * v).real();
  }
  return out;
}

PointConfig refine_witness(const HermitianPoly& r, int k, const PointConfig& cfg, int steps,
                           const SearchBudget& budget) {
  if (static_cast<int>(cfg.size()) != k) {
    throw DimensionMismatch("refine_witness expects " + std::to_string(k) + " points");
  }
  if (steps <= 0) return cfg;
  const CompiledPoly poly(r);
  const auto objective = min_eigenvalue_objective(poly);
  DescentOptions options;
  options.sweeps = steps;
  options.initial_step = 0.05;
  const DescentResult result = pattern_descent(cfg.points(), domain_for(r, budget), objective, options);
  // Projection onto the sphere rescales the Gram matrix, so compare against
  // the untouched input before replacing it.
  if (result.value <= objective(cfg.points())) return PointConfig(result.points);
  return cfg;
}

MembershipVerdict test_membership(const HermitianPoly& r, int k, const SearchBudget& budget,
                                  std::uint64_t seed, std::span<const PointConfig> hints) {
  if (k < 1) throw Error("class index k must be at least 1");
  if (budget.restarts < 1 || budget.steps < 0) throw Error("search budget must be positive");
  MembershipVerdict verdict;
  verdict.k = k;
  verdict.budget = budget;

  const CompiledPoly poly(r);
  const auto objective = min_eigenvalue_objective(poly);
  const SearchDomain domain = domain_for(r, budget);
  double best = std::numeric_limits<double>::infinity();

  for (int level = 1; level <= k; ++level) {
    for (const auto& hint : hints) {
      if (static_cast<int>(hint.size()) != level || hint.dim() != r.dim()) continue;
      DescentOptions options;
      options.sweeps = budget.steps;
      options.initial_step = 0.02;
      options.stop_below = -100.0 * budget.tol;
      const DescentResult refined = pattern_descent(hint.points(), domain, objective, options);
      best = std::min(best, refined.value);
      if (auto w = certify(r, refined.points, budget.tol, WitnessKind::Stochastic)) {
        verdict.outcome = Violated{std::move(*w)};
        return verdict;
      }
    }

    for (int first = 0; first < budget.restarts; first += kBatch) {
      const int count = std::min(kBatch, budget.restarts - first);
      std::vector<RestartResult> results(static_cast<std::size_t>(count));
      parallel_for(results.size(), [&](std::size_t i) {
        auto rng = restart_rng(seed, static_cast<std::uint64_t>(level),
                               static_cast<std::uint64_t>(first) + i);
        std::vector<Point> start;
        for (int p = 0; p < level; ++p) start.push_back(domain.sample(r.dim(), rng));
        DescentOptions options;
        options.sweeps = budget.steps;
        options.stop_below = -100.0 * budget.tol;
        options.stall_tol = budget.tol;
        DescentResult d = pattern_descent(std::move(start), domain, objective, options);
        results[i].value = d.value;
        results[i].points = std::move(d.points);
      });
      // Deterministic reduction: lowest certified eigenvalue, then lowest index.
      std::optional<Witness> chosen;
      for (auto& res : results) {
        best = std::min(best, res.value);
        if (res.value >= 0.0) continue;
        if (auto w = certify(r, res.points, budget.tol, WitnessKind::Stochastic)) {
          if (!chosen || w->min_eigenvalue < chosen->min_eigenvalue) chosen = std::move(w);
        }
      }
      if (chosen) {
        verdict.outcome = Violated{std::move(*chosen)};
        return verdict;
      }
    }
  }
  verdict.outcome = NoViolationFound{budget.restarts, best, seed};
  return verdict;
}

PointConfig roots_of_unity_witness(int m) {
  if (m < 1) throw Error("roots_of_unity_witness requires m >= 1");
  std::vector<Point> pts;
  for (int i = 0; i < m + 1; ++i) {
    // w^2 = eta^i with eta a primitive (m+1)-st root of unity.
    const Complex w = std::polar(1.0, std::numbers::pi * i / (m + 1));
    Point z(2);
    z << w, 1.0 / w;
    pts.push_back(std::move(z));
  }
  return PointConfig(std::move(pts));
}

PointConfig orthogonal_pair_witness() {
  Point z(2), w(2);
  z << 1.0, 1.0;
  w << 1.0, -1.0;
  return PointConfig({z, w});
}

PointConfig prop5_points(int m) {
  if (m < 1) throw Error("prop5_points requires m >= 1");
  std::vector<Point> pts;
  for (int k = 0; k < m; ++k) {
    Point z(2);
    z << 1.0, std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    pts.push_back(std::move(z));
  }
  return PointConfig(std::move(pts));
}

}  // namespace posh

#include "posh/psh.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "posh/errors.hpp"
#include "posh/local_search.hpp"
#include "posh/parallel.hpp"

namespace posh {

namespace {

constexpr int kBatch = 8;

void check_dim(const HermitianPoly& r, const Point& z) {
  if (static_cast<std::size_t>(z.size()) != r.dim()) {
    throw DimensionMismatch("point lives in C^" + std::to_string(z.size()) + ", polynomial in C^" +
                            std::to_string(r.dim()));
  }
}

// z^alpha with exponent i lowered by one, times alpha_i; zero when alpha_i = 0.
Complex lowered(const MultiIndex& alpha, std::size_t i, const Point& z) {
  if (alpha[i] == 0) return 0.0;
  Complex v = static_cast<double>(alpha[i]);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const int e = k == i ? alpha[k] - 1 : alpha[k];
    for (int p = 0; p < e; ++p) v *= z[static_cast<Eigen::Index>(k)];
  }
  return v;
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
  if (h.rows() == 1) return h(0, 0).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[0];
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

// Minimum eigenvalue of the chosen Hessian, +inf where the log test does
// not apply.
double objective_at(const HermitianPoly& r, PshMode mode, const Point& z) {
  if (mode == PshMode::Psh) return min_eigenvalue(complex_hessian(r, z).matrix);
  if (r.evaluate_diag(z) <= 0.0) return std::numeric_limits<double>::infinity();
  return min_eigenvalue(log_hessian(r, z));
}

// Certification against the same relative scale as the pointwise tests.
std::optional<PshViolation> certify(const HermitianPoly& r, PshMode mode, const Point& z, double tol) {
  Eigen::MatrixXcd h;
  if (mode == PshMode::Psh) {
    h = complex_hessian(r, z).matrix;
  } else {
    if (!(r.evaluate_diag(z) > 0.0)) return std::nullopt;
    h = log_hessian(r, z);
  }
  const double e = min_eigenvalue(h);
  if (e < -tol * matrix_scale(h)) return PshViolation{z, e};
  return std::nullopt;
}

}  // namespace

std::string to_string(PshMode mode) { return mode == PshMode::Psh ? "psh" : "log_psh"; }

ComplexHessian complex_hessian(const HermitianPoly& r, const Point& z) {
  check_dim(r, z);
  const auto n = static_cast<Eigen::Index>(r.dim());
  const Point zc = z.conjugate();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd da(n), db(n);
  for (const auto& [key, c] : r.terms()) {
    if (c == Complex(0.0)) continue;
    const auto& [a, b] = key;
    for (Eigen::Index i = 0; i < n; ++i) {
      da[i] = lowered(a, std::size_t(i), z);
      db[i] = lowered(b, std::size_t(i), zc);
    }
    h.noalias() += c * da * db.transpose();
  }
  return {hermitian_part(h)};
}

Eigen::VectorXcd holomorphic_gradient(const HermitianPoly& r, const Point& z) {
  check_dim(r, z);
  const auto n = static_cast<Eigen::Index>(r.dim());
  const Point zc = z.conjugate();
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
  for (const auto& [key, c] : r.terms()) {
    if (c == Complex(0.0)) continue;
    const auto& [a, b] = key;
    const Complex tail = c * b.monomial(zc);
    for (Eigen::Index i = 0; i < n; ++i) g[i] += tail * lowered(a, std::size_t(i), z);
  }
  return g;
}

Eigen::MatrixXcd log_hessian(const HermitianPoly& r, const Point& z) {
  const double value = r.evaluate_diag(z);
  if (!(value > 0.0)) {
    std::ostringstream os;
    os << "log-plurisubharmonicity needs R > 0, got R = " << value;
    throw NonPositiveValue(os.str());
  }
  const Eigen::MatrixXcd h = complex_hessian(r, z).matrix;
  const Eigen::VectorXcd g = holomorphic_gradient(r, z);
  return hermitian_part((value * h - g * g.adjoint()) / (value * value));
}

bool is_psh_at(const HermitianPoly& r, const Point& z, double tol) {
  const Eigen::MatrixXcd h = complex_hessian(r, z).matrix;
  return min_eigenvalue(h) >= -tol * matrix_scale(h);
}

bool is_log_psh_at(const HermitianPoly& r, const Point& z, double tol) {
  const Eigen::MatrixXcd h = log_hessian(r, z);
  return min_eigenvalue(h) >= -tol * matrix_scale(h);
}

PshVerdict psh_region_test(const HermitianPoly& r, PshMode mode, const SearchBudget& budget,
                           std::uint64_t seed, std::span<const Point> hints) {
  if (budget.restarts < 1 || budget.steps < 0) throw Error("search budget must be positive");
  PshVerdict verdict;
  verdict.mode = mode;
  const SearchDomain domain{r.bihomogeneous_degree().has_value(), budget.radius};
  const auto objective = [&](const std::vector<Point>& pts) { return objective_at(r, mode, pts[0]); };
  DescentOptions options;
  options.sweeps = budget.steps;
  options.stop_below = -100.0 * budget.tol;
  double best = std::numeric_limits<double>::infinity();

  for (const auto& hint : hints) {
    if (static_cast<std::size_t>(hint.size()) != r.dim()) continue;
    DescentOptions refine = options;
    refine.initial_step = 0.02;
    Point start = hint;
    domain.project(start);
    const DescentResult d = pattern_descent({start}, domain, objective, refine);
    best = std::min(best, d.value);
    if (auto v = certify(r, mode, d.points[0], budget.tol)) {
      verdict.outcome = std::move(*v);
      return verdict;
    }
  }

  for (int first = 0; first < budget.restarts; first += kBatch) {
    const int count = std::min(kBatch, budget.restarts - first);
    std::vector<DescentResult> results(static_cast<std::size_t>(count));
    parallel_for(results.size(), [&](std::size_t i) {
      auto rng = restart_rng(seed, 0, static_cast<std::uint64_t>(first) + i);
      results[i] = pattern_descent({domain.sample(r.dim(), rng)}, domain, objective, options);
    });
    std::optional<PshViolation> chosen;
    for (const auto& res : results) {
      best = std::min(best, res.value);
      if (!(res.value < 0.0)) continue;
      if (auto v = certify(r, mode, res.points[0], budget.tol)) {
        if (!chosen || v->min_eigenvalue < chosen->min_eigenvalue) chosen = std::move(v);
      }
    }
    if (chosen) {
      verdict.outcome = std::move(*chosen);
      return verdict;
    }
  }
  verdict.outcome = NoViolationFound{budget.restarts, best, seed};
  return verdict;
}

HermitianPoly dehomogenize(const HermitianPoly& r, std::size_t var_index) {
  if (var_index >= r.dim()) {
    throw DimensionMismatch("cannot fix variable " + std::to_string(var_index) + " of a polynomial in C^" +
                            std::to_string(r.dim()));
  }
  std::map<HermitianPoly::Key, Complex> merged;
  for (const auto& [key, c] : r.terms()) {
    merged[{key.first.drop(var_index), key.second.drop(var_index)}] += c;
  }
  // Summation order can differ between a key and its conjugate partner.
  std::map<HermitianPoly::Key, Complex> terms;
  for (const auto& [key, c] : merged) {
    const Complex partner = merged.at({key.second, key.first});
    terms[key] = 0.5 * (c + std::conj(partner));
  }
  return HermitianPoly(r.dim() - 1, std::move(terms));
}

PshThreshold psh_threshold(const FamilySpec& fam, PshMode mode, std::pair<double, double> bracket,
                           double tol, const SearchBudget& budget, std::uint64_t seed,
                           std::optional<std::size_t> dehomogenize_var) {
  auto [lo, hi] = bracket;
  if (!(lo < hi) || !(tol > 0.0)) throw BadBracket("bracket must satisfy lo < hi and tol > 0");
  const auto probe = [&](double lambda, std::span<const Point> hints) {
    HermitianPoly r = member(fam, lambda);
    if (dehomogenize_var) r = dehomogenize(r, *dehomogenize_var);
    return psh_region_test(r, mode, budget, seed, hints);
  };

  const PshVerdict at_hi = probe(hi, {});
  if (!at_hi.violated()) {
    std::ostringstream os;
    os << "no " << to_string(mode) << " violation found at the upper end lambda = " << hi;
    throw BadBracket(os.str());
  }
  PshThreshold result;
  result.violation_at_upper = at_hi.violation();
  std::vector<Point> hints{result.violation_at_upper.point};
  if (probe(lo, hints).violated()) {
    std::ostringstream os;
    os << "member at the lower end lambda = " << lo << " already fails the " << to_string(mode) << " test";
    throw BadBracket(os.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const PshVerdict v = probe(mid, hints);
    if (v.violated()) {
      hi = mid;
      result.violation_at_upper = v.violation();
      hints.assign(1, v.violation().point);
    } else {
      lo = mid;
    }
  }
  result.lower = lo;
  result.upper = hi;
  return result;
}

}  // namespace posh

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "posh/errors.hpp"
#include "posh/families.hpp"
#include "posh/gram.hpp"
#include "posh/psh.hpp"
#include "posh/witness.hpp"
#include "support.hpp"

using namespace posh;
using namespace posh::testing;

namespace {

// Tolerances, pinned.
constexpr double kThresholdTol = 1e-3;
constexpr double kExample1P3Tol = 1e-2;
constexpr double kPinfTol = 1e-9;
constexpr double kBisectionTol = 1e-4;
constexpr double kM3BisectionTol = 5e-4;
constexpr double kProp5Offset = 0.01;
constexpr double kResidualTol = 1e-12;
constexpr double kDeterminantRelTol = 1e-9;
constexpr double kExpansionRelTol = 1e-8;
constexpr double kSchurRelTol = 1e-10;
constexpr double kNeutralBand = 1e-9;
constexpr double kPshTol = 0.1;
constexpr double kDehomogenizedTol = 0.05;
constexpr double kPshBisectionTol = 1e-2;
constexpr double kCramerTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

bool near(double value, double expected, double tol) { return std::abs(value - expected) <= tol; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Checks one threshold against its expected value and re-verifies the witness.
void check_level(Outcome& o, const FamilySpec& fam, const ThresholdResult& t, double expected, double tol,
                 const std::string& label, double (*to_param)(double) = nullptr) {
  const double upper = to_param ? to_param(t.upper) : t.upper;
  o.detail << " " << label << "=" << fmt(upper);
  o.check(near(upper, expected, tol), label + " off by " + fmt(upper - expected));
  o.check(verify_witness(member(fam, t.upper), t.witness_at_upper.cfg).certified,
          label + " witness not certified");
}

// Shared between criteria 3 and 9.
StabilityTable m2_table() {
  static const StabilityTable table = stability_index_estimate(dangelo_spec(2), 4, kBisectionTol, {}, 0);
  return table;
}

Outcome example1_thresholds() {
  Outcome o;
  const FamilySpec fam = example1_spec();
  const StabilityTable t = stability_index_estimate(fam, 3, kBisectionTol, {}, 0);
  const double tol[] = {kThresholdTol, kThresholdTol, kExample1P3Tol};
  const double expected_c[] = {0.0, 2.0, 2.0};
  // Raising lambda lowers c, so the violated end of a lambda bracket is the
  // lower end of the c bracket.
  for (int k = 1; k <= 3; ++k) {
    check_level(o, fam, t.thresholds.at(k), expected_c[k - 1], tol[k - 1], "c_P" + std::to_string(k),
                example1_c_from_lambda);
  }
  o.detail << " index=" << t.index;
  o.check(t.index == 2, "index");
  return o;
}

Outcome dangelo_m1() {
  Outcome o;
  const FamilySpec fam = dangelo_spec(1);
  const StabilityTable t = stability_index_estimate(fam, 3, kBisectionTol, {}, 0);
  const double expected[] = {4.0, 2.0, 2.0};
  for (int k = 1; k <= 3; ++k) check_level(o, fam, t.thresholds.at(k), expected[k - 1], kThresholdTol, "P" + std::to_string(k));
  o.detail << " index=" << t.index;
  o.check(t.index == 2, "index");
  return o;
}

Outcome dangelo_m2() {
  Outcome o;
  const FamilySpec fam = dangelo_spec(2);
  const StabilityTable t = m2_table();
  const double expected[] = {16.0, 8.0, 6.0, 6.0};
  for (int k = 1; k <= 4; ++k) check_level(o, fam, t.thresholds.at(k), expected[k - 1], kThresholdTol, "P" + std::to_string(k));
  o.detail << " index=" << t.index << " pinf=" << fmt(t.pinf);
  o.check(t.index == 3, "index");
  o.check(near(t.pinf, 6.0, kPinfTol), "pinf");
  return o;
}

Outcome dangelo_m3() {
  Outcome o;
  const FamilySpec fam = dangelo_spec(3);
  const StabilityTable t = stability_index_estimate(fam, 5, kM3BisectionTol, {}, 0);
  check_level(o, fam, t.thresholds.at(1), 64.0, kThresholdTol, "P1");
  check_level(o, fam, t.thresholds.at(2), 32.0, kThresholdTol, "P2");
  const ThresholdResult& p3 = t.thresholds.at(3);
  o.detail << " P3<=" << fmt(p3.upper);
  o.check(p3.upper <= 22.0 + kThresholdTol, "P3 upper bracket above 22");
  o.check(verify_witness(member(fam, p3.upper), p3.witness_at_upper.cfg).certified, "P3 witness");
  o.check(verify_witness(member(fam, 22.0 + kProp5Offset), prop5_points(3)).certified,
          "prop5 points not active at 22.01");
  check_level(o, fam, t.thresholds.at(4), 20.0, kThresholdTol, "P4");
  check_level(o, fam, t.thresholds.at(5), 20.0, kThresholdTol, "P5");
  return o;
}

Outcome deterministic_witnesses() {
  Outcome o;
  double worst_residual = 0.0;
  for (int m = 1; m <= 6; ++m) {
    const SigmaEval s = sigma_eval(dangelo_split_rep(m), roots_of_unity_witness(m));
    const double residual = s.f_sum.cwiseAbs().maxCoeff();
    worst_residual = std::max(worst_residual, residual);
    o.check(residual <= kResidualTol, "Sigma f residual at m=" + std::to_string(m));
    o.check(std::abs(s.g_sum[0] - Complex(m + 1.0)) <= kResidualTol, "Sigma g at m=" + std::to_string(m));
  }
  std::mt19937_64 rng(5);
  double worst_rel = 0.0;
  const PointConfig pair = orthogonal_pair_witness();
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 3;
    const double full = std::ldexp(1.0, 2 * m);
    const double lambda = std::uniform_real_distribution<double>(0.0, 2.0 * full)(rng);
    const double expected = (full - lambda) * (full - lambda) - lambda * lambda;
    const double direct = delta_k_direct(dangelo_family(m, lambda), pair).value;
    // Relative to the Hadamard bound of the 2x2 Gram matrix; the determinant
    // itself crosses zero at lambda = 2^{2m-1}.
    const double rel = std::abs(direct - expected) / ((full - lambda) * (full - lambda) + lambda * lambda);
    worst_rel = std::max(worst_rel, rel);
  }
  o.check(worst_rel <= kDeterminantRelTol, "orthogonal-pair determinant");
  o.detail << " max_residual=" << fmt(worst_residual) << " max_det_rel_err=" << fmt(worst_rel);
  return o;
}

Outcome expansion_oracle() {
  Outcome o;
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int total = std::uniform_int_distribution<int>(1, 6)(rng);
    const int q = std::uniform_int_distribution<int>(0, total)(rng);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const HolomorphicRep rep = random_rep(std::size_t(total - q), std::size_t(q), 4, rng);
    const PointConfig cfg(random_points(std::size_t(k), 2, rng));
    const HermitianPoly r = to_hermitian(rep);
    const ExpansionResult e = delta_k_expansion(rep, cfg);
    double mass = 0.0;
    for (const auto& part : e.parts) mass += part.norm_sq;
    const double scale = std::max({1.0, mass, hadamard_bound(gram_matrix(r, cfg).matrix)});
    worst = std::max(worst, std::abs(e.value - delta_k_direct(r, cfg).value) / scale);
  }
  double worst_scalar = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const HolomorphicRep rep = random_rep(std::size_t(k), 1, 4, rng);
    const PointConfig cfg(random_points(std::size_t(k), 2, rng));
    const ExpansionResult e = delta_k_expansion(rep, cfg);
    double mass = 0.0;
    for (const auto& part : e.parts) mass += part.norm_sq;
    worst_scalar = std::max(worst_scalar, std::abs(delta_k_scalar_g(rep, cfg).value - e.value) / std::max(1.0, mass));
  }
  o.check(worst <= kExpansionRelTol, "expansion vs direct");
  o.check(worst_scalar <= kExpansionRelTol, "scalar-g vs expansion");
  o.detail << " max_rel_err=" << fmt(worst) << " scalar_g_max_rel_err=" << fmt(worst_scalar);
  return o;
}

Outcome psd_caution_and_schur() {
  Outcome o;
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 1.0;
  d(2, 2) = -1.0;
  o.check(!is_psd(d), "diag(1,0,-1) accepted");
  std::mt19937_64 rng(29);
  const auto basis = monomials_up_to(2, 0, 2);
  int closed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 4)(rng);
    const HermitianPoly a = random_hermitian(2, basis, rng, true), b = random_hermitian(2, basis, rng, true);
    const PointConfig cfg(random_points(std::size_t(k), 2, rng));
    const GramReport ga = gram_matrix(a, cfg), gb = gram_matrix(b, cfg);
    const Eigen::MatrixXcd hadamard = ga.matrix.cwiseProduct(gb.matrix);
    const GramReport gab = gram_matrix(multiply(a, b), cfg);
    const bool same = (gab.matrix - hadamard).cwiseAbs().maxCoeff() <= kSchurRelTol * matrix_scale(hadamard);
    closed += ga.psd && gb.psd && is_psd(hadamard) && gab.psd && same;
  }
  o.check(closed == 100, "Hadamard closure");
  o.detail << " closed=" << closed << "/100";
  return o;
}

Outcome two_point_sign_agreement() {
  Outcome o;
  std::mt19937_64 rng(19);
  int agree = 0, neutral = 0, positive = 0, negative = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 1 + std::size_t(trial % 2), q = 1 + std::size_t(trial / 2 % 2);
    const HolomorphicRep rep = random_rep(p, q, 2, rng);
    const Point z = random_point(2, rng), w = random_point(2, rng);
    const WedgeCheck c = p2_wedge_check(rep, z, w);
    const double delta = delta_k_direct(to_hermitian(rep), PointConfig({z, w})).value;
    if (std::abs(delta) <= kNeutralBand * std::max({1.0, c.lhs, c.rhs})) {
      ++neutral;
      continue;
    }
    (delta > 0 ? positive : negative)++;
    agree += (c.rhs - c.lhs > 0) == (delta > 0) && c.holds == (delta > 0);
  }
  o.check(agree == 200 - neutral, "sign disagreement");
  o.check(positive > 0 && negative > 0, "draws cover only one sign");
  o.detail << " agree=" << agree << " neutral=" << neutral << " (+" << positive << "/-" << negative << ")";
  return o;
}

Outcome psh_suite() {
  Outcome o;
  const FamilySpec fam = dangelo_spec(2);
  const PshThreshold psh = psh_threshold(fam, PshMode::Psh, {8.0, 16.0}, kPshBisectionTol, {}, 0);
  const PshThreshold log = psh_threshold(fam, PshMode::LogPsh, {8.0, 16.0}, kPshBisectionTol, {}, 0);
  const PshThreshold dehom = psh_threshold(fam, PshMode::Psh, {8.0, 16.0}, kPshBisectionTol, {}, 0, 1);
  const double dehom_expected = 3.0 / 32.0 * (69.0 + 11.0 * std::sqrt(33.0));
  o.detail << " psh=" << fmt(psh.upper) << " log_psh=" << fmt(log.upper) << " dehomogenized=" << fmt(dehom.upper);
  o.check(near(psh.upper, 12.0, kPshTol), "psh threshold");
  o.check(near(log.upper, 12.0, kPshTol), "log-psh threshold");
  o.check(near(dehom.upper, dehom_expected, kDehomogenizedTol), "dehomogenized threshold");

  const StabilityTable t = m2_table();
  // 6 < 8 < 12 < 12.394 < 16, each gap separating the computed brackets.
  const std::pair<double, double> chain[] = {{t.pinf, t.pinf},
                                             {t.thresholds.at(2).lower, t.thresholds.at(2).upper},
                                             {psh.lower, psh.upper},
                                             {dehom.lower, dehom.upper},
                                             {t.thresholds.at(1).lower, t.thresholds.at(1).upper}};
  for (std::size_t i = 0; i + 1 < std::size(chain); ++i) {
    o.check(chain[i].second < chain[i + 1].first, "ordering broken at link " + std::to_string(i + 1));
  }
  return o;
}

Outcome span_and_orthogonal_reps() {
  Outcome o;
  std::mt19937_64 rng(101);
  const auto basis = monomials_up_to(2, 0, 2);
  const auto nb = static_cast<Eigen::Index>(basis.size());
  const auto coeffs = [&](const HolomorphicPoly& h) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(nb);
    for (Eigen::Index i = 0; i < nb; ++i) {
      const auto it = h.coefficients().find(basis[std::size_t(i)]);
      if (it != h.coefficients().end()) v[i] = it->second;
    }
    return v;
  };
  const auto from_coeffs = [&](const Eigen::VectorXcd& v) {
    std::map<MultiIndex, Complex> c;
    for (Eigen::Index i = 0; i < nb; ++i) c[basis[std::size_t(i)]] = v[i];
    return HolomorphicPoly(2, std::move(c));
  };
  const SearchBudget budget;

  int span_clean = 0, cramer_constant = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 1 + std::size_t(trial % 3);
    std::vector<HolomorphicPoly> f;
    for (std::size_t i = 0; i < p; ++i) f.push_back(random_holomorphic(2, basis, rng));
    // ||c|| <= 0.9 keeps ||f||^2 - |<c, f>|^2 a squared norm.
    Eigen::VectorXcd c(static_cast<Eigen::Index>(p));
    for (auto& x : c) x = random_complex(rng);
    c *= std::uniform_real_distribution<double>(0.1, 0.9)(rng) / c.norm();
    Eigen::VectorXcd gv = Eigen::VectorXcd::Zero(nb);
    for (std::size_t i = 0; i < p; ++i) gv += c[Eigen::Index(i)] * coeffs(f[i]);
    const HolomorphicRep rep(2, f, {from_coeffs(gv)});
    const HermitianPoly r = to_hermitian(rep);

    // The search cascades through levels 1..k, so k = 4 covers every k <= 4.
    span_clean += !test_membership(r, 4, budget, std::uint64_t(trial)).violated();

    bool constant = true;
    for (int cfg_i = 0; cfg_i < 5; ++cfg_i) {
      const auto solved = cramer_coefficients(rep, PointConfig(random_points(p, 2, rng)));
      if (!solved) {
        constant = false;
        break;
      }
      for (std::size_t j = 0; j < p; ++j) constant = constant && std::abs((*solved)[j] - c[Eigen::Index(j)]) <= kCramerTol;
    }
    cramer_constant += constant;
  }

  int orthogonal_violated = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 1 + std::size_t(trial % 3);
    std::vector<HolomorphicPoly> f;
    Eigen::MatrixXcd fm(nb, static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p; ++i) {
      f.push_back(random_holomorphic(2, basis, rng));
      fm.col(Eigen::Index(i)) = coeffs(f.back());
    }
    const Eigen::MatrixXcd qm = Eigen::HouseholderQR<Eigen::MatrixXcd>(fm).householderQ() *
                                Eigen::MatrixXcd::Identity(nb, static_cast<Eigen::Index>(p));
    Eigen::VectorXcd gv(nb);
    for (auto& x : gv) x = random_complex(rng);
    gv -= qm * (qm.adjoint() * gv);
    const HermitianPoly r = to_hermitian(HolomorphicRep(2, f, {from_coeffs(gv)}));
    const MembershipVerdict v = test_membership(r, 3, budget, std::uint64_t(trial));
    orthogonal_violated += v.violated() && verify_witness(r, v.witness().cfg).certified;
  }

  o.check(span_clean == 50, "span reps with a violation");
  o.check(cramer_constant == 50, "cramer coefficients not constant");
  o.check(orthogonal_violated == 50, "orthogonal reps without a certified violation");
  o.detail << " span_clean=" << span_clean << "/50 cramer_constant=" << cramer_constant
           << "/50 orthogonal_violated=" << orthogonal_violated << "/50";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Example 1 thresholds", example1_thresholds},
      {2, "dangelo m=1 thresholds and index", dangelo_m1},
      {3, "dangelo m=2 thresholds, index and pinf", dangelo_m2},
      {4, "dangelo m=3 thresholds", dangelo_m3},
      {5, "deterministic witnesses", deterministic_witnesses},
      {6, "determinant expansion oracle", expansion_oracle},
      {7, "PSD test and Schur closure", psd_caution_and_schur},
      {8, "two-point wedge sign agreement", two_point_sign_agreement},
      {9, "psh thresholds and ordering, m=2", psh_suite},
      {10, "span and orthogonal representations", span_and_orthogonal_reps},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2d %s:%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

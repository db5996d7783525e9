#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "posh/errors.hpp"
#include "posh/families.hpp"
#include "posh/serialize.hpp"
#include "posh/witness.hpp"
#include "support.hpp"

using namespace posh;
using namespace posh::testing;

namespace {

Point pt(Complex a, Complex b) {
  Point z(2);
  z << a, b;
  return z;
}

SearchBudget small_budget() { return SearchBudget{16, 200, 2.0, kPsdTol}; }

}  // namespace

TEST_CASE("witness kind names round trip") {
  for (auto kind : {WitnessKind::Stochastic, WitnessKind::RootsOfUnity, WitnessKind::OrthogonalPair,
                    WitnessKind::Prop5Points, WitnessKind::UserSupplied}) {
    CHECK(witness_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(witness_kind_from_string("Nope"), ParseError);
}

TEST_CASE("membership verdicts on known members") {
  SUBCASE("Example 1 with c = -1 fails at k = 1") {
    const HermitianPoly r = example1_family(-1.0);
    const MembershipVerdict v = test_membership(r, 1, {}, 0);
    REQUIRE(v.violated());
    CHECK(v.witness().cfg.size() == 1);
    CHECK(verify_witness(r, v.witness().cfg).certified);
    // The diagonal value at (1,1) is c = -1, so (1,1) itself is a witness.
    CHECK(verify_witness(r, PointConfig({pt(1.0, 1.0)})).certified);
  }
  SUBCASE("dangelo m = 2, lambda = 7") {
    const HermitianPoly r = dangelo_family(2, 7.0);
    CHECK_FALSE(test_membership(r, 2, {}, 0).violated());
    const MembershipVerdict v3 = test_membership(r, 3, {}, 0);
    REQUIRE(v3.violated());
    CHECK(v3.witness().cfg.size() == 3);
    CHECK(verify_witness(r, v3.witness().cfg).certified);
  }
  SUBCASE("squared norms are never violated") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 4; ++trial) {
      const HermitianPoly r = random_hermitian(2, monomials_up_to(2, 0, 2), rng, true);
      for (int k = 1; k <= 3; ++k) {
        const MembershipVerdict v = test_membership(r, k, small_budget(), std::uint64_t(trial));
        REQUIRE_FALSE(v.violated());
        CHECK(std::get<NoViolationFound>(v.outcome).best_min_eigenvalue >= -kPsdTol);
      }
    }
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(test_membership(dangelo_family(1, 0.0), 0, {}, 0), Error);
    CHECK_THROWS_AS(test_membership(dangelo_family(1, 0.0), 1, SearchBudget{0, 10}, 0), Error);
  }
}

TEST_CASE("verdicts are deterministic across thread counts") {
  const HermitianPoly r = dangelo_family(2, 6.5);
  setenv("POSH_THREADS", "1", 1);
  const std::string a = to_json(test_membership(r, 3, small_budget(), 42)).dump();
  setenv("POSH_THREADS", "4", 1);
  const std::string b = to_json(test_membership(r, 3, small_budget(), 42)).dump();
  const std::string c = to_json(test_membership(r, 3, small_budget(), 42)).dump();
  unsetenv("POSH_THREADS");
  CHECK(a == b);
  CHECK(b == c);
  const std::string no = to_json(test_membership(r, 2, small_budget(), 42)).dump();
  CHECK(no == to_json(test_membership(r, 2, small_budget(), 42)).dump());
}

TEST_CASE("hierarchy consistency") {
  const HermitianPoly r = dangelo_family(2, 9.0);
  const MembershipVerdict v2 = test_membership(r, 2, {}, 3);
  REQUIRE(v2.violated());
  for (int k = 3; k <= 4; ++k) {
    CHECK(test_membership(r, k, {}, 3).violated());
    CHECK(verify_witness(r, v2.witness().cfg.padded_to(std::size_t(k))).certified);
  }
}

TEST_CASE("hints are refined before random restarts") {
  const HermitianPoly r = dangelo_family(2, 6.01);
  const SearchBudget tiny{1, 5, 2.0, kPsdTol};
  const std::vector<PointConfig> hints{roots_of_unity_witness(2)};
  const MembershipVerdict v = test_membership(r, 3, tiny, 0, hints);
  REQUIRE(v.violated());
  CHECK(verify_witness(r, v.witness().cfg).certified);
}

TEST_CASE("refine_witness") {
  SUBCASE("zero steps is the identity") {
    const PointConfig cfg = orthogonal_pair_witness();
    const PointConfig out = refine_witness(dangelo_family(2, 9.0), 2, cfg, 0);
    CHECK(out.points() == cfg.points());
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(refine_witness(dangelo_family(2, 9.0), 3, orthogonal_pair_witness(), 10), DimensionMismatch);
  }
  SUBCASE("descent near the orthogonal pair reaches the grid minimum") {
    const HermitianPoly r = dangelo_family(2, 8.5);
    std::mt19937_64 rng(6);
    std::vector<Point> start;
    const PointConfig pair = orthogonal_pair_witness();
    for (const auto& z : pair.points()) {
      Point p = z / std::sqrt(2.0) + 0.05 * random_point(2, rng);
      start.push_back(p / p.norm());
    }
    const PointConfig cfg(start);
    const double initial = verify_witness(r, cfg).min_eigenvalue;
    const PointConfig out = refine_witness(r, 2, cfg, 400);
    const double refined = verify_witness(r, out).min_eigenvalue;
    CHECK(refined <= initial);
    CHECK(refined < -kPsdTol);

    // Grid-search oracle over pairs (cos a, sin a e^{i phi}) on the sphere.
    double grid_min = std::numeric_limits<double>::infinity();
    const int na = 16, nphi = 16;
    std::vector<Point> grid;
    for (int i = 0; i <= na; ++i)
      for (int j = 0; j < nphi; ++j) {
        const double a = std::numbers::pi / 2 * i / na, phi = 2 * std::numbers::pi * j / nphi;
        grid.push_back(pt(std::cos(a), std::polar(std::sin(a), phi)));
      }
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i + 1; j < grid.size(); ++j)
        grid_min = std::min(grid_min, verify_witness(r, PointConfig({grid[i], grid[j]})).min_eigenvalue);
    CHECK(refined <= grid_min + 1e-6);
    // Converges toward the orthogonal pair: the two points become orthogonal.
    CHECK(std::abs(out[0].dot(out[1])) < 1e-2);
  }
  SUBCASE("a certified witness stays certified") {
    const HermitianPoly r = dangelo_family(3, 23.0);
    const PointConfig cfg = prop5_points(3);
    REQUIRE(verify_witness(r, cfg).certified);
    CHECK(verify_witness(r, refine_witness(r, 3, cfg, 50)).certified);
  }
}

TEST_CASE("roots of unity witness") {
  for (int m = 1; m <= 6; ++m) {
    const PointConfig cfg = roots_of_unity_witness(m);
    REQUIRE(cfg.size() == std::size_t(m + 1));
    const HolomorphicRep split = dangelo_split_rep(m);
    const SigmaEval s = sigma_eval(split, cfg);
    CHECK(s.f_sum.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(s.g_sum[0] - Complex(m + 1.0)) <= 1e-12);
    for (const auto& z : cfg.points()) {
      CHECK(std::abs(std::abs(z[0]) - 1.0) < 1e-15);
      CHECK(std::abs(z[0] * z[1] - 1.0) < 1e-15);
    }
  }
  // m = 2: w^2 runs over the cube roots of unity.
  const PointConfig c2 = roots_of_unity_witness(2);
  Complex sum = 0.0;
  for (const auto& z : c2.points()) sum += z[0] * z[0];
  CHECK(std::abs(sum) < 1e-15);
  CHECK_THROWS_AS(roots_of_unity_witness(0), Error);
}

TEST_CASE("orthogonal pair determinant") {
  const PointConfig cfg = orthogonal_pair_witness();
  CHECK(cfg[0] == pt(1.0, 1.0));
  CHECK(cfg[1] == pt(1.0, -1.0));
  for (int m = 1; m <= 3; ++m) {
    const double half = std::ldexp(1.0, 2 * m - 1), full = std::ldexp(1.0, 2 * m);
    const WitnessCheck above = verify_witness(dangelo_family(m, half + 0.5), cfg);
    CHECK(above.determinant < 0.0);
    CHECK(above.certified);
    const WitnessCheck at = verify_witness(dangelo_family(m, half), cfg);
    CHECK(std::abs(at.determinant) <= 1e-9 * at.scale);
    CHECK_FALSE(at.certified);
    CHECK(verify_witness(dangelo_family(m, 0.0), cfg).determinant == doctest::Approx(full * full));
  }
}

TEST_CASE("prop5 points") {
  const PointConfig two = prop5_points(2);
  CHECK((two[0] - pt(1.0, 1.0)).norm() < 1e-15);
  CHECK((two[1] - pt(1.0, -1.0)).norm() < 1e-15);
  for (int m = 1; m <= 5; ++m) {
    const SigmaEval s = sigma_eval(dangelo_split_rep(m), prop5_points(m));
    CHECK(std::abs(s.g_sum[0] - Complex(m)) <= 1e-12);
  }
}

TEST_CASE("verify_witness") {
  SUBCASE("roots of unity with the all-ones coefficient vector") {
    const HermitianPoly r = dangelo_family(2, 6.1);
    const PointConfig cfg = roots_of_unity_witness(2).with_coeffs({1.0, 1.0, 1.0});
    const WitnessCheck w = verify_witness(r, cfg);
    REQUIRE(w.quadratic_form);
    // ||sum f||^2 vanishes, leaving -(lambda - 6)|sum g|^2 = -0.1 * 9.
    CHECK(*w.quadratic_form == doctest::Approx(-0.9));
    CHECK(w.certified);
  }
  SUBCASE("single point at a zero of R") {
    const Point z = pt(1.0, 1.0) / std::sqrt(2.0);
    const WitnessCheck w = verify_witness(example1_family(0.0), PointConfig({z}));
    CHECK(std::abs(w.min_eigenvalue) < 1e-15);
    CHECK_FALSE(w.certified);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(verify_witness(dangelo_family(1, 0.0), PointConfig({Point::Ones(3)})), DimensionMismatch);
  }
}

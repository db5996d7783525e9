#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "posh/hermpoly.hpp"

namespace posh::testing {

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

inline Point random_point(std::size_t n, std::mt19937_64& rng) {
  Point z(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = random_complex(rng);
  return z;
}

inline std::vector<Point> random_points(std::size_t k, std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_point(n, rng));
  return out;
}

/// All multi-indices in n variables with total degree in [lo, hi].
inline std::vector<MultiIndex> monomials_up_to(std::size_t n, int lo, int hi) {
  std::vector<MultiIndex> out;
  std::vector<int> e(n, 0);
  const auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
  };
  for (int d = lo; d <= hi; ++d) rec(rec, 0, d);
  return out;
}

/// Random Hermitian polynomial on a given basis: a random Hermitian matrix.
inline HermitianPoly random_hermitian(std::size_t n, const std::vector<MultiIndex>& basis,
                                      std::mt19937_64& rng, bool psd = false) {
  const auto b = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd a(b, b);
  for (Eigen::Index i = 0; i < b; ++i)
    for (Eigen::Index j = 0; j < b; ++j) a(i, j) = random_complex(rng);
  Eigen::MatrixXcd c = psd ? Eigen::MatrixXcd(a * a.adjoint()) : Eigen::MatrixXcd(a + a.adjoint());
  std::vector<Term> terms;
  for (Eigen::Index i = 0; i < b; ++i)
    for (Eigen::Index j = 0; j < b; ++j) {
      const Complex v = i == j ? Complex(c(i, i).real(), 0.0) : (i < j ? c(i, j) : std::conj(c(j, i)));
      terms.push_back({basis[std::size_t(i)], basis[std::size_t(j)], v});
    }
  return HermitianPoly::from_terms(n, terms);
}

/// Holomorphic polynomial with random coefficients on the given monomials.
inline HolomorphicPoly random_holomorphic(std::size_t n, const std::vector<MultiIndex>& basis,
                                          std::mt19937_64& rng) {
  std::map<MultiIndex, Complex> c;
  for (const auto& a : basis) c[a] = random_complex(rng);
  return HolomorphicPoly(n, std::move(c));
}

/// f and g components in C^2 with random coefficients on all monomials up to
/// a random degree in [0, max_degree].
inline HolomorphicRep random_rep(std::size_t p, std::size_t q, int max_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  const auto pick = [&] { return monomials_up_to(2, 0, deg(rng)); };
  std::vector<HolomorphicPoly> f, g;
  for (std::size_t i = 0; i < p; ++i) f.push_back(random_holomorphic(2, pick(), rng));
  for (std::size_t i = 0; i < q; ++i) g.push_back(random_holomorphic(2, pick(), rng));
  return HolomorphicRep(2, std::move(f), std::move(g));
}

/// Product of row norms; bounds |det m| and sets the scale of its roundoff.
inline double hadamard_bound(const Eigen::MatrixXcd& m) {
  double b = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) b *= m.row(i).norm();
  return b;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace posh::testing

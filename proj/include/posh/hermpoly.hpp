#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace posh {

using Complex = std::complex<double>;
using Point = Eigen::VectorXcd;

/// Exponent vector of a monomial z^alpha in C^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }

  std::size_t size() const { return exponents_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<int>& exponents() const { return exponents_; }

  MultiIndex operator+(const MultiIndex& other) const;

  /// z^alpha by repeated multiplication (exact for small integer inputs).
  Complex monomial(const Point& z) const;

  /// Removes coordinate `i`.
  MultiIndex drop(std::size_t i) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }
  /// Graded lexicographic: lower total degree first, then larger leading
  /// exponents first, so z1^4 < z1^3 z2 < ... < z2^4.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Holomorphic polynomial sum_alpha c_alpha z^alpha.
class HolomorphicPoly {
 public:
  HolomorphicPoly() = default;
  HolomorphicPoly(std::size_t n, std::map<MultiIndex, Complex> coeffs);

  std::size_t dim() const { return n_; }
  const std::map<MultiIndex, Complex>& coefficients() const { return coeffs_; }
  Complex evaluate(const Point& z) const;
  HolomorphicPoly scaled(Complex t) const;

 private:
  std::size_t n_ = 0;
  std::map<MultiIndex, Complex> coeffs_;
};

struct Term {
  MultiIndex a;
  MultiIndex b;
  Complex c;
};

/// R(z, conj w) = sum c_{ab} z^a conj(w)^b with c_{ab} = conj(c_{ba}).
///
/// Keys are kept even when their coefficient is exactly zero: the set of
/// stored multi-indices is the monomial basis over which the coefficient
/// matrix (and therefore the signature) is formed.
class HermitianPoly {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;

  HermitianPoly() = default;

  static HermitianPoly zero(std::size_t n) { return HermitianPoly(n, {}); }

  /// Merges duplicate (a, b) pairs by summation, then validates Hermitian
  /// symmetry to absolute tolerance `tol`. Throws NonHermitianInput or
  /// DimensionMismatch.
  static HermitianPoly from_terms(std::size_t n, std::span<const Term> terms,
                                  double tol = 1e-12);

  std::size_t dim() const { return n_; }
  const std::map<Key, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool is_zero() const;

  Complex evaluate(const Point& z, const Point& w) const;
  /// Real part of R(z, conj z); the imaginary part vanishes by symmetry.
  double evaluate_diag(const Point& z) const;

  /// Union of all occurring multi-indices, graded-lex sorted.
  std::vector<MultiIndex> support() const;
  Eigen::MatrixXcd coefficient_matrix() const;
  Eigen::MatrixXcd coefficient_matrix(const std::vector<MultiIndex>& basis) const;

  /// Common degree m when every term has |a| = |b| = m; m = 0 for the
  /// polynomial without terms.
  std::optional<int> bihomogeneous_degree() const;

  double max_abs_coefficient() const;

 private:
  friend HermitianPoly add(const HermitianPoly&, const HermitianPoly&);
  friend HermitianPoly scale(const HermitianPoly&, double);
  friend HermitianPoly multiply(const HermitianPoly&, const HermitianPoly&);
  friend HermitianPoly dehomogenize(const HermitianPoly&, std::size_t);

  HermitianPoly(std::size_t n, std::map<Key, Complex> terms)
      : n_(n), terms_(std::move(terms)) {}

  std::size_t n_ = 0;
  std::map<Key, Complex> terms_;
};

HermitianPoly add(const HermitianPoly& a, const HermitianPoly& b);
HermitianPoly scale(const HermitianPoly& a, double t);
HermitianPoly multiply(const HermitianPoly& a, const HermitianPoly& b);

/// R^d. Throws TermCountExceeded when the product would store more than
/// `max_terms` coefficient pairs.
HermitianPoly power(const HermitianPoly& r, int d, std::size_t max_terms = 1'000'000);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of the coefficient matrix. An eigenvalue e is zero iff
/// |e| <= rel_tol * max|eigenvalue|.
Signature signature(const HermitianPoly& r, double rel_tol = 1e-10);

/// R = ||f||^2 - ||g||^2 assembled from the eigendecomposition of the
/// coefficient matrix.
class HolomorphicRep {
 public:
  HolomorphicRep() = default;
  HolomorphicRep(std::size_t n, std::vector<HolomorphicPoly> f,
                 std::vector<HolomorphicPoly> g);

  std::size_t dim() const { return n_; }
  const std::vector<HolomorphicPoly>& f() const { return f_; }
  const std::vector<HolomorphicPoly>& g() const { return g_; }
  std::size_t p() const { return f_.size(); }
  std::size_t q() const { return g_.size(); }

  Eigen::VectorXcd f_values(const Point& z) const;
  Eigen::VectorXcd g_values(const Point& z) const;

  /// <f(z), f(w)> - <g(z), g(w)>.
  Complex reconstruct(const Point& z, const Point& w) const;

 private:
  std::size_t n_ = 0;
  std::vector<HolomorphicPoly> f_;
  std::vector<HolomorphicPoly> g_;
};

HolomorphicRep holomorphic_rep(const HermitianPoly& r, double rel_tol = 1e-10);

/// Expands ||f||^2 - ||g||^2 back into coefficient form.
HermitianPoly to_hermitian(const HolomorphicRep& rep);

std::optional<int> is_bihomogeneous(const HermitianPoly& r);

/// <z, w>^(2m) - lambda (z1 z2 conj(w1) conj(w2))^m on C^2. The middle
/// coefficient C(2m, m) - lambda is stored even when it is zero.
HermitianPoly dangelo_family(int m, double lambda);

/// z1^2 conj(w1)^2 + (c - 2) z1 z2 conj(w1 w2) + z2^2 conj(w2)^2.
HermitianPoly example1_family(double c);

/// Whether R^d has a positive semidefinite coefficient matrix.
bool power_positivity(const HermitianPoly& r, int d, double rel_tol = 1e-10,
                      std::size_t max_terms = 1'000'000);

double binomial(int n, int k);

/// Coefficient matrix and basis in a form suited to repeated evaluation:
/// R(z, conj w) = m(z)^T C conj(m(w)), with m the monomial vector.
class CompiledPoly {
 public:
  explicit CompiledPoly(const HermitianPoly& r);

  std::size_t dim() const { return n_; }
  const std::vector<MultiIndex>& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return coeffs_; }

  Eigen::VectorXcd monomials(const Point& z) const;
  /// Gram matrix G(i, j) = R(z_i, conj z_j) for the given points.
  Eigen::MatrixXcd gram(std::span<const Point> points) const;

 private:
  std::size_t n_;
  int max_exponent_ = 0;
  std::vector<MultiIndex> basis_;
  Eigen::MatrixXcd coeffs_;
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };
  std::vector<Entry> nonzeros_;
};

}  // namespace posh

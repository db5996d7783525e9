#include "posh/hermpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "posh/errors.hpp"

namespace posh {

namespace {

Complex ipow(Complex z, int e) {
  Complex out(1.0, 0.0);
  Complex base = z;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

std::string describe(const MultiIndex& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

void check_dims(const HermitianPoly& a, const HermitianPoly& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("polynomials live in C^" + std::to_string(a.dim()) +
                            " and C^" + std::to_string(b.dim()));
  }
}

void check_point(std::size_t n, const Point& z) {
  if (static_cast<std::size_t>(z.size()) != n) {
    throw DimensionMismatch("point has " + std::to_string(z.size()) +
                            " coordinates, polynomial expects " + std::to_string(n));
  }
}

// Makes c_{ba} the exact conjugate of c_{ab}. Only used on results of our own
// arithmetic, where the two partners were accumulated in different orders.
void make_exactly_hermitian(std::map<HermitianPoly::Key, Complex>& terms) {
  for (auto& [key, c] : terms) {
    if (key.first == key.second) {
      c = Complex(c.real(), 0.0);
    } else if (key.first < key.second) {
      auto it = terms.find({key.second, key.first});
      if (it != terms.end()) it->second = std::conj(c);
    }
  }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw Error("multi-index exponents must be nonnegative");
    degree_ += e;
  }
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionMismatch("multi-index lengths differ");
  std::vector<int> out(exponents_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.exponents_[i];
  return MultiIndex(std::move(out));
}

Complex MultiIndex::monomial(const Point& z) const {
  Complex out(1.0, 0.0);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] != 0) out *= ipow(z[static_cast<Eigen::Index>(i)], exponents_[i]);
  }
  return out;
}

MultiIndex MultiIndex::drop(std::size_t i) const {
  std::vector<int> out;
  out.reserve(exponents_.size() - 1);
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if (j != i) out.push_back(exponents_[j]);
  }
  return MultiIndex(std::move(out));
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  return a.exponents_ > b.exponents_;
}

HolomorphicPoly::HolomorphicPoly(std::size_t n, std::map<MultiIndex, Complex> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  for (const auto& [a, c] : coeffs_) {
    if (a.size() != n_) throw DimensionMismatch("monomial " + describe(a) + " not in C^" + std::to_string(n_));
  }
}

Complex HolomorphicPoly::evaluate(const Point& z) const {
  check_point(n_, z);
  Complex sum(0.0, 0.0);
  for (const auto& [a, c] : coeffs_) sum += c * a.monomial(z);
  return sum;
}

HolomorphicPoly HolomorphicPoly::scaled(Complex t) const {
  auto out = coeffs_;
  for (auto& [a, c] : out) c *= t;
  return HolomorphicPoly(n_, std::move(out));
}

HermitianPoly HermitianPoly::from_terms(std::size_t n, std::span<const Term> terms, double tol) {
  std::map<Key, Complex> merged;
  for (const auto& t : terms) {
    if (t.a.size() != n || t.b.size() != n) {
      throw DimensionMismatch("term " + describe(t.a) + "x" + describe(t.b) +
                              " does not match dimension " + std::to_string(n));
    }
    if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag())) {
      throw Error("non-finite coefficient at " + describe(t.a) + "x" + describe(t.b));
    }
    merged[{t.a, t.b}] += t.c;
  }
  for (const auto& [key, c] : merged) {
    auto it = merged.find({key.second, key.first});
    const Complex partner = it == merged.end() ? Complex(0.0, 0.0) : std::conj(it->second);
    if (std::abs(c - partner) > tol || (it == merged.end() && key.first != key.second)) {
      throw NonHermitianInput("coefficient at " + describe(key.first) + "x" +
                              describe(key.second) +
                              " is not the conjugate of its transposed partner");
    }
  }
  return HermitianPoly(n, std::move(merged));
}

bool HermitianPoly::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
}

Complex HermitianPoly::evaluate(const Point& z, const Point& w) const {
  check_point(n_, z);
  check_point(n_, w);
  Complex sum(0.0, 0.0);
  for (const auto& [key, c] : terms_) {
    if (c == Complex(0.0, 0.0)) continue;
    sum += c * key.first.monomial(z) * std::conj(key.second.monomial(w));
  }
  return sum;
}

double HermitianPoly::evaluate_diag(const Point& z) const { return evaluate(z, z).real(); }

std::vector<MultiIndex> HermitianPoly::support() const {
  std::set<MultiIndex> all;
  for (const auto& [key, c] : terms_) {
    all.insert(key.first);
    all.insert(key.second);
  }
  return {all.begin(), all.end()};
}

Eigen::MatrixXcd HermitianPoly::coefficient_matrix() const {
  return coefficient_matrix(support());
}

Eigen::MatrixXcd HermitianPoly::coefficient_matrix(const std::vector<MultiIndex>& basis) const {
  const auto size = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(size, size);
  auto index_of = [&](const MultiIndex& a) {
    auto it = std::lower_bound(basis.begin(), basis.end(), a);
    if (it == basis.end() || !(*it == a)) throw Error("basis does not contain " + describe(a));
    return static_cast<Eigen::Index>(it - basis.begin());
  };
  for (const auto& [key, c] : terms_) out(index_of(key.first), index_of(key.second)) = c;
  return out;
}

std::optional<int> HermitianPoly::bihomogeneous_degree() const {
  if (terms_.empty()) return 0;
  const int m = terms_.begin()->first.first.degree();
  for (const auto& [key, c] : terms_) {
    if (key.first.degree() != m || key.second.degree() != m) return std::nullopt;
  }
  return m;
}

double HermitianPoly::max_abs_coefficient() const {
  double out = 0.0;
  for (const auto& [key, c] : terms_) out = std::max(out, std::abs(c));
  return out;
}

HermitianPoly add(const HermitianPoly& a, const HermitianPoly& b) {
  check_dims(a, b);
  auto out = a.terms_;
  for (const auto& [key, c] : b.terms_) out[key] += c;
  return HermitianPoly(a.n_, std::move(out));
}

HermitianPoly scale(const HermitianPoly& a, double t) {
  auto out = a.terms_;
  for (auto& [key, c] : out) c *= t;
  return HermitianPoly(a.n_, std::move(out));
}

HermitianPoly multiply(const HermitianPoly& a, const HermitianPoly& b) {
  check_dims(a, b);
  std::map<HermitianPoly::Key, Complex> out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    }
  }
  make_exactly_hermitian(out);
  return HermitianPoly(a.n_, std::move(out));
}

HermitianPoly power(const HermitianPoly& r, int d, std::size_t max_terms) {
  if (d < 1) throw Error("power requires d >= 1");
  // The support of R^d is contained in d-fold sums of the support of R.
  // Bound the number of monomials and refuse before multiplying.
  const auto basis = r.support();
  if (!basis.empty()) {
    std::set<MultiIndex> level(basis.begin(), basis.end());
    for (int i = 1; i < d; ++i) {
      std::set<MultiIndex> next;
      for (const auto& x : level) {
        for (const auto& y : basis) next.insert(x + y);
      }
      level = std::move(next);
      const double pairs = static_cast<double>(level.size()) * static_cast<double>(level.size());
      if (pairs > static_cast<double>(max_terms)) {
        throw TermCountExceeded("R^" + std::to_string(d) + " would need up to " +
                                std::to_string(static_cast<long long>(pairs)) +
                                " coefficient pairs (cap " + std::to_string(max_terms) + ")");
      }
    }
  }
  HermitianPoly out = r;
  for (int i = 1; i < d; ++i) out = multiply(out, r);
  if (out.terms().size() > max_terms) throw TermCountExceeded("R^d exceeds the term cap");
  return out;
}

Signature signature(const HermitianPoly& r, double rel_tol) {
  Signature sig;
  if (r.empty()) return sig;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.coefficient_matrix(),
                                                         Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double radius = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= rel_tol * radius) {
      ++sig.zero;
    } else if (ev[i] > 0) {
      ++sig.positive;
    } else {
      ++sig.negative;
    }
  }
  return sig;
}

HolomorphicRep::HolomorphicRep(std::size_t n, std::vector<HolomorphicPoly> f,
                               std::vector<HolomorphicPoly> g)
    : n_(n), f_(std::move(f)), g_(std::move(g)) {
  for (const auto* list : {&f_, &g_}) {
    for (const auto& h : *list) {
      if (h.dim() != n_) throw DimensionMismatch("representation component has wrong dimension");
    }
  }
}

Eigen::VectorXcd HolomorphicRep::f_values(const Point& z) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(f_.size()));
  for (std::size_t j = 0; j < f_.size(); ++j) out[static_cast<Eigen::Index>(j)] = f_[j].evaluate(z);
  return out;
}

Eigen::VectorXcd HolomorphicRep::g_values(const Point& z) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(g_.size()));
  for (std::size_t j = 0; j < g_.size(); ++j) out[static_cast<Eigen::Index>(j)] = g_[j].evaluate(z);
  return out;
}

Complex HolomorphicRep::reconstruct(const Point& z, const Point& w) const {
  // <u, v> = sum u_j conj(v_j); Eigen's dot conjugates its left argument.
  const Complex ff = f_values(w).dot(f_values(z));
  const Complex gg = g_.empty() ? Complex(0.0, 0.0) : g_values(w).dot(g_values(z));
  return ff - gg;
}

HolomorphicRep holomorphic_rep(const HermitianPoly& r, double rel_tol) {
  std::vector<HolomorphicPoly> f, g;
  if (r.empty()) return HolomorphicRep(r.dim(), {}, {});
  const auto basis = r.support();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.coefficient_matrix(basis));
  const Eigen::VectorXd& mu = solver.eigenvalues();
  const Eigen::MatrixXcd& u = solver.eigenvectors();
  const double radius = mu.cwiseAbs().maxCoeff();
  // Descending order puts the dominant positive components first.
  for (Eigen::Index j = mu.size() - 1; j >= 0; --j) {
    if (std::abs(mu[j]) <= rel_tol * radius) continue;
    const double w = std::sqrt(std::abs(mu[j]));
    std::map<MultiIndex, Complex> coeffs;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const Complex c = w * u(static_cast<Eigen::Index>(a), j);
      if (c != Complex(0.0, 0.0)) coeffs.emplace(basis[a], c);
    }
    (mu[j] > 0 ? f : g).emplace_back(r.dim(), std::move(coeffs));
  }
  return HolomorphicRep(r.dim(), std::move(f), std::move(g));
}

HermitianPoly to_hermitian(const HolomorphicRep& rep) {
  std::map<std::pair<MultiIndex, MultiIndex>, Complex> acc;
  auto accumulate = [&](const HolomorphicPoly& h, double sign) {
    for (const auto& [a, ca] : h.coefficients()) {
      for (const auto& [b, cb] : h.coefficients()) acc[{a, b}] += sign * ca * std::conj(cb);
    }
  };
  for (const auto& h : rep.f()) accumulate(h, 1.0);
  for (const auto& h : rep.g()) accumulate(h, -1.0);
  // Partners accumulate exactly conjugate products in the same order.
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [key, c] : acc) terms.push_back({key.first, key.second, c});
  return HermitianPoly::from_terms(rep.dim(), terms);
}

std::optional<int> is_bihomogeneous(const HermitianPoly& r) { return r.bihomogeneous_degree(); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

HermitianPoly dangelo_family(int m, double lambda) {
  if (m < 1) throw Error("dangelo_family requires m >= 1");
  const int d = 2 * m;
  std::vector<Term> terms;
  for (int j = 0; j <= d; ++j) {
    MultiIndex a{d - j, j};
    double c = binomial(d, j);
    if (j == m) c -= lambda;
    terms.push_back({a, a, Complex(c, 0.0)});
  }
  return HermitianPoly::from_terms(2, terms);
}

HermitianPoly example1_family(double c) {
  const std::vector<Term> terms{
      {MultiIndex{2, 0}, MultiIndex{2, 0}, Complex(1.0, 0.0)},
      {MultiIndex{1, 1}, MultiIndex{1, 1}, Complex(c - 2.0, 0.0)},
      {MultiIndex{0, 2}, MultiIndex{0, 2}, Complex(1.0, 0.0)},
  };
  return HermitianPoly::from_terms(2, terms);
}

bool power_positivity(const HermitianPoly& r, int d, double rel_tol, std::size_t max_terms) {
  return signature(power(r, d, max_terms), rel_tol).negative == 0;
}

CompiledPoly::CompiledPoly(const HermitianPoly& r)
    : n_(r.dim()), basis_(r.support()), coeffs_(r.coefficient_matrix(basis_)) {
  for (const auto& a : basis_) {
    for (int e : a.exponents()) max_exponent_ = std::max(max_exponent_, e);
  }
  for (Eigen::Index i = 0; i < coeffs_.rows(); ++i) {
    for (Eigen::Index j = 0; j < coeffs_.cols(); ++j) {
      if (coeffs_(i, j) != Complex(0.0)) nonzeros_.push_back({i, j, coeffs_(i, j)});
    }
  }
}

Eigen::VectorXcd CompiledPoly::monomials(const Point& z) const {
  check_point(n_, z);
  // Power table per coordinate, then one product per basis element.
  const auto cols = static_cast<Eigen::Index>(max_exponent_ + 1);
  Eigen::MatrixXcd pw(static_cast<Eigen::Index>(n_), cols);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n_); ++i) {
    pw(i, 0) = 1.0;
    for (Eigen::Index e = 1; e < cols; ++e) pw(i, e) = pw(i, e - 1) * z[i];
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    Complex v(1.0, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const int e = basis_[a][i];
      if (e) v *= pw(static_cast<Eigen::Index>(i), e);
    }
    out[static_cast<Eigen::Index>(a)] = v;
  }
  return out;
}

Eigen::MatrixXcd CompiledPoly::gram(std::span<const Point> points) const {
  const auto k = static_cast<Eigen::Index>(points.size());
  const auto nb = static_cast<Eigen::Index>(basis_.size());
  if (nb == 0) return Eigen::MatrixXcd::Zero(k, k);
  Eigen::MatrixXcd mono(k, nb);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Point& z = points[static_cast<std::size_t>(i)];
    check_point(n_, z);
    for (Eigen::Index a = 0; a < nb; ++a) mono(i, a) = basis_[static_cast<std::size_t>(a)].monomial(z);
  }
  // Coefficient matrices of structured families are mostly zero, so the
  // products run over the stored nonzeros only.
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      Complex acc(0.0, 0.0);
      for (const Entry& e : nonzeros_) acc += e.value * mono(i, e.row) * std::conj(mono(j, e.col));
      g(i, j) = acc;
    }
    g(i, i) = Complex(g(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < k; ++j) g(j, i) = std::conj(g(i, j));
  }
  return g;
}

}  // namespace posh

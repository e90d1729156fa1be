#pragma once

// Sparse polynomials over F_p in the variables x_{i,j} of V^*.

#include "modcov/repmod.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace modcov {

using Coeff = std::uint32_t;
using Exponent = std::uint16_t;

/// x_{i,j}: row i (1..n_j) of block j (1..m).
struct Variable {
  int i;
  int j;
  bool operator==(const Variable&) const = default;
};

/// The coordinate ring k[V] together with its variable layout. Variables are
/// numbered block-major, row-minor: x_{1,1}, x_{2,1}, .., x_{1,2}, ...
class PolyRing {
 public:
  explicit PolyRing(ModuleSpec v);

  const ModuleSpec& module() const { return module_; }
  const PrimeField& field() const { return module_.field(); }
  std::uint32_t p() const { return module_.p(); }
  int nvars() const { return module_.dim(); }
  int m() const { return module_.m(); }
  /// 0-based offset of block j (0-based) in the variable numbering.
  int block_offset(int j) const { return offsets_.at(static_cast<std::size_t>(j)); }
  int var_index(Variable v) const;
  Variable variable(int index) const;

  bool operator==(const PolyRing& other) const { return module_ == other.module_; }

 private:
  ModuleSpec module_;
  std::vector<int> offsets_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(const ModuleSpec& v);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Exponent> exponents) : exps_(std::move(exponents)) {}
  static Monomial one(int nvars) { return Monomial(std::vector<Exponent>(nvars, 0)); }
  static Monomial var(int nvars, int index, Exponent e = 1);

  const std::vector<Exponent>& exponents() const { return exps_; }
  Exponent operator[](int k) const { return exps_[static_cast<std::size_t>(k)]; }
  int size() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  std::vector<int> multidegree(const PolyRing& ring) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// this / other; requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Exponent> exps_;
};

/// Canonical order: total degree descending, then lexicographic with the
/// block-major variable numbering (x_{1,1} > x_{2,1} > ... > x_{1,2} > ...).
/// Returns true when a comes before b.
struct TermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Coeff, TermOrder>;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  static Polynomial constant(RingPtr ring, Coeff c);
  static Polynomial variable(RingPtr ring, Variable v);
  static Polynomial monomial(RingPtr ring, const Monomial& mono, Coeff c = 1);

  const RingPtr& ring() const { return ring_; }
  const PrimeField& field() const { return ring_->field(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coefficient(const Monomial& mono) const;
  /// Adds c * mono, dropping the term if it cancels.
  void add_term(const Monomial& mono, Coeff c);

  /// Largest total degree of a term; -1 for the zero polynomial.
  int degree() const;
  /// True for zero and for polynomials whose terms share one total degree.
  bool is_homogeneous() const;
  /// Multidegree when all terms share one; empty otherwise (or for zero).
  std::optional<std::vector<int>> multidegree() const;
  /// Largest exponent of variable index k appearing in any term.
  int degree_in(int var) const;

  std::map<int, Polynomial> homogeneous_components() const;
  std::map<std::vector<int>, Polynomial> multihomogeneous_components() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(Coeff c);
  Polynomial operator-() const;
  Polynomial pow(unsigned e) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Coeff c) { return a *= c; }
  friend Polynomial operator*(Coeff c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial& other) const;

 private:
  void check_ring(const Polynomial& other) const;

  RingPtr ring_;
  Terms terms_;
};

}  // namespace modcov

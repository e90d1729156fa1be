#include "modcov/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace modcov {

PolyRing::PolyRing(ModuleSpec v) : module_(std::move(v)) {
  int offset = 0;
  for (int n : module_.blocks()) {
    offsets_.push_back(offset);
    offset += n;
  }
}

int PolyRing::var_index(Variable v) const {
  if (v.j < 1 || v.j > m()) throw std::out_of_range("block index " + std::to_string(v.j));
  if (v.i < 1 || v.i > module_.block(v.j - 1))
    throw std::out_of_range("row index " + std::to_string(v.i) + " in block " +
                            std::to_string(v.j));
  return offsets_[static_cast<std::size_t>(v.j - 1)] + v.i - 1;
}

Variable PolyRing::variable(int index) const {
  if (index < 0 || index >= nvars()) throw std::out_of_range("variable index");
  int j = m() - 1;
  while (offsets_[static_cast<std::size_t>(j)] > index) --j;
  return {index - offsets_[static_cast<std::size_t>(j)] + 1, j + 1};
}

RingPtr make_ring(const ModuleSpec& v) { return std::make_shared<const PolyRing>(v); }

Monomial Monomial::var(int nvars, int index, Exponent e) {
  std::vector<Exponent> exps(static_cast<std::size_t>(nvars), 0);
  exps.at(static_cast<std::size_t>(index)) = e;
  return Monomial(std::move(exps));
}

int Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

std::vector<int> Monomial::multidegree(const PolyRing& ring) const {
  std::vector<int> md(static_cast<std::size_t>(ring.m()), 0);
  for (int j = 0; j < ring.m(); ++j) {
    const int off = ring.block_offset(j);
    for (int i = 0; i < ring.module().block(j); ++i)
      md[static_cast<std::size_t>(j)] += exps_[static_cast<std::size_t>(off + i)];
  }
  return md;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Exponent> e(exps_);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<Exponent>(e[k] + other.exps_[k]);
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t k = 0; k < exps_.size(); ++k)
    if (exps_[k] > other.exps_[k]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& other) const {
  std::vector<Exponent> e(exps_);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<Exponent>(e[k] - other.exps_[k]);
  return Monomial(std::move(e));
}

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

Polynomial Polynomial::constant(RingPtr ring, Coeff c) {
  const int n = ring->nvars();
  Polynomial f(std::move(ring));
  f.add_term(Monomial::one(n), c);
  return f;
}

Polynomial Polynomial::variable(RingPtr ring, Variable v) {
  const int idx = ring->var_index(v);
  const int n = ring->nvars();
  Polynomial f(std::move(ring));
  f.add_term(Monomial::var(n, idx), 1);
  return f;
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& mono, Coeff c) {
  if (mono.size() != ring->nvars()) throw std::invalid_argument("monomial arity mismatch");
  Polynomial f(std::move(ring));
  f.add_term(mono, c);
  return f;
}

Coeff Polynomial::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const Monomial& mono, Coeff c) {
  c %= field().p();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (inserted) return;
  it->second = field().add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

std::optional<std::vector<int>> Polynomial::multidegree() const {
  if (terms_.empty()) return std::nullopt;
  std::vector<int> md = terms_.begin()->first.multidegree(*ring_);
  for (const auto& [mono, c] : terms_)
    if (mono.multidegree(*ring_) != md) return std::nullopt;
  return md;
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [mono, c] : terms_) d = std::max<int>(d, mono[var]);
  return d;
}

std::map<int, Polynomial> Polynomial::homogeneous_components() const {
  std::map<int, Polynomial> out;
  for (const auto& [mono, c] : terms_)
    out.try_emplace(mono.degree(), ring_).first->second.terms_.emplace(mono, c);
  return out;
}

std::map<std::vector<int>, Polynomial> Polynomial::multihomogeneous_components() const {
  std::map<std::vector<int>, Polynomial> out;
  for (const auto& [mono, c] : terms_)
    out.try_emplace(mono.multidegree(*ring_), ring_).first->second.terms_.emplace(mono, c);
  return out;
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (ring_ != other.ring_ && !(*ring_ == *other.ring_))
    throw std::invalid_argument("polynomials live in different rings");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [mono, c] : other.terms_) add_term(mono, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [mono, c] : other.terms_) add_term(mono, field().neg(c));
  return *this;
}

Polynomial& Polynomial::operator*=(Coeff c) {
  c %= field().p();
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff = field().mul(coeff, c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [mono, coeff] : out.terms_) coeff = field().neg(coeff);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  Polynomial out(a.ring_);
  const PrimeField& f = a.field();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, f.mul(ca, cb));
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return (ring_ == other.ring_ || *ring_ == *other.ring_) && terms_ == other.terms_;
}

}  // namespace modcov

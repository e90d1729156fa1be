#pragma once

// Covariants h = f_1 w_1 + ... + f_n w_n in k[V,W]^G for W = V_n, and the
// constructive decompositions built on them.

#include "modcov/polyact.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace modcov {

class Covariant {
 public:
  /// Validates equivariance and the chain property f_j = Delta^{j-1}(f_1).
  /// Missing trailing components are taken to be zero. W must be a single block.
  Covariant(RingPtr ring, ModuleSpec w, std::vector<Polynomial> components);
  static Covariant zero(RingPtr ring, ModuleSpec w);

  const RingPtr& ring() const { return ring_; }
  const ModuleSpec& w() const { return w_; }
  int n() const { return w_.dim(); }
  const std::vector<Polynomial>& components() const { return f_; }
  /// f_j, 1-based.
  const Polynomial& component(int j) const { return f_.at(static_cast<std::size_t>(j - 1)); }

  bool is_zero() const { return f_.front().is_zero(); }
  /// Largest j with f_j != 0; 0 for the zero covariant.
  int support() const;
  int degree() const { return f_.front().degree(); }
  /// Multidegree of f_1; empty when f_1 is zero or not multihomogeneous.
  std::optional<std::vector<int>> multidegree() const { return f_.front().multidegree(); }

  Covariant& operator+=(const Covariant& other);
  Covariant& operator-=(const Covariant& other);
  friend Covariant operator+(Covariant a, const Covariant& b) { return a += b; }
  friend Covariant operator-(Covariant a, const Covariant& b) { return a -= b; }
  /// q h for an invariant q. Throws std::invalid_argument otherwise.
  friend Covariant operator*(const Polynomial& q, const Covariant& h);

  bool operator==(const Covariant& other) const;

 private:
  struct Unchecked {};
  Covariant(Unchecked, RingPtr ring, ModuleSpec w, std::vector<Polynomial> components);
  void check_compatible(const Covariant& other) const;

  RingPtr ring_;
  ModuleSpec w_;
  std::vector<Polynomial> f_;

  friend Covariant from_weight_poly(const Polynomial& f, const ModuleSpec& w);
  friend Covariant make_transfer_covariant(const Polynomial& f, const ModuleSpec& w, int s);
};

/// sum_i sigma(f_i) sigma(w_i) == sum_i f_i w_i, using the signed W-action.
bool is_equivariant(const ModuleSpec& w, const std::vector<Polynomial>& components);

/// (f, Delta f, ..., Delta^{d-1} f, 0, ...) for f of weight d <= dim W.
Covariant from_weight_poly(const Polynomial& f, const ModuleSpec& w);
/// f_1 of a nonzero covariant, after re-validating the chain.
Polynomial to_weight_poly(const Covariant& h);

/// Basis of k[V,W]^G_d: kernel of sigma (x) sigma_W - 1 on k[V]_d (x) W,
/// computed one multidegree at a time.
std::vector<Covariant> covariant_basis(const RingPtr& ring, const ModuleSpec& w, int d);
std::vector<Covariant> covariant_basis(const RingPtr& ring, const ModuleSpec& w,
                                       const std::vector<int>& multidegree);

/// (Delta^{p-s} f, ..., Delta^{p-1} f, 0, ...), 1 <= s <= min(n, p). This is a
/// transfer covariant of support s when Delta^{p-1} f != 0.
Covariant make_transfer_covariant(const Polynomial& f, const ModuleSpec& w, int s);
/// Some f with f_1 = Delta^{p-s(h)}(f), or empty. h must be nonzero.
std::optional<Polynomial> is_transfer_covariant(const Covariant& h);

/// A linear solve that the theory guarantees failed.
class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NormSplit {
  Covariant h1;
  Covariant h2;
  /// h2 = make_transfer_covariant(witness, W, h2.support()) (zero when h2 is).
  Polynomial witness;
};

/// h = N_j h1 + h2 with h2 a transfer covariant. Every multihomogeneous
/// component of h must have d_j > p - n_j; std::invalid_argument otherwise.
NormSplit split_off_norm(const Covariant& h, int j);

struct ScaledCovariant {
  Polynomial q;
  Covariant c;
};

/// Writes a homogeneous transfer covariant of degree > gamma as sum q_i c_i
/// with q_i positive-degree invariants and deg c_i < deg h. module_gens must
/// be homogeneous generators of k[V] over k[V]^G of degree <= gamma.
std::vector<ScaledCovariant> decompose_transfer_covariant(
    const Covariant& h, const std::vector<Polynomial>& module_gens, int gamma);

}  // namespace modcov

#pragma once

// Randomized checks shared by the gtest property suite and the acceptance
// binary. Each check draws one case and returns a description on failure.

#include "modcov/covariant.hpp"
#include "modcov/gens.hpp"
#include "modcov/poly_io.hpp"
#include "support.hpp"

#include <optional>
#include <string>

namespace modcov::testing {

using Failure = std::optional<std::string>;

inline std::string describe(const Polynomial& f) {
  return to_string(f) + " over " + f.ring()->module().label() + " p=" + std::to_string(f.ring()->p());
}

inline Polynomial nonzero_polynomial(Rng& rng, const RingPtr& ring, int max_degree = 4) {
  for (;;) {
    Polynomial f = random_polynomial(rng, ring, max_degree);
    if (!f.is_zero()) return f;
  }
}

/// Delta^{p-1} f equals the orbit sum of f, term for term.
inline Failure check_transfer(Rng& rng, std::uint32_t p) {
  const Polynomial f = random_polynomial(rng, make_ring(random_module(rng, p)));
  if (transfer(f).terms() != transfer_orbit_sum(f).terms()) return "transfer mismatch for " + describe(f);
  return std::nullopt;
}

/// sigma^p = id and Delta^p = 0.
inline Failure check_sigma_order(Rng& rng, std::uint32_t p) {
  const Polynomial f = random_polynomial(rng, make_ring(random_module(rng, p)));
  if (!(apply_sigma_power(f, p) == f)) return "sigma^p != id on " + describe(f);
  if (!delta_power(f, p).is_zero()) return "Delta^p != 0 on " + describe(f);
  return std::nullopt;
}

/// from_weight_poly output is equivariant; covariant_basis elements survive
/// re-validation of the chain and of equivariance.
inline Failure check_covariant_outputs(Rng& rng, std::uint32_t p) {
  const int q = static_cast<int>(p);
  const RingPtr ring = make_ring(random_module(rng, p));
  const Polynomial f = nonzero_polynomial(rng, ring);
  const ModuleSpec w(ring->field(), {uniform(rng, weight(f), q)});
  const Covariant h = from_weight_poly(f, w);
  if (!is_equivariant(w, h.components())) return "from_weight_poly not equivariant for " + describe(f);

  const RingPtr small = make_ring(random_module(rng, p, 2, 3));
  const ModuleSpec w2(small->field(), {uniform(rng, 1, q)});
  const auto basis = covariant_basis(small, w2, uniform(rng, 0, p > 5 ? 2 : 3));
  const Covariant c = random_combination(rng, basis, Covariant::zero(small, w2));
  try {
    Covariant again(small, w2, c.components());
    if (!(again == c) || !is_equivariant(w2, c.components())) return std::string("basis element fails re-validation");
  } catch (const std::invalid_argument& e) {
    return std::string("basis element rejected: ") + e.what();
  }
  return std::nullopt;
}

/// f = q N_j + r with deg_{x_{1,j}} r < p.
inline Failure check_divide_by_norm(Rng& rng, std::uint32_t p) {
  const RingPtr ring = make_ring(random_module(rng, p));
  const int j = uniform(rng, 1, ring->m());
  Polynomial f = random_polynomial(rng, ring, 3);
  // Bias towards x_{1,j}-degree >= p so the quotient is usually nonzero.
  f += random_polynomial(rng, ring, 2) *
       Polynomial::monomial(ring, Monomial::var(ring->nvars(), ring->block_offset(j - 1),
                                                static_cast<Exponent>(uniform(rng, 0, 2 * static_cast<int>(p)))));
  const NormDivision qr = divide_by_norm(f, j);
  if (!(qr.quotient * norm(ring, j) + qr.remainder == f)) return "f != qN + r for " + describe(f);
  if (!qr.remainder.is_zero() && qr.remainder.degree_in(ring->block_offset(j - 1)) >= static_cast<int>(p))
    return "remainder too large for " + describe(f);
  return std::nullopt;
}

/// Delta(q f) = q Delta(f) for an invariant q.
inline Failure check_delta_linearity(Rng& rng, std::uint32_t p) {
  const RingPtr ring = make_ring(random_module(rng, p, 2, 3));
  const auto basis = invariant_basis(ring, uniform(rng, 0, 3));
  const Polynomial q = random_combination(rng, basis, Polynomial(ring));
  const Polynomial f = random_polynomial(rng, ring, 3);
  if (!(delta(q * f) == q * delta(f))) return "Delta(qf) != q Delta(f) with q = " + describe(q);
  return std::nullopt;
}

/// Norm splitting at p = 3 for V in {V_2, V_3, V_2 + V_2}: h = N_j h1 + h2, and
/// h2 is the Delta-chain of the witness ending at Delta^{p-1}.
inline Failure check_norm_split(Rng& rng) {
  const PrimeField field(3);
  const std::vector<std::vector<int>> shapes{{2}, {3}, {2, 2}};
  const ModuleSpec v(field, shapes[static_cast<std::size_t>(uniform(rng, 0, 2))]);
  const RingPtr ring = make_ring(v);
  const int j = uniform(rng, 1, v.m());
  const int threshold = 3 - v.block(j - 1);
  const ModuleSpec w(field, {uniform(rng, 1, 3)});
  for (;;) {
    const int degree = uniform(rng, threshold + 1, 5);
    std::vector<Covariant> basis;
    for (const auto& md : multidegrees(v.m(), degree)) {
      if (md[static_cast<std::size_t>(j - 1)] <= threshold) continue;
      auto part = covariant_basis(ring, w, md);
      basis.insert(basis.end(), part.begin(), part.end());
    }
    const Covariant h = random_combination(rng, basis, Covariant::zero(ring, w));
    if (h.is_zero()) continue;
    const NormSplit s = split_off_norm(h, j);
    if (!(norm(ring, j) * s.h1 + s.h2 == h)) return "h != N_j h1 + h2 for " + describe(h.component(1));
    if (s.h2.is_zero()) return std::nullopt;
    const int k = s.h2.support();
    if (!(s.h2 == make_transfer_covariant(s.witness, w, k)))
      return "h2 is not the chain of its witness for " + describe(h.component(1));
    if (!(s.h2.component(k) == transfer(s.witness)))
      return "h2 does not end at Delta^{p-1} for " + describe(h.component(1));
    return std::nullopt;
  }
}

/// Transfer covariants over V_2 at p = 3 of degree > gamma are sums q_i c_i.
inline Failure check_transfer_decomposition(Rng& rng, const std::vector<Polynomial>& module_gens,
                                            int gamma) {
  const RingPtr ring = module_gens.front().ring();
  for (;;) {
    const Polynomial f = random_homogeneous(rng, ring, uniform(rng, gamma + 1, gamma + 4));
    if (transfer(f).is_zero()) continue;
    const int n = uniform(rng, 1, 3);
    const Covariant h = make_transfer_covariant(f, ModuleSpec(ring->field(), {n}), uniform(rng, 1, n));
    Covariant sum = Covariant::zero(ring, h.w());
    for (const auto& [q, c] : decompose_transfer_covariant(h, module_gens, gamma)) {
      if (q.degree() < 1 || !is_invariant(q)) return "coefficient not a positive-degree invariant";
      if (c.degree() >= h.degree()) return "summand not of lower degree";
      sum += q * c;
    }
    if (!(sum == h)) return "reconstruction failed for witness " + describe(f);
    return std::nullopt;
  }
}

/// parse(to_string(f)) == f and the string is a fixed point.
inline Failure check_parser_round_trip(Rng& rng, std::uint32_t p) {
  const RingPtr ring = make_ring(random_module(rng, p));
  const Polynomial f = random_polynomial(rng, ring, 6, 8);
  const std::string s = to_string(f);
  const Polynomial g = parse_polynomial(ring, s);
  if (!(g == f)) return "round trip changed " + s;
  if (to_string(g) != s) return "serialization not canonical: " + s;
  return std::nullopt;
}

}  // namespace modcov::testing

#pragma once

// Random sampling shared by the unit, property and acceptance tests.

#include "modcov/covariant.hpp"
#include "modcov/polyact.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace modcov::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// 1..max_blocks blocks of size 1..min(p, max_size).
inline ModuleSpec random_module(Rng& rng, std::uint32_t p, int max_blocks = 3, int max_size = 4) {
  const int top = std::min(static_cast<int>(p), max_size);
  std::vector<int> blocks(static_cast<std::size_t>(uniform(rng, 1, max_blocks)));
  for (int& n : blocks) n = uniform(rng, 1, top);
  return ModuleSpec(PrimeField(p), blocks);
}

inline Monomial random_monomial(Rng& rng, int nvars, int degree) {
  std::vector<Exponent> e(static_cast<std::size_t>(nvars), 0);
  for (int k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(uniform(rng, 0, nvars - 1))];
  return Monomial(e);
}

/// Up to max_terms random terms of degree <= max_degree (possibly zero).
inline Polynomial random_polynomial(Rng& rng, const RingPtr& ring, int max_degree = 4,
                                    int max_terms = 5) {
  Polynomial f(ring);
  const int terms = uniform(rng, 0, max_terms);
  for (int t = 0; t < terms; ++t)
    f.add_term(random_monomial(rng, ring->nvars(), uniform(rng, 0, max_degree)),
               static_cast<Coeff>(uniform(rng, 1, static_cast<int>(ring->p()) - 1)));
  return f;
}

inline Polynomial random_homogeneous(Rng& rng, const RingPtr& ring, int degree, int max_terms = 5) {
  Polynomial f(ring);
  const int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t)
    f.add_term(random_monomial(rng, ring->nvars(), degree),
               static_cast<Coeff>(uniform(rng, 1, static_cast<int>(ring->p()) - 1)));
  return f;
}

template <typename T>
T random_combination(Rng& rng, const std::vector<T>& basis, T zero) {
  const int p = static_cast<int>(zero.ring()->p());
  for (const T& b : basis) {
    const auto c = static_cast<Coeff>(uniform(rng, 0, p - 1));
    if (c == 0) continue;
    if constexpr (std::is_same_v<T, Polynomial>) zero += c * b;
    else zero += Polynomial::constant(zero.ring(), c) * b;
  }
  return zero;
}

}  // namespace modcov::testing

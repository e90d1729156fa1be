#pragma once

// The G-action on k[V]: sigma, Delta = sigma - 1, the transfer, weights,
// norms, division by a norm and graded-piece linear algebra.
//
// Block indices j are 1-based, matching the variable names x_{i,j}.

#include "modcov/graded_piece.hpp"
#include "modcov/polynomial.hpp"

#include <optional>
#include <vector>

namespace modcov {

/// Ring automorphism sigma(x_{i,j}) = x_{i,j} + x_{i+1,j}, x_{n_j,j} fixed.
Polynomial apply_sigma(const Polynomial& f);
Polynomial apply_sigma_power(const Polynomial& f, unsigned k);
Polynomial delta(const Polynomial& f);
Polynomial delta_power(const Polynomial& f, unsigned k);
/// Tr(f) computed as Delta^{p-1}(f).
Polynomial transfer(const Polynomial& f);
/// Tr(f) computed as the orbit sum sum_{i<p} sigma^i(f).
Polynomial transfer_orbit_sum(const Polynomial& f);
bool is_invariant(const Polynomial& f);

/// Smallest d >= 1 with Delta^d(f) = 0. Throws std::invalid_argument for 0.
int weight(const Polynomial& f);

/// N_j = prod_{k<p} sigma^k(x_{1,j}).
Polynomial norm(const RingPtr& ring, int j);

struct NormDivision {
  Polynomial quotient;
  Polynomial remainder;
};
/// f = q N_j + r with deg_{x_{1,j}} r < p.
NormDivision divide_by_norm(const Polynomial& f, int j);

/// Monomials of total degree d, canonical order.
std::vector<Monomial> graded_basis(const ModuleSpec& v, int d);
/// Monomials of a given multidegree, canonical order.
std::vector<Monomial> graded_basis(const ModuleSpec& v, const std::vector<int>& multidegree);

/// Basis of k[V]^G_d, grouped by multidegree (lex-descending).
std::vector<Polynomial> invariant_basis(const RingPtr& ring, int d);
std::vector<Polynomial> invariant_basis(const RingPtr& ring, const std::vector<int>& multidegree);

/// Some f with Delta^k(f) = g, or empty when g is not in the image.
/// g must be homogeneous; each multihomogeneous component is solved on its
/// own piece with free variables set to zero.
std::optional<Polynomial> delta_power_preimage(const Polynomial& g, unsigned k);

/// Jordan block sizes (descending) of k[V]_d as a kG-module.
std::vector<int> graded_piece_block_structure(const ModuleSpec& v, int d);

}  // namespace modcov

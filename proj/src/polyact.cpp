#include "modcov/polyact.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace modcov {

namespace {

struct PartialTerm {
  std::vector<Exponent> exps;
  Coeff coeff;
};

FpMatrix<std::uint32_t> piece_delta_matrix(const ModuleSpec& v, TableCache& cache,
                                           const std::vector<int>& md) {
  FpMatrix<std::uint32_t> d = piece_sigma_matrix(v, cache, md);
  for (Index i = 0; i < d.rows(); ++i) d(i, i) = v.field().sub(d(i, i), 1);
  return d;
}

int norm_variable(const PolyRing& ring, int j) {
  if (j < 1 || j > ring.m()) throw std::out_of_range("norm: block index " + std::to_string(j));
  return ring.block_offset(j - 1);
}

}  // namespace

Polynomial apply_sigma(const Polynomial& f) {
  const PolyRing& ring = *f.ring();
  const PrimeField& field = ring.field();
  std::vector<bool> fixed(static_cast<std::size_t>(ring.nvars()), false);
  for (int j = 0; j < ring.m(); ++j)
    fixed[static_cast<std::size_t>(ring.block_offset(j) + ring.module().block(j) - 1)] = true;

  Polynomial out(f.ring());
  for (const auto& [mono, c] : f.terms()) {
    std::vector<PartialTerm> partial{{std::vector<Exponent>(mono.exponents().size(), 0), c}};
    for (int v = 0; v < ring.nvars(); ++v) {
      const int e = mono[v];
      if (e == 0) continue;
      if (fixed[static_cast<std::size_t>(v)]) {
        for (auto& t : partial) t.exps[static_cast<std::size_t>(v)] += static_cast<Exponent>(e);
        continue;
      }
      // (x_v + x_{v+1})^e
      std::vector<PartialTerm> next;
      next.reserve(partial.size() * static_cast<std::size_t>(e + 1));
      for (int k = 0; k <= e; ++k) {
        const Coeff b = field.reduce(binomial(e, k));
        if (b == 0) continue;
        for (const auto& t : partial) {
          PartialTerm u = t;
          u.exps[static_cast<std::size_t>(v)] += static_cast<Exponent>(e - k);
          u.exps[static_cast<std::size_t>(v + 1)] += static_cast<Exponent>(k);
          u.coeff = field.mul(u.coeff, b);
          next.push_back(std::move(u));
        }
      }
      partial = std::move(next);
    }
    for (const auto& t : partial) out.add_term(Monomial(t.exps), t.coeff);
  }
  return out;
}

Polynomial apply_sigma_power(const Polynomial& f, unsigned k) {
  Polynomial g = f;
  for (unsigned i = 0; i < k; ++i) g = apply_sigma(g);
  return g;
}

Polynomial delta(const Polynomial& f) { return apply_sigma(f) - f; }

Polynomial delta_power(const Polynomial& f, unsigned k) {
  Polynomial g = f;
  for (unsigned i = 0; i < k && !g.is_zero(); ++i) g = delta(g);
  return g;
}

Polynomial transfer(const Polynomial& f) { return delta_power(f, f.ring()->p() - 1); }

Polynomial transfer_orbit_sum(const Polynomial& f) {
  Polynomial acc = f;
  Polynomial orbit = f;
  for (std::uint32_t i = 1; i < f.ring()->p(); ++i) {
    orbit = apply_sigma(orbit);
    acc += orbit;
  }
  return acc;
}

bool is_invariant(const Polynomial& f) { return delta(f).is_zero(); }

int weight(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("weight of the zero polynomial");
  int w = 1;
  for (Polynomial g = delta(f); !g.is_zero(); g = delta(g)) ++w;
  return w;
}

Polynomial norm(const RingPtr& ring, int j) {
  const int var = norm_variable(*ring, j);
  Polynomial factor = Polynomial::monomial(ring, Monomial::var(ring->nvars(), var));
  Polynomial product = Polynomial::constant(ring, 1);
  for (std::uint32_t k = 0; k < ring->p(); ++k) {
    product = product * factor;
    factor = apply_sigma(factor);
  }
  return product;
}

NormDivision divide_by_norm(const Polynomial& f, int j) {
  const RingPtr& ring = f.ring();
  const int var = norm_variable(*ring, j);
  const auto p = static_cast<Exponent>(ring->p());
  const Polynomial n = norm(ring, j);
  const Monomial lead = Monomial::var(ring->nvars(), var, p);
  NormDivision out{Polynomial(ring), f};
  for (;;) {
    const Monomial* best = nullptr;
    Coeff coeff = 0;
    for (const auto& [mono, c] : out.remainder.terms())
      if (mono[var] >= p && (!best || mono[var] > (*best)[var])) {
        best = &mono;
        coeff = c;
      }
    if (!best) break;
    const Polynomial shift = Polynomial::monomial(ring, *best / lead, coeff);
    out.quotient += shift;
    out.remainder -= shift * n;
  }
  return out;
}

std::vector<Monomial> graded_basis(const ModuleSpec& v, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  const MonomialTable table(v.dim(), d);
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(table.size()));
  for (Index k = 0; k < table.size(); ++k)
    out.emplace_back(std::vector<Exponent>(table.exponents(k), table.exponents(k) + v.dim()));
  return out;
}

std::vector<Monomial> graded_basis(const ModuleSpec& v, const std::vector<int>& multidegree) {
  TableCache cache;
  const Piece piece = full_piece(cache, v, multidegree);
  std::vector<Monomial> out;
  std::vector<Exponent> e(static_cast<std::size_t>(v.dim()));
  for (Index k = 0; k < piece.size(); ++k) {
    piece.exponents(k, e.data());
    out.emplace_back(e);
  }
  return out;
}

std::vector<Polynomial> invariant_basis(const RingPtr& ring, const std::vector<int>& md) {
  TableCache cache;
  const Piece piece = full_piece(cache, ring->module(), md);
  const FpMatrix<std::uint32_t> kernel =
      kernel_basis(ring->field(), piece_delta_matrix(ring->module(), cache, md));
  std::vector<Polynomial> out;
  for (Index r = 0; r < kernel.rows(); ++r)
    out.push_back(from_coordinates(ring, piece, kernel.row(r).transpose()));
  return out;
}

std::vector<Polynomial> invariant_basis(const RingPtr& ring, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  std::vector<Polynomial> out;
  for (const auto& md : multidegrees(ring->m(), d)) {
    auto part = invariant_basis(ring, md);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::optional<Polynomial> delta_power_preimage(const Polynomial& g, unsigned k) {
  if (!g.is_homogeneous()) throw std::invalid_argument("delta_power_preimage: inhomogeneous input");
  if (k == 0) return g;
  const RingPtr& ring = g.ring();
  Polynomial result(ring);
  TableCache cache;
  for (const auto& [md, component] : g.multihomogeneous_components()) {
    const Piece piece = full_piece(cache, ring->module(), md);
    const FpMatrix<std::uint32_t> op =
        power(ring->field(), piece_delta_matrix(ring->module(), cache, md), k);
    auto x = solve(ring->field(), op, to_coordinates(component, piece));
    if (!x) return std::nullopt;
    result += from_coordinates(ring, piece, *x);
  }
  return result;
}

std::vector<int> graded_piece_block_structure(const ModuleSpec& v, int d) {
  TableCache cache;
  std::vector<int> sizes;
  for (const auto& md : multidegrees(v.m(), d)) {
    auto part = decompose_by_delta_ranks(v.field(), piece_sigma_matrix(v, cache, md));
    sizes.insert(sizes.end(), part.begin(), part.end());
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace modcov

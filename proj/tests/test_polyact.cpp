#include "modcov/graded_piece.hpp"
#include "modcov/poly_io.hpp"
#include "modcov/polyact.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace modcov;
using namespace modcov::testing;

namespace {

RingPtr ring_of(std::uint32_t p, std::vector<int> blocks) {
  return make_ring(ModuleSpec(PrimeField(p), std::move(blocks)));
}

Polynomial parse(const RingPtr& r, const char* s) { return parse_polynomial(r, s); }

}  // namespace

TEST(Sigma, OnVariables) {
  const auto r = ring_of(3, {2});
  EXPECT_EQ(to_string(apply_sigma(parse(r, "x[1,1]"))), "x[1,1] + x[2,1]");
  EXPECT_EQ(apply_sigma(parse(r, "x[2,1]")), parse(r, "x[2,1]"));
  const auto r3 = ring_of(5, {3, 2});
  EXPECT_EQ(apply_sigma(parse(r3, "x[2,1]*x[1,2]")), parse(r3, "x[2,1]*x[1,2] + x[2,1]*x[2,2] + x[3,1]*x[1,2] + x[3,1]*x[2,2]"));
}

TEST(Transfer, OracleDeltaSquaredAtP3) {
  // sum_i (x + i y)^2 = 3x^2 + 6xy + 5y^2 = 2y^2 mod 3.
  const auto r = ring_of(3, {2});
  const Polynomial f = parse(r, "x[1,1]^2");
  EXPECT_EQ(to_string(delta_power(f, 2)), "2*x[2,1]^2");
  EXPECT_EQ(transfer(f), delta_power(f, 2));
  EXPECT_EQ(transfer_orbit_sum(f), transfer(f));
}

TEST(Transfer, OfInvariantIsZero) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto r = ring_of(p, {2, 2});
    const Polynomial n = norm(r, 2);
    EXPECT_TRUE(transfer(n).is_zero());
    EXPECT_TRUE(transfer_orbit_sum(n).is_zero());
  }
}

TEST(Weight, Examples) {
  const auto r = ring_of(5, {4, 2, 1});
  EXPECT_EQ(weight(norm(r, 1)), 1);
  EXPECT_EQ(weight(parse(r, "x[1,1]")), 4);
  EXPECT_EQ(weight(parse(r, "x[1,2]")), 2);
  EXPECT_EQ(weight(parse(r, "x[4,1]")), 1);
  EXPECT_EQ(weight(parse(r, "x[2,2]")), 1);
  EXPECT_THROW(weight(Polynomial(r)), std::invalid_argument);
}

TEST(Norm, Expansion) {
  const auto r = ring_of(2, {2});
  EXPECT_EQ(to_string(norm(r, 1)), "x[1,1]^2 + x[1,1]*x[2,1]");
  // x(x+y)(x+2y) = x^3 + 3x^2y + 2xy^2 = x^3 + 2xy^2 mod 3.
  EXPECT_EQ(to_string(norm(ring_of(3, {2}), 1)), "x[1,1]^3 + 2*x[1,1]*x[2,1]^2");
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (int n = 1; n <= std::min<int>(4, static_cast<int>(p)); ++n) {
      const auto rr = ring_of(p, {n});
      EXPECT_TRUE(is_invariant(norm(rr, 1)));
      EXPECT_EQ(norm(rr, 1).degree(), static_cast<int>(p));
    }
  EXPECT_THROW(norm(r, 2), std::out_of_range);
}

TEST(DivideByNorm, Examples) {
  const auto r = ring_of(3, {3, 2});
  const NormDivision qn = divide_by_norm(norm(r, 2), 2);
  EXPECT_EQ(qn.quotient, Polynomial::constant(r, 1));
  EXPECT_TRUE(qn.remainder.is_zero());
  const Polynomial low = parse(r, "x[1,1]^5 + x[1,2]^2*x[2,2]");
  const NormDivision ql = divide_by_norm(low, 2);
  EXPECT_TRUE(ql.quotient.is_zero());
  EXPECT_EQ(ql.remainder, low);
}

TEST(GradedBasis, Examples) {
  const ModuleSpec v2(PrimeField(3), {2});
  EXPECT_EQ(graded_basis(v2, 0).size(), 1u);
  EXPECT_EQ(graded_basis(ModuleSpec(PrimeField(3), {3, 2}), 1).size(), 5u);
  const auto b = graded_basis(v2, 2);
  const auto r = make_ring(v2);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(to_string(b[0], *r), "x[1,1]^2");
  EXPECT_EQ(to_string(b[1], *r), "x[1,1]*x[2,1]");
  EXPECT_EQ(to_string(b[2], *r), "x[2,1]^2");
  EXPECT_EQ(graded_basis(ModuleSpec(PrimeField(3), {3, 2}), std::vector<int>{2, 1}).size(), 12u);
  EXPECT_THROW(graded_basis(v2, -1), std::invalid_argument);
}

TEST(InvariantBasis, Examples) {
  const auto r = ring_of(3, {3, 2, 1});
  EXPECT_EQ(invariant_basis(r, 0).size(), 1u);
  const auto deg1 = invariant_basis(r, 1);
  ASSERT_EQ(deg1.size(), 3u);
  for (const auto& f : deg1) {
    ASSERT_EQ(f.size(), 1u);
    const auto& e = f.terms().begin()->first.exponents();
    const Variable x = r->variable(static_cast<int>(std::find(e.begin(), e.end(), 1) - e.begin()));
    EXPECT_EQ(x.i, r->module().block(x.j - 1));
  }
}

TEST(InvariantBasis, V2AtP2DegreeTwo) {
  // Brute force over all 8 elements of the 3-dimensional piece.
  const auto r = ring_of(2, {2});
  const auto basis = graded_basis(r->module(), 2);
  int invariants = 0;
  for (int mask = 0; mask < 8; ++mask) {
    Polynomial f(r);
    for (int k = 0; k < 3; ++k)
      if (mask >> k & 1) f.add_term(basis[static_cast<std::size_t>(k)], 1);
    invariants += is_invariant(f);
  }
  EXPECT_EQ(invariants, 4);
  const auto inv = invariant_basis(r, 2);
  ASSERT_EQ(inv.size(), 2u);
  for (const auto& g : {parse(r, "x[2,1]^2"), norm(r, 1)}) {
    // Each named invariant lies in the span of the computed basis.
    bool found = false;
    for (int mask = 0; mask < 4; ++mask) {
      Polynomial s(r);
      for (int k = 0; k < 2; ++k)
        if (mask >> k & 1) s += inv[static_cast<std::size_t>(k)];
      found = found || s == g;
    }
    EXPECT_TRUE(found);
  }
}

TEST(InvariantBasis, DimsForV3AtP3) {
  const auto r = ring_of(3, {3});
  const std::vector<std::size_t> dims{1, 1, 2, 4, 5};
  for (int d = 0; d < 5; ++d) EXPECT_EQ(invariant_basis(r, d).size(), dims[static_cast<std::size_t>(d)]);
}

TEST(DeltaPowerPreimage, Examples) {
  const auto r = ring_of(3, {2});
  const Polynomial g = parse(r, "x[2,1]");
  EXPECT_EQ(*delta_power_preimage(g, 0), g);
  EXPECT_FALSE(delta_power_preimage(g, 2).has_value());
  Rng rng(3);
  const auto r2 = ring_of(3, {3, 2});
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial t = transfer(random_homogeneous(rng, r2, uniform(rng, 1, 4)));
    if (t.is_zero()) continue;
    const auto f = delta_power_preimage(t, 2);
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(transfer(*f), t);
  }
  EXPECT_THROW(delta_power_preimage(parse(r, "x[1,1] + x[2,1]^2"), 1), std::invalid_argument);
}

TEST(BlockStructure, Examples) {
  const ModuleSpec v2(PrimeField(3), {2});
  EXPECT_EQ(graded_piece_block_structure(v2, 0), std::vector<int>{1});
  EXPECT_EQ(graded_piece_block_structure(ModuleSpec(PrimeField(5), {3, 2, 2}), 1),
            (std::vector<int>{3, 2, 2}));
  EXPECT_EQ(graded_piece_block_structure(v2, 2), std::vector<int>{3});
  // S^3(V_2) at p = 3: rank Delta = 2, rank Delta^2 = 1.
  EXPECT_EQ(graded_piece_block_structure(v2, 3), (std::vector<int>{3, 1}));
}

TEST(GradedPiece, CoordinatesRoundTrip) {
  Rng rng(5);
  TableCache cache;
  for (int trial = 0; trial < 50; ++trial) {
    const ModuleSpec v = random_module(rng, 5);
    const auto r = make_ring(v);
    const Polynomial f = random_homogeneous(rng, r, uniform(rng, 0, 4));
    for (const auto& [md, part] : f.multihomogeneous_components()) {
      const Piece piece = full_piece(cache, v, md);
      EXPECT_EQ(from_coordinates(r, piece, to_coordinates(part, piece)), part);
    }
  }
}

TEST(GradedPiece, SigmaMatrixMatchesSymbolicAction) {
  Rng rng(9);
  TableCache cache;
  for (int trial = 0; trial < 40; ++trial) {
    const ModuleSpec v = random_module(rng, std::vector<std::uint32_t>{2, 3, 5, 7}[trial % 4]);
    const auto r = make_ring(v);
    const Polynomial f = random_homogeneous(rng, r, uniform(rng, 1, 3));
    for (const auto& [md, part] : f.multihomogeneous_components()) {
      const Piece piece = full_piece(cache, v, md);
      const FpVector<std::uint32_t> image =
          multiply(v.field(), piece_sigma_matrix(v, cache, md), to_coordinates(part, piece));
      EXPECT_EQ(from_coordinates(r, piece, image), apply_sigma(part));
    }
  }
}

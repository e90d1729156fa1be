#include "modcov/formulas.hpp"
#include "modcov/gens.hpp"
#include "modcov/poly_io.hpp"

#include <gtest/gtest.h>

using namespace modcov;

namespace {

ModuleSpec mod(std::uint32_t p, std::vector<int> blocks) { return ModuleSpec(PrimeField(p), std::move(blocks)); }

std::vector<int> trimmed(std::vector<int> counts) {
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return counts;
}

}  // namespace

TEST(Coinvariants, V2TopDegree) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto dims = coinvariants_dims(mod(p, {2}));
    ASSERT_EQ(dims.size(), p + 1);
    EXPECT_EQ(dims.front(), 1);
    EXPECT_EQ(dims.back(), 0);
    for (std::uint32_t d = 0; d < p; ++d) EXPECT_EQ(dims[d], 1);
  }
}

TEST(Coinvariants, DimsAgreeWithNaiveModuleCounts) {
  for (const auto& v : {mod(3, {3}), mod(3, {2, 2}), mod(2, {2, 2}), mod(5, {3})}) {
    const auto dims = coinvariants_dims(v);
    const auto naive = naive_generator_counts(v, static_cast<int>(v.p()), static_cast<int>(dims.size()) - 1);
    EXPECT_EQ(naive, dims) << v.label();
  }
}

// Independent route: rank of all products of lower-degree invariant bases.
TEST(Engine, AlgebraCountsMatchNaive) {
  for (const auto& v : {mod(2, {2}), mod(3, {2}), mod(3, {3}), mod(2, {2, 2}), mod(3, {2, 2}),
                        mod(3, {3, 1}), mod(5, {2}), mod(5, {3}), mod(3, {2, 1, 1})}) {
    const int top = 6;
    GeneratorEngine engine(v);
    const auto& series = engine.algebra(top);
    EXPECT_EQ(series.counts, naive_generator_counts(v, 0, top)) << v.label();
  }
}

TEST(Engine, ModuleCountsMatchNaive) {
  for (const auto& v : {mod(3, {2}), mod(3, {3}), mod(3, {2, 2}), mod(5, {3}), mod(2, {2, 2}),
                        mod(3, {3, 2})}) {
    GeneratorEngine engine(v);
    for (int n = 1; n <= static_cast<int>(v.p()); ++n) {
      const int top = 5;
      EXPECT_EQ(engine.module(n, top).counts, naive_generator_counts(v, n, top))
          << v.label() << " n=" << n;
    }
  }
}

TEST(Engine, SeedDoesNotChangeCounts) {
  const ModuleSpec v = mod(5, {3, 2});
  GeneratorEngine a(v, {}, 1), b(v, {}, 99);
  EXPECT_EQ(a.module(3, 6).counts, b.module(3, 6).counts);
}

TEST(Engine, BudgetExceededIsResumable) {
  const ModuleSpec v = mod(5, {4, 3});
  GeneratorEngine engine(v);
  Budget tight;
  tight.max_piece_dim = 30;
  engine.set_budget(tight);
  EXPECT_THROW(engine.algebra(8), BudgetExceeded);
  engine.set_budget({});
  GeneratorEngine fresh(v);
  EXPECT_EQ(engine.algebra(8).counts, fresh.algebra(8).counts);
}

TEST(Engine, WitnessesAreIndecomposable) {
  GeneratorEngine engine(mod(3, {3, 2}));
  const auto& series = engine.algebra(5);
  for (const auto& [d, f] : series.witnesses) {
    EXPECT_TRUE(is_invariant(f));
    EXPECT_EQ(f.degree(), d);
    EXPECT_FALSE(is_decomposable_invariant(f)) << to_string(f);
  }
}

TEST(AlgebraBeta, SpecExamples) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto r = algebra_beta(mod(p, {2}));
    EXPECT_EQ(r.generator_degrees(), (std::vector<int>{1, static_cast<int>(p)}));
    EXPECT_EQ(r.beta, static_cast<int>(p));
    EXPECT_TRUE(r.conclusive);
  }
  for (std::uint32_t p : {3u, 5u}) {
    const int q = static_cast<int>(p);
    EXPECT_EQ(algebra_beta(mod(p, {3})).generator_degrees(), (std::vector<int>{1, 2, q, q}));
  }
  EXPECT_EQ(algebra_beta(mod(2, {2, 2})).generator_degrees(), (std::vector<int>{1, 1, 2, 2, 2}));
}

TEST(AlgebraBeta, CapOverride) {
  const auto low = algebra_beta(mod(3, {3}), 2);
  EXPECT_FALSE(low.conclusive);
  EXPECT_EQ(low.cap_used, 2);
  const auto high = algebra_beta(mod(3, {3}), 8);
  const auto base = algebra_beta(mod(3, {3}));
  EXPECT_TRUE(high.conclusive);
  EXPECT_EQ(high.beta, base.beta);
  EXPECT_EQ(trimmed(high.counts), trimmed(base.counts));
}

TEST(CovariantBeta, SpecExamples) {
  for (const auto& v : {mod(3, {2}), mod(3, {3, 2}), mod(5, {4}), mod(2, {2, 2, 1})})
    EXPECT_EQ(covariant_beta(v, ModuleSpec(v.field(), {1})).beta, 0) << v.label();
  EXPECT_EQ(covariant_beta(mod(3, {2}), mod(3, {2})).beta, 1);
  EXPECT_EQ(covariant_beta(mod(3, {3}), mod(3, {2})).beta, 3);
  EXPECT_THROW(covariant_beta(mod(3, {3}), mod(3, {2, 2})), std::invalid_argument);
}

TEST(CovariantBeta, ReportInvariants) {
  GeneratorEngine engine(mod(3, {3, 2}));
  for (int n = 1; n <= 3; ++n) {
    const auto r = covariant_beta(engine, ModuleSpec(engine.module().field(), {n}));
    ASSERT_EQ(static_cast<int>(r.counts.size()), r.cap_used + 1);
    EXPECT_GE(r.cap_used, r.beta);
    EXPECT_GT(r.counts[static_cast<std::size_t>(r.beta)], 0);
    for (int d = r.beta + 1; d <= r.cap_used; ++d) EXPECT_EQ(r.counts[static_cast<std::size_t>(d)], 0);
    for (const auto& [d, f] : r.witnesses) {
      const Covariant h = from_weight_poly(f, ModuleSpec(engine.module().field(), {n}));
      EXPECT_EQ(h.degree(), d);
      EXPECT_FALSE(is_decomposable_covariant(h));
    }
  }
}

TEST(PolynomialModule, BetaIsGamma) {
  GeneratorEngine engine(mod(3, {3, 2}));
  const auto r = polynomial_module_beta(engine);
  EXPECT_EQ(r.beta, engine.gamma());
  for (const auto& g : polynomial_module_generators(engine)) EXPECT_LE(g.degree(), engine.gamma());
}

TEST(Decomposable, Examples) {
  const auto ring = make_ring(mod(3, {2}));
  EXPECT_FALSE(is_decomposable_invariant(parse_polynomial(ring, "x[2,1]")));
  EXPECT_TRUE(is_decomposable_invariant(norm(ring, 1) * parse_polynomial(ring, "x[2,1]")));
  EXPECT_FALSE(is_decomposable_invariant(norm(ring, 1)));
  EXPECT_THROW(is_decomposable_invariant(parse_polynomial(ring, "x[1,1]")), std::invalid_argument);
  EXPECT_THROW(is_decomposable_invariant(parse_polynomial(ring, "x[2,1] + x[2,1]^2")),
               std::invalid_argument);
}

TEST(Decomposable, TransferCovariantOfIndecomposableTransfer) {
  const auto ring = make_ring(mod(3, {3}));
  const Polynomial f = parse_polynomial(ring, "x[1,1]^2*x[2,1]");
  EXPECT_FALSE(is_decomposable_invariant(transfer(f)));
  const Covariant h = make_transfer_covariant(f, ModuleSpec(ring->field(), {2}), 2);
  EXPECT_FALSE(is_decomposable_covariant(h));
  EXPECT_TRUE(is_decomposable_covariant(parse_polynomial(ring, "x[3,1]") * h));
}

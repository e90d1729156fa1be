#include "modcov/covariant.hpp"
#include "modcov/gens.hpp"
#include "modcov/poly_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace modcov;
using namespace modcov::testing;

namespace {

RingPtr ring_of(std::uint32_t p, std::vector<int> blocks) {
  return make_ring(ModuleSpec(PrimeField(p), std::move(blocks)));
}

ModuleSpec w_of(const RingPtr& r, int n) { return ModuleSpec(r->field(), {n}); }

Polynomial parse(const RingPtr& r, const char* s) { return parse_polynomial(r, s); }

}  // namespace

TEST(Covariant, ConstructionValidates) {
  const auto r = ring_of(3, {2});
  const ModuleSpec w = w_of(r, 2);
  EXPECT_NO_THROW(Covariant(r, w, {parse(r, "x[1,1]"), parse(r, "x[2,1]")}));
  EXPECT_THROW(Covariant(r, w, {parse(r, "x[1,1]"), parse(r, "x[1,1]")}), std::invalid_argument);
  EXPECT_THROW(Covariant(r, w, {parse(r, "x[1,1]")}), std::invalid_argument);
  EXPECT_THROW(Covariant(r, ModuleSpec(r->field(), {2, 1}), {}), std::invalid_argument);
  EXPECT_THROW(Covariant(r, ModuleSpec(PrimeField(5), {2}), {}), std::invalid_argument);
  // Trailing zero components may be omitted.
  const Covariant h(r, w, {parse(r, "x[2,1]")});
  EXPECT_EQ(h.support(), 1);
  EXPECT_TRUE(h.component(2).is_zero());
}

TEST(FromWeightPoly, Examples) {
  const auto r = ring_of(3, {2});
  const ModuleSpec w = w_of(r, 2);
  const Covariant h = from_weight_poly(parse(r, "x[1,1]"), w);
  EXPECT_EQ(to_string(h.component(1)), "x[1,1]");
  EXPECT_EQ(to_string(h.component(2)), "x[2,1]");
  EXPECT_TRUE(is_equivariant(w, h.components()));
  const Covariant inv = from_weight_poly(norm(r, 1), w);
  EXPECT_EQ(inv.support(), 1);
  EXPECT_EQ(inv.component(1), norm(r, 1));
  const auto r3 = ring_of(3, {3});
  EXPECT_THROW(from_weight_poly(parse(r3, "x[1,1]"), w_of(r3, 2)), std::invalid_argument);
}

TEST(ToWeightPoly, Invariant) {
  const auto r = ring_of(5, {3, 2});
  const Polynomial f = norm(r, 2) * parse(r, "x[3,1]");
  EXPECT_EQ(to_weight_poly(from_weight_poly(f, w_of(r, 4))), f);
}

TEST(CovariantBasis, TrivialW) {
  const auto r = ring_of(3, {3, 2});
  for (int d = 0; d < 4; ++d)
    EXPECT_EQ(covariant_basis(r, w_of(r, 1), d).size(), invariant_basis(r, d).size());
  const auto deg0 = covariant_basis(r, w_of(r, 3), 0);
  ASSERT_EQ(deg0.size(), 1u);
  EXPECT_EQ(deg0[0].component(1), Polynomial::constant(r, deg0[0].component(1).terms().begin()->second));
}

TEST(CovariantBasis, V2ToV2DegreeOneBruteForce) {
  // All 81 elements of k[V_2]_1 (x) V_2 at p = 3, checked one by one.
  const auto r = ring_of(3, {2});
  const ModuleSpec w = w_of(r, 2);
  const Polynomial x = parse(r, "x[1,1]"), y = parse(r, "x[2,1]");
  int equivariant = 0;
  for (int code = 0; code < 81; ++code) {
    const Coeff a = code % 3, b = code / 3 % 3, c = code / 9 % 3, d = code / 27;
    equivariant += is_equivariant(w, {a * x + b * y, c * x + d * y});
  }
  EXPECT_EQ(equivariant, 9);
  EXPECT_EQ(covariant_basis(r, w, 1).size(), 2u);
}

TEST(CovariantBasis, ChainRevalidation) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[trial % 3];
    const auto r = make_ring(random_module(rng, p, 2, 3));
    const ModuleSpec w = w_of(r, uniform(rng, 1, static_cast<int>(p)));
    for (const Covariant& h : covariant_basis(r, w, uniform(rng, 0, 3))) {
      EXPECT_TRUE(is_equivariant(w, h.components()));
      EXPECT_NO_THROW(Covariant(r, w, h.components()));
      EXPECT_EQ(from_weight_poly(to_weight_poly(h), w), h);
    }
  }
}

TEST(TransferCovariant, Examples) {
  const auto r = ring_of(3, {2});
  const ModuleSpec w = w_of(r, 2);
  const Polynomial f = parse(r, "x[1,1]^2");
  EXPECT_EQ(make_transfer_covariant(f, w, 1).component(1), transfer(f));
  const Covariant h = make_transfer_covariant(f, w, 2);
  // Delta(x^2) = 2xy + y^2 and Delta^2(x^2) = 2y^2 at p = 3.
  EXPECT_EQ(to_string(h.component(1)), "2*x[1,1]*x[2,1] + x[2,1]^2");
  EXPECT_EQ(to_string(h.component(2)), "2*x[2,1]^2");
  EXPECT_TRUE(is_equivariant(w, h.components()));
  EXPECT_TRUE(make_transfer_covariant(norm(r, 1), w, 2).is_zero());
  EXPECT_THROW(make_transfer_covariant(f, w, 3), std::out_of_range);
}

TEST(IsTransferCovariant, RoundTripAndNorm) {
  Rng rng(23);
  const auto r = ring_of(3, {3, 2});
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform(rng, 1, 3), s = uniform(rng, 1, n);
    const Polynomial f = random_homogeneous(rng, r, uniform(rng, 1, 3));
    // With Delta^{p-1}(f) = 0 the chain stops short of Delta^{p-1} and need not be a transfer covariant.
    if (transfer(f).is_zero()) continue;
    const Covariant h = make_transfer_covariant(f, w_of(r, n), s);
    EXPECT_EQ(h.support(), s);
    const auto t = is_transfer_covariant(h);
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(make_transfer_covariant(*t, h.w(), h.support()), h);
  }
  // N_1 w_1 for V_2 at p = 3. The degree-3 piece is V_3 + V_1 and the image of
  // Delta^2 is spanned by x_{2,1}^3, which N_1 is not.
  const auto r2 = ring_of(3, {2});
  EXPECT_EQ(graded_piece_block_structure(r2->module(), 3), (std::vector<int>{3, 1}));
  EXPECT_FALSE(delta_power_preimage(norm(r2, 1), 2).has_value());
  EXPECT_FALSE(is_transfer_covariant(from_weight_poly(norm(r2, 1), w_of(r2, 2))).has_value());
  EXPECT_THROW(is_transfer_covariant(Covariant::zero(r2, w_of(r2, 2))), std::invalid_argument);
}

TEST(SplitOffNorm, NormMultiple) {
  const auto r = ring_of(3, {2});
  const ModuleSpec w = w_of(r, 2);
  const Covariant h1 = from_weight_poly(parse(r, "x[1,1]"), w);
  const Covariant h = norm(r, 1) * h1;
  const NormSplit s = split_off_norm(h, 1);
  EXPECT_EQ(norm(r, 1) * s.h1 + s.h2, h);
}

TEST(SplitOffNorm, BaseCase) {
  // h = f w_1 with f invariant: f = q N_j + Delta^{p-1}(t).
  const auto r = ring_of(3, {2});
  const ModuleSpec w = w_of(r, 1);
  for (const Polynomial& f : invariant_basis(r, 4)) {
    const NormSplit s = split_off_norm(from_weight_poly(f, w), 1);
    EXPECT_EQ(norm(r, 1) * s.h1.component(1) + transfer(s.witness), f);
    EXPECT_EQ(s.h2.component(1), transfer(s.witness));
  }
}

TEST(SplitOffNorm, RandomV3) {
  Rng rng(31);
  const auto r = ring_of(3, {3});
  for (int trial = 0; trial < 25; ++trial) {
    const ModuleSpec w = w_of(r, uniform(rng, 1, 3));
    const auto basis = covariant_basis(r, w, uniform(rng, 1, 4));
    const Covariant h = random_combination(rng, basis, Covariant::zero(r, w));
    const NormSplit s = split_off_norm(h, 1);
    EXPECT_EQ(norm(r, 1) * s.h1 + s.h2, h);
    if (!s.h2.is_zero()) {
      EXPECT_TRUE(is_transfer_covariant(s.h2).has_value());
      EXPECT_EQ(make_transfer_covariant(s.witness, w, s.h2.support()), s.h2);
    }
  }
}

TEST(SplitOffNorm, HypothesisViolation) {
  const auto r = ring_of(3, {2});
  const Covariant h = from_weight_poly(parse(r, "x[2,1]"), w_of(r, 2));
  try {
    split_off_norm(h, 1);
    FAIL() << "expected a hypothesis violation";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("(1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(split_off_norm(h, 2), std::out_of_range);
}

TEST(DecomposeTransfer, ProductInstance) {
  // h = q c with q = x_{2,1} invariant and c a transfer covariant.
  const auto r = ring_of(3, {2});
  GeneratorEngine engine(r->module());
  const auto gens = polynomial_module_generators(engine);
  const ModuleSpec w = w_of(r, 2);
  const Covariant c = make_transfer_covariant(parse(r, "x[1,1]^2*x[2,1]"), w, 2);
  ASSERT_FALSE(c.is_zero());
  const Covariant h = parse(r, "x[2,1]") * c;
  Covariant sum = Covariant::zero(r, w);
  const auto parts = decompose_transfer_covariant(h, gens, engine.gamma());
  ASSERT_FALSE(parts.empty());
  for (const auto& [q, ci] : parts) {
    EXPECT_GT(q.degree(), 0);
    EXPECT_LT(ci.degree(), h.degree());
    sum += q * ci;
  }
  EXPECT_EQ(sum, h);
}

TEST(DecomposeTransfer, RandomV2) {
  Rng rng(37);
  const auto r = ring_of(3, {2});
  GeneratorEngine engine(r->module());
  const int gamma = engine.gamma();
  ASSERT_EQ(gamma, 2);
  const auto gens = polynomial_module_generators(engine);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform(rng, 1, 3);
    const Covariant h = make_transfer_covariant(random_homogeneous(rng, r, uniform(rng, 3, 5)),
                                                w_of(r, n), uniform(rng, 1, n));
    if (h.is_zero()) continue;
    Covariant sum = Covariant::zero(r, h.w());
    for (const auto& [q, c] : decompose_transfer_covariant(h, gens, gamma)) sum += q * c;
    EXPECT_EQ(sum, h);
  }
  const Covariant low = make_transfer_covariant(parse(r, "x[1,1]^2"), w_of(r, 1), 1);
  EXPECT_THROW(decompose_transfer_covariant(low, gens, gamma), std::invalid_argument);
}

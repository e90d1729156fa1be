#include "modcov/formulas.hpp"

#include <algorithm>
#include <stdexcept>

namespace modcov {

std::string to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::WTrivial: return "W-trivial";
    case CaseLabel::V2Exception: return "V2-exception";
    case CaseLabel::SomeBlockGt3: return "some-block-gt-3";
    case CaseLabel::MaxBlock3: return "max-block-3";
    case CaseLabel::AllBlocks2M1: return "all-blocks-2-m1";
    case CaseLabel::AllBlocks2Mge2: return "all-blocks-2-mge2";
    case CaseLabel::TwoV2: return "two-v2";
  }
  return "unknown";
}

ReducedModule reduce_V(const ModuleSpec& v) {
  std::vector<int> kept;
  for (int n : v.blocks())
    if (n > 1) kept.push_back(n);
  if (kept.empty()) throw std::invalid_argument(v.label() + " has no summand of dimension >= 2");
  const int trivial = v.m() - static_cast<int>(kept.size());
  return {ModuleSpec(v.field(), std::move(kept)), trivial};
}

FormulaValue beta_invariants_formula(const ModuleSpec& v) {
  if (!v.reduced()) throw std::invalid_argument(v.label() + " is not reduced");
  const int p = static_cast<int>(v.p());
  const int m = v.m();
  const int top = v.max_block();
  if (top > 3) return {m * (p - 1) + (p - 2), CaseLabel::SomeBlockGt3};
  if (top == 3) return {m * (p - 1) + 1, CaseLabel::MaxBlock3};
  if (m == 1) return {p, CaseLabel::AllBlocks2M1};
  if (m == 2) return {p, CaseLabel::TwoV2};
  return {m * (p - 1), CaseLabel::AllBlocks2Mge2};
}

FormulaValue beta_covariants_formula(const ModuleSpec& v, const ModuleSpec& w) {
  if (v.field() != w.field()) throw std::invalid_argument("V and W over different fields");
  const ModuleSpec reduced = reduce_V(v).v;
  const int top_w = w.max_block();
  if (top_w == 1) return {0, CaseLabel::WTrivial};
  if (reduced.m() == 1 && reduced.block(0) == 2) return {top_w - 1, CaseLabel::V2Exception};
  // For mV_2 the covariants reach the coinvariant bound m(p-1) even when m = 2,
  // where k[V]^G itself stops at p.
  if (reduced.max_block() == 2) return {reduced.m() * (static_cast<int>(v.p()) - 1), CaseLabel::AllBlocks2Mge2};
  return beta_invariants_formula(reduced);
}

std::optional<std::vector<Polynomial>> known_generators(const RingPtr& ring) {
  const ModuleSpec& v = ring->module();
  const std::uint32_t p = ring->p();
  auto x = [&](int i, int j) { return Polynomial::variable(ring, {i, j}); };
  if (v.blocks() == std::vector<int>{3} && p >= 3) {
    const PrimeField& f = ring->field();
    std::vector<Polynomial> out;
    out.push_back(x(3, 1));
    out.push_back(x(2, 1).pow(2) - x(1, 1) * x(3, 1) * f.reduce(2) - x(2, 1) * x(3, 1));
    out.push_back(norm(ring, 1));
    out.push_back(transfer(x(1, 1).pow(p - 1) * x(2, 1)));
    return out;
  }
  if (v.blocks() == std::vector<int>{2, 2}) {
    const Polynomial top = p == 2 ? transfer(x(1, 1) * x(1, 2)) : x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1);
    return std::vector<Polynomial>{x(2, 1), norm(ring, 1), x(2, 2), norm(ring, 2), top};
  }
  return std::nullopt;
}

int coinvariant_top_degree_bound(const ModuleSpec& v) {
  if (!v.reduced()) throw std::invalid_argument(v.label() + " is not reduced");
  const int p = static_cast<int>(v.p());
  const int m = v.m();
  const int top = v.max_block();
  if (top == 2) return m * (p - 1);
  if (top == 3) return m * (p - 1) + 1;
  return m * (p - 1) + (p - 2);
}

}  // namespace modcov

#pragma once

// Closed-form Noether numbers for Z/p in characteristic p, the reductions they
// rely on, and the two explicit generating sets that are known by hand.

#include "modcov/polyact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modcov {

enum class CaseLabel {
  WTrivial,
  V2Exception,
  SomeBlockGt3,
  MaxBlock3,
  AllBlocks2M1,
  AllBlocks2Mge2,
  TwoV2,
};
std::string to_string(CaseLabel c);

struct ReducedModule {
  ModuleSpec v;
  int trivial_count;
};

/// Strips the V_1 summands. Throws std::invalid_argument if nothing remains.
ReducedModule reduce_V(const ModuleSpec& v);

struct FormulaValue {
  int value;
  CaseLabel label;
};

/// beta(k[V]^G) for reduced V. For 2V_2 the ring is a hypersurface generated in
/// degrees 1, 1, 2, p, p, so the value is p (which is 2(p-1) only at p = 2).
FormulaValue beta_invariants_formula(const ModuleSpec& v);

/// beta(k[V,W]^G); V need not be reduced (but must have a block of size >= 2),
/// W may be decomposable.
FormulaValue beta_covariants_formula(const ModuleSpec& v, const ModuleSpec& w);

/// Minimal generators of k[V]^G for V = V_3 (p >= 3) or V = 2V_2.
std::optional<std::vector<Polynomial>> known_generators(const RingPtr& ring);

/// Best available upper bound on the top degree of k[V]/k[V]^G_+ k[V], V reduced.
int coinvariant_top_degree_bound(const ModuleSpec& v);

}  // namespace modcov

#pragma once

// Noether numbers by graded Nakayama: minimal generator counts per degree for
// k[V]^G, for k[V] over k[V]^G (gamma) and for the covariants k[V,W]^G, each
// searched up to a degree cap that a known bound certifies.

#include "modcov/covariant.hpp"
#include "modcov/engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace modcov {

enum class Target { Algebra, PolynomialModule, CovariantModule };
std::string to_string(Target t);

struct BetaReport {
  BetaReport(Target t, ModuleSpec module) : target(t), v(std::move(module)) {}

  Target target;
  ModuleSpec v;
  std::optional<ModuleSpec> w;
  /// counts[d], d = 0..cap_used.
  std::vector<int> counts;
  int beta = 0;
  int cap_used = 0;
  int certified_cap = 0;
  std::string cap_certificate;
  /// False when cap_used is below the certified cap.
  bool conclusive = true;
  /// One minimal generator per generating degree. For covariants this is the
  /// weight polynomial f of h = sum Delta^{j-1}(f) w_j.
  std::map<int, Polynomial> witnesses;

  /// Degrees of a minimal generating set, ascending with multiplicity.
  std::vector<int> generator_degrees() const;
};

/// dim (k[V]/k[V]^G_+ k[V])_d for d = 0, 1, ... up to and including the first zero.
std::vector<int> coinvariants_dims(const ModuleSpec& v, Budget budget = {});
std::vector<int> coinvariants_dims(GeneratorEngine& engine);

/// Certified caps: max(p, mp - dim V, gamma) and max(gamma, mp - dim V).
int algebra_cap(const ModuleSpec& v, int gamma);
int covariant_cap(const ModuleSpec& v, int gamma);

BetaReport algebra_beta(GeneratorEngine& engine, std::optional<int> cap_override = {});
BetaReport algebra_beta(const ModuleSpec& v, std::optional<int> cap_override = {},
                        Budget budget = {});
/// beta(k[V], k[V]^G) = gamma, searched one degree past the top of the coinvariants.
BetaReport polynomial_module_beta(GeneratorEngine& engine);
/// W must be a single block; decomposable W is reduced by the caller.
BetaReport covariant_beta(GeneratorEngine& engine, const ModuleSpec& w,
                          std::optional<int> cap_override = {});
BetaReport covariant_beta(const ModuleSpec& v, const ModuleSpec& w,
                          std::optional<int> cap_override = {}, Budget budget = {});

/// Homogeneous generators of k[V] over k[V]^G (monomials), all of degree <= gamma.
std::vector<Polynomial> polynomial_module_generators(GeneratorEngine& engine);

/// f in the subalgebra generated by invariants of smaller degree, i.e. f in
/// (A_+ A_+)_d. f must be a homogeneous invariant.
bool is_decomposable_invariant(const Polynomial& f);
/// h in (A_+ k[V,W]^G)_d. h must be homogeneous.
bool is_decomposable_covariant(const Covariant& h);

/// Generator counts by the direct route: in each degree, the rank of all
/// products of invariant bases with (invariant | ker Delta^n) bases of
/// complementary degree. n = 0 selects the algebra. Slow; a reference only.
std::vector<int> naive_generator_counts(const ModuleSpec& v, int n, int max_degree);

}  // namespace modcov

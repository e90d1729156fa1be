#pragma once

// Degree-by-degree minimal generator counts for k[V]^G as an algebra and for
// M_n = ker Delta^n (the covariants k[V,V_n]^G, via f -> sum Delta^{j-1}(f) w_j)
// as a k[V]^G-module. M_p = k[V], whose counts are the coinvariant dimensions.
//
// Counts are computed per multidegree modulo l = x_{n_j0,j0}, the fixed
// variable of the smallest block. Since M ∩ l k[V] = l M, the number of
// generators in multidegree d equals dim M_d - dim M_{d-e_j0} minus the rank
// of the products pi(g) pi(y), g a minimal algebra generator other than l and
// y running over M_{d - deg g}; pi is reduction mod l.

#include "modcov/polynomial.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace modcov {

struct Budget {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Largest admissible multidegree piece of k[V]; 0 means unlimited.
  std::int64_t max_piece_dim = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorSeries {
  /// counts[d] = number of minimal generators in degree d.
  std::vector<int> counts;
  /// One minimal generator per degree with a nonzero count.
  std::map<int, Polynomial> witnesses;
  /// Every minimal generator found, when the series keeps them.
  std::vector<Polynomial> generators;
};

class GeneratorEngine {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

  explicit GeneratorEngine(const ModuleSpec& v, Budget budget = {},
                           std::uint64_t seed = kDefaultSeed);
  ~GeneratorEngine();
  GeneratorEngine(const GeneratorEngine&) = delete;
  GeneratorEngine& operator=(const GeneratorEngine&) = delete;

  const ModuleSpec& module() const;
  const RingPtr& ring() const;

  /// Algebra generators of k[V]^G through the given degree. Keeps all generators.
  const GeneratorSeries& algebra(int degree);
  /// Module generators of ker Delta^n over k[V]^G through the given degree,
  /// 1 <= n <= p. For n = p every generator is kept (they are monomials).
  const GeneratorSeries& module(int n, int degree);
  /// Top degree of the coinvariants k[V]/k[V]^G_+ k[V].
  int gamma();
  /// Frees the stored bases of ker Delta^n; counts stay available.
  void release(int n);
  /// Replaces the budget for later calls. After BudgetExceeded the engine
  /// holds every degree completed before the overrun and can be resumed.
  void set_budget(Budget budget);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace modcov

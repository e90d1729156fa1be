#include "modcov/gens.hpp"

#include "modcov/graded_piece.hpp"

#include <algorithm>
#include <stdexcept>

namespace modcov {

std::string to_string(Target t) {
  switch (t) {
    case Target::Algebra: return "algebra";
    case Target::PolynomialModule: return "polynomial-module";
    case Target::CovariantModule: return "covariant-module";
  }
  return "unknown";
}

std::vector<int> BetaReport::generator_degrees() const {
  std::vector<int> out;
  for (std::size_t d = 0; d < counts.size(); ++d)
    out.insert(out.end(), static_cast<std::size_t>(counts[d]), static_cast<int>(d));
  return out;
}

namespace {

int top_nonzero(const std::vector<int>& counts) {
  for (std::size_t d = counts.size(); d-- > 0;)
    if (counts[d] != 0) return static_cast<int>(d);
  return 0;
}

void fill(BetaReport& r, const GeneratorSeries& s) {
  r.counts.assign(s.counts.begin(), s.counts.begin() + r.cap_used + 1);
  r.beta = top_nonzero(r.counts);
  for (const auto& [d, f] : s.witnesses)
    if (d <= r.cap_used) r.witnesses.emplace(d, f);
  r.conclusive = r.cap_used >= r.certified_cap;
}

int check_cap(std::optional<int> cap_override, int certified) {
  if (cap_override && *cap_override < 0) throw std::invalid_argument("negative degree cap");
  return cap_override.value_or(certified);
}

// Coordinates of polynomials on one multidegree piece.
class PieceSpan {
 public:
  PieceSpan(const RingPtr& ring, TableCache& cache, const std::vector<int>& md)
      : piece_(full_piece(cache, ring->module(), md)), span_(ring->field(), piece_.size()) {}

  void insert(const Polynomial& f) { span_.insert(to_coordinates(f, piece_)); }
  bool contains(const Polynomial& f) const { return span_.contains(to_coordinates(f, piece_)); }
  Index rank() const { return span_.rank(); }

 private:
  Piece piece_;
  EchelonBasis<std::uint32_t> span_;
};

// Bases of k[V]^G (n = 0 or 1) or ker Delta^n on multidegree pieces.
class PieceBases {
 public:
  PieceBases(RingPtr ring, int n) : ring_(std::move(ring)), n_(std::max(n, 1)) {}

  const std::vector<Polynomial>& operator()(const std::vector<int>& md) {
    auto it = cache_.find(md);
    if (it != cache_.end()) return it->second;
    const Piece piece = full_piece(tables_, ring_->module(), md);
    FpMatrix<std::uint32_t> d = piece_sigma_matrix(ring_->module(), tables_, md);
    for (Index i = 0; i < d.rows(); ++i) d(i, i) = ring_->field().sub(d(i, i), 1);
    const FpMatrix<std::uint32_t> k =
        kernel_basis(ring_->field(), power(ring_->field(), d, static_cast<unsigned>(n_)));
    std::vector<Polynomial> out;
    for (Index r = 0; r < k.rows(); ++r)
      out.push_back(from_coordinates(ring_, piece, k.row(r).transpose()));
    return cache_.emplace(md, std::move(out)).first->second;
  }

  TableCache& tables() { return tables_; }

 private:
  RingPtr ring_;
  int n_;
  TableCache tables_;
  std::map<std::vector<int>, std::vector<Polynomial>> cache_;
};

std::vector<std::vector<int>> sub_multidegrees(const std::vector<int>& md) {
  std::vector<std::vector<int>> out{{}};
  for (int a : md) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out)
      for (int e = 0; e <= a; ++e) {
        auto v = prefix;
        v.push_back(e);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

bool all_zero(const std::vector<int>& md) {
  return std::all_of(md.begin(), md.end(), [](int a) { return a == 0; });
}

// Span of A_+ X in multidegree md, X = A_+ (n = 0) or ker Delta^n.
PieceSpan decomposable_span(const RingPtr& ring, const std::vector<int>& md, int n,
                            PieceBases& invariants, PieceBases& module) {
  PieceSpan span(ring, invariants.tables(), md);
  for (const auto& md1 : sub_multidegrees(md)) {
    if (all_zero(md1)) continue;
    std::vector<int> rest(md.size());
    for (std::size_t t = 0; t < md.size(); ++t) rest[t] = md[t] - md1[t];
    if (n == 0 && all_zero(rest)) continue;
    const auto& left = invariants(md1);
    const auto& right = n == 0 ? invariants(rest) : module(rest);
    for (const auto& a : left)
      for (const auto& b : right) span.insert(a * b);
  }
  return span;
}

}  // namespace

int algebra_cap(const ModuleSpec& v, int gamma) {
  const int p = static_cast<int>(v.p());
  return std::max({p, v.m() * p - v.dim(), gamma});
}

int covariant_cap(const ModuleSpec& v, int gamma) {
  return std::max(gamma, v.m() * static_cast<int>(v.p()) - v.dim());
}

std::vector<int> coinvariants_dims(GeneratorEngine& engine) {
  const int gamma = engine.gamma();
  const auto& counts = engine.module(static_cast<int>(engine.module().p()), gamma + 1).counts;
  return std::vector<int>(counts.begin(), counts.begin() + gamma + 2);
}

std::vector<int> coinvariants_dims(const ModuleSpec& v, Budget budget) {
  GeneratorEngine engine(v, budget);
  return coinvariants_dims(engine);
}

BetaReport algebra_beta(GeneratorEngine& engine, std::optional<int> cap_override) {
  BetaReport r(Target::Algebra, engine.module());
  r.certified_cap = algebra_cap(r.v, engine.gamma());
  r.cap_certificate = "max(p, mp - dim V, gamma)";
  r.cap_used = check_cap(cap_override, r.certified_cap);
  fill(r, engine.algebra(r.cap_used));
  return r;
}

BetaReport algebra_beta(const ModuleSpec& v, std::optional<int> cap_override, Budget budget) {
  GeneratorEngine engine(v, budget);
  return algebra_beta(engine, cap_override);
}

BetaReport polynomial_module_beta(GeneratorEngine& engine) {
  BetaReport r(Target::PolynomialModule, engine.module());
  const int gamma = engine.gamma();
  r.certified_cap = gamma + 1;
  r.cap_certificate = "coinvariants vanish in degree gamma + 1";
  r.cap_used = r.certified_cap;
  fill(r, engine.module(static_cast<int>(r.v.p()), r.cap_used));
  return r;
}

BetaReport covariant_beta(GeneratorEngine& engine, const ModuleSpec& w,
                          std::optional<int> cap_override) {
  if (w.m() != 1)
    throw std::invalid_argument("covariant_beta needs an indecomposable W, got " + w.label());
  if (w.field() != engine.module().field()) throw std::invalid_argument("V and W over different fields");
  BetaReport r(Target::CovariantModule, engine.module());
  r.w = w;
  r.certified_cap = covariant_cap(r.v, engine.gamma());
  r.cap_certificate = "max(gamma, mp - dim V)";
  r.cap_used = check_cap(cap_override, r.certified_cap);
  fill(r, engine.module(w.dim(), r.cap_used));
  return r;
}

BetaReport covariant_beta(const ModuleSpec& v, const ModuleSpec& w,
                          std::optional<int> cap_override, Budget budget) {
  GeneratorEngine engine(v, budget);
  return covariant_beta(engine, w, cap_override);
}

std::vector<Polynomial> polynomial_module_generators(GeneratorEngine& engine) {
  const int gamma = engine.gamma();
  return engine.module(static_cast<int>(engine.module().p()), gamma).generators;
}

bool is_decomposable_invariant(const Polynomial& f) {
  if (!f.is_homogeneous()) throw std::invalid_argument("is_decomposable_invariant: inhomogeneous input");
  if (!is_invariant(f)) throw std::invalid_argument("is_decomposable_invariant: not an invariant");
  PieceBases invariants(f.ring(), 1);
  for (const auto& [md, part] : f.multihomogeneous_components())
    if (!decomposable_span(f.ring(), md, 0, invariants, invariants).contains(part)) return false;
  return true;
}

bool is_decomposable_covariant(const Covariant& h) {
  const Polynomial& f = h.component(1);
  if (!f.is_homogeneous()) throw std::invalid_argument("is_decomposable_covariant: inhomogeneous input");
  PieceBases invariants(h.ring(), 1);
  PieceBases module(h.ring(), h.n());
  for (const auto& [md, part] : f.multihomogeneous_components())
    if (!decomposable_span(h.ring(), md, h.n(), invariants, module).contains(part)) return false;
  return true;
}

std::vector<int> naive_generator_counts(const ModuleSpec& v, int n, int max_degree) {
  if (n < 0 || n > static_cast<int>(v.p())) throw std::out_of_range("module index outside [0, p]");
  const RingPtr ring = make_ring(v);
  PieceBases invariants(ring, 1);
  PieceBases module(ring, n);
  std::vector<int> counts;
  for (int d = 0; d <= max_degree; ++d) {
    int c = 0;
    for (const auto& md : multidegrees(v.m(), d)) {
      const auto dim = static_cast<Index>(n == 0 ? invariants(md).size() : module(md).size());
      c += static_cast<int>(dim - decomposable_span(ring, md, n, invariants, module).rank());
    }
    counts.push_back(d == 0 && n == 0 ? 0 : c);
  }
  return counts;
}

}  // namespace modcov

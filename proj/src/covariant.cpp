#include "modcov/covariant.hpp"

#include <map>
#include <sstream>
#include <string>

namespace modcov {

namespace {

void check_w(const RingPtr& ring, const ModuleSpec& w) {
  if (w.m() != 1) throw std::invalid_argument("W must be indecomposable, got " + w.label());
  if (w.field() != ring->field()) throw std::invalid_argument("V and W over different fields");
}

std::vector<Polynomial> zeros(const RingPtr& ring, int n) {
  return std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(ring));
}

std::string format_md(const std::vector<int>& md) {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < md.size(); ++k) out << (k ? "," : "") << md[k];
  out << ')';
  return out.str();
}

}  // namespace

bool is_equivariant(const ModuleSpec& w, const std::vector<Polynomial>& f) {
  // Coefficient of w_j in sigma(h) is sum_{i>=j} (-1)^{i-j} sigma(f_i).
  const PrimeField& field = w.field();
  std::vector<Polynomial> sf;
  for (const auto& c : f) sf.push_back(apply_sigma(c));
  for (std::size_t j = 0; j < f.size(); ++j) {
    Polynomial acc(f[j].ring());
    for (std::size_t i = j; i < f.size(); ++i)
      acc += (i - j) % 2 == 0 ? sf[i] : sf[i] * field.neg(1);
    if (!(acc == f[j])) return false;
  }
  return true;
}

Covariant::Covariant(Unchecked, RingPtr ring, ModuleSpec w, std::vector<Polynomial> components)
    : ring_(std::move(ring)), w_(std::move(w)), f_(std::move(components)) {}

Covariant::Covariant(RingPtr ring, ModuleSpec w, std::vector<Polynomial> components)
    : ring_(std::move(ring)), w_(std::move(w)), f_(std::move(components)) {
  check_w(ring_, w_);
  const auto n = static_cast<std::size_t>(w_.dim());
  if (f_.size() > n)
    throw std::invalid_argument("covariant has " + std::to_string(f_.size()) +
                                " components but dim W = " + std::to_string(n));
  for (const auto& c : f_)
    if (!(*c.ring() == *ring_)) throw std::invalid_argument("component over a different ring");
  while (f_.size() < n) f_.emplace_back(ring_);
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (!(delta(f_[j]) == f_[j + 1]))
      throw std::invalid_argument("chain violated: f_" + std::to_string(j + 2) +
                                  " != Delta(f_" + std::to_string(j + 1) + ")");
  if (!delta(f_.back()).is_zero()) throw std::invalid_argument("chain violated: Delta(f_n) != 0");
  if (!is_equivariant(w_, f_)) throw std::invalid_argument("components are not equivariant");
}

Covariant Covariant::zero(RingPtr ring, ModuleSpec w) {
  check_w(ring, w);
  auto f = zeros(ring, w.dim());
  return Covariant(Unchecked{}, std::move(ring), std::move(w), std::move(f));
}

int Covariant::support() const {
  for (std::size_t j = f_.size(); j-- > 0;)
    if (!f_[j].is_zero()) return static_cast<int>(j + 1);
  return 0;
}

void Covariant::check_compatible(const Covariant& other) const {
  if (!(w_ == other.w_) || !(*ring_ == *other.ring_))
    throw std::invalid_argument("covariants of different (V, W)");
}

Covariant& Covariant::operator+=(const Covariant& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < f_.size(); ++j) f_[j] += other.f_[j];
  return *this;
}

Covariant& Covariant::operator-=(const Covariant& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < f_.size(); ++j) f_[j] -= other.f_[j];
  return *this;
}

Covariant operator*(const Polynomial& q, const Covariant& h) {
  if (!is_invariant(q)) throw std::invalid_argument("covariant scaled by a non-invariant");
  std::vector<Polynomial> f;
  for (const auto& c : h.f_) f.push_back(q * c);
  return Covariant(Covariant::Unchecked{}, h.ring_, h.w_, std::move(f));
}

bool Covariant::operator==(const Covariant& other) const {
  return w_ == other.w_ && *ring_ == *other.ring_ && f_ == other.f_;
}

Covariant from_weight_poly(const Polynomial& f, const ModuleSpec& w) {
  check_w(f.ring(), w);
  if (f.is_zero()) return Covariant::zero(f.ring(), w);
  const int d = weight(f);
  if (d > w.dim())
    throw std::invalid_argument("weight " + std::to_string(d) + " exceeds dim W = " +
                                std::to_string(w.dim()));
  std::vector<Polynomial> comps{f};
  for (int j = 1; j < d; ++j) comps.push_back(delta(comps.back()));
  return Covariant(f.ring(), w, std::move(comps));
}

Polynomial to_weight_poly(const Covariant& h) {
  if (h.is_zero()) throw std::invalid_argument("to_weight_poly of the zero covariant");
  Polynomial f = h.component(1);
  Polynomial g = f;
  for (int j = 2; j <= h.n(); ++j) {
    g = delta(g);
    if (!(g == h.component(j))) throw std::logic_error("covariant chain corrupted");
  }
  if (!delta(g).is_zero()) throw std::logic_error("covariant chain corrupted");
  return f;
}

std::vector<Covariant> covariant_basis(const RingPtr& ring, const ModuleSpec& w,
                                       const std::vector<int>& md) {
  check_w(ring, w);
  const PrimeField& field = ring->field();
  const int n = w.dim();
  TableCache cache;
  const Piece piece = full_piece(cache, ring->module(), md);
  using Wide = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Wide sv = piece_sigma_matrix(ring->module(), cache, md).cast<std::int64_t>();
  const Wide sw = w_action_matrix(w).cast<std::int64_t>();
  Wide op(sv.rows() * n, sv.cols() * n);
  for (Index a = 0; a < sv.rows(); ++a)
    for (Index b = 0; b < sv.cols(); ++b)
      op.block(a * n, b * n, n, n) = sv(a, b) * sw;
  op -= Wide::Identity(op.rows(), op.cols());
  const FpMatrix<std::uint32_t> kernel = kernel_basis(field, to_field<std::uint32_t>(field, op));

  std::vector<Covariant> out;
  std::vector<Exponent> e(static_cast<std::size_t>(ring->nvars()));
  for (Index r = 0; r < kernel.rows(); ++r) {
    auto comps = zeros(ring, n);
    for (Index k = 0; k < piece.size(); ++k)
      for (int i = 0; i < n; ++i) {
        const auto c = kernel(r, k * n + i);
        if (c == 0) continue;
        piece.exponents(k, e.data());
        comps[static_cast<std::size_t>(i)].add_term(Monomial(e), c);
      }
    out.emplace_back(ring, w, std::move(comps));
  }
  return out;
}

std::vector<Covariant> covariant_basis(const RingPtr& ring, const ModuleSpec& w, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  std::vector<Covariant> out;
  for (const auto& md : multidegrees(ring->m(), d)) {
    auto part = covariant_basis(ring, w, md);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

Covariant make_transfer_covariant(const Polynomial& f, const ModuleSpec& w, int s) {
  check_w(f.ring(), w);
  const int p = static_cast<int>(w.p());
  if (s < 1 || s > w.dim() || s > p)
    throw std::out_of_range("transfer covariant support " + std::to_string(s) + " out of range");
  std::vector<Polynomial> comps{delta_power(f, static_cast<unsigned>(p - s))};
  for (int j = 1; j < s; ++j) comps.push_back(delta(comps.back()));
  return Covariant(f.ring(), w, std::move(comps));
}

std::optional<Polynomial> is_transfer_covariant(const Covariant& h) {
  if (h.is_zero()) throw std::invalid_argument("is_transfer_covariant of the zero covariant");
  const auto k = static_cast<unsigned>(static_cast<int>(h.w().p()) - h.support());
  Polynomial witness(h.ring());
  for (const auto& [deg, part] : h.component(1).homogeneous_components()) {
    auto pre = delta_power_preimage(part, k);
    if (!pre) return std::nullopt;
    witness += *pre;
  }
  return witness;
}

namespace {

struct Level {
  Polynomial t;
  int k;
};

// One multihomogeneous component; follows the induction on the support.
NormSplit decompose_multihomogeneous(const Covariant& h, int j) {
  const RingPtr& ring = h.ring();
  const auto p = static_cast<unsigned>(ring->p());
  const Polynomial nj = norm(ring, j);
  Covariant h1 = Covariant::zero(ring, h.w());
  std::vector<Level> levels;
  Covariant cur = h;
  while (!cur.is_zero()) {
    const int k = cur.support();
    const auto [q, r] = divide_by_norm(cur.component(k), j);
    Polynomial t(ring);
    if (!r.is_zero()) {
      auto pre = delta_power_preimage(r, p - 1);
      if (!pre)
        throw DecompositionError("norm remainder is not a transfer; the free-module guarantee failed");
      t = std::move(*pre);
    }
    auto fq = delta_power_preimage(q, static_cast<unsigned>(k - 1));
    if (!fq)
      throw DecompositionError("norm quotient is not in the image of Delta^" + std::to_string(k - 1));
    const Covariant step1 = from_weight_poly(*fq, h.w());
    Covariant next = cur - nj * step1;
    if (!r.is_zero()) {
      next -= make_transfer_covariant(t, h.w(), k);
      levels.push_back({std::move(t), k});
    }
    if (next.support() >= k) throw std::logic_error("split_off_norm: support did not drop");
    h1 += step1;
    cur = std::move(next);
  }
  if (levels.empty()) return {std::move(h1), Covariant::zero(ring, h.w()), Polynomial(ring)};
  const int top = levels.front().k;
  Polynomial u(ring);
  for (const auto& level : levels) u += delta_power(level.t, static_cast<unsigned>(top - level.k));
  Covariant h2 = make_transfer_covariant(u, h.w(), top);
  return {std::move(h1), std::move(h2), std::move(u)};
}

}  // namespace

NormSplit split_off_norm(const Covariant& h, int j) {
  const RingPtr& ring = h.ring();
  if (j < 1 || j > ring->m()) throw std::out_of_range("block index " + std::to_string(j));
  const int threshold = static_cast<int>(ring->p()) - ring->module().block(j - 1);
  const auto parts = h.component(1).multihomogeneous_components();
  for (const auto& [md, part] : parts)
    if (md[static_cast<std::size_t>(j - 1)] <= threshold)
      throw std::invalid_argument("multidegree " + format_md(md) + " has d_" + std::to_string(j) +
                                  " <= p - n_" + std::to_string(j) + " = " + std::to_string(threshold));

  NormSplit out{Covariant::zero(ring, h.w()), Covariant::zero(ring, h.w()), Polynomial(ring)};
  std::vector<std::pair<NormSplit, int>> pieces;
  int top = 0;
  for (const auto& [md, part] : parts) {
    NormSplit s = decompose_multihomogeneous(from_weight_poly(part, h.w()), j);
    const int support = s.h2.support();
    top = std::max(top, support);
    pieces.emplace_back(std::move(s), support);
  }
  for (auto& [s, support] : pieces) {
    out.h1 += s.h1;
    out.h2 += s.h2;
    if (support > 0) out.witness += delta_power(s.witness, static_cast<unsigned>(top - support));
  }
  return out;
}

std::vector<ScaledCovariant> decompose_transfer_covariant(
    const Covariant& h, const std::vector<Polynomial>& module_gens, int gamma) {
  const RingPtr& ring = h.ring();
  const PrimeField& field = ring->field();
  if (h.is_zero()) throw std::invalid_argument("zero covariant");
  const int d = h.degree();
  if (!h.component(1).is_homogeneous()) throw std::invalid_argument("covariant not homogeneous");
  if (d <= gamma)
    throw std::invalid_argument("degree " + std::to_string(d) + " is not above gamma = " +
                                std::to_string(gamma));
  const auto witness = is_transfer_covariant(h);
  if (!witness) throw std::invalid_argument("not a transfer covariant");
  const int s = h.support();

  // f = sum_i q_i g_i: one column per (generator, invariant basis element).
  const auto monos = graded_basis(ring->module(), d);
  std::map<Monomial, Index, TermOrder> position;
  for (std::size_t k = 0; k < monos.size(); ++k) position[monos[k]] = static_cast<Index>(k);
  struct Column {
    std::size_t gen;
    Polynomial invariant;
  };
  std::vector<Column> columns;
  std::map<int, std::vector<Polynomial>> invariants;
  for (std::size_t i = 0; i < module_gens.size(); ++i) {
    const Polynomial& g = module_gens[i];
    if (g.is_zero()) continue;
    if (!g.is_homogeneous() || g.degree() > gamma)
      throw std::invalid_argument("module generators must be homogeneous of degree <= gamma");
    const int e = d - g.degree();
    auto it = invariants.find(e);
    if (it == invariants.end()) it = invariants.emplace(e, invariant_basis(ring, e)).first;
    for (const auto& b : it->second) columns.push_back({i, b});
  }
  FpMatrix<std::uint32_t> m = FpMatrix<std::uint32_t>::Zero(static_cast<Index>(monos.size()),
                                                            static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Polynomial product = columns[c].invariant * module_gens[columns[c].gen];
    for (const auto& [mono, coeff] : product.terms()) m(position.at(mono), static_cast<Index>(c)) = coeff;
  }
  FpVector<std::uint32_t> rhs = FpVector<std::uint32_t>::Zero(static_cast<Index>(monos.size()));
  for (const auto& [mono, coeff] : witness->terms()) rhs(position.at(mono)) = coeff;
  const auto x = solve(field, m, rhs);
  if (!x) throw std::invalid_argument("witness is not in the span of the module generators");

  std::map<std::size_t, Polynomial> q;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto coeff = (*x)(static_cast<Index>(c));
    if (coeff == 0) continue;
    auto it = q.try_emplace(columns[c].gen, ring).first;
    it->second += columns[c].invariant * coeff;
  }
  std::vector<ScaledCovariant> out;
  Covariant sum = Covariant::zero(ring, h.w());
  for (auto& [gen, qi] : q) {
    if (qi.is_zero()) continue;
    Covariant ci = make_transfer_covariant(module_gens[gen], h.w(), s);
    if (ci.is_zero()) continue;
    sum += qi * ci;
    out.push_back({std::move(qi), std::move(ci)});
  }
  if (!(sum == h)) throw DecompositionError("transfer covariant reconstruction failed");
  return out;
}

}  // namespace modcov

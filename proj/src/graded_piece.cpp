#include "modcov/graded_piece.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <numeric>
#include <stdexcept>

namespace modcov {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void enumerate(int nvars, int degree, std::vector<Exponent>& prefix, std::vector<Exponent>& out) {
  if (static_cast<int>(prefix.size()) == nvars - 1) {
    prefix.push_back(static_cast<Exponent>(degree));
    out.insert(out.end(), prefix.begin(), prefix.end());
    prefix.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    prefix.push_back(static_cast<Exponent>(e));
    enumerate(nvars, degree - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialTable::MonomialTable(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 0 || degree < 0) throw std::invalid_argument("MonomialTable: negative size");
  if (nvars == 0) {
    size_ = degree == 0 ? 1 : 0;
    return;
  }
  size_ = static_cast<Index>(binomial(degree + nvars - 1, nvars - 1));
  exps_.reserve(static_cast<std::size_t>(size_ * nvars));
  std::vector<Exponent> prefix;
  enumerate(nvars, degree, prefix, exps_);
}

Index MonomialTable::rank(const Exponent* e) const {
  Index r = 0;
  int rem = degree_;
  for (int t = 0; t + 1 < nvars_; ++t) {
    const int k = nvars_ - t - 1;
    r += static_cast<Index>(binomial(rem - e[t] - 1 + k, k));
    rem -= e[t];
  }
  return r;
}

const MonomialTable& TableCache::table(int nvars, int degree) {
  auto& slot = tables_[{nvars, degree}];
  if (!slot) slot = std::make_unique<MonomialTable>(nvars, degree);
  return *slot;
}

const std::vector<std::int32_t>& TableCache::product(int nvars, int a, int b) {
  auto key = std::make_tuple(nvars, a, b);
  auto it = products_.find(key);
  if (it != products_.end()) return it->second;
  const MonomialTable& ta = table(nvars, a);
  const MonomialTable& tb = table(nvars, b);
  const MonomialTable& tc = table(nvars, a + b);
  std::vector<std::int32_t> out(static_cast<std::size_t>(ta.size() * tb.size()));
  std::vector<Exponent> e(static_cast<std::size_t>(nvars));
  for (Index i = 0; i < ta.size(); ++i)
    for (Index k = 0; k < tb.size(); ++k) {
      for (int t = 0; t < nvars; ++t)
        e[static_cast<std::size_t>(t)] =
            static_cast<Exponent>(ta.exponents(i)[t] + tb.exponents(k)[t]);
      out[static_cast<std::size_t>(i * tb.size() + k)] = static_cast<std::int32_t>(tc.rank(e.data()));
    }
  return products_.emplace(key, std::move(out)).first->second;
}

Piece::Piece(TableCache& cache, std::vector<int> nvars, std::vector<int> degrees)
    : nvars_(std::move(nvars)), degrees_(std::move(degrees)) {
  if (nvars_.size() != degrees_.size()) throw std::invalid_argument("Piece: arity mismatch");
  for (std::size_t j = 0; j < nvars_.size(); ++j)
    factors_.push_back(&cache.table(nvars_[j], degrees_[j]));
  strides_.assign(factors_.size(), 1);
  for (std::size_t j = factors_.size(); j-- > 0;) {
    strides_[j] = size_;
    size_ *= factors_[j]->size();
  }
}

int Piece::total_degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }

Index Piece::index_of(const Exponent* exps) const {
  Index idx = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    idx += factors_[j]->rank(exps) * strides_[j];
    exps += nvars_[j];
  }
  return idx;
}

void Piece::exponents(Index k, Exponent* out) const {
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    const Index local = k / strides_[j];
    k %= strides_[j];
    const Exponent* e = factors_[j]->exponents(local);
    std::copy(e, e + nvars_[j], out);
    out += nvars_[j];
  }
}

FpMatrix<std::uint32_t> block_sigma_matrix(const PrimeField& field, TableCache& cache, int n,
                                           int a) {
  const MonomialTable& target = cache.table(n, a);
  FpMatrix<std::uint32_t> s = FpMatrix<std::uint32_t>::Zero(target.size(), target.size());
  for (Index col = 0; col < target.size(); ++col) {
    const Exponent* e = target.exponents(col);
    // Multiply out prod_i sigma(x_i)^{e_i}, one linear factor at a time.
    std::vector<std::uint32_t> acc{1};
    int deg = 0;
    for (int i = 0; i < n; ++i) {
      for (int rep = 0; rep < e[i]; ++rep) {
        const auto& prod = cache.product(n, deg, 1);
        std::vector<std::uint32_t> next(static_cast<std::size_t>(cache.table(n, deg + 1).size()), 0);
        for (std::size_t k = 0; k < acc.size(); ++k) {
          if (acc[k] == 0) continue;
          const std::size_t row = k * static_cast<std::size_t>(n);
          auto& a1 = next[static_cast<std::size_t>(prod[row + static_cast<std::size_t>(i)])];
          a1 = field.add(a1, acc[k]);
          if (i + 1 < n) {
            auto& a2 = next[static_cast<std::size_t>(prod[row + static_cast<std::size_t>(i) + 1])];
            a2 = field.add(a2, acc[k]);
          }
        }
        acc = std::move(next);
        ++deg;
      }
    }
    for (std::size_t k = 0; k < acc.size(); ++k) s(static_cast<Index>(k), col) = acc[k];
  }
  return s;
}

FpMatrix<std::uint32_t> piece_sigma_matrix(const ModuleSpec& v, TableCache& cache,
                                           const std::vector<int>& degrees) {
  using Wide = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Wide acc = Wide::Identity(1, 1);
  for (int j = 0; j < v.m(); ++j) {
    const Wide block =
        block_sigma_matrix(v.field(), cache, v.block(j), degrees[static_cast<std::size_t>(j)])
            .cast<std::int64_t>();
    Wide next = Eigen::kroneckerProduct(acc, block);
    acc = to_field<std::uint32_t>(v.field(), next).cast<std::int64_t>();
  }
  return to_field<std::uint32_t>(v.field(), acc);
}

std::vector<std::vector<int>> multidegrees(int m, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem) -> void {
    if (static_cast<int>(cur.size()) == m - 1) {
      cur.push_back(rem);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur.push_back(e);
      self(self, rem - e);
      cur.pop_back();
    }
  };
  if (m == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  rec(rec, d);
  return out;
}

Piece full_piece(TableCache& cache, const ModuleSpec& v, const std::vector<int>& degrees) {
  return Piece(cache, v.blocks(), degrees);
}

FpVector<std::uint32_t> to_coordinates(const Polynomial& f, const Piece& piece) {
  FpVector<std::uint32_t> out = FpVector<std::uint32_t>::Zero(piece.size());
  for (const auto& [mono, c] : f.terms()) {
    if (mono.multidegree(*f.ring()) != piece.degrees())
      throw std::invalid_argument("polynomial not supported on this piece");
    out(piece.index_of(mono.exponents().data())) = c;
  }
  return out;
}

Polynomial from_coordinates(const RingPtr& ring, const Piece& piece,
                            const Eigen::Ref<const FpVector<std::uint32_t>>& coords) {
  Polynomial f(ring);
  std::vector<Exponent> e(static_cast<std::size_t>(ring->nvars()));
  for (Index k = 0; k < coords.size(); ++k) {
    if (coords(k) == 0) continue;
    piece.exponents(k, e.data());
    f.add_term(Monomial(e), coords(k));
  }
  return f;
}

}  // namespace modcov

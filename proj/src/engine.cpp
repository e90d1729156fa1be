#include "modcov/engine.hpp"

#include "modcov/graded_piece.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace modcov {

namespace {

using Clock = std::chrono::steady_clock;
using Wide = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool nonnegative(const std::vector<int>& md) {
  return std::all_of(md.begin(), md.end(), [](int a) { return a >= 0; });
}

bool is_zero_degree(const std::vector<int>& md) {
  return std::all_of(md.begin(), md.end(), [](int a) { return a == 0; });
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = a[t] - b[t];
  return out;
}

// Jordan basis of Delta on S^a(V_n^*), rows in the monomial coordinates.
struct Chains {
  FpMatrix<std::uint32_t> q;
  std::vector<int> lengths;
  std::vector<Index> starts;
  std::map<int, Index> count_by_length;
};

class CoreBase {
 public:
  virtual ~CoreBase() = default;
  virtual const ModuleSpec& module() const = 0;
  virtual const RingPtr& ring() const = 0;
  virtual const GeneratorSeries& algebra(int degree) = 0;
  virtual const GeneratorSeries& module(int n, int degree) = 0;
  virtual void release(int n) = 0;
  virtual void set_budget(Budget budget) = 0;
};

template <typename Scalar>
class Core final : public CoreBase {
 public:
  Core(const ModuleSpec& v, Budget budget, std::uint64_t seed)
      : field_(v.field()), v_(v), ring_(make_ring(v)), budget_(budget), rng_(seed) {
    detail::check_storage<Scalar>(field_);
    m_ = v.m();
    j0_ = static_cast<int>(std::min_element(v.blocks().begin(), v.blocks().end()) -
                           v.blocks().begin());
    nfull_ = v.blocks();
    nquot_ = nfull_;
    --nquot_[static_cast<std::size_t>(j0_)];
    ell_ = ring_->block_offset(j0_) + nfull_[static_cast<std::size_t>(j0_)] - 1;
    algebra_.n = 1;
  }

  const ModuleSpec& module() const override { return v_; }
  const RingPtr& ring() const override { return ring_; }
  void set_budget(Budget budget) override { budget_ = budget; }

  const GeneratorSeries& algebra(int degree) override {
    while (algebra_.done < degree) step(algebra_, algebra_.done + 1, true);
    return algebra_.out;
  }

  const GeneratorSeries& module(int n, int degree) override {
    if (n < 1 || n > static_cast<int>(field_.p()))
      throw std::out_of_range("module index n = " + std::to_string(n) + " outside [1, p]");
    Series& s = modules_[n];
    s.n = n;
    if (n == 1) {
      // ker Delta = k[V]^G is generated by 1.
      while (s.done < degree) {
        ++s.done;
        s.out.counts.push_back(s.done == 0 ? 1 : 0);
        if (s.done == 0) s.out.witnesses.emplace(0, Polynomial::constant(ring_, 1));
      }
      return s.out;
    }
    if (s.released && s.done < degree) throw std::logic_error("module bases were released");
    algebra(degree);
    while (s.done < degree) step(s, s.done + 1, false);
    return s.out;
  }

  void release(int n) override {
    auto it = modules_.find(n);
    if (it == modules_.end()) return;
    it->second.levels.clear();
    it->second.released = true;
  }

 private:
  struct Level {
    Index tprime = 0;
    bool whole = false;
    std::unique_ptr<EchelonBasis<Scalar>> basis;
  };

  struct Series {
    int n = 0;
    int done = -1;
    bool released = false;
    std::map<std::vector<int>, Level> levels;
    GeneratorSeries out;
  };

  struct AlgebraGenerator {
    std::vector<int> md;
    int degree;
    // pi(g) in the quotient piece of multidegree md.
    std::vector<std::pair<Index, std::uint32_t>> terms;
  };

  void check_budget() const {
    if (budget_.deadline && Clock::now() > *budget_.deadline)
      throw BudgetExceeded("time budget exhausted");
  }

  Piece quotient_piece(const std::vector<int>& md) { return Piece(cache_, nquot_, md); }
  Piece full_piece_of(const std::vector<int>& md) { return Piece(cache_, nfull_, md); }

  const Chains& chains(int n, int a) {
    auto key = std::make_pair(n, a);
    auto it = chains_.find(key);
    if (it != chains_.end()) return it->second;
    FpMatrix<std::uint32_t> d = block_sigma_matrix(field_, cache_, n, a);
    for (Index i = 0; i < d.rows(); ++i) d(i, i) = field_.sub(d(i, i), 1);
    JordanChains<std::uint32_t> jc = jordan_chains(field_, d);
    Chains c{std::move(jc.vectors), std::move(jc.lengths), std::move(jc.starts), {}};
    for (int len : c.lengths) ++c.count_by_length[len];
    return chains_.emplace(key, std::move(c)).first->second;
  }

  // Basis (rows) of ker (sigma - 1)^n on V_{k_1} (x) ... (x) V_{k_m}, in the
  // tensor basis of Jordan chains, block 1 outermost.
  const FpMatrix<std::uint32_t>& small_kernel(const std::vector<int>& lengths, int n) {
    auto key = std::make_pair(lengths, n);
    auto it = small_.find(key);
    if (it != small_.end()) return it->second;
    Wide sigma = Wide::Identity(1, 1);
    for (int k : lengths) {
      Wide j = Wide::Identity(k, k);
      for (int i = 0; i + 1 < k; ++i) j(i + 1, i) = 1;
      Wide next = Eigen::kroneckerProduct(sigma, j);
      sigma = std::move(next);
    }
    sigma -= Wide::Identity(sigma.rows(), sigma.cols());
    const FpMatrix<std::uint32_t> delta = to_field<std::uint32_t>(field_, sigma);
    FpMatrix<std::uint32_t> kernel =
        kernel_basis(field_, power(field_, delta, static_cast<unsigned>(n)));
    return small_.emplace(key, std::move(kernel)).first->second;
  }

  // dim ker Delta^n on k[V]_md.
  Index kernel_dim(const std::vector<int>& md, int n) {
    if (!nonnegative(md)) return 0;
    if (n >= static_cast<int>(field_.p())) return full_piece_of(md).size();
    auto key = std::make_pair(md, n);
    auto it = dims_.find(key);
    if (it != dims_.end()) return it->second;
    std::vector<const Chains*> per_block;
    for (int t = 0; t < m_; ++t) per_block.push_back(&chains(nfull_[static_cast<std::size_t>(t)],
                                                             md[static_cast<std::size_t>(t)]));
    std::vector<int> lengths;
    Index total = 0;
    auto rec = [&](auto&& self, int t, Index mult) -> void {
      if (t == m_) {
        total += mult * small_kernel(lengths, n).rows();
        return;
      }
      for (const auto& [len, count] : per_block[static_cast<std::size_t>(t)]->count_by_length) {
        lengths.push_back(len);
        self(self, t + 1, mult * count);
        lengths.pop_back();
      }
    };
    rec(rec, 0, 1);
    dims_.emplace(key, total);
    return total;
  }

  // Uniformly random element of ker Delta^n on k[V]_md, full coordinates.
  std::vector<std::uint32_t> random_kernel_vector(const std::vector<int>& md, int n) {
    const std::uint32_t p = field_.p();
    std::vector<const Chains*> per_block;
    std::vector<Index> sizes, stride(static_cast<std::size_t>(m_), 1);
    for (int t = 0; t < m_; ++t) {
      per_block.push_back(&chains(nfull_[static_cast<std::size_t>(t)], md[static_cast<std::size_t>(t)]));
      sizes.push_back(per_block.back()->q.rows());
    }
    for (int t = m_ - 1; t > 0; --t)
      stride[static_cast<std::size_t>(t - 1)] = stride[static_cast<std::size_t>(t)] * sizes[static_cast<std::size_t>(t)];
    const Index total = stride[0] * sizes[0];
    std::vector<std::uint64_t> x(static_cast<std::size_t>(total), 0);

    // Coefficients in the tensor Jordan basis.
    std::vector<std::size_t> chain(static_cast<std::size_t>(m_), 0);
    std::vector<int> lengths(static_cast<std::size_t>(m_));
    std::vector<int> local(static_cast<std::size_t>(m_));
    for (;;) {
      for (int t = 0; t < m_; ++t)
        lengths[static_cast<std::size_t>(t)] =
            per_block[static_cast<std::size_t>(t)]->lengths[chain[static_cast<std::size_t>(t)]];
      const FpMatrix<std::uint32_t>& kernel = small_kernel(lengths, n);
      if (kernel.rows() > 0) {
        std::vector<std::uint64_t> z(static_cast<std::size_t>(kernel.cols()), 0);
        for (Index r = 0; r < kernel.rows(); ++r) {
          const std::uint64_t c = rng_() % p;
          if (c == 0) continue;
          for (Index k = 0; k < kernel.cols(); ++k) z[static_cast<std::size_t>(k)] += c * kernel(r, k);
        }
        for (Index k = 0; k < kernel.cols(); ++k) {
          Index rem = k;
          for (int t = m_ - 1; t >= 0; --t) {
            local[static_cast<std::size_t>(t)] = static_cast<int>(rem % lengths[static_cast<std::size_t>(t)]);
            rem /= lengths[static_cast<std::size_t>(t)];
          }
          Index pos = 0;
          for (int t = 0; t < m_; ++t)
            pos += (per_block[static_cast<std::size_t>(t)]->starts[chain[static_cast<std::size_t>(t)]] +
                    local[static_cast<std::size_t>(t)]) *
                   stride[static_cast<std::size_t>(t)];
          x[static_cast<std::size_t>(pos)] = z[static_cast<std::size_t>(k)] % p;
        }
      }
      int t = m_ - 1;
      while (t >= 0 && ++chain[static_cast<std::size_t>(t)] ==
                           per_block[static_cast<std::size_t>(t)]->lengths.size()) {
        chain[static_cast<std::size_t>(t)] = 0;
        --t;
      }
      if (t < 0) break;
    }

    // Back to monomial coordinates, one block (tensor mode) at a time.
    std::vector<std::uint64_t> tmp(static_cast<std::size_t>(total));
    for (int t = 0; t < m_; ++t) {
      const Index s = sizes[static_cast<std::size_t>(t)];
      const Index inner = stride[static_cast<std::size_t>(t)];
      const Index outer = total / (s * inner);
      const FpMatrix<std::uint32_t>& q = per_block[static_cast<std::size_t>(t)]->q;
      std::fill(tmp.begin(), tmp.end(), 0);
      for (Index o = 0; o < outer; ++o)
        for (Index c = 0; c < s; ++c) {
          const std::uint64_t* src = x.data() + (o * s + c) * inner;
          if (std::all_of(src, src + inner, [](std::uint64_t v) { return v == 0; })) continue;
          for (Index r = 0; r < s; ++r) {
            const std::uint64_t a = q(c, r);
            if (a == 0) continue;
            std::uint64_t* dst = tmp.data() + (o * s + r) * inner;
            for (Index i = 0; i < inner; ++i) dst[i] += a * src[i];
          }
        }
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = tmp[k] % p;
    }
    return std::vector<std::uint32_t>(x.begin(), x.end());
  }

  // Position in the quotient piece of each full coordinate (-1 if divisible by l).
  std::vector<Index> quotient_map(const Piece& full, const Piece& quot) const {
    std::vector<Index> out(static_cast<std::size_t>(full.size()));
    std::vector<Exponent> e(static_cast<std::size_t>(v_.dim()));
    for (Index k = 0; k < full.size(); ++k) {
      full.exponents(k, e.data());
      if (e[static_cast<std::size_t>(ell_)] != 0) {
        out[static_cast<std::size_t>(k)] = -1;
        continue;
      }
      e.erase(e.begin() + ell_);
      out[static_cast<std::size_t>(k)] = quot.index_of(e.data());
      e.insert(e.begin() + ell_, 0);
    }
    return out;
  }

  Monomial lift_monomial(const Piece& quot, Index k) const {
    std::vector<Exponent> e(static_cast<std::size_t>(v_.dim() - 1));
    quot.exponents(k, e.data());
    e.insert(e.begin() + ell_, 0);
    return Monomial(std::move(e));
  }

  std::vector<int> unit(int j) const {
    std::vector<int> e(static_cast<std::size_t>(m_), 0);
    e[static_cast<std::size_t>(j)] = 1;
    return e;
  }

  void record(Series& series, int degree, Polynomial generator, bool keep) {
    series.out.witnesses.try_emplace(degree, generator);
    if (keep) series.out.generators.push_back(std::move(generator));
  }

  // A degree either completes or leaves no trace, so a budget overrun keeps
  // the engine usable.
  void step(Series& series, int degree, bool is_algebra) {
    const std::size_t gens_before = gens_.size();
    const std::size_t kept_before = series.out.generators.size();
    const auto mds = multidegrees(m_, degree);
    int count = 0;
    try {
      for (const auto& md : mds) {
        check_budget();
        count += process(series, md, degree, is_algebra);
      }
    } catch (...) {
      for (const auto& md : mds) series.levels.erase(md);
      gens_.resize(gens_before);
      series.out.generators.resize(kept_before, Polynomial(ring_));
      series.out.witnesses.erase(degree);
      throw;
    }
    series.out.counts.push_back(count);
    series.done = degree;
  }

  int process(Series& series, const std::vector<int>& md, int degree, bool is_algebra) {
    const std::uint32_t p = field_.p();
    const bool whole = !is_algebra && series.n == static_cast<int>(p);
    const Piece quot = quotient_piece(md);
    const Piece full = full_piece_of(md);
    if (budget_.max_piece_dim > 0 && full.size() > budget_.max_piece_dim)
      throw BudgetExceeded("piece of dimension " + std::to_string(full.size()) +
                           " exceeds the dimension budget");
    Level level;
    level.tprime = whole ? quot.size()
                         : kernel_dim(md, series.n) - kernel_dim(minus(md, unit(j0_)), series.n);
    int count = 0;
    if (is_algebra && md == unit(j0_)) {
      ++count;
      record(series, degree, Polynomial::variable(ring_, {nfull_[static_cast<std::size_t>(j0_)], j0_ + 1}),
             true);
    }
    if (level.tprime == 0) {
      series.levels.emplace(md, std::move(level));
      return count;
    }

    const Index qsize = quot.size();
    if (is_algebra && degree == 0) {
      // k[V]^G_0 = k: no generator, but pi(1) spans the level.
      level.basis = std::make_unique<EchelonBasis<Scalar>>(field_, qsize);
      std::vector<Scalar> one{1};
      level.basis->insert(one.data());
      series.levels.emplace(md, std::move(level));
      return 0;
    }
    auto basis = std::make_unique<EchelonBasis<Scalar>>(field_, qsize);
    std::vector<Scalar> row(static_cast<std::size_t>(qsize));
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(qsize));
    std::size_t processed = 0;

    for (const AlgebraGenerator& g : gens_) {
      if (basis->rank() == level.tprime) break;
      if (g.degree > degree) break;
      const std::vector<int> rest = minus(md, g.md);
      if (!nonnegative(rest)) continue;
      if (is_algebra && is_zero_degree(rest)) continue;
      auto src = series.levels.find(rest);
      if (src == series.levels.end() || src->second.tprime == 0) continue;
      const Level& from = src->second;
      const Piece yp = quotient_piece(rest);
      const Index ysize = yp.size();

      // targets[k * nterms + tau] = index of (term tau of g) * (monomial k).
      const std::size_t nterms = g.terms.size();
      std::vector<Index> targets(static_cast<std::size_t>(ysize) * nterms);
      {
        const Piece gp = quotient_piece(g.md);
        std::vector<std::vector<Index>> gl(nterms, std::vector<Index>(static_cast<std::size_t>(m_)));
        for (std::size_t tau = 0; tau < nterms; ++tau) {
          Index rem = g.terms[tau].first;
          for (int t = 0; t < m_; ++t) {
            gl[tau][static_cast<std::size_t>(t)] = rem / gp.stride(t);
            rem %= gp.stride(t);
          }
        }
        for (Index k = 0; k < ysize; ++k) {
          Index rem = k;
          std::vector<Index> yl(static_cast<std::size_t>(m_));
          for (int t = 0; t < m_; ++t) {
            yl[static_cast<std::size_t>(t)] = rem / yp.stride(t);
            rem %= yp.stride(t);
          }
          for (std::size_t tau = 0; tau < nterms; ++tau) {
            Index target = 0;
            for (int t = 0; t < m_; ++t) {
              const auto ts = static_cast<std::size_t>(t);
              const auto& prod = cache_.product(nquot_[ts], g.md[ts], rest[ts]);
              target += prod[static_cast<std::size_t>(gl[tau][ts] * yp.factor(t).size() + yl[ts])] *
                        quot.stride(t);
            }
            targets[static_cast<std::size_t>(k) * nterms + tau] = target;
          }
        }
      }

      const Index nrows = from.whole ? ysize : from.basis->rank();
      for (Index r = 0; r < nrows && basis->rank() < level.tprime; ++r) {
        if (++processed % 256 == 0) check_budget();
        std::fill(acc.begin(), acc.end(), 0);
        if (from.whole) {
          for (std::size_t tau = 0; tau < nterms; ++tau)
            acc[static_cast<std::size_t>(targets[static_cast<std::size_t>(r) * nterms + tau])] +=
                g.terms[tau].second;
        } else {
          const Scalar* y = from.basis->row_data(r);
          for (Index k = 0; k < ysize; ++k) {
            if (y[k] == 0) continue;
            const Index* tk = targets.data() + static_cast<std::size_t>(k) * nterms;
            for (std::size_t tau = 0; tau < nterms; ++tau)
              acc[static_cast<std::size_t>(tk[tau])] +=
                  static_cast<std::uint64_t>(g.terms[tau].second) * y[k];
          }
        }
        for (std::size_t k = 0; k < acc.size(); ++k) row[k] = static_cast<Scalar>(acc[k] % p);
        basis->insert(row.data());
      }
    }

    if (basis->rank() < level.tprime) {
      std::vector<Scalar> copy(static_cast<std::size_t>(qsize));
      if (whole) {
        for (Index k = 0; k < qsize && basis->rank() < level.tprime; ++k) {
          std::fill(row.begin(), row.end(), 0);
          row[static_cast<std::size_t>(k)] = 1;
          if (!basis->insert(row.data())) continue;
          ++count;
          record(series, degree, Polynomial::monomial(ring_, lift_monomial(quot, k)), true);
        }
      } else {
        const std::vector<Index> pi = quotient_map(full, quot);
        int misses = 0;
        while (basis->rank() < level.tprime) {
          check_budget();
          const std::vector<std::uint32_t> x = random_kernel_vector(md, series.n);
          std::fill(row.begin(), row.end(), 0);
          for (std::size_t k = 0; k < x.size(); ++k)
            if (pi[k] >= 0) row[static_cast<std::size_t>(pi[k])] = static_cast<Scalar>(x[k]);
          copy = row;
          if (!basis->insert(row.data())) {
            if (++misses > 64 + 4 * static_cast<int>(level.tprime))
              throw std::logic_error("no new generator found in a nonzero quotient");
            continue;
          }
          ++count;
          const Eigen::Map<const FpVector<std::uint32_t>> coords(x.data(), static_cast<Index>(x.size()));
          Polynomial generator = from_coordinates(ring_, full, coords);
          if (is_algebra) {
            AlgebraGenerator g{md, degree, {}};
            for (Index k = 0; k < qsize; ++k)
              if (copy[static_cast<std::size_t>(k)] != 0) g.terms.emplace_back(k, copy[static_cast<std::size_t>(k)]);
            gens_.push_back(std::move(g));
          }
          record(series, degree, std::move(generator), is_algebra);
        }
      }
    }

    if (whole) {
      level.whole = true;
    } else {
      level.basis = std::move(basis);
    }
    series.levels.emplace(md, std::move(level));
    return count;
  }

  PrimeField field_;
  ModuleSpec v_;
  RingPtr ring_;
  Budget budget_;
  std::mt19937_64 rng_;
  TableCache cache_;
  int m_ = 0;
  int j0_ = 0;
  int ell_ = 0;  // variable index of l
  std::vector<int> nfull_;
  std::vector<int> nquot_;
  std::map<std::pair<int, int>, Chains> chains_;
  std::map<std::pair<std::vector<int>, int>, FpMatrix<std::uint32_t>> small_;
  std::map<std::pair<std::vector<int>, int>, Index> dims_;
  Series algebra_;
  std::map<int, Series> modules_;
  std::vector<AlgebraGenerator> gens_;
};

}  // namespace

struct GeneratorEngine::Impl {
  std::unique_ptr<CoreBase> core;
  std::optional<int> gamma;
};

GeneratorEngine::GeneratorEngine(const ModuleSpec& v, Budget budget, std::uint64_t seed)
    : impl_(std::make_unique<Impl>()) {
  if (v.p() < 256)
    impl_->core = std::make_unique<Core<std::uint8_t>>(v, budget, seed);
  else
    impl_->core = std::make_unique<Core<std::uint16_t>>(v, budget, seed);
}

GeneratorEngine::~GeneratorEngine() = default;

const ModuleSpec& GeneratorEngine::module() const { return impl_->core->module(); }
const RingPtr& GeneratorEngine::ring() const { return impl_->core->ring(); }

const GeneratorSeries& GeneratorEngine::algebra(int degree) { return impl_->core->algebra(degree); }

const GeneratorSeries& GeneratorEngine::module(int n, int degree) {
  return impl_->core->module(n, degree);
}

int GeneratorEngine::gamma() {
  if (impl_->gamma) return *impl_->gamma;
  const int p = static_cast<int>(module().p());
  for (int d = 1;; ++d) {
    if (impl_->core->module(p, d).counts[static_cast<std::size_t>(d)] == 0) {
      impl_->gamma = d - 1;
      return d - 1;
    }
  }
}

void GeneratorEngine::release(int n) { impl_->core->release(n); }

void GeneratorEngine::set_budget(Budget budget) { impl_->core->set_budget(budget); }

}  // namespace modcov

#pragma once

// Dense coordinates on multihomogeneous pieces of a polynomial ring whose
// variables are split into blocks. A piece of multidegree (a_1,..,a_m) is the
// tensor product of the degree-a_j monomial spaces of the blocks; coordinates
// are Kronecker-ordered with block 1 outermost, which coincides with the
// canonical term order restricted to the piece.

#include "modcov/polynomial.hpp"

#include <map>
#include <memory>
#include <tuple>
#include <vector>

namespace modcov {

std::int64_t binomial(int n, int k);

/// Monomials of a fixed degree in r variables, lex-descending (x_1 first).
class MonomialTable {
 public:
  MonomialTable(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  Index size() const { return size_; }
  const Exponent* exponents(Index k) const {
    return exps_.data() + k * static_cast<Index>(nvars_);
  }
  /// Position of an exponent vector of this degree.
  Index rank(const Exponent* e) const;

 private:
  int nvars_;
  int degree_;
  Index size_;
  std::vector<Exponent> exps_;
};

/// Shared monomial tables and product-index tables. Not thread-safe.
class TableCache {
 public:
  const MonomialTable& table(int nvars, int degree);
  /// out[i * |b| + k] = index of (monomial i of degree a) * (monomial k of
  /// degree b) in the degree a+b table.
  const std::vector<std::int32_t>& product(int nvars, int a, int b);

 private:
  std::map<std::pair<int, int>, std::unique_ptr<MonomialTable>> tables_;
  std::map<std::tuple<int, int, int>, std::vector<std::int32_t>> products_;
};

/// One multidegree piece.
class Piece {
 public:
  Piece(TableCache& cache, std::vector<int> nvars, std::vector<int> degrees);

  Index size() const { return size_; }
  int blocks() const { return static_cast<int>(factors_.size()); }
  const MonomialTable& factor(int j) const { return *factors_[static_cast<std::size_t>(j)]; }
  Index stride(int j) const { return strides_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<int>& nvars() const { return nvars_; }
  int total_degree() const;

  /// Index of a monomial given by its concatenated block exponents.
  Index index_of(const Exponent* exps) const;
  /// Writes the concatenated exponents of coordinate k.
  void exponents(Index k, Exponent* out) const;

 private:
  std::vector<int> nvars_;
  std::vector<int> degrees_;
  std::vector<const MonomialTable*> factors_;
  std::vector<Index> strides_;
  Index size_ = 1;
};

/// sigma on S^a(V_n^*) in the monomial basis of table(n, a); column k is the
/// image of monomial k.
FpMatrix<std::uint32_t> block_sigma_matrix(const PrimeField& field, TableCache& cache, int n,
                                           int a);

/// sigma on the multidegree piece of k[V] (Kronecker product over blocks).
FpMatrix<std::uint32_t> piece_sigma_matrix(const ModuleSpec& v, TableCache& cache,
                                           const std::vector<int>& degrees);

/// All multidegrees of total degree d for m blocks, in lex-descending order.
std::vector<std::vector<int>> multidegrees(int m, int d);

/// Dense coordinates of a polynomial supported on one piece of k[V].
FpVector<std::uint32_t> to_coordinates(const Polynomial& f, const Piece& piece);
Polynomial from_coordinates(const RingPtr& ring, const Piece& piece,
                            const Eigen::Ref<const FpVector<std::uint32_t>>& coords);
/// Piece of k[V] (all variables) for a multidegree.
Piece full_piece(TableCache& cache, const ModuleSpec& v, const std::vector<int>& degrees);

}  // namespace modcov

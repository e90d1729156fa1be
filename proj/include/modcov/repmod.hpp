#pragma once

// Representations of G = Z/p over F_p, given by Jordan block sizes.

#include "modcov/field_linear.hpp"

#include <string>
#include <vector>

namespace modcov {

/// A kG-module V_{n_1} + ... + V_{n_m}. Used for both V and W.
class ModuleSpec {
 public:
  ModuleSpec(PrimeField field, std::vector<int> blocks);

  const PrimeField& field() const { return field_; }
  std::uint32_t p() const { return field_.p(); }
  const std::vector<int>& blocks() const { return blocks_; }
  int block(int j) const { return blocks_.at(static_cast<std::size_t>(j)); }
  int m() const { return static_cast<int>(blocks_.size()); }
  int dim() const { return dim_; }
  int max_block() const;
  /// No summand of dimension one.
  bool reduced() const;

  /// "V3+V2" style label.
  std::string label() const;

  bool operator==(const ModuleSpec&) const = default;

 private:
  PrimeField field_;
  std::vector<int> blocks_;
  int dim_ = 0;
};

/// Coefficients of sigma(w_i) in the basis w_1..w_n of W = V_n (1-based i).
/// sigma(w_i) = sum_{j<=i} (-1)^{i-j} w_j.
FpVector<std::uint32_t> sigma_on_w(const ModuleSpec& w, int i);
/// Delta(w_i) = sigma(w_i) - w_i.
FpVector<std::uint32_t> delta_on_w(const ModuleSpec& w, int i);

/// Matrix of sigma on W in the signed basis (column i = sigma w_i),
/// block diagonal over the summands.
FpMatrix<std::uint32_t> w_action_matrix(const ModuleSpec& w);

/// Matrix of sigma on V^* in the variable basis x_{1,j},..,x_{n_j,j}:
/// sigma x_{i,j} = x_{i,j} + x_{i+1,j}, x_{n_j,j} fixed.
FpMatrix<std::uint32_t> dual_action_matrix(const ModuleSpec& v);

/// Jordan block sizes (descending) of the module afforded by sigma, read off
/// the rank profile of Delta = sigma - 1. Throws std::invalid_argument unless
/// sigma^p = 1.
template <typename Scalar>
std::vector<int> decompose_by_delta_ranks(const PrimeField& field, const FpMatrix<Scalar>& sigma);

/// Cyclic (Jordan chain) basis of a nilpotent operator N acting on column
/// vectors. Rows of `vectors` are grouped chain by chain, each chain listed
/// top first: v, Nv, ..., N^{k-1}v with N^k v = 0.
template <typename Scalar>
struct JordanChains {
  FpMatrix<Scalar> vectors;
  std::vector<int> lengths;
  std::vector<Index> starts;
};

template <typename Scalar>
JordanChains<Scalar> jordan_chains(const PrimeField& field, const FpMatrix<Scalar>& nilpotent);

// ---------------------------------------------------------------------------

template <typename Scalar>
std::vector<int> decompose_by_delta_ranks(const PrimeField& field,
                                          const FpMatrix<Scalar>& sigma) {
  if (sigma.rows() != sigma.cols()) throw std::invalid_argument("action matrix not square");
  const Index d = sigma.rows();
  const unsigned p = field.p();
  if (power(field, sigma, p) != identity<Scalar>(d))
    throw std::invalid_argument("action matrix does not have order dividing p");
  FpMatrix<Scalar> delta = sigma;
  for (Index i = 0; i < d; ++i) delta(i, i) = static_cast<Scalar>(field.sub(delta(i, i), 1));
  // ranks[k] = rank(Delta^k), k = 0..p+1
  std::vector<Index> ranks{d};
  FpMatrix<Scalar> acc = identity<Scalar>(d);
  for (unsigned k = 1; k <= p + 1; ++k) {
    acc = multiply(field, acc, delta);
    ranks.push_back(rank(field, acc));
  }
  std::vector<int> sizes;
  for (unsigned k = p; k >= 1; --k) {
    const Index at_least_k = ranks[k - 1] - ranks[k];
    const Index at_least_k1 = ranks[k] - ranks[k + 1];
    for (Index c = 0; c < at_least_k - at_least_k1; ++c) sizes.push_back(static_cast<int>(k));
  }
  return sizes;
}

template <typename Scalar>
JordanChains<Scalar> jordan_chains(const PrimeField& field, const FpMatrix<Scalar>& nilpotent) {
  const Index d = nilpotent.rows();
  const FpMatrix<Scalar> nt = nilpotent.transpose();
  // kernels[s] = ker N^s, rows as vectors.
  std::vector<FpMatrix<Scalar>> kernels{FpMatrix<Scalar>(0, d)};
  FpMatrix<Scalar> acc = identity<Scalar>(d);
  while (kernels.back().rows() < d) {
    acc = multiply(field, acc, nilpotent);
    kernels.push_back(kernel_basis(field, acc));
    if (kernels.size() > static_cast<std::size_t>(d) + 1)
      throw std::invalid_argument("jordan_chains: operator is not nilpotent");
  }
  const int top = static_cast<int>(kernels.size()) - 1;

  std::vector<std::vector<FpVector<Scalar>>> chains;
  for (int s = top; s >= 1; --s) {
    EchelonBasis<Scalar> span(field, d);
    const FpMatrix<Scalar>& lower = kernels[static_cast<std::size_t>(s - 1)];
    for (Index i = 0; i < lower.rows(); ++i) span.insert(FpVector<Scalar>(lower.row(i).transpose()));
    for (const auto& chain : chains)
      span.insert(chain[chain.size() - static_cast<std::size_t>(s)]);
    const FpMatrix<Scalar>& here = kernels[static_cast<std::size_t>(s)];
    for (Index i = 0; i < here.rows() && span.rank() < d; ++i) {
      FpVector<Scalar> candidate = here.row(i).transpose();
      if (!span.insert(candidate)) continue;
      std::vector<FpVector<Scalar>> chain{FpVector<Scalar>(here.row(i).transpose())};
      for (int k = 1; k < s; ++k) {
        FpMatrix<Scalar> next = multiply(field, FpMatrix<Scalar>(chain.back().transpose()), nt);
        chain.push_back(next.row(0).transpose());
      }
      chains.push_back(std::move(chain));
    }
  }

  JordanChains<Scalar> out;
  out.vectors.resize(d, d);
  Index row = 0;
  for (const auto& chain : chains) {
    out.starts.push_back(row);
    out.lengths.push_back(static_cast<int>(chain.size()));
    for (const auto& v : chain) out.vectors.row(row++) = v.transpose();
  }
  if (row != d) throw std::logic_error("jordan_chains: chain vectors do not span");
  return out;
}

}  // namespace modcov

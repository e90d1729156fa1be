#include "modcov/repmod.hpp"

#include <algorithm>
#include <string>
#include <numeric>

namespace modcov {

ModuleSpec::ModuleSpec(PrimeField field, std::vector<int> blocks)
    : field_(field), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("module needs at least one block");
  for (int n : blocks_) {
    if (n < 1 || static_cast<std::uint32_t>(n) > field_.p())
      throw std::invalid_argument("block size " + std::to_string(n) + " outside [1, " +
                                  std::to_string(field_.p()) + "]");
  }
  dim_ = std::accumulate(blocks_.begin(), blocks_.end(), 0);
}

int ModuleSpec::max_block() const { return *std::max_element(blocks_.begin(), blocks_.end()); }

bool ModuleSpec::reduced() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](int n) { return n >= 2; });
}

std::string ModuleSpec::label() const {
  std::string s;
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    if (j) s += "+";
    s += "V" + std::to_string(blocks_[j]);
  }
  return s;
}

FpVector<std::uint32_t> sigma_on_w(const ModuleSpec& w, int i) {
  if (w.m() != 1) throw std::invalid_argument("W must be a single block");
  const int n = w.block(0);
  if (i < 1 || i > n) throw std::out_of_range("basis index outside [1, dim W]");
  const PrimeField& f = w.field();
  FpVector<std::uint32_t> v = FpVector<std::uint32_t>::Zero(n);
  for (int j = 1; j <= i; ++j) v(j - 1) = ((i - j) % 2 == 0) ? 1 % f.p() : f.neg(1);
  return v;
}

FpVector<std::uint32_t> delta_on_w(const ModuleSpec& w, int i) {
  FpVector<std::uint32_t> v = sigma_on_w(w, i);
  v(i - 1) = w.field().sub(v(i - 1), 1);
  return v;
}

FpMatrix<std::uint32_t> w_action_matrix(const ModuleSpec& w) {
  FpMatrix<std::uint32_t> s = FpMatrix<std::uint32_t>::Zero(w.dim(), w.dim());
  int offset = 0;
  for (int n : w.blocks()) {
    const ModuleSpec single(w.field(), {n});
    for (int i = 1; i <= n; ++i) s.block(offset, offset + i - 1, n, 1) = sigma_on_w(single, i);
    offset += n;
  }
  return s;
}

FpMatrix<std::uint32_t> dual_action_matrix(const ModuleSpec& v) {
  FpMatrix<std::uint32_t> s = identity<std::uint32_t>(v.dim());
  int offset = 0;
  for (int n : v.blocks()) {
    for (int i = 0; i + 1 < n; ++i) s(offset + i + 1, offset + i) = 1;
    offset += n;
  }
  return s;
}

}  // namespace modcov

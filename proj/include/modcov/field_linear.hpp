#pragma once

// Arithmetic in F_p and dense linear algebra over it.
//
// Matrices are Eigen row-major dense matrices with an unsigned integer scalar
// holding canonical residues. All routines are templated on that storage type
// so the graded engine can run on bytes (p <= 13) while the public polynomial
// layer uses 32-bit words. Bases are returned as matrices whose ROWS are the
// basis vectors; vectors passed to M * v are columns.

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace modcov {

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  /// Largest admissible characteristic is below this bound.
  static constexpr std::uint32_t kPrimeBound = 1u << 15;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  std::uint32_t reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; throws std::domain_error for zero.
  std::uint32_t inv(std::uint32_t a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

template <typename Scalar>
using FpMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using FpVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

namespace detail {

template <typename Scalar>
void check_storage(const PrimeField& field) {
  static_assert(std::is_unsigned_v<Scalar>, "F_p storage must be unsigned");
  if (static_cast<std::uint64_t>(field.p() - 1) > std::numeric_limits<Scalar>::max())
    throw std::invalid_argument("scalar storage too narrow for this prime");
}

// dst[k] <- dst[k] + c * src[k] (mod p), c in [0, p).
template <typename Scalar>
inline void axpy(const PrimeField& field, Scalar* __restrict dst, const Scalar* __restrict src,
                 std::uint32_t c, Index n) {
  if (c == 0) return;
  const std::uint32_t p = field.p();
  if constexpr (sizeof(Scalar) == 1) {
    if (p <= 13) {
      // (p-1) + (p-1)^2 < 16p fits a byte; four conditional subtractions
      // written as unsigned min() reduce it and vectorise cleanly.
      const auto cc = static_cast<std::uint8_t>(c);
      const auto p1 = static_cast<std::uint8_t>(p);
      const auto p2 = static_cast<std::uint8_t>(2 * p);
      const auto p4 = static_cast<std::uint8_t>(4 * p);
      const auto p8 = static_cast<std::uint8_t>(8 * p);
      for (Index k = 0; k < n; ++k) {
        std::uint8_t t = static_cast<std::uint8_t>(dst[k] + cc * src[k]);
        std::uint8_t u = static_cast<std::uint8_t>(t - p8);
        t = u < t ? u : t;
        u = static_cast<std::uint8_t>(t - p4);
        t = u < t ? u : t;
        u = static_cast<std::uint8_t>(t - p2);
        t = u < t ? u : t;
        u = static_cast<std::uint8_t>(t - p1);
        t = u < t ? u : t;
        dst[k] = t;
      }
      return;
    }
  }
  for (Index k = 0; k < n; ++k)
    dst[k] = static_cast<Scalar>((dst[k] + static_cast<std::uint64_t>(c) * src[k]) % p);
}

template <typename Scalar>
inline void scale(const PrimeField& field, Scalar* row, std::uint32_t c, Index n) {
  const std::uint64_t p = field.p();
  for (Index k = 0; k < n; ++k)
    row[k] = static_cast<Scalar>((static_cast<std::uint64_t>(row[k]) * c) % p);
}

}  // namespace detail

/// Reduces an arbitrary integer expression entrywise into canonical residues.
template <typename Scalar, typename Derived>
FpMatrix<Scalar> to_field(const PrimeField& field, const Eigen::MatrixBase<Derived>& m) {
  detail::check_storage<Scalar>(field);
  FpMatrix<Scalar> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out(i, j) = static_cast<Scalar>(field.reduce(static_cast<std::int64_t>(m(i, j))));
  return out;
}

template <typename Scalar>
FpMatrix<Scalar> multiply(const PrimeField& field, const FpMatrix<Scalar>& a,
                          const FpMatrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  using Wide = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Wide prod = a.template cast<std::int64_t>() * b.template cast<std::int64_t>();
  return to_field<Scalar>(field, prod);
}

template <typename Scalar>
FpVector<Scalar> multiply(const PrimeField& field, const FpMatrix<Scalar>& a,
                          const FpVector<Scalar>& v) {
  if (a.cols() != v.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> prod =
      a.template cast<std::int64_t>() * v.template cast<std::int64_t>();
  FpVector<Scalar> out(prod.rows());
  for (Index i = 0; i < prod.rows(); ++i) out(i) = static_cast<Scalar>(field.reduce(prod(i)));
  return out;
}

template <typename Scalar>
FpMatrix<Scalar> identity(Index n) {
  return FpMatrix<Scalar>::Identity(n, n);
}

/// A^e by repeated squaring.
template <typename Scalar>
FpMatrix<Scalar> power(const PrimeField& field, const FpMatrix<Scalar>& a, unsigned e) {
  if (a.rows() != a.cols()) throw std::invalid_argument("power: matrix not square");
  FpMatrix<Scalar> result = identity<Scalar>(a.rows());
  FpMatrix<Scalar> base = a;
  while (e > 0) {
    if (e & 1u) result = multiply(field, result, base);
    e >>= 1;
    if (e > 0) base = multiply(field, base, base);
  }
  return result;
}

template <typename Scalar>
struct Rref {
  FpMatrix<Scalar> matrix;
  std::vector<Index> pivots;  // increasing
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

template <typename Scalar>
Rref<Scalar> rref(const PrimeField& field, FpMatrix<Scalar> m) {
  detail::check_storage<Scalar>(field);
  const std::uint32_t p = field.p();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index sel = -1;
    for (Index i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) m.row(sel).swap(m.row(r));
    detail::scale(field, m.row(r).data(), field.inv(m(r, c)), m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      detail::axpy(field, m.row(i).data() + c, m.row(r).data() + c, p - m(i, c), m.cols() - c);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename Scalar>
Index rank(const PrimeField& field, const FpMatrix<Scalar>& m) {
  return rref(field, m).rank();
}

/// Basis of the right null space {v : M v = 0}, one vector per row. Each
/// vector has a single 1 at its free column and zeros at the other free
/// columns.
template <typename Scalar>
FpMatrix<Scalar> kernel_basis(const PrimeField& field, const FpMatrix<Scalar>& m) {
  const Rref<Scalar> red = rref(field, m);
  const Index n = m.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  for (Index c : red.pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
  FpMatrix<Scalar> basis = FpMatrix<Scalar>::Zero(n - red.rank(), n);
  Index k = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(k, free) = 1;
    for (Index i = 0; i < red.rank(); ++i)
      basis(k, red.pivots[static_cast<std::size_t>(i)]) =
          static_cast<Scalar>(field.neg(red.matrix(i, free)));
    ++k;
  }
  return basis;
}

/// Some x with M x = b, free variables set to zero; empty when inconsistent.
template <typename Scalar>
std::optional<FpVector<Scalar>> solve(const PrimeField& field, const FpMatrix<Scalar>& m,
                                      const FpVector<Scalar>& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  FpMatrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const Rref<Scalar> red = rref(field, aug);
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
  FpVector<Scalar> x = FpVector<Scalar>::Zero(m.cols());
  for (Index i = 0; i < red.rank(); ++i)
    x(red.pivots[static_cast<std::size_t>(i)]) = red.matrix(i, m.cols());
  return x;
}

/// Incrementally grown echelon basis of a subspace of F_p^dim. Rows are kept
/// monic at their pivot and zero before it; insertion order is preserved.
template <typename Scalar>
class EchelonBasis {
 public:
  EchelonBasis(PrimeField field, Index dim)
      : field_(field), dim_(dim), pivot_row_(static_cast<std::size_t>(dim), -1) {
    detail::check_storage<Scalar>(field_);
  }

  Index dim() const { return dim_; }
  Index rank() const { return rank_; }
  bool full() const { return rank_ == dim_; }

  /// Reduces v (length dim) in place; returns the first nonzero column or -1.
  Index reduce(Scalar* v) const {
    const std::uint32_t p = field_.p();
    Index lead = -1;
    for (Index c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      const Index r = pivot_row_[static_cast<std::size_t>(c)];
      if (r < 0) {
        if (lead < 0) lead = c;
        continue;
      }
      const Scalar* row = storage_.row(r).data();
      detail::axpy(field_, v + c, row + c, p - v[c], dim_ - c);
    }
    return lead;
  }

  /// Adds v when independent of the current span. v is overwritten with its
  /// reduction.
  bool insert(Scalar* v) {
    const Index lead = reduce(v);
    if (lead < 0) return false;
    detail::scale(field_, v + lead, field_.inv(v[lead]), dim_ - lead);
    if (rank_ == storage_.rows()) {
      const Index grow = std::max<Index>(16, storage_.rows());
      storage_.conservativeResize(storage_.rows() + grow, dim_);
    }
    storage_.row(rank_) = Eigen::Map<const Eigen::Matrix<Scalar, 1, Eigen::Dynamic>>(v, dim_);
    pivot_row_[static_cast<std::size_t>(lead)] = rank_;
    pivots_.push_back(lead);
    ++rank_;
    return true;
  }

  bool insert(FpVector<Scalar> v) { return insert(v.data()); }

  bool contains(FpVector<Scalar> v) const { return reduce(v.data()) < 0; }

  /// Basis rows in insertion order.
  FpMatrix<Scalar> rows() const { return storage_.topRows(rank_); }
  const Scalar* row_data(Index r) const { return storage_.row(r).data(); }
  const std::vector<Index>& pivots() const { return pivots_; }

 private:
  PrimeField field_;
  Index dim_;
  Index rank_ = 0;
  FpMatrix<Scalar> storage_;
  std::vector<Index> pivot_row_;
  std::vector<Index> pivots_;
};

}  // namespace modcov

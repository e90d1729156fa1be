#include "modcov/field_linear.hpp"

#include <string>

namespace modcov {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p >= kPrimeBound)
    throw std::invalid_argument("characteristic " + std::to_string(p) + " exceeds 2^15");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % p_;
  std::uint32_t base = a % p_;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  // Extended Euclid on (a, p).
  std::int64_t r0 = p_, r1 = a % p_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

}  // namespace modcov

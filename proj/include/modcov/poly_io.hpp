#pragma once

// Text form of polynomials:  x[1,1]^2*x[2,1] + 2*x[2,2]
//
//   poly   := [sign] term { sign term }      (empty input is the zero polynomial)
//   term   := coeff [ '*' factor { '*' factor } ] | factor { '*' factor }
//   factor := 'x[' i ',' j ']' [ '^' e ]
//
// Whitespace is ignored and coefficients are reduced mod p.

#include "modcov/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace modcov {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  /// 0-based offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

/// Canonical form: terms in TermOrder, unit coefficients omitted, "0" for zero.
std::string to_string(const Polynomial& f);
std::string to_string(const Monomial& mono, const PolyRing& ring);

}  // namespace modcov

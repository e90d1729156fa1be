#include "modcov/poly_io.hpp"

#include <cctype>
#include <limits>

namespace modcov {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial run() {
    Polynomial out(ring_);
    skip();
    if (pos_ == text_.size()) return out;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    for (;;) {
      auto [mono, c] = term();
      out.add_term(mono, negative ? ring_->field().neg(c) : c);
      skip();
      if (pos_ == text_.size()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::uint64_t number() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
    }
    return v;
  }

  void factor(std::vector<Exponent>& exps) {
    skip();
    const std::size_t start = pos_;
    if (peek() != 'x') fail("expected a variable x[i,j]");
    ++pos_;
    expect('[');
    skip();
    const std::size_t i_pos = pos_;
    const std::uint64_t i = number();
    expect(',');
    skip();
    const std::size_t j_pos = pos_;
    const std::uint64_t j = number();
    expect(']');
    if (j < 1 || j > static_cast<std::uint64_t>(ring_->m()))
      throw ParseError(j_pos, "block index " + std::to_string(j) + " out of range");
    const int n = ring_->module().block(static_cast<int>(j) - 1);
    if (i < 1 || i > static_cast<std::uint64_t>(n))
      throw ParseError(i_pos, "row index " + std::to_string(i) + " out of range for block " +
                                  std::to_string(j));
    std::uint64_t e = 1;
    skip();
    if (peek() == '^') {
      ++pos_;
      e = number();
    }
    const int var = ring_->var_index({static_cast<int>(i), static_cast<int>(j)});
    const std::uint64_t total = exps[static_cast<std::size_t>(var)] + e;
    if (total > std::numeric_limits<Exponent>::max()) throw ParseError(start, "exponent too large");
    exps[static_cast<std::size_t>(var)] = static_cast<Exponent>(total);
  }

  std::pair<Monomial, Coeff> term() {
    skip();
    std::vector<Exponent> exps(static_cast<std::size_t>(ring_->nvars()), 0);
    Coeff c = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = ring_->field().reduce(static_cast<std::int64_t>(number() % ring_->p()));
      skip();
      if (peek() != '*') return {Monomial(std::move(exps)), c};
      ++pos_;
    }
    factor(exps);
    for (skip(); peek() == '*'; skip()) {
      ++pos_;
      factor(exps);
    }
    return {Monomial(std::move(exps)), c};
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  return Parser(ring, text).run();
}

std::string to_string(const Monomial& mono, const PolyRing& ring) {
  std::string out;
  for (int k = 0; k < mono.size(); ++k) {
    if (mono[k] == 0) continue;
    const Variable v = ring.variable(k);
    if (!out.empty()) out += '*';
    out += "x[" + std::to_string(v.i) + ',' + std::to_string(v.j) + ']';
    if (mono[k] > 1) out += '^' + std::to_string(mono[k]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [mono, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    if (mono.degree() == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + '*';
      out += to_string(mono, *f.ring());
    }
  }
  return out;
}

}  // namespace modcov

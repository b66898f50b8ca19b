#pragma once

// Exact Laurent polynomials whose exponents live on the half-integer lattice.
//
// Exponents are stored doubled so that t^(5/2) is kept as the integer 5 and no
// floating point ever enters the arithmetic. The same type carries polynomials
// in A (integer exponents) and in t^(1/2).

#include <cctype>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qalt/error.hpp"
#include "qalt/integer.hpp"

namespace qalt {

/// A half-integer, stored as twice its value.
class HalfExp {
 public:
  constexpr HalfExp() = default;

  static constexpr HalfExp from_twice(std::int64_t twice) {
    HalfExp e;
    e.twice_ = twice;
    return e;
  }
  static constexpr HalfExp integer(std::int64_t value) { return from_twice(2 * value); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

  constexpr auto operator<=>(const HalfExp&) const = default;

  constexpr HalfExp operator-() const { return from_twice(-twice_); }
  constexpr HalfExp operator+(HalfExp o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfExp operator-(HalfExp o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfExp operator*(std::int64_t k) const { return from_twice(twice_ * k); }

  /// "3", "-4", "5/2", "-1/2".
  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  /// Inverse of str(); also accepts "n/2" with n even.
  static HalfExp parse(std::string_view text) {
    auto fail = [&] { return Error(ErrorKind::SyntaxError, "not a half-integer: '" + std::string(text) + "'"); };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    std::int64_t n = 0;
    std::size_t used = 0;
    try {
      n = std::stoll(std::string(num), &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != num.size()) throw fail();
    if (slash == std::string_view::npos) return integer(n);
    if (text.substr(slash + 1) == "2") return from_twice(n);
    if (text.substr(slash + 1) == "1") return integer(n);
    throw fail();
  }

 private:
  std::int64_t twice_ = 0;
};

class HalfLaurent {
 public:
  using TermMap = std::map<std::int64_t, Integer>;

  HalfLaurent() = default;
  HalfLaurent(const Integer& constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) terms_.emplace(0, constant);
  }
  HalfLaurent(int constant) : HalfLaurent(Integer(constant)) {}  // NOLINT

  static HalfLaurent monomial(const Integer& coeff, HalfExp exponent) {
    HalfLaurent p;
    if (coeff != 0) p.terms_.emplace(exponent.twice(), coeff);
    return p;
  }

  /// Keyed by doubled exponent; never contains a zero coefficient.
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }

  HalfExp min_degree() const {
    require_nonzero("min_degree");
    return HalfExp::from_twice(terms_.begin()->first);
  }
  HalfExp max_degree() const {
    require_nonzero("max_degree");
    return HalfExp::from_twice(terms_.rbegin()->first);
  }
  HalfExp breadth() const { return max_degree() - min_degree(); }

  Integer coefficient(HalfExp e) const {
    auto it = terms_.find(e.twice());
    return it == terms_.end() ? Integer(0) : it->second;
  }

  std::vector<HalfExp> support() const {
    std::vector<HalfExp> out;
    out.reserve(terms_.size());
    for (const auto& [twice, c] : terms_) out.push_back(HalfExp::from_twice(twice));
    return out;
  }

  HalfLaurent& operator+=(const HalfLaurent& o) {
    for (const auto& [twice, c] : o.terms_) add_term(twice, c);
    return *this;
  }
  HalfLaurent& operator-=(const HalfLaurent& o) {
    for (const auto& [twice, c] : o.terms_) add_term(twice, -c);
    return *this;
  }
  HalfLaurent& operator*=(const HalfLaurent& o) { return *this = *this * o; }

  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator-(const HalfLaurent& a) {
    HalfLaurent r;
    for (const auto& [twice, c] : a.terms_) r.terms_.emplace(twice, -c);
    return r;
  }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) { return a.terms_ == b.terms_; }

  /// Multiplies by t^shift.
  HalfLaurent shifted(HalfExp shift) const {
    HalfLaurent r;
    for (const auto& [twice, c] : terms_) r.terms_.emplace(twice + shift.twice(), c);
    return r;
  }

  /// Exponent map e -> e * num / den. Throws NotRepresentable when an image
  /// exponent leaves the half-integer lattice.
  HalfLaurent rescaled(std::int64_t num, std::int64_t den) const {
    HalfLaurent r;
    for (const auto& [twice, c] : terms_) {
      const std::int64_t scaled = twice * num;
      if (scaled % den != 0)
        throw Error(ErrorKind::NotRepresentable,
                    "exponent " + HalfExp::from_twice(twice).str() + " does not rescale onto the half-integer lattice");
      r.terms_.emplace(scaled / den, c);
    }
    return r;
  }

  /// t -> t^{-1}.
  HalfLaurent inverted() const { return rescaled(-1, 1); }

  /// Floating-point evaluation; half-integer powers use the principal square root of z.
  std::complex<double> evaluate(std::complex<double> z) const {
    const std::complex<double> root = std::sqrt(z);
    std::complex<double> sum = 0.0;
    for (const auto& [twice, c] : terms_)
      sum += c.convert_to<double>() * std::pow(root, static_cast<int>(twice));
    return sum;
  }

  std::string str(std::string_view var = "t") const;
  static HalfLaurent parse(std::string_view text, std::string_view var = "t");

 private:
  void add_term(std::int64_t twice, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(twice, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void require_nonzero(const char* what) const {
    if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, std::string(what) + " of the zero polynomial");
  }

  TermMap terms_;
};

inline HalfLaurent add(const HalfLaurent& f, const HalfLaurent& g) { return f + g; }
inline HalfLaurent mul(const HalfLaurent& f, const HalfLaurent& g) { return f * g; }

// ---------------------------------------------------------------------------
// Text form: "-t^(-5/2) - t^(-1/2)", "t^(-4) - 2*t^(-3) + 5 - t + t^2".

inline std::string exponent_suffix(std::string_view var, HalfExp e) {
  if (e.twice() == 0) return "";
  if (e.twice() == 2) return std::string(var);
  if (e.is_integer() && e.twice() > 0) return std::string(var) + "^" + e.str();
  return std::string(var) + "^(" + e.str() + ")";
}

inline std::string HalfLaurent::str(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [twice, c] : terms_) {
    const HalfExp e = HalfExp::from_twice(twice);
    const bool negative = c < 0;
    const Integer magnitude = negative ? Integer(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string suffix = exponent_suffix(var, e);
    if (suffix.empty()) {
      out += magnitude.str();
    } else {
      if (magnitude != 1) out += magnitude.str() + "*";
      out += suffix;
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::string_view var) : text_(text), var_(var) {}

  HalfLaurent run() {
    HalfLaurent result;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = take() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      result += term(sign);
      skip_ws();
    }
    return result;
  }

 private:
  HalfLaurent term(int sign) {
    Integer coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = digits();
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        take();
        skip_ws();
        if (!starts_with_var()) fail("expected variable after '*'");
      }
    }
    HalfExp e = HalfExp::integer(0);
    if (starts_with_var()) {
      pos_ += var_.size();
      e = HalfExp::integer(1);
      skip_ws();
      if (peek() == '^') {
        take();
        skip_ws();
        e = exponent();
      }
    } else if (!have_coeff) {
      fail("expected a term");
    }
    return HalfLaurent::monomial(coeff * sign, e);
  }

  HalfExp exponent() {
    const bool paren = peek() == '(';
    if (paren) {
      take();
      skip_ws();
    }
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = take() == '-' ? -1 : 1;
      skip_ws();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent digits");
    const Integer numerator = digits();
    std::int64_t twice = 2 * numerator.convert_to<std::int64_t>();
    skip_ws();
    if (peek() == '/') {
      take();
      skip_ws();
      if (digits() != 2) fail("only halves are allowed as fractional exponents");
      twice /= 2;
    }
    if (paren) {
      skip_ws();
      if (take() != ')') fail("expected ')'");
    }
    return HalfExp::from_twice(sign * twice);
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  bool starts_with_var() const { return text_.substr(pos_).starts_with(var_); }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return at_end() ? '\0' : text_[pos_++]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline HalfLaurent HalfLaurent::parse(std::string_view text, std::string_view var) {
  return detail::PolyParser(text, var).run();
}

// ---------------------------------------------------------------------------
// Breadth and gap structure.

struct Gap {
  HalfExp start;        // first missing lattice exponent
  std::int64_t length;  // consecutive missing lattice positions
  friend bool operator==(const Gap&, const Gap&) = default;
};

struct GapReport {
  HalfExp breadth;
  HalfExp step;
  std::vector<Gap> gaps;
  bool alternating = true;

  std::size_t gap_count() const { return gaps.size(); }
};

/// Breadth, interior gaps and sign alternation of f on the lattice min_degree(f) + step*Z.
inline GapReport analyze(const HalfLaurent& f, HalfExp step) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "analyze requires a nonzero polynomial");
  if (step.twice() <= 0) throw Error(ErrorKind::SupportNotOnLattice, "lattice step must be positive");
  const std::int64_t s = step.twice();
  const std::int64_t lo = f.min_degree().twice();
  GapReport report;
  report.breadth = f.breadth();
  report.step = step;

  const int base_sign = f.terms().begin()->second < 0 ? -1 : 1;
  std::optional<std::int64_t> prev;
  for (const auto& [twice, c] : f.terms()) {
    if ((twice - lo) % s != 0)
      throw Error(ErrorKind::SupportNotOnLattice,
                  "exponent " + HalfExp::from_twice(twice).str() + " is off the lattice of step " + step.str());
    const std::int64_t index = (twice - lo) / s;
    const int expected = (index % 2 == 0) ? base_sign : -base_sign;
    const int actual = c < 0 ? -1 : 1;
    if (expected != actual) report.alternating = false;
    if (prev) {
      const std::int64_t missing = (twice - *prev) / s - 1;
      if (missing > 0) report.gaps.push_back({HalfExp::from_twice(*prev + s), missing});
    }
    prev = twice;
  }
  return report;
}

/// Length n' - m - 1 of the gap between f (top degree m) and g (bottom degree n'),
/// measured in exponent units; nullopt when the supports are adjacent (n' = m + 1).
inline std::optional<HalfExp> gap_between(const HalfLaurent& f, const HalfLaurent& g, HalfExp step) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "gap_between requires nonzero polynomials");
  if (step.twice() <= 0) throw Error(ErrorKind::SupportNotOnLattice, "lattice step must be positive");
  const HalfExp top = f.max_degree();
  const HalfExp bottom = g.min_degree();
  if (bottom <= top)
    throw Error(ErrorKind::Overlap, "min degree " + bottom.str() + " does not exceed max degree " + top.str());
  if ((bottom - top).twice() % step.twice() != 0)
    throw Error(ErrorKind::SupportNotOnLattice, "the two supports are not on a common lattice of step " + step.str());
  const HalfExp length = bottom - top - HalfExp::integer(1);
  if (length.twice() <= 0) return std::nullopt;
  return length;
}

}  // namespace qalt

#pragma once

// Exact arithmetic in Z[zeta], zeta = e^{i pi/4}. Used to evaluate polynomials
// at t = -1 (with t^{1/2} = i) and at A = e^{i pi/4} without rounding.

#include <array>
#include <complex>
#include <numbers>
#include <optional>

#include "qalt/laurent.hpp"

namespace qalt {

class Cyclo8 {
 public:
  Cyclo8() = default;
  explicit Cyclo8(const Integer& real) { c_[0] = real; }

  /// zeta^k for any integer k.
  static Cyclo8 zeta_power(std::int64_t k) {
    std::int64_t r = ((k % 8) + 8) % 8;
    Cyclo8 z;
    if (r < 4) {
      z.c_[r] = 1;
    } else {
      z.c_[r - 4] = -1;
    }
    return z;
  }

  const Integer& coeff(int i) const { return c_[i]; }

  friend Cyclo8 operator+(Cyclo8 a, const Cyclo8& b) {
    for (int i = 0; i < 4; ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Cyclo8 operator*(const Cyclo8& a, const Cyclo8& b) {
    std::array<Integer, 7> full{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) full[i + j] += a.c_[i] * b.c_[j];
    Cyclo8 r;
    for (int k = 0; k < 7; ++k) {
      if (k < 4) r.c_[k] += full[k];
      else r.c_[k - 4] -= full[k];  // zeta^4 = -1
    }
    return r;
  }
  friend Cyclo8 operator*(const Integer& s, Cyclo8 a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend bool operator==(const Cyclo8&, const Cyclo8&) = default;

  Cyclo8 conj() const {
    // zeta^{-1} = -zeta^3, zeta^{-2} = -zeta^2, zeta^{-3} = -zeta
    Cyclo8 r;
    r.c_[0] = c_[0];
    r.c_[1] = -c_[3];
    r.c_[2] = -c_[2];
    r.c_[3] = -c_[1];
    return r;
  }

  /// |z|^2 = a + b*sqrt(2), returned as {a, b}.
  std::pair<Integer, Integer> norm_squared() const {
    const Cyclo8 n = *this * conj();
    // real elements of Z[zeta] have the form a + b (zeta - zeta^3)
    return {n.c_[0], n.c_[1]};
  }

  /// |z| when it is a rational integer.
  std::optional<Integer> abs_integer() const {
    const auto [a, b] = norm_squared();
    if (b != 0) return std::nullopt;
    const Integer r = exact_sqrt(a);
    if (r < 0) return std::nullopt;
    return r;
  }

  std::complex<double> to_complex() const {
    std::complex<double> sum = 0.0;
    for (int i = 0; i < 4; ++i)
      sum += c_[i].convert_to<double>() * std::polar(1.0, i * std::numbers::pi / 4.0);
    return sum;
  }

 private:
  std::array<Integer, 4> c_{};
};

/// Evaluates f at the point zeta^r, using the principal square root for
/// half-integer exponents. Throws NotRepresentable when that root is not an
/// eighth root of unity.
inline Cyclo8 evaluate_exact(const HalfLaurent& f, std::int64_t r) {
  std::int64_t rr = ((r % 8) + 8) % 8;
  if (rr > 4) rr -= 8;  // argument in (-pi, pi]
  // the principal square root of zeta^rr is zeta^(rr/2)
  Cyclo8 sum;
  for (const auto& [twice, c] : f.terms()) {
    const std::int64_t power16 = rr * twice;  // exponent of e^{i pi/8}
    if (power16 % 2 != 0)
      throw Error(ErrorKind::NotRepresentable, "square root of zeta^" + std::to_string(r) + " is not an eighth root of unity");
    sum = sum + c * Cyclo8::zeta_power(power16 / 2);
  }
  return sum;
}

}  // namespace qalt

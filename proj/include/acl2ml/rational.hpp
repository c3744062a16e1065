/* Copyright 2026 The acl2ml Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ACL2ML_RATIONAL_HPP_
#define ACL2ML_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace acl2ml {

// Exact rational number in lowest terms. Integers that fit in 64 bits are
// kept inline; everything else lives in a shared immutable GMP rational.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Rational(const mpq_class& q);

  static Rational fraction(std::int64_t num, std::int64_t den);

  // Accepts "12", "-3", "1/2", "-7/4" and, when allow_decimal, "4.31".
  static std::optional<Rational> parse(std::string_view text, bool allow_decimal = false);

  bool is_integer() const;
  bool is_zero() const { return !big_ && small_ == 0; }
  int sign() const;

  Rational numerator() const;
  Rational denominator() const;
  Rational abs() const;
  Rational operator-() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  // Throws std::domain_error on a zero divisor.
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p" or "p/q".
  std::string to_string() const;
  // Fixed-point rendering with exactly `digits` fraction digits, rounded half
  // away from zero.
  std::string to_fixed(int digits) const;
  // Exact decimal expansion when the denominator has only factors 2 and 5.
  std::optional<std::string> to_exact_decimal() const;
  // Exact decimal when terminating, otherwise "p/q".
  std::string to_display() const;

  double to_double() const;
  std::size_t hash() const;

  // Only meaningful when is_integer() and the value fits.
  std::optional<std::int64_t> to_int64() const;

 private:
  mpq_class to_mpq() const;
  static Rational normalize(mpq_class q);

  std::int64_t small_ = 0;
  std::shared_ptr<const mpq_class> big_;  // null => small integer
};

}  // namespace acl2ml

template <>
struct std::hash<acl2ml::Rational> {
  std::size_t operator()(const acl2ml::Rational& r) const noexcept { return r.hash(); }
};

#endif  // ACL2ML_RATIONAL_HPP_

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

#include "acl2ml/rational.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace acl2ml {

namespace {

bool fits_int64(const mpz_class& z) { return z.fits_slong_p() && sizeof(long) == 8; }

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(const mpq_class& q) : Rational(normalize(q)) {}

Rational Rational::normalize(mpq_class q) {
  q.canonicalize();
  Rational r;
  if (q.get_den() == 1 && fits_int64(q.get_num())) {
    r.small_ = q.get_num().get_si();
  } else {
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
  }
  return r;
}

Rational Rational::fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  return normalize(std::move(q));
}

std::optional<Rational> Rational::parse(std::string_view text, bool allow_decimal) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  auto dot = body.find('.');
  mpq_class q;
  if (slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    q = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (dot != std::string_view::npos) {
    if (!allow_decimal) return std::nullopt;
    auto ip = body.substr(0, dot);
    auto fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp)) return std::nullopt;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpz_class digits(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
    q = mpq_class(digits, scale);
  } else {
    if (!all_digits(body)) return std::nullopt;
    q = mpq_class(mpz_class(std::string(body), 10));
  }
  if (negative) q = -q;
  return normalize(std::move(q));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(small_)));
}

bool Rational::is_integer() const { return !big_ || big_->get_den() == 1; }

int Rational::sign() const {
  if (!big_) return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
  return sgn(*big_);
}

Rational Rational::numerator() const {
  if (!big_) return *this;
  return normalize(mpq_class(big_->get_num()));
}

Rational Rational::denominator() const {
  if (!big_) return Rational(1);
  return normalize(mpq_class(big_->get_den()));
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::operator-() const {
  if (!big_ && small_ != INT64_MIN) return Rational(-small_);
  return normalize(-to_mpq());
}

Rational operator+(const Rational& a, const Rational& b) {
  std::int64_t r;
  if (!a.big_ && !b.big_ && !__builtin_add_overflow(a.small_, b.small_, &r)) return Rational(r);
  return Rational::normalize(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) {
  std::int64_t r;
  if (!a.big_ && !b.big_ && !__builtin_sub_overflow(a.small_, b.small_, &r)) return Rational(r);
  return Rational::normalize(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
  std::int64_t r;
  if (!a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &r)) return Rational(r);
  return Rational::normalize(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && b.small_ != -1 && a.small_ % b.small_ == 0) {
    return Rational(a.small_ / b.small_);
  }
  return Rational::normalize(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (!a.big_ || !b.big_) return false;  // normalized: small and big never coincide
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::to_string() const {
  if (!big_) return std::to_string(small_);
  if (big_->get_den() == 1) return big_->get_num().get_str();
  return big_->get_num().get_str() + "/" + big_->get_den().get_str();
}

std::string Rational::to_fixed(int digits) const {
  mpq_class q = to_mpq();
  bool negative = sgn(q) < 0;
  if (negative) q = -q;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero: floor(q * scale + 1/2)
  mpq_class scaled = q * scale + mpq_class(1, 2);
  mpz_class units = scaled.get_num() / scaled.get_den();
  std::string s = units.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && units != 0) s.insert(0, "-");
  return s;
}

std::optional<std::string> Rational::to_exact_decimal() const {
  if (is_integer()) return to_string();
  mpz_class den = big_->get_den();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  return to_fixed(std::max(twos, fives));
}

std::string Rational::to_display() const {
  if (auto d = to_exact_decimal()) return *d;
  return to_string();
}

double Rational::to_double() const {
  if (!big_) return static_cast<double>(small_);
  return big_->get_d();
}

std::size_t Rational::hash() const {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(to_string());
}

std::optional<std::int64_t> Rational::to_int64() const {
  if (!big_) return small_;
  return std::nullopt;
}

}  // namespace acl2ml

/* Copyright 2026 The Hyperlab Authors. All Rights Reserved.

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

// Integers as representatives of N×N, rationals in lowest terms, and a finite
// feasibility model for "small", "bounded" and "infinitesimal" rationals.
//
// The feasibility threshold S stands in for the boundary of the small
// naturals: n is small iff n <= S, q is bounded iff |q| < S and q is
// infinitesimal iff |q| < 1/S. The standard part of a bounded rational is the
// rational itself; equality of standard parts becomes close(a, b), which holds
// iff a - b is infinitesimal.

#ifndef HYPERLAB_NUMBERS_HPP
#define HYPERLAB_NUMBERS_HPP

#include "hyperlab/bigint.hpp"
#include "hyperlab/errors.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hyperlab::num {

/// An integer stored as the representative pair (n, 0) for n >= 0 or (0, n)
/// for a negative value -n. Zero is (0, 0).
class Int {
 public:
  Int() = default;
  Int(BigInt value) {  // NOLINT(google-explicit-constructor)
    if (value < 0)
      neg_ = -value;
    else
      pos_ = std::move(value);
  }
  Int(long long value) : Int(BigInt(value)) {}  // NOLINT(google-explicit-constructor)

  /// Normalizes an arbitrary difference pair (a, b) ~ a - b onto its representative.
  static Int from_pair(const BigInt& a, const BigInt& b) {
    if (a < 0 || b < 0) throw std::domain_error("integer pair components must be natural numbers");
    Int r;
    if (a >= b)
      r.pos_ = a - b;
    else
      r.neg_ = b - a;
    return r;
  }

  /// The representative pair: first component for the nonnegative branch.
  std::pair<BigInt, BigInt> pair() const { return {pos_, neg_}; }
  BigInt value() const { return pos_ - neg_; }
  bool is_zero() const { return pos_ == 0 && neg_ == 0; }

  friend Int operator+(const Int& a, const Int& b) { return from_pair(a.pos_ + b.pos_, a.neg_ + b.neg_); }
  friend Int operator-(const Int& a) {
    Int r;
    r.pos_ = a.neg_;
    r.neg_ = a.pos_;
    return r;
  }
  friend Int operator-(const Int& a, const Int& b) { return a + (-b); }
  // (a - b)(c - d) = (ac + bd) - (ad + bc)
  friend Int operator*(const Int& a, const Int& b) {
    return from_pair(a.pos_ * b.pos_ + a.neg_ * b.neg_, a.pos_ * b.neg_ + a.neg_ * b.pos_);
  }

  friend bool operator==(const Int&, const Int&) = default;
  friend std::strong_ordering operator<=>(const Int& a, const Int& b) {
    // a < b iff a.pos + b.neg < b.pos + a.neg
    const BigInt lhs = a.pos_ + b.neg_;
    const BigInt rhs = b.pos_ + a.neg_;
    return lhs < rhs ? std::strong_ordering::less
         : rhs < lhs ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
  }

  std::string str() const { return value().str(); }

 private:
  BigInt pos_ = 0;
  BigInt neg_ = 0;
};

/// Exact rational in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(BigInt n) : num_(std::move(n)) {}        // NOLINT(google-explicit-constructor)
  Rat(long long n) : num_(n) {}                // NOLINT(google-explicit-constructor)
  Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  Rat(long long n, long long d) : Rat(BigInt(n), BigInt(d)) {}

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }
  Int numerator() const { return Int(num_); }
  Int denominator() const { return Int(den_); }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const { return num_.sign(); }

  Rat inv() const {
    if (num_ == 0) throw std::domain_error("inversion of zero");
    return Rat(den_, num_);
  }
  Rat abs() const { return num_ < 0 ? -*this : *this; }
  BigInt floor() const { return floor_div(num_, den_); }
  BigInt ceil() const { return ceil_div(num_, den_); }

  friend Rat operator-(const Rat& a) {
    Rat r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  friend Rat operator+(const Rat& a, const Rat& b) {
    if (a.den_ == b.den_) return Rat(a.num_ + b.num_, a.den_);
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rat(a.num_ * b.num_);
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) { return a * b.inv(); }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }

  friend bool operator==(const Rat&, const Rat&) = default;
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    return lhs < rhs ? std::strong_ordering::less
         : rhs < lhs ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
  }

  /// "p/q", or "p" for integers.
  std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (den_ == 1) return;
    BigInt g = gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_ = 0;
  BigInt den_ = 1;
};

inline Rat abs(const Rat& q) { return q.abs(); }

/// Parses "p", "-p", "p/q" or "-p/q".
inline Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_bigint(text));
  BigInt d = parse_bigint(text.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator in rational literal");
  return Rat(parse_bigint(text.substr(0, slash)), d);
}

/// Exact decimal expansion; the repeating block is bracketed, e.g. 1/6 -> "0.1[6]".
/// Expansions whose period does not start within `max_digits` are cut with "...".
inline std::string to_decimal(const Rat& q, std::size_t max_digits = 64) {
  std::string out = q.sign() < 0 ? "-" : "";
  const BigInt n = hyperlab::abs(q.num());
  const BigInt& d = q.den();
  out += BigInt(n / d).str();
  BigInt rem = n % d;
  if (rem == 0) return out;
  std::string digits;
  std::map<BigInt, std::size_t> seen;
  while (rem != 0) {
    if (auto it = seen.find(rem); it != seen.end()) {
      return out + "." + digits.substr(0, it->second) + "[" + digits.substr(it->second) + "]";
    }
    if (digits.size() == max_digits) return out + "." + digits + "...";
    seen.emplace(rem, digits.size());
    rem *= 10;
    digits += static_cast<char>('0' + (rem / d).convert_to<int>());
    rem %= d;
  }
  return out + "." + digits;
}

// ---------------------------------------------------------------------------
// Feasibility model

class FeasibilityContext {
 public:
  explicit FeasibilityContext(BigInt smallness) : s_(std::move(smallness)) {
    if (s_ < 2) throw std::invalid_argument("smallness threshold S must be >= 2, got " + s_.str());
  }
  const BigInt& smallness() const noexcept { return s_; }

 private:
  BigInt s_;
};

inline bool is_small(const BigInt& n, const FeasibilityContext& ctx) {
  if (n < 0) throw std::domain_error("is_small expects a natural number");
  return n <= ctx.smallness();
}

/// |q| < S. S is the largest small rational of the model.
inline bool is_bounded(const Rat& q, const FeasibilityContext& ctx) {
  return hyperlab::abs(q.num()) < ctx.smallness() * q.den();
}

/// |q| < 1/S. 1/S is the least positive small rational of the model.
inline bool is_infinitesimal(const Rat& q, const FeasibilityContext& ctx) {
  return hyperlab::abs(q.num()) * ctx.smallness() < q.den();
}

/// Standard rationals: |numerator| <= S and denominator <= S.
inline bool is_standard(const Rat& q, const FeasibilityContext& ctx) {
  return hyperlab::abs(q.num()) <= ctx.smallness() && q.den() <= ctx.smallness();
}

/// Standard part of a bounded rational, represented exactly by the rational itself.
inline Rat st(const Rat& q, const FeasibilityContext& ctx) {
  if (!is_bounded(q, ctx)) throw std::domain_error("standard part of unbounded rational " + q.str());
  return q;
}

/// Equality of standard parts: a - b is infinitesimal.
inline bool close(const Rat& a, const Rat& b, const FeasibilityContext& ctx) {
  return is_infinitesimal(a - b, ctx);
}

}  // namespace hyperlab::num

#endif  // HYPERLAB_NUMBERS_HPP

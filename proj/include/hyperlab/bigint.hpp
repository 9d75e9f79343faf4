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

#ifndef HYPERLAB_BIGINT_HPP
#define HYPERLAB_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlab {

using BigInt = boost::multiprecision::cpp_int;

inline int sign(const BigInt& v) { return v.sign(); }

inline BigInt abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

/// Floor division; `den` must be positive.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r < 0) --q;
  return q;
}

/// Ceiling division; `den` must be positive.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  return -floor_div(-num, den);
}

/// Least nonnegative residue modulo a positive modulus.
inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
inline BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw std::invalid_argument("expected digits in integer literal");
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("invalid character in integer literal: '" + std::string(text) + "'");
    v = v * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

/// Uniform draw from [0, bound) for a positive bound, by rejection on 64-bit limbs.
template <class Rng>
BigInt uniform_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound <= std::numeric_limits<std::uint64_t>::max()) {
    std::uniform_int_distribution<std::uint64_t> dist(0, bound.convert_to<std::uint64_t>() - 1);
    return BigInt(dist(rng));
  }
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigInt v = 0;
    for (unsigned filled = 0; filled < bits; filled += 64) v = (v << 64) | BigInt(rng());
    v >>= ((bits + 63) / 64) * 64 - bits;
    if (v < bound) return v;
  }
}

/// Uniform draw from the closed interval [lo, hi].
template <class Rng>
BigInt uniform_in(const BigInt& lo, const BigInt& hi, Rng& rng) {
  return lo + uniform_below(hi - lo + 1, rng);
}

}  // namespace hyperlab

#endif  // HYPERLAB_BIGINT_HPP

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

// Hereditarily finite sets in canonical form.
//
// A set stores its elements sorted strictly ascending in the Ackermann order,
// ac(0) = 0, ac(x) = sum_{a in x} 2^ac(a). The order is decided structurally
// (compare the largest elements first, like comparing binary numerals from the
// top bit), so sets whose codes are astronomically large (von Neumann 6 and up)
// still compare without ever materializing the code.

#ifndef HYPERLAB_HFSET_HPP
#define HYPERLAB_HFSET_HPP

#include "hyperlab/bigint.hpp"
#include "hyperlab/errors.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperlab::hf {

/// Nonnegative arbitrary-precision integer with a domain tag.
template <class Tag>
class Natural {
 public:
  Natural() = default;
  explicit Natural(BigInt value) : value_(std::move(value)) {
    if (value_ < 0) throw std::domain_error("natural number must be nonnegative, got " + value_.str());
  }
  Natural(std::uint64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  const BigInt& value() const noexcept { return value_; }
  std::string str() const { return value_.str(); }

  friend bool operator==(const Natural&, const Natural&) = default;
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    return a.value_ < b.value_ ? std::strong_ordering::less
         : b.value_ < a.value_ ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
  }

 private:
  BigInt value_ = 0;
};

struct AckCodeTag {};
struct NatTag {};

/// Image of a set under the Ackermann bijection.
using AckCode = Natural<AckCodeTag>;
/// A natural number; the von Neumann set is built only on demand.
using Nat = Natural<NatTag>;

class HfSet {
 public:
  /// The empty set.
  HfSet() = default;

  /// Builds a set from arbitrary (possibly repeated, unordered) elements.
  static HfSet from_elements(std::vector<HfSet> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return from_sorted_unique(std::move(elements));
  }

  /// Elements in strictly ascending Ackermann order.
  std::span<const HfSet> elements() const noexcept {
    if (!node_) return {};
    return node_->elements;
  }

  std::size_t cardinality() const noexcept { return node_ ? node_->elements.size() : 0; }
  bool empty() const noexcept { return !node_; }
  std::size_t hash() const noexcept { return node_ ? node_->hash : kEmptyHash; }

  bool contains(const HfSet& y) const {
    auto elems = elements();
    return std::binary_search(elems.begin(), elems.end(), y);
  }

  friend bool operator==(const HfSet& a, const HfSet& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.cardinality() != b.cardinality()) return false;
    return compare(a, b) == std::strong_ordering::equal;
  }

  /// Ackermann order: a < b iff ac(a) < ac(b).
  friend std::strong_ordering operator<=>(const HfSet& a, const HfSet& b) { return compare(a, b); }

 private:
  static constexpr std::size_t kEmptyHash = 0x51ed270b27a5c3d1ULL;

  struct Node {
    std::vector<HfSet> elements;
    std::size_t hash;
  };

  static HfSet from_sorted_unique(std::vector<HfSet> elements) {
    HfSet s;
    if (elements.empty()) return s;
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const HfSet& e : elements) {
      h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    s.node_ = std::make_shared<const Node>(Node{std::move(elements), h});
    return s;
  }

  static std::strong_ordering compare(const HfSet& a, const HfSet& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    auto ea = a.elements();
    auto eb = b.elements();
    auto ia = ea.rbegin();
    auto ib = eb.rbegin();
    for (; ia != ea.rend() && ib != eb.rend(); ++ia, ++ib) {
      if (auto c = compare(*ia, *ib); c != std::strong_ordering::equal) return c;
    }
    if (ia != ea.rend()) return std::strong_ordering::greater;
    if (ib != eb.rend()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  friend HfSet adjoin(const HfSet& x, const HfSet& y);
  friend HfSet set_union(const HfSet& x, const HfSet& y);

  std::shared_ptr<const Node> node_;
};

/// x ∪ {y}. Returns x unchanged when y is already a member.
inline HfSet adjoin(const HfSet& x, const HfSet& y) {
  auto elems = x.elements();
  auto pos = std::lower_bound(elems.begin(), elems.end(), y);
  if (pos != elems.end() && *pos == y) return x;
  std::vector<HfSet> out;
  out.reserve(elems.size() + 1);
  out.insert(out.end(), elems.begin(), pos);
  out.push_back(y);
  out.insert(out.end(), pos, elems.end());
  return HfSet::from_sorted_unique(std::move(out));
}

inline HfSet set_union(const HfSet& x, const HfSet& y) {
  std::vector<HfSet> out;
  out.reserve(x.cardinality() + y.cardinality());
  auto ex = x.elements();
  auto ey = y.elements();
  std::set_union(ex.begin(), ex.end(), ey.begin(), ey.end(), std::back_inserter(out));
  return HfSet::from_sorted_unique(std::move(out));
}

inline HfSet singleton(const HfSet& x) { return adjoin(HfSet{}, x); }

/// Kuratowski pair {{a},{a,b}}.
inline HfSet kuratowski_pair(const HfSet& a, const HfSet& b) {
  return adjoin(singleton(singleton(a)), adjoin(singleton(a), b));
}

inline Nat size(const HfSet& x) { return Nat(static_cast<std::uint64_t>(x.cardinality())); }

// ---------------------------------------------------------------------------
// Ackermann bijection

/// Largest element code accepted by ack_encode; the result has at most this many bits.
inline constexpr std::uint64_t kMaxCodeBits = std::uint64_t{1} << 24;

inline AckCode ack_encode(const HfSet& x) {
  BigInt code = 0;
  for (const HfSet& a : x.elements()) {
    const BigInt& exponent = ack_encode(a).value();
    if (exponent >= kMaxCodeBits)
      throw ResourceLimit("Ackermann code exceeds 2^" + std::to_string(kMaxCodeBits) + " bits");
    boost::multiprecision::bit_set(code, exponent.convert_to<unsigned>());
  }
  return AckCode(std::move(code));
}

inline HfSet ack_decode(const AckCode& n) {
  const BigInt& v = n.value();
  if (v == 0) return HfSet{};
  std::vector<HfSet> elements;
  const unsigned top = boost::multiprecision::msb(v);
  for (unsigned bit = boost::multiprecision::lsb(v); bit <= top; ++bit) {
    if (boost::multiprecision::bit_test(v, bit)) elements.push_back(ack_decode(AckCode(std::uint64_t{bit})));
  }
  // Ascending bit order is already ascending Ackermann order.
  return HfSet::from_elements(std::move(elements));
}

// ---------------------------------------------------------------------------
// Text notation: {} is the empty set, {a,b,...} lists elements.

inline std::string to_string(const HfSet& x) {
  std::string out = "{";
  bool first = true;
  for (const HfSet& a : x.elements()) {
    if (!first) out += ',';
    first = false;
    out += to_string(a);
  }
  out += '}';
  return out;
}

namespace detail {

class HfSetParser {
 public:
  explicit HfSetParser(std::string_view text, std::size_t offset = 0) : text_(text), pos_(offset) {}

  HfSet parse_set() {
    skip_ws();
    expect('{');
    std::vector<HfSet> elems;
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return HfSet{};
    }
    for (;;) {
      elems.push_back(parse_set());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      break;
    }
    return HfSet::from_elements(std::move(elems));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::size_t position() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= text_.size(); }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) {
      std::string found = at_end() ? "end of input" : std::string("'") + text_[pos_] + "'";
      throw SyntaxError(std::string("expected '") + c + "' but found " + found, pos_);
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_;
};

}  // namespace detail

/// Parses a set literal; whitespace is ignored.
inline HfSet parse_hfset(std::string_view text) {
  detail::HfSetParser p(text);
  HfSet s = p.parse_set();
  p.skip_ws();
  if (!p.at_end()) throw SyntaxError("trailing characters after set literal", p.position());
  return s;
}

// ---------------------------------------------------------------------------
// Natural-number arithmetic by set construction

struct SetBudget {
  /// Upper bound on elements materialized by one construction.
  std::uint64_t max_elements = 1'000'000;
};

namespace detail {

inline std::uint64_t checked_small(const Nat& n, const SetBudget& budget, const char* what) {
  if (n.value() > budget.max_elements)
    throw ResourceLimit(std::string(what) + " operand " + n.str() + " exceeds the set-construction bound");
  return n.value().convert_to<std::uint64_t>();
}

inline void require_within(const BigInt& count, const SetBudget& budget, const char* what) {
  if (count > budget.max_elements)
    throw ResourceLimit(std::string(what) + " would materialize " + count.str() + " elements (bound " +
                        std::to_string(budget.max_elements) + ")");
}

}  // namespace detail

/// The von Neumann natural n = {0, 1, ..., n-1}.
inline HfSet von_neumann(const Nat& n, const SetBudget& budget = {}) {
  const std::uint64_t count = detail::checked_small(n, budget, "von Neumann");
  // n+1 = n ∪ {n}; every stage copies its element list.
  detail::require_within(BigInt(count) * (count + 1) / 2, budget, "von Neumann construction");
  HfSet x;
  for (std::uint64_t i = 0; i < count; ++i) x = adjoin(x, x);
  return x;
}

inline HfSet cartesian_product(const HfSet& x, const HfSet& y, const SetBudget& budget = {}) {
  detail::require_within(BigInt(x.cardinality()) * y.cardinality(), budget, "cartesian product");
  std::vector<HfSet> pairs;
  pairs.reserve(x.cardinality() * y.cardinality());
  for (const HfSet& a : x.elements())
    for (const HfSet& b : y.elements()) pairs.push_back(kuratowski_pair(a, b));
  return HfSet::from_elements(std::move(pairs));
}

/// x + y = #(x ∪ {0} × y), evaluated on von Neumann sets.
inline Nat nat_add(const Nat& x, const Nat& y, const SetBudget& budget = {}) {
  detail::require_within(x.value() + y.value(), budget, "nat_add");
  const HfSet vx = von_neumann(x, budget);
  const HfSet tagged = cartesian_product(singleton(HfSet{}), von_neumann(y, budget), budget);
  return size(set_union(vx, tagged));
}

/// x · y = #(x × y), evaluated on von Neumann sets.
inline Nat nat_mul(const Nat& x, const Nat& y, const SetBudget& budget = {}) {
  detail::require_within(x.value() * y.value(), budget, "nat_mul");
  return size(cartesian_product(von_neumann(x, budget), von_neumann(y, budget), budget));
}

}  // namespace hyperlab::hf

template <>
struct std::hash<hyperlab::hf::HfSet> {
  std::size_t operator()(const hyperlab::hf::HfSet& s) const noexcept { return s.hash(); }
};

#endif  // HYPERLAB_HFSET_HPP

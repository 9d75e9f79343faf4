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

// A toy binary floating-point arithmetic: p-bit significands, exponents in
// [emin, emax], round to nearest with ties to even, no subnormals, no
// infinities. Magnitudes below the smallest normal round to zero or to the
// smallest normal, whichever is nearer (zero on a tie); results whose rounded
// exponent exceeds emax raise std::overflow_error.

#ifndef HYPERLAB_TOYFP_HPP
#define HYPERLAB_TOYFP_HPP

#include "hyperlab/bigint.hpp"
#include "hyperlab/hyperarith.hpp"
#include "hyperlab/numbers.hpp"
#include "hyperlab/parallel.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlab::fp {

using num::Rat;

struct FpFormat {
  int precision = 8;
  int emin = -30;
  int emax = 30;

  static FpFormat make(int precision, int emin, int emax) {
    if (precision < 2) throw std::invalid_argument("fp format: precision must be >= 2");
    if (emin >= emax) throw std::invalid_argument("fp format: emin must be < emax");
    return FpFormat{precision, emin, emax};
  }

  /// Unit in the last place of 1, 2^(1-p).
  Rat ulp_one() const { return pow2(1 - precision); }
  Rat max_value() const { return Rat((BigInt(1) << precision) - 1) * pow2(emax - precision + 1); }
  Rat min_normal() const { return pow2(emin); }

  std::string str() const {
    return std::to_string(precision) + "," + std::to_string(emin) + "," + std::to_string(emax);
  }

  static Rat pow2(int e) { return e >= 0 ? Rat(BigInt(1) << e) : Rat(BigInt(1), BigInt(1) << -e); }
};

/// Parses "p,emin,emax".
inline FpFormat parse_fp_format(std::string_view text) {
  std::vector<int> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      std::size_t used = 0;
      std::string s(piece);
      parts.push_back(std::stoi(s, &used));
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("fp format: expected p,emin,emax but got '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw std::invalid_argument("fp format: expected p,emin,emax but got '" + std::string(text) + "'");
  return FpFormat::make(parts[0], parts[1], parts[2]);
}

/// ±mantissa·2^(exponent - p + 1) with 2^(p-1) <= mantissa < 2^p, or zero.
struct FpNum {
  bool negative = false;
  BigInt mantissa = 0;
  int exponent = 0;

  bool is_zero() const { return mantissa == 0; }

  Rat value(const FpFormat& fmt) const {
    Rat v = Rat(mantissa) * FpFormat::pow2(exponent - fmt.precision + 1);
    return negative ? -v : v;
  }

  friend bool operator==(const FpNum& a, const FpNum& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.negative == b.negative && a.mantissa == b.mantissa && a.exponent == b.exponent;
  }
};

/// Nearest representable value, ties to an even mantissa.
inline FpNum fp_round(const Rat& q, const FpFormat& fmt) {
  if (q.sign() == 0) return FpNum{};
  const bool negative = q.sign() < 0;
  const BigInt n = hyperlab::abs(q.num()), d = q.den();
  // e = floor(log2(n/d))
  int e = static_cast<int>(boost::multiprecision::msb(n)) - static_cast<int>(boost::multiprecision::msb(d));
  if (e >= 0 ? (n < (d << e)) : ((n << -e) < d)) --e;

  if (e < fmt.emin) {
    // Between 0 and the smallest normal: pick the nearer, zero on a tie.
    const Rat a = abs(q), m = fmt.min_normal();
    if (a * Rat(2) <= m) return FpNum{};
    return FpNum{negative, BigInt(1) << (fmt.precision - 1), fmt.emin};
  }
  // scaled = |q|·2^(p-1-e) in [2^(p-1), 2^p)
  const int shift = fmt.precision - 1 - e;
  BigInt num = n, den = d;
  if (shift >= 0) num <<= shift; else den <<= -shift;
  BigInt m = num / den;
  const BigInt rem2 = 2 * (num - m * den);
  if (rem2 > den || (rem2 == den && (m & 1) != 0)) ++m;
  if (m == (BigInt(1) << fmt.precision)) {
    m >>= 1;
    ++e;
  }
  if (e > fmt.emax) throw std::overflow_error("fp_round: " + q.str() + " overflows format " + fmt.str());
  return FpNum{negative, m, e};
}

enum class FpOp { add, mul };

/// The exact result of the operation, rounded once.
inline FpNum fp_arith(FpOp op, const FpNum& a, const FpNum& b, const FpFormat& fmt) {
  const Rat x = a.value(fmt), y = b.value(fmt);
  return fp_round(op == FpOp::add ? x + y : x * y, fmt);
}

// ---------------------------------------------------------------------------
// Law violations

enum class FpLaw { add_assoc, distrib };

inline std::string_view law_name(FpLaw law) { return law == FpLaw::add_assoc ? "add_assoc" : "distrib"; }

inline FpLaw parse_fp_law(std::string_view name) {
  if (name == "add_assoc" || name == "add-assoc") return FpLaw::add_assoc;
  if (name == "distrib") return FpLaw::distrib;
  throw std::invalid_argument("unknown fp law '" + std::string(name) + "'");
}

struct FpStep {
  std::string label;
  Rat exact;
  Rat rounded;
};

struct FpWitness {
  FpLaw law;
  FpNum a, b, c;
  FpNum lhs, rhs;
  /// Every intermediate, exact and rounded, in evaluation order.
  std::vector<FpStep> steps;
};

/// Evaluates both sides of the law; lhs is (a+b)+c or a·(b+c).
inline FpWitness evaluate_fp_law(FpLaw law, const FpNum& a, const FpNum& b, const FpNum& c, const FpFormat& fmt) {
  FpWitness w{law, a, b, c, {}, {}, {}};
  auto step = [&](std::string label, FpOp op, const FpNum& x, const FpNum& y) {
    const Rat exact = op == FpOp::add ? x.value(fmt) + y.value(fmt) : x.value(fmt) * y.value(fmt);
    FpNum r = fp_round(exact, fmt);
    w.steps.push_back({std::move(label), exact, r.value(fmt)});
    return r;
  };
  if (law == FpLaw::add_assoc) {
    FpNum ab = step("a+b", FpOp::add, a, b);
    w.lhs = step("(a+b)+c", FpOp::add, ab, c);
    FpNum bc = step("b+c", FpOp::add, b, c);
    w.rhs = step("a+(b+c)", FpOp::add, a, bc);
  } else {
    FpNum bc = step("b+c", FpOp::add, b, c);
    w.lhs = step("a*(b+c)", FpOp::mul, a, bc);
    FpNum ab = step("a*b", FpOp::mul, a, b);
    FpNum ac = step("a*c", FpOp::mul, a, c);
    w.rhs = step("a*b+a*c", FpOp::add, ab, ac);
  }
  return w;
}

/// (1, u/2, u/2) with u = ulp(1): (1 + u/2) + u/2 rounds back to 1 twice,
/// while 1 + (u/2 + u/2) = 1 + u.
inline FpWitness absorption_triple(const FpFormat& fmt) {
  const Rat half_ulp = fmt.ulp_one() * Rat(1, 2);
  FpNum one = fp_round(Rat(1), fmt), h = fp_round(half_ulp, fmt);
  if (h.value(fmt) != half_ulp) throw std::domain_error("absorption_triple: ulp/2 is below the format's range");
  return evaluate_fp_law(FpLaw::add_assoc, one, h, h, fmt);
}

struct FpSearchOptions {
  std::uint64_t budget = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Sampled operands satisfy |x| < max_magnitude.
  Rat max_magnitude = Rat(4);
};

struct FpSearchResult {
  std::optional<FpWitness> witness;
  std::uint64_t probes = 0;
};

namespace detail {

inline constexpr std::uint64_t kFpProbesPerShard = 4096;
inline constexpr std::uint64_t kFpShardsPerWave = 16;

// Random normal number with |x| < limit and exponent in [lo, hi].
inline FpNum random_fp(std::mt19937_64& rng, const FpFormat& fmt, int lo, int hi) {
  std::uniform_int_distribution<int> exp(lo, hi);
  const BigInt base = BigInt(1) << (fmt.precision - 1);
  return FpNum{(rng() & 1) != 0, base + uniform_below(base, rng), exp(rng)};
}

}  // namespace detail

/// Seeded random search for a triple violating `law`. Shards are scanned in
/// order and the first witness of the lowest shard wins, so the result does
/// not depend on `threads`.
inline FpSearchResult find_fp_witness(FpLaw law, const FpFormat& fmt, const FpSearchOptions& opts = {}) {
  // Exponents keep |x| < max_magnitude and stay within a few ulps of one another.
  int hi = fmt.emax;
  while (hi >= fmt.emin && FpFormat::pow2(hi + 1) > opts.max_magnitude) --hi;
  if (hi < fmt.emin) throw std::invalid_argument("find_fp_witness: no normal number below the magnitude limit");
  const int lo = std::max(fmt.emin, hi - fmt.precision - 2);

  FpSearchResult result;
  const std::uint64_t shards = (opts.budget + detail::kFpProbesPerShard - 1) / detail::kFpProbesPerShard;
  for (std::uint64_t wave = 0; wave * detail::kFpShardsPerWave < shards; ++wave) {
    const std::uint64_t first = wave * detail::kFpShardsPerWave;
    const std::uint64_t count = std::min(detail::kFpShardsPerWave, shards - first);
    struct ShardOutcome {
      std::optional<FpWitness> witness;
      std::uint64_t probes = 0;
    };
    auto outcomes = map_shards(count, opts.threads, [&](std::size_t i) {
      const std::uint64_t shard = first + i;
      std::mt19937_64 rng(shard_seed(opts.seed, shard));
      const std::uint64_t begin = shard * detail::kFpProbesPerShard;
      const std::uint64_t end = std::min(opts.budget, begin + detail::kFpProbesPerShard);
      ShardOutcome out;
      for (std::uint64_t k = begin; k < end; ++k) {
        ++out.probes;
        FpNum a = detail::random_fp(rng, fmt, lo, hi), b = detail::random_fp(rng, fmt, lo, hi),
              c = detail::random_fp(rng, fmt, lo, hi);
        try {
          FpWitness w = evaluate_fp_law(law, a, b, c, fmt);
          if (!(w.lhs == w.rhs)) {
            out.witness = std::move(w);
            break;
          }
        } catch (const std::overflow_error&) {
        }
      }
      return out;
    });
    for (auto& o : outcomes) {
      result.probes += o.probes;
      if (o.witness) {
        result.witness = std::move(o.witness);
        return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Contrast with R(ω, ε)

/// The witness operands embedded in R(ω, ε), and whether ⊕ associates on them.
struct HyperContrast {
  hyper::HyperElem a, b, c;
  hyper::HyperElem lhs, rhs;
  bool associates = false;
};

inline HyperContrast hyper_contrast(const FpWitness& w, const FpFormat& fmt, const hyper::HyperParams& p) {
  HyperContrast out;
  out.a = hyper::embed(w.a.value(fmt), p);
  out.b = hyper::embed(w.b.value(fmt), p);
  out.c = hyper::embed(w.c.value(fmt), p);
  out.lhs = hyper::hadd(hyper::hadd(out.a, out.b, p), out.c, p);
  out.rhs = hyper::hadd(out.a, hyper::hadd(out.b, out.c, p), p);
  out.associates = out.lhs == out.rhs;
  return out;
}

}  // namespace hyperlab::fp

#endif  // HYPERLAB_TOYFP_HPP

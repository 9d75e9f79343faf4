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

// The computer arithmetic R(ω, ε) on r = {-ω, ..., ω}:
//
//   k ⊕ m = k + m            reduced mod 2ω+1 into r
//   k ⊙ m = floor(k·m·ε)     reduced mod 2ω+1 into r
//
// with the bounded part R_b = {k : kε bounded} and the indiscernibility
// k ρ m iff (k - m)ε is infinitesimal.

#ifndef HYPERLAB_HYPERARITH_HPP
#define HYPERLAB_HYPERARITH_HPP

#include "hyperlab/bigint.hpp"
#include "hyperlab/numbers.hpp"
#include "hyperlab/parallel.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlab::hyper {

using num::FeasibilityContext;
using num::Rat;

/// A parameter tuple violating one of the R(ω, ε) invariants.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element k of r_ω. Construct through HyperParams::elem to get range checking.
struct HyperElem {
  BigInt k;

  friend bool operator==(const HyperElem&, const HyperElem&) = default;
  friend std::strong_ordering operator<=>(const HyperElem& a, const HyperElem& b) {
    return a.k < b.k ? std::strong_ordering::less
         : b.k < a.k ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
  }
};

class HyperParams {
 public:
  /// Validates 0 < ε < 1/S and ωε > S.
  static HyperParams make(BigInt omega, Rat eps, BigInt smallness) {
    if (smallness < 2) throw InvalidParams("invariant violated: S >= 2 (got S=" + smallness.str() + ")");
    if (omega <= 0) throw InvalidParams("invariant violated: omega > 0 (got " + omega.str() + ")");
    if (eps.sign() <= 0) throw InvalidParams("invariant violated: eps > 0 (got " + eps.str() + ")");
    if (!(eps * Rat(smallness) < Rat(1)))
      throw InvalidParams("invariant violated: eps < 1/S (eps infinitesimal), got eps=" + eps.str() +
                          ", S=" + smallness.str());
    if (!(Rat(omega) * eps > Rat(smallness)))
      throw InvalidParams("invariant violated: omega*eps > S (omega*eps unbounded), got omega*eps=" +
                          (Rat(omega) * eps).str() + ", S=" + smallness.str());
    return HyperParams(std::move(omega), std::move(eps), FeasibilityContext(std::move(smallness)));
  }

  /// ω = 2048, ε = 1/64, S = 4. R_b has 511 elements, enumerable.
  static HyperParams tiny() { return make(2048, Rat(1, 64), 4); }
  /// ω = 2^40, ε = 2^-20, S = 2^10.
  static HyperParams fine() { return make(BigInt(1) << 40, Rat(BigInt(1), BigInt(1) << 20), BigInt(1) << 10); }

  /// "tiny" or "fine", case-insensitive.
  static HyperParams preset(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "tiny") return tiny();
    if (lower == "fine") return fine();
    throw InvalidParams("unknown preset '" + std::string(name) + "' (expected tiny or fine)");
  }

  const BigInt& omega() const noexcept { return omega_; }
  const Rat& eps() const noexcept { return eps_; }
  const FeasibilityContext& ctx() const noexcept { return ctx_; }
  const BigInt& smallness() const noexcept { return ctx_.smallness(); }
  /// 2ω + 1.
  const BigInt& modulus() const noexcept { return modulus_; }
  /// Largest k with kε bounded, i.e. R_b = [-bounded_limit, bounded_limit].
  const BigInt& bounded_limit() const noexcept { return bounded_limit_; }
  /// Least integer distance that is not infinitesimal: k ρ m iff |k - m| < rho_gap.
  const BigInt& rho_gap() const noexcept { return rho_gap_; }
  /// The ρ threshold on values, 1/S.
  Rat rho_threshold() const { return Rat(BigInt(1), ctx_.smallness()); }

  bool in_range(const BigInt& k) const { return k >= -omega_ && k <= omega_; }

  HyperElem elem(BigInt k) const {
    if (!in_range(k)) throw std::out_of_range("element " + k.str() + " outside r = [-" + omega_.str() + ", " + omega_.str() + "]");
    return HyperElem{std::move(k)};
  }

  std::string describe() const {
    return "omega=" + omega_.str() + " eps=" + eps_.str() + " S=" + ctx_.smallness().str();
  }

 private:
  HyperParams(BigInt omega, Rat eps, FeasibilityContext ctx)
      : omega_(std::move(omega)), eps_(std::move(eps)), ctx_(std::move(ctx)) {
    modulus_ = 2 * omega_ + 1;
    // |k|·num < S·den  <=>  |k| <= ceil(S·den/num) - 1
    bounded_limit_ = ceil_div(ctx_.smallness() * eps_.den(), eps_.num()) - 1;
    // |Δ|·S·num < den  <=>  |Δ| < ceil(den/(S·num))
    rho_gap_ = ceil_div(eps_.den(), ctx_.smallness() * eps_.num());
  }

  BigInt omega_;
  Rat eps_;
  FeasibilityContext ctx_;
  BigInt modulus_;
  BigInt bounded_limit_;
  BigInt rho_gap_;
};

/// Symmetric residue of v modulo 2ω+1, in [-ω, ω].
inline BigInt reduce(const BigInt& v, const HyperParams& p) {
  if (v >= -p.omega() && v <= p.omega()) return v;
  BigInt r = mod_floor(v, p.modulus());
  if (r > p.omega()) r -= p.modulus();
  return r;
}

inline HyperElem hadd(const HyperElem& a, const HyperElem& b, const HyperParams& p) {
  return HyperElem{reduce(a.k + b.k, p)};
}

inline HyperElem hneg(const HyperElem& a, const HyperParams&) { return HyperElem{-a.k}; }

/// floor(k·m·ε), floored toward -inf for negative products, then reduced.
inline HyperElem hmul(const HyperElem& a, const HyperElem& b, const HyperParams& p) {
  return HyperElem{reduce(floor_div(a.k * b.k * p.eps().num(), p.eps().den()), p)};
}

/// kε as an exact rational, whether or not k is bounded.
inline Rat value(const HyperElem& a, const HyperParams& p) { return Rat(a.k * p.eps().num(), p.eps().den()); }

inline bool elem_bounded(const HyperElem& a, const HyperParams& p) { return hyperlab::abs(a.k) <= p.bounded_limit(); }

inline bool rho(const HyperElem& a, const HyperElem& b, const HyperParams& p) {
  return hyperlab::abs(a.k - b.k) < p.rho_gap();
}

/// Nearest element to q/ε, ties rounded away from zero. Throws if it falls outside r.
inline HyperElem nearest_element(const Rat& q, const HyperParams& p) {
  const BigInt n = hyperlab::abs(q.num()) * p.eps().den();
  const BigInt d = q.den() * p.eps().num();
  BigInt k = (2 * n + d) / (2 * d);
  if (q.sign() < 0) k = -k;
  return p.elem(std::move(k));
}

/// Embedding of a bounded rational: the nearest element, |kε - q| <= ε/2.
inline HyperElem embed(const Rat& q, const HyperParams& p) {
  if (!num::is_bounded(q, p.ctx())) throw std::domain_error("embed: rational " + q.str() + " is not bounded");
  return nearest_element(q, p);
}

/// st(kε) for bounded k.
inline Rat project(const HyperElem& a, const HyperParams& p) {
  if (!elem_bounded(a, p)) throw std::domain_error("project: element " + a.k.str() + " is not bounded");
  return num::st(value(a, p), p.ctx());
}

/// All of R_b in ascending order. Only sensible when R_b is enumerable.
inline std::vector<HyperElem> bounded_elements(const HyperParams& p, std::uint64_t max_count = 10'000'000) {
  const BigInt count = 2 * p.bounded_limit() + 1;
  if (count > max_count) throw ResourceLimit("R_b has " + count.str() + " elements; enumeration refused");
  std::vector<HyperElem> out;
  out.reserve(count.convert_to<std::size_t>());
  for (BigInt k = -p.bounded_limit(); k <= p.bounded_limit(); ++k) out.push_back(HyperElem{k});
  return out;
}

// ---------------------------------------------------------------------------
// Representative nets of R_b / ρ

inline BigInt net_size(const HyperParams& p) { return (2 * p.bounded_limit()) / p.rho_gap() + 1; }

/// Greedy left-to-right net: start at the least bounded element and take the
/// next element at distance rho_gap from the last one taken. Representatives
/// are pairwise not ρ-related and every bounded element is ρ-related to one.
inline std::vector<HyperElem> select_representatives(const HyperParams& p, std::uint64_t max_count = 10'000'000) {
  if (net_size(p) > max_count) throw ResourceLimit("net has " + net_size(p).str() + " representatives; refused");
  std::vector<HyperElem> reps;
  for (BigInt k = -p.bounded_limit(); k <= p.bounded_limit(); k += p.rho_gap()) reps.push_back(HyperElem{k});
  return reps;
}

/// The representative covering a bounded element: the nearest one, lower on ties.
inline HyperElem representative_of(const HyperElem& a, const HyperParams& p) {
  if (!elem_bounded(a, p)) throw std::domain_error("representative_of: element not bounded");
  const BigInt offset = a.k + p.bounded_limit();
  BigInt index = offset / p.rho_gap();
  const BigInt below = index * p.rho_gap();
  const BigInt last = (2 * p.bounded_limit()) / p.rho_gap();
  if (index < last && 2 * (offset - below) > p.rho_gap()) ++index;
  return HyperElem{index * p.rho_gap() - p.bounded_limit()};
}

// ---------------------------------------------------------------------------
// Exact law counterexamples

enum class Law { mul_assoc, distrib, add_assoc };

inline std::string_view law_name(Law law) {
  switch (law) {
    case Law::mul_assoc: return "mul_assoc_exact";
    case Law::distrib: return "distrib_exact";
    case Law::add_assoc: return "add_assoc_exact";
  }
  return "?";
}

inline Law parse_law(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "mul_assoc" || s == "mul_assoc_exact") return Law::mul_assoc;
  if (s == "distrib" || s == "distrib_exact") return Law::distrib;
  if (s == "add_assoc" || s == "add_assoc_exact") return Law::add_assoc;
  throw std::invalid_argument("unknown law '" + std::string(name) + "'");
}

/// Both sides of a law instance: (a⊙b)⊙c vs a⊙(b⊙c), a⊙(b⊕c) vs (a⊙b)⊕(a⊙c),
/// or (a⊕b)⊕c vs a⊕(b⊕c).
inline std::pair<HyperElem, HyperElem> evaluate_law(Law law, const HyperElem& a, const HyperElem& b,
                                                    const HyperElem& c, const HyperParams& p) {
  switch (law) {
    case Law::mul_assoc: return {hmul(hmul(a, b, p), c, p), hmul(a, hmul(b, c, p), p)};
    case Law::distrib: return {hmul(a, hadd(b, c, p), p), hadd(hmul(a, b, p), hmul(a, c, p), p)};
    case Law::add_assoc: return {hadd(hadd(a, b, p), c, p), hadd(a, hadd(b, c, p), p)};
  }
  throw std::logic_error("unreachable");
}

struct Witness {
  Law law;
  HyperElem a, b, c;
  HyperElem lhs, rhs;
};

struct SearchOptions {
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct SearchResult {
  std::optional<Witness> witness;
  /// Probes spent up to and including the witness, or the whole budget.
  std::uint64_t probes = 0;
  /// True when every triple of r was examined.
  bool exhaustive = false;
};

namespace detail {

inline constexpr std::uint64_t kProbesPerShard = 1 << 14;
inline constexpr std::uint64_t kShardsPerWave = 16;

}  // namespace detail

/// Looks for a triple violating `law` exactly. When the budget covers all of
/// r^3 the triples are enumerated in lexicographic order; otherwise triples are
/// drawn uniformly from r in seeded shards and the first witness in shard order
/// is reported.
inline SearchResult search_counterexample(Law law, const HyperParams& p, const SearchOptions& opts = {}) {
  SearchResult result;
  const BigInt universe = p.modulus() * p.modulus() * p.modulus();
  if (universe <= opts.budget) {
    result.exhaustive = true;
    for (BigInt a = -p.omega(); a <= p.omega(); ++a)
      for (BigInt b = -p.omega(); b <= p.omega(); ++b)
        for (BigInt c = -p.omega(); c <= p.omega(); ++c) {
          ++result.probes;
          auto [lhs, rhs] = evaluate_law(law, HyperElem{a}, HyperElem{b}, HyperElem{c}, p);
          if (lhs != rhs) {
            result.witness = Witness{law, HyperElem{a}, HyperElem{b}, HyperElem{c}, lhs, rhs};
            result.exhaustive = false;
            return result;
          }
        }
    return result;
  }

  struct ShardHit {
    std::uint64_t index;
    Witness witness;
  };
  const std::uint64_t shard_count = (opts.budget + detail::kProbesPerShard - 1) / detail::kProbesPerShard;
  for (std::uint64_t wave = 0; wave * detail::kShardsPerWave < shard_count; ++wave) {
    const std::uint64_t first = wave * detail::kShardsPerWave;
    const std::uint64_t count = std::min(detail::kShardsPerWave, shard_count - first);
    auto hits = map_shards(count, opts.threads, [&](std::size_t i) -> std::optional<ShardHit> {
      const std::uint64_t shard = first + i;
      const std::uint64_t begin = shard * detail::kProbesPerShard;
      const std::uint64_t end = std::min(opts.budget, begin + detail::kProbesPerShard);
      std::mt19937_64 rng(shard_seed(opts.seed, shard));
      for (std::uint64_t probe = begin; probe < end; ++probe) {
        HyperElem a{uniform_in(-p.omega(), p.omega(), rng)};
        HyperElem b{uniform_in(-p.omega(), p.omega(), rng)};
        HyperElem c{uniform_in(-p.omega(), p.omega(), rng)};
        auto [lhs, rhs] = evaluate_law(law, a, b, c, p);
        if (lhs != rhs) return ShardHit{probe, Witness{law, a, b, c, lhs, rhs}};
      }
      return std::nullopt;
    });
    for (auto& hit : hits) {
      if (hit) {
        result.witness = hit->witness;
        result.probes = hit->index + 1;
        return result;
      }
    }
  }
  result.probes = opts.budget;
  return result;
}

}  // namespace hyperlab::hyper

#endif  // HYPERLAB_HYPERARITH_HPP

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

// Definable closure inside a bounded universe U and f-elementary checks.
//
// One definability step collects every u ∈ U of the form {y ∈ U : U ⊨ θ(y)}
// where θ has exactly one free variable, parameters from P and at most
// `maxlen` codes. Two sources feed a step:
//
//  * a semantic search over formulas in a pool of k variables: every formula
//    is represented by the relation it defines on U^k, formulas defining the
//    same relation with the same free variables are merged, and candidates
//    are built by code length (atoms, then ¬, ∃ and ∨ of shorter classes);
//  * short parametric templates (y = p, y ∈ p, and their pairwise
//    disjunctions, ¬ y = y, ∃w (y ∈ w)) whose extensions are computed
//    directly.
//
// Every collected set keeps a witness formula. The step is exhaustive when
// the semantic search finished within its budgets and k is at least the
// number of variables a formula of `maxlen` codes can use.
//
// def_closure iterates the step from X until no new set appears.

#ifndef HYPERLAB_TARSKI_DEFINABILITY_HPP
#define HYPERLAB_TARSKI_DEFINABILITY_HPP

#include "hyperlab/parallel.hpp"
#include "hyperlab/tarski/truth.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace hyperlab::tarski {

struct DefOptions {
  std::size_t maxlen = 24;
  /// Variables available to the semantic search.
  std::size_t variable_pool = 2;
  /// Distinct relations kept by the semantic search.
  std::uint64_t class_budget = 512;
  /// Relation operations (each touches one |U|^k table) per step.
  std::uint64_t work_budget = 300'000;
  /// Largest |U|^k table the semantic search will build.
  std::uint64_t max_table_bits = std::uint64_t{1} << 20;
  std::size_t max_rounds = 256;
  unsigned threads = 1;
};

struct Definition {
  HfSet set;
  EpsPtr formula;
};

struct DefStep {
  /// Ackermann order of `set`.
  std::vector<Definition> definitions;
  bool exhaustive = false;
};

struct DefClosure {
  FiniteStructure closure;
  /// One witness per element of `closure` not already in X, in Ackermann order.
  std::vector<Definition> definitions;
  std::size_t rounds = 0;
  /// True when the closure is provably the least fixed point: every step was
  /// exhaustive, or the closure is all of U.
  bool exact = false;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : b) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

// Relations on U^k, index = Σ a_j·n^j.
class SemanticSearch {
 public:
  SemanticSearch(const FiniteStructure& u, const std::vector<HfSet>& params, const DefOptions& opts)
      : u_(u), params_(params), opts_(opts), n_(u.size()), k_(opts.variable_pool) {
    size_ = 1;
    for (std::size_t j = 0; j < k_; ++j) size_ *= n_;
    words_ = (size_ + 63) / 64;
  }

  bool feasible() const {
    if (k_ == 0 || n_ == 0) return false;
    std::uint64_t s = 1;
    for (std::size_t j = 0; j < k_; ++j) {
      if (s > opts_.max_table_bits / n_) return false;
      s *= n_;
    }
    return 2 * (k_ + params_.size()) * (k_ + params_.size()) <= opts_.class_budget;
  }

  /// Runs to maxlen; returns false when a budget stopped it early.
  bool run() {
    std::vector<std::vector<std::size_t>> by_length(opts_.maxlen + 1);
    auto add = [&](Bits bits, std::uint32_t mask, std::size_t len, Derivation d) {
      if (classes_.size() >= opts_.class_budget) {
        complete_ = false;
        return;
      }
      auto [it, inserted] = seen_[mask].try_emplace(std::move(bits), classes_.size());
      if (!inserted) return;
      classes_.push_back(Class{&it->first, mask, len, d});
      by_length[len].push_back(classes_.size() - 1);
    };
    auto spend = [&]() {
      if (++work_ > opts_.work_budget) complete_ = false;
      return complete_;
    };

    if (opts_.maxlen < 3) return true;
    const std::size_t terms = k_ + params_.size();
    for (int rel = 0; rel < 2 && complete_; ++rel)
      for (std::size_t a = 0; a < terms && complete_; ++a)
        for (std::size_t b = 0; b < terms && complete_; ++b) {
          if (!spend()) break;
          std::uint32_t mask = (a < k_ ? 1u << a : 0u) | (b < k_ ? 1u << b : 0u);
          add(atom(rel, a, b), mask, 3, Derivation{Op::atom, rel, a, b});
        }

    for (std::size_t len = 4; len <= opts_.maxlen && complete_; ++len) {
      for (std::size_t c : snapshot(by_length[len - 1])) {
        if (!spend()) break;
        add(negate(*classes_[c].bits), classes_[c].mask, len, Derivation{Op::negation, 0, c, 0});
      }
      if (len >= 5)
        for (std::size_t c : snapshot(by_length[len - 2]))
          for (std::size_t j = 0; j < k_ && complete_; ++j) {
            if (!(classes_[c].mask >> j & 1u)) continue;
            if (!spend()) break;
            add(exists(*classes_[c].bits, j), classes_[c].mask & ~(1u << j), len, Derivation{Op::exists, 0, c, j});
          }
      for (std::size_t la = 3; la + 3 <= len - 1 && complete_; ++la) {
        const std::size_t lb = len - 1 - la;
        if (lb < la) break;
        auto left = snapshot(by_length[la]);
        auto right = snapshot(by_length[lb]);
        for (std::size_t a : left) {
          for (std::size_t b : right) {
            if (la == lb && b < a) continue;
            if (!spend()) break;
            Bits bits = *classes_[a].bits;
            for (std::size_t w = 0; w < words_; ++w) bits[w] |= (*classes_[b].bits)[w];
            add(std::move(bits), classes_[a].mask | classes_[b].mask, len, Derivation{Op::disjunction, 0, a, b});
          }
          if (!complete_) break;
        }
      }
    }
    return complete_;
  }

  /// Sets defined by single-free-variable classes, with witnesses.
  void collect(const FiniteStructure& universe, std::map<HfSet, Definition>& out) const {
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const Class& cls = classes_[c];
      if (std::popcount(cls.mask) != 1) continue;
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(cls.mask));
      std::uint64_t stride = 1;
      for (std::size_t i = 0; i < j; ++i) stride *= n_;
      std::vector<HfSet> members;
      for (std::size_t e = 0; e < n_; ++e)
        if (test(*cls.bits, e * stride)) members.push_back(u_.elements()[e]);
      HfSet s = HfSet::from_elements(std::move(members));
      if (!universe.contains(s)) continue;
      auto it = out.find(s);
      if (it == out.end() || code_length(it->second.formula) > cls.length) {
        out[s] = Definition{s, rename(build(c), j)};
      }
    }
  }

 private:
  enum class Op { atom, negation, exists, disjunction };
  struct Derivation {
    Op op;
    int rel;
    std::size_t a, b;
  };
  struct Class {
    const Bits* bits;
    std::uint32_t mask;
    std::size_t length;
    Derivation how;
  };

  static std::vector<std::size_t> snapshot(const std::vector<std::size_t>& v) { return v; }
  static bool test(const Bits& b, std::uint64_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
  static void set(Bits& b, std::uint64_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t coord(std::uint64_t idx, std::size_t j) const {
    for (std::size_t i = 0; i < j; ++i) idx /= n_;
    return static_cast<std::size_t>(idx % n_);
  }

  Bits atom(int rel, std::size_t a, std::size_t b) const {
    Bits bits(words_, 0);
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
      const HfSet& x = a < k_ ? u_.elements()[coord(idx, a)] : params_[a - k_];
      const HfSet& y = b < k_ ? u_.elements()[coord(idx, b)] : params_[b - k_];
      if (rel == 0 ? x == y : y.contains(x)) set(bits, idx);
    }
    return bits;
  }

  Bits negate(const Bits& in) const {
    Bits bits(words_);
    for (std::size_t w = 0; w < words_; ++w) bits[w] = ~in[w];
    if (size_ % 64) bits.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    return bits;
  }

  Bits exists(const Bits& in, std::size_t j) const {
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < j; ++i) stride *= n_;
    Bits bits(words_, 0);
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
      if (coord(idx, j) != 0) continue;
      bool any = false;
      for (std::size_t t = 0; t < n_ && !any; ++t) any = test(in, idx + t * stride);
      if (any)
        for (std::size_t t = 0; t < n_; ++t) set(bits, idx + t * stride);
    }
    return bits;
  }

  EpsPtr build(std::size_t c) const {
    const Derivation& d = classes_[c].how;
    switch (d.op) {
      case Op::atom: {
        auto term = [&](std::size_t t) { return t < k_ ? EpsTerm::variable(t) : EpsTerm::parameter(params_[t - k_]); };
        return d.rel == 0 ? eps_equal(term(d.a), term(d.b)) : eps_member(term(d.a), term(d.b));
      }
      case Op::negation: return eps_not(build(d.a));
      case Op::exists: return eps_exists(d.b, build(d.a));
      case Op::disjunction: return eps_or(build(d.a), build(d.b));
    }
    return nullptr;
  }

  // Swaps v0 and v_j so the free variable is always v0.
  static EpsPtr rename(const EpsPtr& f, std::size_t j) {
    if (j == 0) return f;
    auto swap_var = [&](std::size_t v) { return v == j ? 0 : v == 0 ? j : v; };
    auto term = [&](const EpsTerm& t) { return t.is_var ? EpsTerm::variable(swap_var(t.var)) : t; };
    switch (f->kind) {
      case EpsNode::Kind::equal:
      case EpsNode::Kind::member: return eps_atom(f->kind, term(f->lhs), term(f->rhs));
      case EpsNode::Kind::negation: return eps_not(rename(f->left, j));
      case EpsNode::Kind::disjunction: return eps_or(rename(f->left, j), rename(f->right, j));
      case EpsNode::Kind::exists: return eps_exists(swap_var(f->var), rename(f->left, j));
    }
    return f;
  }

  const FiniteStructure& u_;
  const std::vector<HfSet>& params_;
  const DefOptions& opts_;
  std::size_t n_, k_;
  std::uint64_t size_ = 0;
  std::size_t words_ = 0;
  std::uint64_t work_ = 0;
  bool complete_ = true;
  std::vector<Class> classes_;
  std::unordered_map<std::uint32_t, std::unordered_map<Bits, std::size_t, BitsHash>> seen_;
};

inline void offer(std::map<HfSet, Definition>& out, const FiniteStructure& universe, HfSet s, EpsPtr f) {
  if (!universe.contains(s)) return;
  auto it = out.find(s);
  if (it == out.end()) {
    out.emplace(s, Definition{s, std::move(f)});
  } else if (code_length(it->second.formula) > code_length(f)) {
    it->second.formula = std::move(f);
  }
}

// Extensions here are computed directly; U is transitive, so the members of
// any p ∈ U are themselves in U.
inline void template_definitions(const FiniteStructure& u, const std::vector<HfSet>& params, const DefOptions& opts,
                                 std::map<HfSet, Definition>& out) {
  const EpsTerm y = EpsTerm::variable(0), w = EpsTerm::variable(1);
  std::vector<HfSet> members;
  for (const HfSet& e : u.elements())
    for (const HfSet& m : e.elements()) members.push_back(m);
  const HfSet union_of_u = HfSet::from_elements(std::move(members));
  if (opts.maxlen >= 4) offer(out, u, HfSet{}, eps_not(eps_equal(y, y)));
  if (opts.maxlen >= 5) offer(out, u, union_of_u, eps_exists(1, eps_member(y, w)));
  if (opts.maxlen < 3) return;
  for (const HfSet& p : params) {
    offer(out, u, hf::singleton(p), eps_equal(y, EpsTerm::parameter(p)));
    offer(out, u, p, eps_member(y, EpsTerm::parameter(p)));
  }
  if (opts.maxlen < 7) return;
  // A pair or an adjunction lands in U only if q is a member of some element
  // of U, and p ∪ q only if q ⊆ ⋃U; q is restricted to ⋃U for all three.
  std::vector<HfSet> seconds;
  for (const HfSet& q : params)
    if (union_of_u.contains(q)) seconds.push_back(q);
  // Pairs, sharded by the first parameter; merged in shard order.
  auto shards = map_shards(params.size(), opts.threads, [&](std::size_t i) {
    std::map<HfSet, Definition> local;
    const HfSet& p = params[i];
    const EpsTerm tp = EpsTerm::parameter(p);
    for (const HfSet& q : seconds) {
      const EpsTerm tq = EpsTerm::parameter(q);
      offer(local, u, hf::adjoin(hf::singleton(p), q), eps_or(eps_equal(y, tp), eps_equal(y, tq)));
      offer(local, u, hf::adjoin(p, q), eps_or(eps_member(y, tp), eps_equal(y, tq)));
      offer(local, u, hf::set_union(p, q), eps_or(eps_member(y, tp), eps_member(y, tq)));
    }
    return local;
  });
  for (auto& local : shards)
    for (auto& [s, d] : local) offer(out, u, s, d.formula);
}

inline std::size_t variables_needed(std::size_t maxlen) { return maxlen < 3 ? 1 : 1 + (maxlen - 3) / 2; }

}  // namespace detail

/// One definability step: sets of U definable from parameters in P.
inline DefStep def_step(const FiniteStructure& params, const BoundedUniverse& universe, const DefOptions& opts = {}) {
  const FiniteStructure& u = universe.structure();
  if (!params.subset_of(u)) throw std::invalid_argument("def_step: parameters must lie in the universe");
  std::map<HfSet, Definition> found;
  detail::template_definitions(u, params.elements(), opts, found);

  bool exhaustive = false;
  detail::SemanticSearch search(u, params.elements(), opts);
  if (search.feasible()) {
    exhaustive = search.run() && opts.variable_pool >= detail::variables_needed(opts.maxlen);
    search.collect(u, found);
  }
  DefStep out;
  out.exhaustive = exhaustive;
  for (auto& [s, d] : found) out.definitions.push_back(std::move(d));
  return out;
}

/// Least class C ⊇ X with every set definable over U from parameters in C
/// (with at most maxlen codes) already in C.
inline DefClosure def_closure(const FiniteStructure& x, const BoundedUniverse& universe, const DefOptions& opts = {}) {
  const FiniteStructure& u = universe.structure();
  if (!x.subset_of(u)) throw std::invalid_argument("def_closure: X must lie in the universe");
  std::vector<HfSet> current = x.elements();
  std::map<HfSet, Definition> definitions;
  bool all_exhaustive = true;
  DefClosure out;
  for (;;) {
    if (out.rounds == opts.max_rounds) throw ResourceLimit("def_closure: round limit reached before a fixed point");
    ++out.rounds;
    FiniteStructure params(current);
    DefStep step = def_step(params, universe, opts);
    all_exhaustive = all_exhaustive && step.exhaustive;
    bool grew = false;
    for (Definition& d : step.definitions) {
      if (params.contains(d.set)) continue;
      current.push_back(d.set);
      definitions.emplace(d.set, std::move(d));
      grew = true;
    }
    if (!grew) break;
  }
  out.closure = FiniteStructure(std::move(current));
  for (auto& [s, d] : definitions) out.definitions.push_back(std::move(d));
  out.exact = all_exhaustive || out.closure.size() == u.size();
  return out;
}

/// The fixed-point property: one more step from X ∪ C adds nothing.
inline bool is_definably_closed(const FiniteStructure& c, const FiniteStructure& x, const BoundedUniverse& universe,
                                const DefOptions& opts = {}) {
  std::vector<HfSet> params = c.elements();
  params.insert(params.end(), x.elements().begin(), x.elements().end());
  DefStep step = def_step(FiniteStructure(std::move(params)), universe, opts);
  return std::all_of(step.definitions.begin(), step.definitions.end(),
                     [&](const Definition& d) { return c.contains(d.set); });
}

// ---------------------------------------------------------------------------
// f-elementary submodels

struct ElementaryReport {
  bool holds = true;
  std::size_t checked = 0;
  /// Corpus formulas with a parameter outside C; not in SL(C).
  std::size_t skipped = 0;
  std::optional<EpsPtr> counterexample;
};

/// Compares C ⊨ φ with M ⊨ φ for every closed corpus formula whose
/// parameters lie in C.
inline ElementaryReport elementary_report(const FiniteStructure& c, const FiniteStructure& m,
                                          const std::vector<EpsPtr>& corpus) {
  if (!c.subset_of(m)) throw std::invalid_argument("elementary_check: C must be a subclass of M");
  ElementaryReport report;
  for (const EpsPtr& phi : corpus) {
    if (!is_closed(phi)) throw std::invalid_argument("elementary_check: corpus formula " + to_string(phi) + " is open");
    auto params = parameters(phi);
    if (!std::all_of(params.begin(), params.end(), [&](const HfSet& p) { return c.contains(p); })) {
      ++report.skipped;
      continue;
    }
    ++report.checked;
    if (truth(c, phi) != truth(m, phi)) {
      report.holds = false;
      report.counterexample = phi;
      break;
    }
  }
  return report;
}

inline bool elementary_check(const FiniteStructure& c, const FiniteStructure& m, const std::vector<EpsPtr>& corpus) {
  return elementary_report(c, m, corpus).holds;
}

/// `count` closed formulas with parameters drawn from `params`, seeded.
inline std::vector<EpsPtr> random_corpus(const std::vector<HfSet>& params, std::size_t count, std::uint64_t seed,
                                         const RandomFormulaSpec& spec = {}) {
  std::vector<EpsPtr> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(shard_seed(seed, i));
    out.push_back(random_formula(rng, params, spec));
  }
  return out;
}

}  // namespace hyperlab::tarski

#endif  // HYPERLAB_TARSKI_DEFINABILITY_HPP

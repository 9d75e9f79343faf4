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

// Guard-banded comparison of φ_h in R(ω, ε) against φ on the grid.
//
// For every atom t = s a structural bound C on |value(t_h) - t| + |value(s_h) - s|
// is computed. With gap = |t - s|, the real-side atom is decided only when gap
// lies outside [1/S - C, 1/S + C] and is otherwise unknown. Decided atoms are
// exact equality (t = s in the rationals) by default, or "gap < 1/S" under
// RealAtom::tolerance. Unknowns propagate through connectives and quantifiers
// in Kleene's three-valued logic; a formula whose real-side value stays unknown
// is a Boundary verdict instead of a comparison.
//
// Under RealAtom::tolerance a sound C makes Disagree unreachable, so that mode
// checks the error analysis; exact mode additionally reports identities that
// fail in the rationals but hold up to ρ.

#ifndef HYPERLAB_FORMULAS_TRANSFER_HPP
#define HYPERLAB_FORMULAS_TRANSFER_HPP

#include "hyperlab/formulas/eval.hpp"
#include "hyperlab/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hyperlab::fol {

// ---------------------------------------------------------------------------
// Error bounds

struct TermBound {
  /// Bound on |t| over all admissible assignments.
  Rat magnitude;
  /// Bound on |value(t_h) - t|.
  Rat error;
  /// False when some subterm of t_h might leave r and wrap around.
  bool wrap_safe = true;
};

/// err(var) = err(const) = ε/2, err(t+s) = err(t) + err(s),
/// err(t·s) = |t|err(s) + |s|err(t) + err(t)err(s) + ε.
inline TermBound analyze_term(const TermPtr& t, const std::function<Rat(std::size_t)>& var_bound, const HyperParams& p) {
  const Rat half_eps = p.eps() * Rat(1, 2);
  const Rat capacity = Rat(p.omega()) * p.eps();
  TermBound out;
  switch (t->kind) {
    case TermNode::Kind::variable:
      out.magnitude = var_bound(t->var);
      out.error = half_eps;
      break;
    case TermNode::Kind::constant:
      out.magnitude = abs(t->constant);
      out.error = half_eps;
      break;
    case TermNode::Kind::plus: {
      TermBound a = analyze_term(t->lhs, var_bound, p), b = analyze_term(t->rhs, var_bound, p);
      out.magnitude = a.magnitude + b.magnitude;
      out.error = a.error + b.error;
      out.wrap_safe = a.wrap_safe && b.wrap_safe;
      break;
    }
    case TermNode::Kind::times: {
      TermBound a = analyze_term(t->lhs, var_bound, p), b = analyze_term(t->rhs, var_bound, p);
      out.magnitude = a.magnitude * b.magnitude;
      out.error = a.magnitude * b.error + b.magnitude * a.error + a.error * b.error + p.eps();
      out.wrap_safe = a.wrap_safe && b.wrap_safe;
      break;
    }
  }
  if (out.magnitude + out.error > capacity) out.wrap_safe = false;
  return out;
}

/// The bound C with |value(t_h) - t| <= C whenever every variable has |v| <= bound.
/// Throws std::domain_error when the analysis cannot exclude wraparound.
inline Rat term_error_bound(const TermPtr& t, const Rat& bound, const HyperParams& p) {
  TermBound b = analyze_term(t, [&](std::size_t) { return bound; }, p);
  if (!b.wrap_safe) throw std::domain_error("term_error_bound: term may leave r within the given bound");
  return b.error;
}

inline Rat term_error_bound(const Term& t, const Rat& bound, const HyperParams& p) {
  return term_error_bound(t.root, bound, p);
}

// ---------------------------------------------------------------------------
// Verdicts

enum class TriBool { agree, disagree, boundary };

inline std::string_view to_string(TriBool v) {
  switch (v) {
    case TriBool::agree: return "Agree";
    case TriBool::disagree: return "Disagree";
    case TriBool::boundary: return "Boundary";
  }
  return "?";
}

enum class Kleene { no, yes, unknown };

inline std::string_view to_string(Kleene v) {
  switch (v) {
    case Kleene::no: return "false";
    case Kleene::yes: return "true";
    case Kleene::unknown: return "unknown";
  }
  return "?";
}

struct TransferRow {
  std::vector<Rat> assignment;
  bool hyper_truth = false;
  Kleene real_truth = Kleene::unknown;
  TriBool verdict = TriBool::boundary;
};

struct TransferReport {
  std::vector<std::string> free_vars;
  bool uses_constants = false;
  std::vector<TransferRow> rows;
  std::uint64_t agree = 0, disagree = 0, boundary = 0;

  double boundary_fraction() const { return rows.empty() ? 0.0 : static_cast<double>(boundary) / rows.size(); }
};

enum class RealAtom { exact, tolerance };

inline std::string_view to_string(RealAtom a) { return a == RealAtom::exact ? "exact" : "tolerance"; }

inline RealAtom parse_real_atom(std::string_view name) {
  if (name == "exact") return RealAtom::exact;
  if (name == "tolerance") return RealAtom::tolerance;
  throw std::invalid_argument("unknown real-side atom semantics '" + std::string(name) + "'");
}

struct SamplingSpec {
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 1;
  /// Free variables are drawn from grid points with |v| <= bound.
  Rat bound = Rat(1);
  unsigned threads = 1;
  RealAtom atom = RealAtom::exact;
};

namespace detail {

inline constexpr std::uint64_t kSamplesPerShard = 1024;

class TransferEvaluator {
 public:
  TransferEvaluator(const Formula& f, const HyperParams& p, const Rat& free_bound, RealAtom atom)
      : f_(f), fh_(translate_h(f, p)), p_(p), threshold_(p.rho_threshold()), atom_(atom) {
    if (quantifier_shape(f.root).find_first_of("AE") != std::string::npos) {
      domain_h_ = hyper::bounded_elements(p);
      grid_ = real_grid(p);
    }
    const Rat quantified_bound = Rat(p.bounded_limit()) * p.eps();
    std::vector<bool> bound(f.variables.size(), false);
    prepare(f.root, bound, free_bound, quantified_bound);
  }

  TransferRow evaluate(const std::vector<Rat>& values) const {
    TransferRow row;
    row.assignment = values;
    std::vector<Rat> real_slots(f_.variables.size());
    std::vector<HyperElem> hyper_slots(f_.variables.size());
    for (std::size_t i = 0; i < f_.free_vars.size(); ++i) {
      real_slots[f_.free_vars[i]] = values[i];
      hyper_slots[f_.free_vars[i]] = hyper::embed(values[i], p_);
    }
    row.hyper_truth = eval_hyper_slots(fh_, hyper_slots, domain_h_, p_);
    row.real_truth = eval_kleene(f_.root, real_slots);
    if (row.real_truth == Kleene::unknown)
      row.verdict = TriBool::boundary;
    else
      row.verdict = (row.real_truth == Kleene::yes) == row.hyper_truth ? TriBool::agree : TriBool::disagree;
    return row;
  }

 private:
  void prepare(const FormulaPtr& f, std::vector<bool>& bound, const Rat& free_bound, const Rat& quantified_bound) {
    switch (f->kind) {
      case FormulaNode::Kind::equal: {
        auto var_bound = [&](std::size_t s) { return bound[s] ? quantified_bound : free_bound; };
        TermBound a = analyze_term(f->lhs_term, var_bound, p_);
        TermBound b = analyze_term(f->rhs_term, var_bound, p_);
        guard_[f.get()] = (a.wrap_safe && b.wrap_safe) ? std::optional<Rat>(a.error + b.error) : std::nullopt;
        return;
      }
      case FormulaNode::Kind::forall:
      case FormulaNode::Kind::exists: {
        const bool saved = bound[f->var];
        bound[f->var] = true;
        prepare(f->left, bound, free_bound, quantified_bound);
        bound[f->var] = saved;
        return;
      }
      default:
        prepare(f->left, bound, free_bound, quantified_bound);
        if (f->right) prepare(f->right, bound, free_bound, quantified_bound);
    }
  }

  static Kleene negate(Kleene v) { return v == Kleene::yes ? Kleene::no : v == Kleene::no ? Kleene::yes : Kleene::unknown; }
  static Kleene disjoin(Kleene a, Kleene b) {
    if (a == Kleene::yes || b == Kleene::yes) return Kleene::yes;
    if (a == Kleene::no && b == Kleene::no) return Kleene::no;
    return Kleene::unknown;
  }

  Kleene eval_kleene(const FormulaPtr& f, std::vector<Rat>& slots) const {
    switch (f->kind) {
      case FormulaNode::Kind::equal: {
        const std::optional<Rat>& guard = guard_.at(f.get());
        if (!guard) return Kleene::unknown;
        const Rat gap = abs(eval_term(f->lhs_term, slots) - eval_term(f->rhs_term, slots));
        if (gap >= threshold_ - *guard && gap <= threshold_ + *guard) return Kleene::unknown;
        const bool holds = atom_ == RealAtom::exact ? gap == 0 : gap < threshold_;
        return holds ? Kleene::yes : Kleene::no;
      }
      case FormulaNode::Kind::negation: return negate(eval_kleene(f->left, slots));
      case FormulaNode::Kind::disjunction: {
        Kleene a = eval_kleene(f->left, slots);
        return a == Kleene::yes ? a : disjoin(a, eval_kleene(f->right, slots));
      }
      case FormulaNode::Kind::conjunction: {
        Kleene a = negate(eval_kleene(f->left, slots));
        return negate(a == Kleene::yes ? a : disjoin(a, negate(eval_kleene(f->right, slots))));
      }
      case FormulaNode::Kind::implication: {
        Kleene a = negate(eval_kleene(f->left, slots));
        return a == Kleene::yes ? a : disjoin(a, eval_kleene(f->right, slots));
      }
      case FormulaNode::Kind::forall:
      case FormulaNode::Kind::exists: {
        const bool universal = f->kind == FormulaNode::Kind::forall;
        Rat saved = slots[f->var];
        // ∀ as ¬∃¬
        Kleene acc = Kleene::no;
        for (const Rat& v : grid_) {
          slots[f->var] = v;
          Kleene body = eval_kleene(f->left, slots);
          acc = disjoin(acc, universal ? negate(body) : body);
          if (acc == Kleene::yes) break;
        }
        slots[f->var] = std::move(saved);
        return universal ? negate(acc) : acc;
      }
    }
    throw std::logic_error("unreachable");
  }

  const Formula& f_;
  Formula fh_;
  const HyperParams& p_;
  std::vector<HyperElem> domain_h_;
  std::vector<Rat> grid_;
  Rat threshold_;
  RealAtom atom_;
  std::unordered_map<const FormulaNode*, std::optional<Rat>> guard_;
};

inline void tally(TransferReport& report) {
  for (const TransferRow& r : report.rows) {
    switch (r.verdict) {
      case TriBool::agree: ++report.agree; break;
      case TriBool::disagree: ++report.disagree; break;
      case TriBool::boundary: ++report.boundary; break;
    }
  }
}

}  // namespace detail

/// Compares both sides on explicit assignments (one value per free variable,
/// in `f.free_vars` order). Values must be bounded.
inline TransferReport transfer_check(const Formula& f, const HyperParams& p, const std::vector<std::vector<Rat>>& assignments,
                                     RealAtom atom = RealAtom::exact) {
  Rat free_bound(0);
  for (const auto& a : assignments) {
    if (a.size() != f.free_vars.size()) throw std::invalid_argument("assignment arity does not match free variables");
    for (const Rat& v : a) free_bound = std::max(free_bound, abs(v));
  }
  detail::TransferEvaluator ev(f, p, free_bound, atom);
  TransferReport report{f.free_var_names(), has_constants(f.root), {}, 0, 0, 0};
  for (const auto& a : assignments) report.rows.push_back(ev.evaluate(a));
  detail::tally(report);
  return report;
}

/// Compares both sides on seeded random grid assignments with |v| <= spec.bound.
/// A closed formula is checked once.
inline TransferReport transfer_check(const Formula& f, const HyperParams& p, const SamplingSpec& spec) {
  BigInt limit = (spec.bound / p.eps()).floor();
  if (limit > p.bounded_limit()) limit = p.bounded_limit();
  if (limit < 0) throw std::invalid_argument("sampling bound must be nonnegative");
  detail::TransferEvaluator ev(f, p, Rat(limit) * p.eps(), spec.atom);

  TransferReport report{f.free_var_names(), has_constants(f.root), {}, 0, 0, 0};
  if (f.free_vars.empty()) {
    report.rows.push_back(ev.evaluate({}));
  } else {
    const std::uint64_t shards = (spec.samples + detail::kSamplesPerShard - 1) / detail::kSamplesPerShard;
    auto chunks = map_shards(shards, spec.threads, [&](std::size_t shard) {
      std::mt19937_64 rng(shard_seed(spec.seed, shard));
      const std::uint64_t begin = shard * detail::kSamplesPerShard;
      const std::uint64_t end = std::min(spec.samples, begin + detail::kSamplesPerShard);
      std::vector<TransferRow> rows;
      for (std::uint64_t i = begin; i < end; ++i) {
        std::vector<Rat> values;
        for (std::size_t v = 0; v < f.free_vars.size(); ++v)
          values.push_back(hyper::value(HyperElem{uniform_in(-limit, limit, rng)}, p));
        rows.push_back(ev.evaluate(values));
      }
      return rows;
    });
    for (auto& c : chunks) report.rows.insert(report.rows.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  }
  detail::tally(report);
  return report;
}

}  // namespace hyperlab::fol

#endif  // HYPERLAB_FORMULAS_TRANSFER_HPP

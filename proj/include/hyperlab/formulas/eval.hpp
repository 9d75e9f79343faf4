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

// Translation to the hyperfinite analog and Tarski evaluation on both sides.
//
// The real side quantifies over the grid {kε : k ∈ R_b}, the image of R_b
// under projection; real quantification is not decidable here.

#ifndef HYPERLAB_FORMULAS_EVAL_HPP
#define HYPERLAB_FORMULAS_EVAL_HPP

#include "hyperlab/formulas/ast.hpp"
#include "hyperlab/hyperarith.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlab::fol {

using hyper::HyperElem;
using hyper::HyperParams;

// ---------------------------------------------------------------------------
// Translation φ -> φ_h

namespace detail {

inline TermPtr translate_term(const TermPtr& t, const HyperParams& p) {
  switch (t->kind) {
    case TermNode::Kind::variable: return t;
    case TermNode::Kind::constant: {
      TermNode copy = *t;
      copy.embedded = hyper::embed(t->constant, p);
      return std::make_shared<const TermNode>(std::move(copy));
    }
    default: return make_binary(t->kind, translate_term(t->lhs, p), translate_term(t->rhs, p));
  }
}

inline FormulaPtr translate_formula(const FormulaPtr& f, const HyperParams& p) {
  switch (f->kind) {
    case FormulaNode::Kind::equal: return make_equal(translate_term(f->lhs_term, p), translate_term(f->rhs_term, p));
    case FormulaNode::Kind::forall:
    case FormulaNode::Kind::exists: return make_quantifier(f->kind, f->var, translate_formula(f->left, p));
    case FormulaNode::Kind::negation: return make_connective(f->kind, translate_formula(f->left, p));
    default: return make_connective(f->kind, translate_formula(f->left, p), translate_formula(f->right, p));
  }
}

}  // namespace detail

/// Rewrites + to ⊕, · to ⊙, = to ρ and every quantifier to its R_b-bounded
/// form; constants are embedded. Translated formulas are rejected.
inline Formula translate_h(const Formula& f, const HyperParams& p) {
  if (f.language != Language::real) throw std::logic_error("translate_h: formula is already a hyperfinite analog");
  Formula out = f;
  out.language = Language::hyper;
  out.root = detail::translate_formula(f.root, p);
  return out;
}

// ---------------------------------------------------------------------------
// Term evaluation

inline Rat eval_term(const TermPtr& t, const std::vector<Rat>& slots) {
  switch (t->kind) {
    case TermNode::Kind::variable: return slots[t->var];
    case TermNode::Kind::constant: return t->constant;
    case TermNode::Kind::plus: return eval_term(t->lhs, slots) + eval_term(t->rhs, slots);
    case TermNode::Kind::times: return eval_term(t->lhs, slots) * eval_term(t->rhs, slots);
  }
  throw std::logic_error("unreachable");
}

inline HyperElem eval_term_hyper(const TermPtr& t, const std::vector<HyperElem>& slots, const HyperParams& p) {
  switch (t->kind) {
    case TermNode::Kind::variable: return slots[t->var];
    case TermNode::Kind::constant:
      if (!t->embedded) throw std::logic_error("constant without embedding; translate the formula first");
      return *t->embedded;
    case TermNode::Kind::plus: return hyper::hadd(eval_term_hyper(t->lhs, slots, p), eval_term_hyper(t->rhs, slots, p), p);
    case TermNode::Kind::times: return hyper::hmul(eval_term_hyper(t->lhs, slots, p), eval_term_hyper(t->rhs, slots, p), p);
  }
  throw std::logic_error("unreachable");
}

/// The real-side quantifier domain {kε : k ∈ R_b}, ascending.
inline std::vector<Rat> real_grid(const HyperParams& p) {
  std::vector<Rat> out;
  for (const HyperElem& k : hyper::bounded_elements(p)) out.push_back(hyper::value(k, p));
  return out;
}

// ---------------------------------------------------------------------------
// Formula evaluation

namespace detail {

template <class Value, class Atom>
bool eval_generic(const FormulaPtr& f, std::vector<Value>& slots, const std::vector<Value>& domain, const Atom& atom) {
  switch (f->kind) {
    case FormulaNode::Kind::equal: return atom(f, slots);
    case FormulaNode::Kind::negation: return !eval_generic(f->left, slots, domain, atom);
    case FormulaNode::Kind::conjunction:
      return eval_generic(f->left, slots, domain, atom) && eval_generic(f->right, slots, domain, atom);
    case FormulaNode::Kind::disjunction:
      return eval_generic(f->left, slots, domain, atom) || eval_generic(f->right, slots, domain, atom);
    case FormulaNode::Kind::implication:
      return !eval_generic(f->left, slots, domain, atom) || eval_generic(f->right, slots, domain, atom);
    case FormulaNode::Kind::forall:
    case FormulaNode::Kind::exists: {
      const bool universal = f->kind == FormulaNode::Kind::forall;
      Value saved = slots[f->var];
      bool result = universal;
      for (const Value& v : domain) {
        slots[f->var] = v;
        if (eval_generic(f->left, slots, domain, atom) != universal) {
          result = !universal;
          break;
        }
      }
      slots[f->var] = std::move(saved);
      return result;
    }
  }
  throw std::logic_error("unreachable");
}

template <class Value>
std::vector<Value> bind_env(const Formula& f, const std::map<std::string, Value>& env) {
  std::vector<Value> slots(f.variables.size());
  for (std::size_t s : f.free_vars) {
    auto it = env.find(f.variables[s]);
    if (it == env.end()) throw std::invalid_argument("no value for free variable '" + f.variables[s] + "'");
    slots[s] = it->second;
  }
  return slots;
}

}  // namespace detail

/// Exact evaluation: atoms are equalities of rationals, quantifiers range over `domain`.
inline bool eval_real_slots(const Formula& f, std::vector<Rat>& slots, const std::vector<Rat>& domain) {
  if (f.language != Language::real) throw std::logic_error("eval_real expects an untranslated formula");
  return detail::eval_generic(f.root, slots, domain, [](const FormulaPtr& atom, const std::vector<Rat>& s) {
    return eval_term(atom->lhs_term, s) == eval_term(atom->rhs_term, s);
  });
}

inline bool eval_real(const Formula& f, const HyperParams& p, const std::map<std::string, Rat>& env) {
  auto slots = detail::bind_env(f, env);
  return eval_real_slots(f, slots, real_grid(p));
}

/// Evaluation in R(ω, ε): atoms are ρ, quantifiers range over R_b.
inline bool eval_hyper_slots(const Formula& fh, std::vector<HyperElem>& slots, const std::vector<HyperElem>& domain,
                             const HyperParams& p) {
  if (fh.language != Language::hyper) throw std::logic_error("eval_hyper expects a translated formula");
  return detail::eval_generic(fh.root, slots, domain, [&p](const FormulaPtr& atom, const std::vector<HyperElem>& s) {
    return hyper::rho(eval_term_hyper(atom->lhs_term, s, p), eval_term_hyper(atom->rhs_term, s, p), p);
  });
}

inline bool eval_hyper(const Formula& fh, const HyperParams& p, const std::map<std::string, HyperElem>& env) {
  for (const auto& [name, v] : env)
    if (!hyper::elem_bounded(v, p)) throw std::domain_error("environment value for '" + name + "' is not bounded");
  auto slots = detail::bind_env(fh, env);
  return eval_hyper_slots(fh, slots, hyper::bounded_elements(p), p);
}

}  // namespace hyperlab::fol

#endif  // HYPERLAB_FORMULAS_EVAL_HPP

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

// First-order formulas over the signature <+, ·>, and their analogs over
// <⊕, ⊙; R_b, ρ>. One tree type serves both languages; the Formula wrapper
// records which one a tree belongs to.

#ifndef HYPERLAB_FORMULAS_AST_HPP
#define HYPERLAB_FORMULAS_AST_HPP

#include "hyperlab/hyperarith.hpp"
#include "hyperlab/numbers.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperlab::fol {

using num::Rat;

struct TermNode;
struct FormulaNode;
using TermPtr = std::shared_ptr<const TermNode>;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

struct TermNode {
  enum class Kind { variable, constant, plus, times };

  Kind kind;
  /// Variable slot in the owning Formula's `variables`.
  std::size_t var = 0;
  /// Literal value of a constant.
  Rat constant;
  /// Embedded image of the constant, present only in translated trees.
  std::optional<hyper::HyperElem> embedded;
  TermPtr lhs, rhs;
};

struct FormulaNode {
  enum class Kind { equal, negation, conjunction, disjunction, implication, forall, exists };

  Kind kind;
  TermPtr lhs_term, rhs_term;   // equal
  FormulaPtr left, right;       // connectives; `left` is the body of negation and quantifiers
  std::size_t var = 0;          // quantified slot
};

inline TermPtr make_var(std::size_t slot) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::variable, slot, Rat(), std::nullopt, nullptr, nullptr});
}
inline TermPtr make_const(Rat value) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::constant, 0, std::move(value), std::nullopt, nullptr, nullptr});
}
inline TermPtr make_binary(TermNode::Kind kind, TermPtr a, TermPtr b) {
  return std::make_shared<const TermNode>(TermNode{kind, 0, Rat(), std::nullopt, std::move(a), std::move(b)});
}
inline FormulaPtr make_equal(TermPtr a, TermPtr b) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaNode::Kind::equal, std::move(a), std::move(b), nullptr, nullptr, 0});
}
inline FormulaPtr make_connective(FormulaNode::Kind kind, FormulaPtr a, FormulaPtr b = nullptr) {
  return std::make_shared<const FormulaNode>(FormulaNode{kind, nullptr, nullptr, std::move(a), std::move(b), 0});
}
inline FormulaPtr make_quantifier(FormulaNode::Kind kind, std::size_t slot, FormulaPtr body) {
  return std::make_shared<const FormulaNode>(FormulaNode{kind, nullptr, nullptr, std::move(body), nullptr, slot});
}

enum class Language {
  /// <+, ·>, atoms are equalities, quantifiers range over the reals.
  real,
  /// <⊕, ⊙>, atoms are ρ, quantifiers range over R_b.
  hyper,
};

struct Formula {
  Language language = Language::real;
  FormulaPtr root;
  /// Every variable name used, indexed by slot.
  std::vector<std::string> variables;
  /// Slots of the free variables, in order of first occurrence.
  std::vector<std::size_t> free_vars;

  std::vector<std::string> free_var_names() const {
    std::vector<std::string> out;
    for (std::size_t s : free_vars) out.push_back(variables[s]);
    return out;
  }
};

/// Standalone term with its own variable table.
struct Term {
  TermPtr root;
  std::vector<std::string> variables;
};

// ---------------------------------------------------------------------------
// Structural helpers

inline bool same_term(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermNode::Kind::variable: return a->var == b->var;
    case TermNode::Kind::constant: return a->constant == b->constant && a->embedded == b->embedded;
    default: return same_term(a->lhs, b->lhs) && same_term(a->rhs, b->rhs);
  }
}

inline bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->var != b->var) return false;
  if (a->kind == FormulaNode::Kind::equal) return same_term(a->lhs_term, b->lhs_term) && same_term(a->rhs_term, b->rhs_term);
  return same_formula(a->left, b->left) && same_formula(a->right, b->right);
}

/// Structural equality, including variable names and language.
inline bool operator==(const Formula& a, const Formula& b) {
  return a.language == b.language && a.variables == b.variables && a.free_vars == b.free_vars &&
         same_formula(a.root, b.root);
}

inline std::size_t node_count(const TermPtr& t) {
  if (!t) return 0;
  return 1 + node_count(t->lhs) + node_count(t->rhs);
}

inline std::size_t node_count(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + node_count(f->lhs_term) + node_count(f->rhs_term) + node_count(f->left) + node_count(f->right);
}

inline bool has_constants(const TermPtr& t) {
  if (!t) return false;
  return t->kind == TermNode::Kind::constant || has_constants(t->lhs) || has_constants(t->rhs);
}

inline bool has_constants(const FormulaPtr& f) {
  if (!f) return false;
  return has_constants(f->lhs_term) || has_constants(f->rhs_term) || has_constants(f->left) || has_constants(f->right);
}

/// Quantifier prefix-structure signature, e.g. "A(E(=))".
inline std::string quantifier_shape(const FormulaPtr& f) {
  if (!f) return "";
  switch (f->kind) {
    case FormulaNode::Kind::equal: return "=";
    case FormulaNode::Kind::forall: return "A(" + quantifier_shape(f->left) + ")";
    case FormulaNode::Kind::exists: return "E(" + quantifier_shape(f->left) + ")";
    case FormulaNode::Kind::negation: return "!(" + quantifier_shape(f->left) + ")";
    default: return "(" + quantifier_shape(f->left) + "," + quantifier_shape(f->right) + ")";
  }
}

/// Every term occurring in an atom, left to right.
inline void collect_atom_terms(const FormulaPtr& f, std::vector<TermPtr>& out) {
  if (!f) return;
  if (f->kind == FormulaNode::Kind::equal) {
    out.push_back(f->lhs_term);
    out.push_back(f->rhs_term);
    return;
  }
  collect_atom_terms(f->left, out);
  collect_atom_terms(f->right, out);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string print_term(const TermPtr& t, const std::vector<std::string>& vars, Language lang, int context) {
  // context: 0 = top, 1 = right of plus / operand of times, 2 = right of times
  switch (t->kind) {
    case TermNode::Kind::variable: return vars[t->var];
    case TermNode::Kind::constant:
      if (lang == Language::hyper && t->embedded) return "[" + t->constant.str() + "]";
      return t->constant.str();
    case TermNode::Kind::plus: {
      std::string op = lang == Language::hyper ? " (+) " : " + ";
      std::string s = print_term(t->lhs, vars, lang, 0) + op + print_term(t->rhs, vars, lang, 1);
      return context >= 1 ? "(" + s + ")" : s;
    }
    case TermNode::Kind::times: {
      std::string op = lang == Language::hyper ? " (*) " : " * ";
      std::string s = print_term(t->lhs, vars, lang, 1) + op + print_term(t->rhs, vars, lang, 2);
      return context >= 2 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

// Precedence: 0 quantifier, 1 implication, 2 or, 3 and, 4 not/atom.
inline std::string print_formula(const FormulaPtr& f, const std::vector<std::string>& vars, Language lang, int min_prec) {
  auto wrap = [&](int prec, std::string s) { return prec < min_prec ? "(" + s + ")" : s; };
  const bool h = lang == Language::hyper;
  switch (f->kind) {
    case FormulaNode::Kind::equal:
      return print_term(f->lhs_term, vars, lang, 0) + (h ? " ~ " : " = ") + print_term(f->rhs_term, vars, lang, 0);
    case FormulaNode::Kind::negation: return "not " + print_formula(f->left, vars, lang, 4);
    case FormulaNode::Kind::conjunction:
      return wrap(3, print_formula(f->left, vars, lang, 3) + " and " + print_formula(f->right, vars, lang, 4));
    case FormulaNode::Kind::disjunction:
      return wrap(2, print_formula(f->left, vars, lang, 2) + " or " + print_formula(f->right, vars, lang, 3));
    case FormulaNode::Kind::implication:
      return wrap(1, print_formula(f->left, vars, lang, 2) + " -> " + print_formula(f->right, vars, lang, 1));
    case FormulaNode::Kind::forall:
    case FormulaNode::Kind::exists: {
      std::string q = f->kind == FormulaNode::Kind::forall ? "forall" : "exists";
      if (h) q += "_b";
      return wrap(0, q + " " + vars[f->var] + ". " + print_formula(f->left, vars, lang, 0));
    }
  }
  return "?";
}

}  // namespace detail

/// Prints in the input grammar; translated formulas use (+), (*), ~, forall_b
/// and bracketed embedded constants.
inline std::string to_string(const Formula& f) { return detail::print_formula(f.root, f.variables, f.language, 0); }

inline std::string to_string(const Term& t, Language lang = Language::real) {
  return detail::print_term(t.root, t.variables, lang, 0);
}

}  // namespace hyperlab::fol

#endif  // HYPERLAB_FORMULAS_AST_HPP

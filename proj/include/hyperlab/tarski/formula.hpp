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

// Coded formulas of the ∈-language with hereditarily finite parameters.
//
// Core syntax is =, ∈, ¬, ∨, ∃ in Polish prefix order. Codes:
//
//   =  0      ∈  1      ¬  2      ∨  3      ∃  4
//   variable v_i        5 + 2i
//   parameter x         6 + 2·ac(x)
//
// so ⌈∅ = ∅⌉ is [0, 6, 6]. Text input also accepts and, forall, ->, iff and
// != and desugars them into the core.

#ifndef HYPERLAB_TARSKI_FORMULA_HPP
#define HYPERLAB_TARSKI_FORMULA_HPP

#include "hyperlab/bigint.hpp"
#include "hyperlab/hfset.hpp"
#include "hyperlab/lexer.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlab::tarski {

using hf::HfSet;

struct EpsTerm {
  bool is_var = true;
  std::size_t var = 0;
  HfSet param;

  static EpsTerm variable(std::size_t i) { return EpsTerm{true, i, HfSet{}}; }
  static EpsTerm parameter(HfSet x) { return EpsTerm{false, 0, std::move(x)}; }

  friend bool operator==(const EpsTerm& a, const EpsTerm& b) {
    return a.is_var == b.is_var && (a.is_var ? a.var == b.var : a.param == b.param);
  }
};

struct EpsNode;
using EpsPtr = std::shared_ptr<const EpsNode>;

struct EpsNode {
  enum class Kind { equal, member, negation, disjunction, exists };

  Kind kind;
  EpsTerm lhs, rhs;       // atoms
  EpsPtr left, right;     // `left` is the body of ¬ and ∃
  std::size_t var = 0;    // ∃
};

inline EpsPtr eps_atom(EpsNode::Kind kind, EpsTerm a, EpsTerm b) {
  return std::make_shared<const EpsNode>(EpsNode{kind, std::move(a), std::move(b), nullptr, nullptr, 0});
}
inline EpsPtr eps_equal(EpsTerm a, EpsTerm b) { return eps_atom(EpsNode::Kind::equal, std::move(a), std::move(b)); }
inline EpsPtr eps_member(EpsTerm a, EpsTerm b) { return eps_atom(EpsNode::Kind::member, std::move(a), std::move(b)); }
inline EpsPtr eps_not(EpsPtr f) {
  return std::make_shared<const EpsNode>(EpsNode{EpsNode::Kind::negation, {}, {}, std::move(f), nullptr, 0});
}
inline EpsPtr eps_or(EpsPtr a, EpsPtr b) {
  return std::make_shared<const EpsNode>(EpsNode{EpsNode::Kind::disjunction, {}, {}, std::move(a), std::move(b), 0});
}
inline EpsPtr eps_exists(std::size_t v, EpsPtr body) {
  return std::make_shared<const EpsNode>(EpsNode{EpsNode::Kind::exists, {}, {}, std::move(body), nullptr, v});
}
inline EpsPtr eps_and(EpsPtr a, EpsPtr b) { return eps_not(eps_or(eps_not(std::move(a)), eps_not(std::move(b)))); }
inline EpsPtr eps_forall(std::size_t v, EpsPtr body) { return eps_not(eps_exists(v, eps_not(std::move(body)))); }
inline EpsPtr eps_implies(EpsPtr a, EpsPtr b) { return eps_or(eps_not(std::move(a)), std::move(b)); }
inline EpsPtr eps_iff(const EpsPtr& a, const EpsPtr& b) { return eps_and(eps_implies(a, b), eps_implies(b, a)); }

inline bool same(const EpsPtr& a, const EpsPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case EpsNode::Kind::equal:
    case EpsNode::Kind::member: return a->lhs == b->lhs && a->rhs == b->rhs;
    case EpsNode::Kind::exists: return a->var == b->var && same(a->left, b->left);
    default: return same(a->left, b->left) && same(a->right, b->right);
  }
}

/// Number of codes in the encoding.
inline std::size_t code_length(const EpsPtr& f) {
  switch (f->kind) {
    case EpsNode::Kind::equal:
    case EpsNode::Kind::member: return 3;
    case EpsNode::Kind::negation: return 1 + code_length(f->left);
    case EpsNode::Kind::disjunction: return 1 + code_length(f->left) + code_length(f->right);
    case EpsNode::Kind::exists: return 2 + code_length(f->left);
  }
  return 0;
}

inline std::size_t quantifier_depth(const EpsPtr& f) {
  switch (f->kind) {
    case EpsNode::Kind::equal:
    case EpsNode::Kind::member: return 0;
    case EpsNode::Kind::negation: return quantifier_depth(f->left);
    case EpsNode::Kind::disjunction: return std::max(quantifier_depth(f->left), quantifier_depth(f->right));
    case EpsNode::Kind::exists: return 1 + quantifier_depth(f->left);
  }
  return 0;
}

namespace detail {

inline void collect_free(const EpsPtr& f, std::vector<std::size_t>& bound, std::vector<std::size_t>& out) {
  auto term = [&](const EpsTerm& t) {
    if (t.is_var && std::find(bound.begin(), bound.end(), t.var) == bound.end()) out.push_back(t.var);
  };
  switch (f->kind) {
    case EpsNode::Kind::equal:
    case EpsNode::Kind::member: term(f->lhs); term(f->rhs); return;
    case EpsNode::Kind::exists:
      bound.push_back(f->var);
      collect_free(f->left, bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f->left, bound, out);
      if (f->right) collect_free(f->right, bound, out);
  }
}

inline void collect_params(const EpsPtr& f, std::vector<HfSet>& out) {
  if (f->kind == EpsNode::Kind::equal || f->kind == EpsNode::Kind::member) {
    if (!f->lhs.is_var) out.push_back(f->lhs.param);
    if (!f->rhs.is_var) out.push_back(f->rhs.param);
    return;
  }
  collect_params(f->left, out);
  if (f->right) collect_params(f->right, out);
}

}  // namespace detail

/// Free variable indices, ascending.
inline std::vector<std::size_t> free_variables(const EpsPtr& f) {
  std::vector<std::size_t> bound, out;
  detail::collect_free(f, bound, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_closed(const EpsPtr& f) { return free_variables(f).empty(); }

/// Distinct parameters, in Ackermann order.
inline std::vector<HfSet> parameters(const EpsPtr& f) {
  std::vector<HfSet> out;
  detail::collect_params(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// θ_{v→x}: free occurrences of v replaced by the parameter x.
inline EpsPtr substitute(const EpsPtr& f, std::size_t v, const HfSet& x) {
  switch (f->kind) {
    case EpsNode::Kind::equal:
    case EpsNode::Kind::member: {
      auto sub = [&](const EpsTerm& t) { return t.is_var && t.var == v ? EpsTerm::parameter(x) : t; };
      return eps_atom(f->kind, sub(f->lhs), sub(f->rhs));
    }
    case EpsNode::Kind::exists: return f->var == v ? f : eps_exists(f->var, substitute(f->left, v, x));
    case EpsNode::Kind::negation: return eps_not(substitute(f->left, v, x));
    case EpsNode::Kind::disjunction: return eps_or(substitute(f->left, v, x), substitute(f->right, v, x));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Codes

inline constexpr int kCodeEqual = 0;
inline constexpr int kCodeMember = 1;
inline constexpr int kCodeNot = 2;
inline constexpr int kCodeOr = 3;
inline constexpr int kCodeExists = 4;

struct EpsFormula {
  std::vector<BigInt> codes;
  friend bool operator==(const EpsFormula&, const EpsFormula&) = default;
};

inline BigInt variable_code(std::size_t i) { return BigInt(5) + 2 * BigInt(i); }
inline BigInt parameter_code(const HfSet& x) { return BigInt(6) + 2 * hf::ack_encode(x).value(); }

namespace detail {

inline void encode_into(const EpsPtr& f, std::vector<BigInt>& out) {
  auto term = [&](const EpsTerm& t) { out.push_back(t.is_var ? variable_code(t.var) : parameter_code(t.param)); };
  switch (f->kind) {
    case EpsNode::Kind::equal:
    case EpsNode::Kind::member:
      out.push_back(f->kind == EpsNode::Kind::equal ? kCodeEqual : kCodeMember);
      term(f->lhs);
      term(f->rhs);
      return;
    case EpsNode::Kind::negation:
      out.push_back(kCodeNot);
      encode_into(f->left, out);
      return;
    case EpsNode::Kind::disjunction:
      out.push_back(kCodeOr);
      encode_into(f->left, out);
      encode_into(f->right, out);
      return;
    case EpsNode::Kind::exists:
      out.push_back(kCodeExists);
      out.push_back(variable_code(f->var));
      encode_into(f->left, out);
      return;
  }
}

class CodeReader {
 public:
  explicit CodeReader(const std::vector<BigInt>& codes) : codes_(codes) {}

  EpsPtr formula() {
    const BigInt& c = take("formula");
    if (c == kCodeEqual || c == kCodeMember) {
      EpsTerm a = term(), b = term();
      return eps_atom(c == kCodeEqual ? EpsNode::Kind::equal : EpsNode::Kind::member, std::move(a), std::move(b));
    }
    if (c == kCodeNot) return eps_not(formula());
    if (c == kCodeOr) {
      EpsPtr a = formula();
      return eps_or(std::move(a), formula());
    }
    if (c == kCodeExists) {
      EpsTerm v = term();
      if (!v.is_var) fail("quantifier over a parameter", pos_ - 1);
      return eps_exists(v.var, formula());
    }
    fail("expected a connective or atom code, found " + c.str(), pos_ - 1);
  }

  bool done() const { return pos_ == codes_.size(); }
  std::size_t position() const { return pos_; }

  [[noreturn]] static void fail(const std::string& what, std::size_t at) {
    throw std::invalid_argument("malformed code sequence: " + what + " at index " + std::to_string(at));
  }

 private:
  const BigInt& take(const char* expected) {
    if (pos_ >= codes_.size()) fail(std::string("expected ") + expected + ", found end", pos_);
    return codes_[pos_++];
  }

  EpsTerm term() {
    const BigInt& c = take("term");
    if (c < 5) fail("expected a term code, found " + c.str(), pos_ - 1);
    BigInt rest = c - 5;
    if (rest % 2 == 0) {
      const BigInt index = rest / 2;
      if (index > std::numeric_limits<std::uint32_t>::max()) fail("variable index too large", pos_ - 1);
      return EpsTerm::variable(index.convert_to<std::size_t>());
    }
    return EpsTerm::parameter(hf::ack_decode(hf::AckCode((c - 6) / 2)));
  }

  const std::vector<BigInt>& codes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline EpsFormula encode(const EpsPtr& f) {
  EpsFormula out;
  detail::encode_into(f, out.codes);
  return out;
}

/// Inverse of encode. Throws std::invalid_argument on a malformed sequence.
inline EpsPtr decode(const EpsFormula& f) {
  detail::CodeReader reader(f.codes);
  EpsPtr out = reader.formula();
  if (!reader.done()) detail::CodeReader::fail("trailing codes", reader.position());
  return out;
}

// ---------------------------------------------------------------------------
// Text

namespace detail {

inline std::string print_term(const EpsTerm& t) { return t.is_var ? "v" + std::to_string(t.var) : hf::to_string(t.param); }

// Precedence: 0 quantifier, 1 or, 2 not/atom.
inline std::string print_eps(const EpsPtr& f, int min_prec) {
  switch (f->kind) {
    case EpsNode::Kind::equal: return print_term(f->lhs) + " = " + print_term(f->rhs);
    case EpsNode::Kind::member: return print_term(f->lhs) + " in " + print_term(f->rhs);
    case EpsNode::Kind::negation: return "not " + print_eps(f->left, 2);
    case EpsNode::Kind::disjunction: {
      std::string s = print_eps(f->left, 1) + " or " + print_eps(f->right, 2);
      return min_prec > 1 ? "(" + s + ")" : s;
    }
    case EpsNode::Kind::exists: {
      std::string s = "exists v" + std::to_string(f->var) + ". " + print_eps(f->left, 0);
      return min_prec > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

inline bool is_eps_keyword(std::string_view s) {
  return s == "forall" || s == "exists" || s == "not" || s == "and" || s == "or" || s == "implies" || s == "iff" ||
         s == "in";
}

// formula := quantified | disj [("->" | "implies" | "iff") formula]
// disj := conj {"or" conj};  conj := lit {"and" lit}
// lit := "not" lit | quantified | "(" formula ")" | term ("=" | "!=" | "in") term
// term := ident | set;  set := "{" [set {"," set}] "}"
class EpsParser {
 public:
  explicit EpsParser(std::string_view text) : tokens_(tokenize(text)) {}

  EpsPtr parse() {
    EpsPtr f = formula();
    if (!tokens_.at_end()) throw SyntaxError("unexpected " + tokens_.peek().describe(), tokens_.peek().pos);
    return f;
  }

  std::vector<std::string> variable_names() const { return names_; }

 private:
  EpsPtr formula() {
    if (tokens_.peek().is("forall") || tokens_.peek().is("exists")) return quantified();
    EpsPtr lhs = disjunction();
    if (tokens_.accept("->") || tokens_.accept("implies")) return eps_implies(std::move(lhs), formula());
    if (tokens_.accept("iff")) return eps_iff(lhs, formula());
    return lhs;
  }

  EpsPtr quantified() {
    const bool universal = tokens_.next().is("forall");
    const Token& name = tokens_.next();
    if (name.kind != Token::Kind::ident || is_eps_keyword(name.text))
      throw SyntaxError("expected variable after quantifier but found " + name.describe(), name.pos);
    tokens_.expect(".");
    const std::size_t v = index(name.text);
    EpsPtr body = formula();
    return universal ? eps_forall(v, std::move(body)) : eps_exists(v, std::move(body));
  }

  EpsPtr disjunction() {
    EpsPtr f = conjunction();
    while (tokens_.accept("or")) f = eps_or(std::move(f), conjunction());
    return f;
  }

  EpsPtr conjunction() {
    EpsPtr f = literal();
    while (tokens_.accept("and")) f = eps_and(std::move(f), literal());
    return f;
  }

  EpsPtr literal() {
    if (tokens_.accept("not")) return eps_not(literal());
    if (tokens_.peek().is("forall") || tokens_.peek().is("exists")) return quantified();
    if (tokens_.accept("(")) {
      EpsPtr f = formula();
      tokens_.expect(")");
      return f;
    }
    EpsTerm a = term();
    if (tokens_.accept("=")) return eps_equal(std::move(a), term());
    if (tokens_.accept("!=")) return eps_not(eps_equal(std::move(a), term()));
    if (tokens_.accept("in")) return eps_member(std::move(a), term());
    throw SyntaxError("expected '=', '!=' or 'in' but found " + tokens_.peek().describe(), tokens_.peek().pos);
  }

  EpsTerm term() {
    const Token& tok = tokens_.peek();
    if (tok.is("{")) return EpsTerm::parameter(set());
    if (tok.kind == Token::Kind::ident && !is_eps_keyword(tok.text)) {
      tokens_.next();
      return EpsTerm::variable(index(tok.text));
    }
    throw SyntaxError("expected variable or set literal but found " + tok.describe(), tok.pos);
  }

  HfSet set() {
    tokens_.expect("{");
    std::vector<HfSet> elements;
    if (!tokens_.accept("}")) {
      do elements.push_back(set());
      while (tokens_.accept(","));
      tokens_.expect("}");
    }
    return HfSet::from_elements(std::move(elements));
  }

  std::size_t index(const std::string& name) {
    auto [it, inserted] = indices_.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }

  TokenStream tokens_;
  std::map<std::string, std::size_t> indices_;
  std::vector<std::string> names_;
};

}  // namespace detail

/// Variables are numbered by first appearance: the first name becomes v0.
inline EpsPtr parse_eps(std::string_view text) { return detail::EpsParser(text).parse(); }

/// Prints core syntax with variables named v0, v1, ...; parse_eps inverts it.
inline std::string to_string(const EpsPtr& f) { return detail::print_eps(f, 0); }

// ---------------------------------------------------------------------------
// Random formulas

struct RandomFormulaSpec {
  /// Maximum nesting of connectives and quantifiers above an atom.
  std::size_t max_depth = 4;
  /// Variables are drawn from v0 .. v{variables-1}.
  std::size_t variables = 2;
  /// Free variables allowed to remain (v0 first); 0 gives closed formulas.
  std::size_t free = 0;
};

namespace detail {

inline EpsPtr random_eps(std::mt19937_64& rng, const std::vector<HfSet>& params, const RandomFormulaSpec& spec,
                         std::vector<std::size_t>& in_scope, std::size_t depth) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::size_t terms = in_scope.size() + params.size();
  // Without terms only a quantifier can make progress.
  const bool need_quantifier = terms == 0;
  const std::size_t choice = need_quantifier ? 3 : depth == 0 ? 0 : pick(4);
  if (choice == 0) {
    auto term = [&] {
      std::size_t i = pick(terms);
      return i < in_scope.size() ? EpsTerm::variable(in_scope[i]) : EpsTerm::parameter(params[i - in_scope.size()]);
    };
    EpsTerm a = term(), b = term();
    return pick(2) == 0 ? eps_equal(std::move(a), std::move(b)) : eps_member(std::move(a), std::move(b));
  }
  const std::size_t next = depth == 0 ? 0 : depth - 1;
  if (choice == 1) return eps_not(random_eps(rng, params, spec, in_scope, next));
  if (choice == 2) {
    EpsPtr a = random_eps(rng, params, spec, in_scope, next);
    return eps_or(std::move(a), random_eps(rng, params, spec, in_scope, next));
  }
  const std::size_t v = pick(spec.variables);
  const bool fresh = std::find(in_scope.begin(), in_scope.end(), v) == in_scope.end();
  if (fresh) in_scope.push_back(v);
  EpsPtr body = random_eps(rng, params, spec, in_scope, next);
  if (fresh) in_scope.pop_back();
  return eps_exists(v, std::move(body));
}

}  // namespace detail

/// A random formula over `params`; closed unless spec.free > 0.
inline EpsPtr random_formula(std::mt19937_64& rng, const std::vector<HfSet>& params, const RandomFormulaSpec& spec = {}) {
  if (spec.variables == 0 || spec.free > spec.variables) throw std::invalid_argument("random_formula: bad variable counts");
  std::vector<std::size_t> in_scope;
  for (std::size_t v = 0; v < spec.free; ++v) in_scope.push_back(v);
  return detail::random_eps(rng, params, spec, in_scope, spec.max_depth);
}

}  // namespace hyperlab::tarski

#endif  // HYPERLAB_TARSKI_FORMULA_HPP

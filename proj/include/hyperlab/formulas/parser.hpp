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

// Recursive-descent parser for
//
//   formula    := quantified | implication
//   quantified := ("forall" | "exists") ident "." formula
//   implication:= disj [("->" | "implies") formula]
//   disj       := conj {"or" conj}
//   conj       := lit {"and" lit}
//   lit        := "not" lit | quantified | atom | "(" formula ")"
//   atom       := term "=" term
//   term       := factor {"+" factor}
//   factor     := prim {"*" prim}
//   prim       := ident | rational | "(" term ")"
//   rational   := digits ["/" digits]
//
// A parenthesis at the start of a literal is tried as a term first, then as a
// parenthesized formula; the error reported is the one that got further.

#ifndef HYPERLAB_FORMULAS_PARSER_HPP
#define HYPERLAB_FORMULAS_PARSER_HPP

#include "hyperlab/formulas/ast.hpp"
#include "hyperlab/lexer.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlab::fol {

namespace detail {

inline bool is_keyword(std::string_view s) {
  return s == "forall" || s == "exists" || s == "not" || s == "and" || s == "or" || s == "implies" || s == "in";
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, std::optional<std::vector<std::string>> declared)
      : tokens_(tokenize(text)), strict_(declared.has_value()) {
    if (declared) {
      for (const std::string& name : *declared) {
        std::size_t s = slot(name);
        if (std::find(free_.begin(), free_.end(), s) == free_.end()) free_.push_back(s);
      }
    }
  }

  Formula parse_formula_text() {
    FormulaPtr root = formula();
    if (!tokens_.at_end()) throw SyntaxError("unexpected " + tokens_.peek().describe(), tokens_.peek().pos);
    return Formula{Language::real, std::move(root), std::move(variables_), std::move(free_)};
  }

  Term parse_term_text() {
    TermPtr root = term();
    if (!tokens_.at_end()) throw SyntaxError("unexpected " + tokens_.peek().describe(), tokens_.peek().pos);
    return Term{std::move(root), std::move(variables_)};
  }

 private:
  FormulaPtr formula() {
    if (tokens_.peek().is("forall") || tokens_.peek().is("exists")) return quantified();
    return implication();
  }

  FormulaPtr quantified() {
    const bool universal = tokens_.next().is("forall");
    const Token& name = tokens_.next();
    if (name.kind != Token::Kind::ident || is_keyword(name.text))
      throw SyntaxError("expected variable after quantifier but found " + name.describe(), name.pos);
    tokens_.expect(".");
    const std::size_t s = slot(name.text);
    bound_.push_back(s);
    FormulaPtr body = formula();
    bound_.pop_back();
    return make_quantifier(universal ? FormulaNode::Kind::forall : FormulaNode::Kind::exists, s, std::move(body));
  }

  FormulaPtr implication() {
    FormulaPtr lhs = disjunction();
    if (tokens_.accept("->") || tokens_.accept("implies"))
      return make_connective(FormulaNode::Kind::implication, std::move(lhs), formula());
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (tokens_.accept("or")) f = make_connective(FormulaNode::Kind::disjunction, std::move(f), conjunction());
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = literal();
    while (tokens_.accept("and")) f = make_connective(FormulaNode::Kind::conjunction, std::move(f), literal());
    return f;
  }

  FormulaPtr literal() {
    if (tokens_.accept("not")) return make_connective(FormulaNode::Kind::negation, literal());
    if (tokens_.peek().is("forall") || tokens_.peek().is("exists")) return quantified();
    if (!tokens_.peek().is("(")) return atom();

    const std::size_t mark = tokens_.mark();
    const std::size_t vars_mark = variables_.size();
    const std::size_t free_mark = free_.size();
    try {
      return atom();
    } catch (const SyntaxError& as_atom) {
      tokens_.reset(mark);
      variables_.resize(vars_mark);
      for (auto it = slots_.begin(); it != slots_.end();) it = it->second >= vars_mark ? slots_.erase(it) : std::next(it);
      free_.resize(free_mark);
      try {
        tokens_.expect("(");
        FormulaPtr f = formula();
        tokens_.expect(")");
        return f;
      } catch (const SyntaxError& as_formula) {
        if (as_atom.position() >= as_formula.position()) throw as_atom;
        throw;
      }
    }
  }

  FormulaPtr atom() {
    TermPtr lhs = term();
    tokens_.expect("=");
    return make_equal(std::move(lhs), term());
  }

  TermPtr term() {
    TermPtr t = factor();
    while (tokens_.accept("+")) t = make_binary(TermNode::Kind::plus, std::move(t), factor());
    return t;
  }

  TermPtr factor() {
    TermPtr t = prim();
    while (tokens_.accept("*")) t = make_binary(TermNode::Kind::times, std::move(t), prim());
    return t;
  }

  TermPtr prim() {
    const Token& tok = tokens_.peek();
    if (tok.is("(")) {
      tokens_.next();
      TermPtr t = term();
      tokens_.expect(")");
      return t;
    }
    if (tok.kind == Token::Kind::number) {
      tokens_.next();
      BigInt num = parse_bigint(tok.text);
      if (tokens_.accept("/")) {
        const Token& den = tokens_.next();
        if (den.kind != Token::Kind::number) throw SyntaxError("expected denominator but found " + den.describe(), den.pos);
        BigInt d = parse_bigint(den.text);
        if (d == 0) throw SyntaxError("zero denominator", den.pos);
        return make_const(Rat(num, d));
      }
      return make_const(Rat(num));
    }
    if (tok.kind == Token::Kind::ident && !is_keyword(tok.text)) {
      tokens_.next();
      return make_var(reference(tok));
    }
    throw SyntaxError("expected term but found " + tok.describe(), tok.pos);
  }

  std::size_t slot(const std::string& name) {
    auto [it, inserted] = slots_.try_emplace(name, variables_.size());
    if (inserted) variables_.push_back(name);
    return it->second;
  }

  std::size_t reference(const Token& tok) {
    auto known = slots_.find(tok.text);
    if (known != slots_.end() && std::find(bound_.begin(), bound_.end(), known->second) != bound_.end())
      return known->second;
    if (known != slots_.end() && std::find(free_.begin(), free_.end(), known->second) != free_.end())
      return known->second;
    if (strict_) throw SyntaxError("unbound variable '" + tok.text + "'", tok.pos);
    std::size_t s = slot(tok.text);
    free_.push_back(s);
    return s;
  }

  TokenStream tokens_;
  bool strict_;
  std::map<std::string, std::size_t> slots_;
  std::vector<std::string> variables_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> bound_;
};

}  // namespace detail

/// Parses a formula whose free variables must all appear in `free_vars`.
inline Formula parse_formula(std::string_view text, std::vector<std::string> free_vars) {
  return detail::FormulaParser(text, std::move(free_vars)).parse_formula_text();
}

/// Parses a formula; free variables are collected in order of first occurrence.
inline Formula parse_formula(std::string_view text) {
  return detail::FormulaParser(text, std::nullopt).parse_formula_text();
}

inline Term parse_term(std::string_view text) { return detail::FormulaParser(text, std::nullopt).parse_term_text(); }

// ---------------------------------------------------------------------------
// Corpus files: one `name : formula-text` per line; blank lines and lines
// starting with '#' are skipped.

struct CorpusEntry {
  std::string name;
  std::string text;
  Formula formula;
};

inline std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("corpus line " + std::to_string(line_no) + ": expected 'name : formula'");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    std::string name = trim(line.substr(0, colon));
    std::string text = trim(line.substr(colon + 1));
    if (name.empty()) throw std::invalid_argument("corpus line " + std::to_string(line_no) + ": empty name");
    try {
      Formula f = parse_formula(text);
      out.push_back({std::move(name), std::move(text), std::move(f)});
    } catch (const SyntaxError& e) {
      throw std::invalid_argument("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file '" + path + "'");
  return parse_corpus(in);
}

}  // namespace hyperlab::fol

#endif  // HYPERLAB_FORMULAS_PARSER_HPP

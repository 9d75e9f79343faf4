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

// Arithmetic expressions evaluated in R(ω, ε):
//
//   expr   := term {("+" | "-") term}
//   term   := unary {"*" unary}
//   unary  := "-" unary | prim
//   prim   := rational | "(" expr ")"
//
// + is ⊕, * is ⊙ and a - b is a ⊕ (-b). Rational literals are mapped to the
// nearest element; with `strict_bounded` an unbounded literal is an error.

#ifndef HYPERLAB_HYPEREXPR_HPP
#define HYPERLAB_HYPEREXPR_HPP

#include "hyperlab/hyperarith.hpp"
#include "hyperlab/lexer.hpp"

#include <string_view>

namespace hyperlab::hyper {

namespace detail {

class ExprEvaluator {
 public:
  ExprEvaluator(std::string_view text, const HyperParams& p, bool strict) : tokens_(tokenize(text)), p_(p), strict_(strict) {}

  HyperElem run() {
    HyperElem v = expr();
    if (!tokens_.at_end()) throw SyntaxError("unexpected " + tokens_.peek().describe(), tokens_.peek().pos);
    return v;
  }

 private:
  HyperElem expr() {
    HyperElem v = term();
    for (;;) {
      if (tokens_.accept("+")) v = hadd(v, term(), p_);
      else if (tokens_.accept("-")) v = hadd(v, hneg(term(), p_), p_);
      else return v;
    }
  }

  HyperElem term() {
    HyperElem v = unary();
    while (tokens_.accept("*")) v = hmul(v, unary(), p_);
    return v;
  }

  HyperElem unary() {
    if (tokens_.accept("-")) return hneg(unary(), p_);
    return prim();
  }

  HyperElem prim() {
    const Token tok = tokens_.peek();
    if (tokens_.accept("(")) {
      HyperElem v = expr();
      tokens_.expect(")");
      return v;
    }
    if (tok.kind != Token::Kind::number) throw SyntaxError("expected a number but found " + tok.describe(), tok.pos);
    tokens_.next();
    Rat q(parse_bigint(tok.text));
    if (tokens_.accept("/")) {
      const Token den = tokens_.next();
      if (den.kind != Token::Kind::number) throw SyntaxError("expected denominator but found " + den.describe(), den.pos);
      if (parse_bigint(den.text) == 0) throw SyntaxError("zero denominator", den.pos);
      q = Rat(q.num(), parse_bigint(den.text));
    }
    if (strict_) return embed(q, p_);
    return nearest_element(q, p_);
  }

  TokenStream tokens_;
  const HyperParams& p_;
  bool strict_;
};

}  // namespace detail

/// Throws SyntaxError, std::domain_error (unbounded literal when strict) or
/// std::out_of_range (literal outside r).
inline HyperElem evaluate_expression(std::string_view text, const HyperParams& p, bool strict_bounded = false) {
  return detail::ExprEvaluator(text, p, strict_bounded).run();
}

}  // namespace hyperlab::hyper

#endif  // HYPERLAB_HYPEREXPR_HPP

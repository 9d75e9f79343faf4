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

#ifndef HYPERLAB_LEXER_HPP
#define HYPERLAB_LEXER_HPP

#include "hyperlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlab {

struct Token {
  enum class Kind { ident, number, symbol, end };
  Kind kind;
  std::string text;
  std::size_t pos;

  bool is(std::string_view s) const { return kind != Kind::end && text == s; }
  std::string describe() const { return kind == Kind::end ? "end of input" : "'" + text + "'"; }
};

/// Splits text into identifiers, digit runs and punctuation. "->" and "!=" are
/// single symbols; every other punctuation character stands alone.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = text[i];
    if (std::isspace(c)) {
      ++i;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::ident, std::string(text.substr(i, j - i)), i});
      i = j;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::number, std::string(text.substr(i, j - i)), i});
      i = j;
    } else if (text.substr(i, 2) == "->" || text.substr(i, 2) == "!=") {
      out.push_back({Token::Kind::symbol, std::string(text.substr(i, 2)), i});
      i += 2;
    } else if (std::string_view("+-*=().,/{}~").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Kind::symbol, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
    }
  }
  out.push_back({Token::Kind::end, "", text.size()});
  return out;
}

/// Cursor over a token vector with backtracking by position.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (index_ < tokens_.size() - 1) ++index_;
    return t;
  }
  bool accept(std::string_view s) {
    if (!peek().is(s)) return false;
    next();
    return true;
  }
  const Token& expect(std::string_view s) {
    if (!peek().is(s)) throw SyntaxError("expected '" + std::string(s) + "' but found " + peek().describe(), peek().pos);
    return next();
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }

  std::size_t mark() const { return index_; }
  void reset(std::size_t m) { index_ = m; }

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace hyperlab

#endif  // HYPERLAB_LEXER_HPP

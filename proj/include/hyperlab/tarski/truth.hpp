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

// Satisfaction of coded formulas in finite classes of hereditarily finite sets.
//
// truth() follows the five defining clauses top-down, memoizing each closed
// instance θ_{v→x} it meets. truth_bottom_up() instead tabulates every
// subformula over all assignments to its free variables.

#ifndef HYPERLAB_TARSKI_TRUTH_HPP
#define HYPERLAB_TARSKI_TRUTH_HPP

#include "hyperlab/errors.hpp"
#include "hyperlab/tarski/formula.hpp"

#include <fstream>
#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperlab::tarski {

/// A finite class X of hereditarily finite sets, membership inherited.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  explicit FiniteStructure(std::vector<HfSet> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  }

  /// Elements in Ackermann order.
  const std::vector<HfSet>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const HfSet& x) const { return index_.count(x) != 0; }
  /// Position in elements(), or size() when absent.
  std::size_t index_of(const HfSet& x) const {
    auto it = index_.find(x);
    return it == index_.end() ? elements_.size() : it->second;
  }
  bool subset_of(const FiniteStructure& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](const HfSet& x) { return other.contains(x); });
  }

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<HfSet> elements_;
  std::unordered_map<HfSet, std::size_t> index_;
};

/// {x : ac(x) < bound}.
class BoundedUniverse {
 public:
  explicit BoundedUniverse(std::uint64_t bound) : bound_(bound) {
    if (bound < 1) throw std::invalid_argument("universe bound must be >= 1");
    std::vector<HfSet> elements;
    elements.reserve(bound);
    for (std::uint64_t c = 0; c < bound; ++c) elements.push_back(hf::ack_decode(hf::AckCode(c)));
    structure_ = FiniteStructure(std::move(elements));
  }

  std::uint64_t bound() const noexcept { return bound_; }
  const FiniteStructure& structure() const noexcept { return structure_; }

 private:
  std::uint64_t bound_;
  FiniteStructure structure_;
};

/// One HfSet literal per line; blank lines and '#' comments are skipped.
inline FiniteStructure parse_structure(std::istream& in) {
  std::vector<HfSet> elements;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      elements.push_back(hf::parse_hfset(line));
    } catch (const SyntaxError& e) {
      throw std::invalid_argument("structure line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return FiniteStructure(std::move(elements));
}

inline FiniteStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open structure file '" + path + "'");
  return parse_structure(in);
}

namespace detail {

inline void require_sentence_over(const FiniteStructure& x, const EpsPtr& f) {
  auto free = free_variables(f);
  if (!free.empty()) throw std::invalid_argument("truth: formula is open (free variable v" + std::to_string(free[0]) + ")");
  for (const HfSet& p : parameters(f))
    if (!x.contains(p)) throw std::invalid_argument("truth: parameter " + hf::to_string(p) + " is not in the structure");
}

// Subformulas with stable ids and their free variables.
struct Subformulas {
  std::vector<const EpsNode*> nodes;                 // post-order
  std::unordered_map<const EpsNode*, std::size_t> id;
  std::vector<std::vector<std::size_t>> free;        // by id, ascending

  explicit Subformulas(const EpsPtr& root) { visit(root); }

  void visit(const EpsPtr& f) {
    if (f->left) visit(f->left);
    if (f->right) visit(f->right);
    if (id.count(f.get())) return;
    id.emplace(f.get(), nodes.size());
    nodes.push_back(f.get());
    free.push_back(free_variables(EpsPtr(EpsPtr{}, f.get())));
  }
};

class TopDown {
 public:
  TopDown(const FiniteStructure& x, const EpsPtr& root) : x_(x), subs_(root), memo_(subs_.nodes.size()) {}

  // env maps variable index to element index; only free variables are read.
  bool eval(const EpsNode* f, std::vector<std::size_t>& env) {
    switch (f->kind) {
      case EpsNode::Kind::equal: return value(f->lhs, env) == value(f->rhs, env);
      case EpsNode::Kind::member: return value(f->rhs, env).contains(value(f->lhs, env));
      case EpsNode::Kind::negation: return !eval(f->left.get(), env);
      case EpsNode::Kind::disjunction: return eval(f->left.get(), env) || eval(f->right.get(), env);
      case EpsNode::Kind::exists: {
        const std::size_t sid = subs_.id.at(f);
        std::string key = instance_key(sid, env);
        auto& table = memo_[sid];
        if (auto it = table.find(key); it != table.end()) return it->second;
        if (env.size() <= f->var) env.resize(f->var + 1, kUnset);
        const std::size_t saved = env[f->var];
        bool result = false;
        for (std::size_t i = 0; i < x_.size() && !result; ++i) {
          env[f->var] = i;
          result = eval(f->left.get(), env);
        }
        env[f->var] = saved;
        table.emplace(std::move(key), result);
        return result;
      }
    }
    throw std::logic_error("unreachable");
  }

  std::size_t memo_entries() const {
    std::size_t n = 0;
    for (const auto& t : memo_) n += t.size();
    return n;
  }

  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

 private:
  const HfSet& value(const EpsTerm& t, const std::vector<std::size_t>& env) const {
    return t.is_var ? x_.elements()[env.at(t.var)] : t.param;
  }

  // Identifies θ_{v→x}: the subformula plus the elements substituted for its free variables.
  std::string instance_key(std::size_t sid, const std::vector<std::size_t>& env) const {
    std::string key;
    for (std::size_t v : subs_.free[sid]) {
      const std::uint32_t e = static_cast<std::uint32_t>(env.at(v));
      key.append(reinterpret_cast<const char*>(&e), sizeof e);
    }
    return key;
  }

  const FiniteStructure& x_;
  Subformulas subs_;
  std::vector<std::unordered_map<std::string, bool>> memo_;
};

}  // namespace detail

/// Membership of the closed formula θ in True(X). Throws std::invalid_argument
/// for an open formula or a parameter outside X.
inline bool truth(const FiniteStructure& x, const EpsPtr& theta) {
  detail::require_sentence_over(x, theta);
  detail::TopDown td(x, theta);
  std::vector<std::size_t> env;
  return td.eval(theta.get(), env);
}

inline bool truth(const FiniteStructure& x, const EpsFormula& theta) { return truth(x, decode(theta)); }

/// Truth of θ(y) with its single free variable bound to the element at `index`.
/// Used for extensions; skips the closedness check for that variable.
inline std::vector<bool> extension_mask(const FiniteStructure& x, const EpsPtr& theta) {
  auto free = free_variables(theta);
  if (free.size() != 1) throw std::invalid_argument("extension: formula must have exactly one free variable");
  for (const HfSet& p : parameters(theta))
    if (!x.contains(p)) throw std::invalid_argument("extension: parameter " + hf::to_string(p) + " is not in the structure");
  detail::TopDown td(x, theta);
  std::vector<std::size_t> env(free[0] + 1, detail::TopDown::kUnset);
  std::vector<bool> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    env[free[0]] = i;
    out[i] = td.eval(theta.get(), env);
  }
  return out;
}

/// {y ∈ X : X ⊨ θ(y)} as an HfSet.
inline HfSet extension(const FiniteStructure& x, const EpsPtr& theta) {
  auto mask = extension_mask(x, theta);
  std::vector<HfSet> members;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) members.push_back(x.elements()[i]);
  return HfSet::from_elements(std::move(members));
}

// ---------------------------------------------------------------------------
// Bottom-up strategy

struct BottomUpLimits {
  /// Largest table (|X|^free-count entries) built for one subformula.
  std::uint64_t max_table = std::uint64_t{1} << 24;
};

/// Same relation as truth(), computed by tabulating every subformula of θ over
/// all assignments of its free variables, leaves first.
inline bool truth_bottom_up(const FiniteStructure& x, const EpsPtr& theta, const BottomUpLimits& limits = {}) {
  detail::require_sentence_over(x, theta);
  detail::Subformulas subs(theta);
  const std::size_t n = x.size();
  std::vector<std::vector<char>> tables(subs.nodes.size());

  auto table_size = [&](std::size_t arity) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (n != 0 && size > limits.max_table / n) throw ResourceLimit("truth_bottom_up: table exceeds limit");
      size *= n;
    }
    return size;
  };
  // Mixed-radix index of an assignment restricted to `vars`.
  auto index_of = [&](const std::vector<std::size_t>& vars, const std::vector<std::size_t>& assignment_vars,
                      const std::vector<std::size_t>& assignment) {
    std::uint64_t idx = 0;
    for (std::size_t v : vars) {
      const auto pos = std::find(assignment_vars.begin(), assignment_vars.end(), v) - assignment_vars.begin();
      idx = idx * n + assignment[pos];
    }
    return idx;
  };

  for (std::size_t sid = 0; sid < subs.nodes.size(); ++sid) {
    const EpsNode* f = subs.nodes[sid];
    const auto& vars = subs.free[sid];
    const std::uint64_t size = table_size(vars.size());
    std::vector<char> table(size);
    std::vector<std::size_t> assignment(vars.size(), 0);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t i = vars.size(); i-- > 0;) {
        assignment[i] = rest % n;
        rest /= n;
      }
      auto term_value = [&](const EpsTerm& t) -> const HfSet& {
        if (!t.is_var) return t.param;
        return x.elements()[assignment[std::find(vars.begin(), vars.end(), t.var) - vars.begin()]];
      };
      auto child = [&](const EpsPtr& c, const std::vector<std::size_t>& a_vars, const std::vector<std::size_t>& a) {
        const std::size_t cid = subs.id.at(c.get());
        return tables[cid][index_of(subs.free[cid], a_vars, a)] != 0;
      };
      bool value = false;
      switch (f->kind) {
        case EpsNode::Kind::equal: value = term_value(f->lhs) == term_value(f->rhs); break;
        case EpsNode::Kind::member: value = term_value(f->rhs).contains(term_value(f->lhs)); break;
        case EpsNode::Kind::negation: value = !child(f->left, vars, assignment); break;
        case EpsNode::Kind::disjunction: value = child(f->left, vars, assignment) || child(f->right, vars, assignment); break;
        case EpsNode::Kind::exists: {
          std::vector<std::size_t> inner_vars = vars, inner = assignment;
          inner_vars.push_back(f->var);
          inner.push_back(0);
          for (std::size_t e = 0; e < n && !value; ++e) {
            inner.back() = e;
            value = child(f->left, inner_vars, inner);
          }
          break;
        }
      }
      table[idx] = value;
    }
    tables[sid] = std::move(table);
  }
  return tables[subs.id.at(theta.get())][0] != 0;
}

}  // namespace hyperlab::tarski

#endif  // HYPERLAB_TARSKI_TRUTH_HPP

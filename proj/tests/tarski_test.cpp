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

#include "hyperlab/tarski/definability.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace hyperlab::hf {
void PrintTo(const HfSet& x, std::ostream* os) { *os << to_string(x); }
}  // namespace hyperlab::hf

namespace hyperlab::tarski {
namespace {

HfSet set_of(std::uint64_t code) { return hf::ack_decode(hf::AckCode(code)); }

FiniteStructure structure_of(std::initializer_list<std::uint64_t> codes) {
  std::vector<HfSet> e;
  for (auto c : codes) e.push_back(set_of(c));
  return FiniteStructure(std::move(e));
}

// Plain recursive Tarski evaluation with an explicit environment, no memo and
// no substitution.
bool naive_eval(const EpsNode& f, const std::vector<HfSet>& domain, std::map<std::size_t, HfSet>& env) {
  auto val = [&](const EpsTerm& t) { return t.is_var ? env.at(t.var) : t.param; };
  switch (f.kind) {
    case EpsNode::Kind::equal: return val(f.lhs) == val(f.rhs);
    case EpsNode::Kind::member: {
      const HfSet container = val(f.rhs), member = val(f.lhs);
      for (const HfSet& e : container.elements())
        if (e == member) return true;
      return false;
    }
    case EpsNode::Kind::negation: return !naive_eval(*f.left, domain, env);
    case EpsNode::Kind::disjunction: return naive_eval(*f.left, domain, env) || naive_eval(*f.right, domain, env);
    case EpsNode::Kind::exists: {
      auto saved = env.find(f.var) == env.end() ? std::optional<HfSet>() : std::optional<HfSet>(env.at(f.var));
      bool found = false;
      for (const HfSet& x : domain) {
        env[f.var] = x;
        if (naive_eval(*f.left, domain, env)) {
          found = true;
          break;
        }
      }
      if (saved) env[f.var] = *saved; else env.erase(f.var);
      return found;
    }
  }
  return false;
}

bool naive_truth(const FiniteStructure& x, const EpsPtr& f) {
  std::map<std::size_t, HfSet> env;
  return naive_eval(*f, x.elements(), env);
}

TEST(Codes, SmallestAtom) {
  EpsPtr f = eps_equal(EpsTerm::parameter(HfSet{}), EpsTerm::parameter(HfSet{}));
  EXPECT_EQ(encode(f).codes, (std::vector<BigInt>{0, 6, 6}));
}

TEST(Codes, RoundTripAndText) {
  EpsPtr f = eps_exists(0, eps_member(EpsTerm::variable(0), EpsTerm::parameter(set_of(1))));
  EpsFormula code = encode(f);
  EXPECT_EQ(code.codes, (std::vector<BigInt>{4, 5, 1, 5, 8}));
  EXPECT_TRUE(same(decode(code), f));
  EXPECT_TRUE(same(parse_eps("exists v. v in {{}}"), f));
  EXPECT_EQ(to_string(f), "exists v0. v0 in {{}}");
}

TEST(Codes, GarbageIsRejected) {
  for (std::vector<BigInt> codes : std::vector<std::vector<BigInt>>{
           {}, {7}, {0, 5}, {0, 5, 5, 5}, {4, 6, 0, 5, 5}, {3, 0, 5, 5}, {2}, {0, 1, 5}, {9, 5, 5}}) {
    EXPECT_THROW(decode(EpsFormula{codes}), std::invalid_argument);
  }
}

TEST(Codes, RandomRoundTrips) {
  std::mt19937_64 rng(3);
  const std::vector<HfSet> params{set_of(0), set_of(3), set_of(11)};
  for (int i = 0; i < 300; ++i) {
    EpsPtr f = random_formula(rng, params, RandomFormulaSpec{5, 3, 1});
    EXPECT_TRUE(same(decode(encode(f)), f));
    EXPECT_EQ(encode(f).codes.size(), code_length(f));
  }
}

TEST(Text, PrintParseRoundTrip) {
  std::mt19937_64 rng(4);
  const std::vector<HfSet> params{set_of(0), set_of(5)};
  for (int i = 0; i < 300; ++i) {
    EpsPtr f = random_formula(rng, params, RandomFormulaSpec{5, 3, 0});
    // Variables are renumbered by first appearance, so compare codes after a second pass.
    EpsPtr g = parse_eps(to_string(f));
    EXPECT_EQ(to_string(parse_eps(to_string(g))), to_string(g));
    EXPECT_EQ(code_length(g), code_length(f));
  }
}

TEST(Text, Sugar) {
  EXPECT_TRUE(same(parse_eps("forall x. x = x"), eps_forall(0, eps_equal(EpsTerm::variable(0), EpsTerm::variable(0)))));
  EpsPtr a = eps_member(EpsTerm::variable(0), EpsTerm::variable(1));
  EpsPtr b = eps_equal(EpsTerm::variable(0), EpsTerm::parameter(HfSet{}));
  EXPECT_TRUE(same(parse_eps("w in y and w = {}"), eps_and(a, b)));
  EXPECT_TRUE(same(parse_eps("w in y -> w = {}"), eps_implies(a, b)));
  EXPECT_TRUE(same(parse_eps("w in y iff w = {}"), eps_iff(a, b)));
  EXPECT_TRUE(same(parse_eps("w != y"), eps_not(eps_equal(EpsTerm::variable(0), EpsTerm::variable(1)))));
  EXPECT_THROW(parse_eps("x in"), SyntaxError);
  EXPECT_THROW(parse_eps("x = {"), SyntaxError);
  EXPECT_THROW(parse_eps("exists {}. x = x"), SyntaxError);
}

TEST(Truth, Examples) {
  const FiniteStructure x01 = structure_of({0, 1});
  EXPECT_TRUE(truth(x01, parse_eps("{} in {{}}")));
  EXPECT_TRUE(truth(x01, parse_eps("exists v. v in {{}}")));
  EXPECT_FALSE(truth(structure_of({0}), parse_eps("exists v. v in {}")));
  EXPECT_TRUE(truth(x01, encode(parse_eps("forall v. v = {} or v = {{}}"))));
}

TEST(Truth, RejectsOpenAndForeign) {
  const FiniteStructure x = structure_of({0});
  EXPECT_THROW(truth(x, parse_eps("v = {}")), std::invalid_argument);
  EXPECT_THROW(truth(x, parse_eps("{{}} = {{}}")), std::invalid_argument);
  EXPECT_THROW(truth_bottom_up(x, parse_eps("v = v")), std::invalid_argument);
}

TEST(Truth, EmptyStructure) {
  const FiniteStructure none;
  EXPECT_FALSE(truth(none, parse_eps("exists v. v = v")));
  EXPECT_TRUE(truth(none, parse_eps("forall v. v in v")));
  EXPECT_TRUE(truth_bottom_up(none, parse_eps("forall v. v in v")));
}

class RandomStructures : public ::testing::Test {
 protected:
  FiniteStructure random_structure(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> size(0, 6);
    std::uniform_int_distribution<std::uint64_t> code(0, 63);
    std::vector<HfSet> e;
    for (std::size_t n = size(rng); e.size() < n;) {
      HfSet s = set_of(code(rng));
      if (std::find(e.begin(), e.end(), s) == e.end()) e.push_back(s);
    }
    return FiniteStructure(std::move(e));
  }
};

TEST_F(RandomStructures, TruthMatchesNaiveAndBottomUp) {
  std::mt19937_64 rng(20261016);
  for (int i = 0; i < 1000; ++i) {
    FiniteStructure x = random_structure(rng);
    std::vector<HfSet> params(x.elements().begin(), x.elements().end());
    EpsPtr f = random_formula(rng, params, RandomFormulaSpec{4, 3, 0});
    const bool t = truth(x, f);
    EXPECT_EQ(t, naive_truth(x, f)) << to_string(f);
    EXPECT_EQ(t, truth_bottom_up(x, f)) << to_string(f);
  }
}

TEST_F(RandomStructures, ClausesAsMetamorphicProperties) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    FiniteStructure x = random_structure(rng);
    std::vector<HfSet> params(x.elements().begin(), x.elements().end());
    EpsPtr a = random_formula(rng, params, RandomFormulaSpec{3, 2, 0});
    EpsPtr b = random_formula(rng, params, RandomFormulaSpec{3, 2, 0});
    EXPECT_EQ(truth(x, eps_not(a)), !truth(x, a));
    EXPECT_EQ(truth(x, eps_or(a, b)), truth(x, a) || truth(x, b));
    EpsPtr body = random_formula(rng, params, RandomFormulaSpec{3, 2, 1});
    bool any = false;
    for (const HfSet& e : x.elements()) any = any || truth(x, substitute(body, 0, e));
    if (free_variables(body) == std::vector<std::size_t>{0}) EXPECT_EQ(truth(x, eps_exists(0, body)), any);
  }
}

TEST(Structure, FileFormat) {
  std::istringstream in("# sample\n{}\n\n{{}}\n{ {} , {{}} }\n{}\n");
  FiniteStructure x = parse_structure(in);
  EXPECT_EQ(x, structure_of({0, 1, 3}));
  std::istringstream bad("{}\n{\n");
  EXPECT_THROW(parse_structure(bad), std::invalid_argument);
}

TEST(Universe, Bounded) {
  BoundedUniverse u(16);
  EXPECT_EQ(u.structure().size(), 16u);
  EXPECT_TRUE(u.structure().contains(set_of(15)));
  EXPECT_FALSE(u.structure().contains(set_of(16)));
  EXPECT_THROW(BoundedUniverse(0), std::invalid_argument);
}

// Every witness is a genuine definition: one free variable, short enough,
// parameters available, extension equal to the set.
void expect_sound(const DefClosure& c, const FiniteStructure& x, const BoundedUniverse& u, std::size_t maxlen) {
  for (const Definition& d : c.definitions) {
    SCOPED_TRACE(to_string(d.formula));
    EXPECT_EQ(free_variables(d.formula), std::vector<std::size_t>{0});
    EXPECT_LE(code_length(d.formula), maxlen);
    for (const HfSet& p : parameters(d.formula)) EXPECT_TRUE(c.closure.contains(p));
    EXPECT_EQ(extension(u.structure(), d.formula), d.set);
  }
  EXPECT_TRUE(x.subset_of(c.closure));
}

TEST(Definability, ShortestAtomsOnly) {
  BoundedUniverse u(16);
  DefOptions opts;
  opts.maxlen = 3;
  DefClosure c = def_closure(FiniteStructure{}, u, opts);
  EXPECT_EQ(c.closure, structure_of({0, 1, 2, 4}));
  EXPECT_TRUE(c.exact);
  expect_sound(c, FiniteStructure{}, u, 3);
}

TEST(Definability, EmptyAndSingletonDefinable) {
  BoundedUniverse u(16);
  DefOptions opts;
  opts.maxlen = 12;
  DefClosure c = def_closure(FiniteStructure{}, u, opts);
  EXPECT_TRUE(c.closure.contains(HfSet{}));
  EXPECT_TRUE(c.closure.contains(set_of(1)));
  // θ(y) pins y down to {∅}, so its extension is {{∅}}.
  EpsPtr single = parse_eps("forall w. (w in y iff w = {})");
  EXPECT_EQ(free_variables(single).size(), 1u);
  EXPECT_EQ(extension(u.structure(), single), set_of(2));
  EXPECT_LE(code_length(single), 40u);
  EXPECT_TRUE(c.closure.contains(set_of(2)));
  expect_sound(c, FiniteStructure{}, u, 12);
}

TEST(Definability, MonotoneInMaxlen) {
  BoundedUniverse u(16);
  FiniteStructure previous;
  for (std::size_t maxlen : {3, 4, 5, 7, 9, 12}) {
    DefOptions opts;
    opts.maxlen = maxlen;
    DefClosure c = def_closure(FiniteStructure{}, u, opts);
    EXPECT_TRUE(previous.subset_of(c.closure)) << maxlen;
    previous = c.closure;
  }
  EXPECT_EQ(previous.size(), 16u);
}

// Enumerates every formula up to `maxlen` codes over variables v0..v{vars-1}
// and the given parameters, and collects the extensions of those with exactly
// one free variable.
std::set<HfSet> brute_force_step(const FiniteStructure& u, const std::vector<HfSet>& params, std::size_t maxlen,
                                 std::size_t vars) {
  std::vector<std::vector<EpsPtr>> by_len(maxlen + 1);
  std::vector<EpsTerm> terms;
  for (std::size_t v = 0; v < vars; ++v) terms.push_back(EpsTerm::variable(v));
  for (const HfSet& p : params) terms.push_back(EpsTerm::parameter(p));
  for (const auto& a : terms)
    for (const auto& b : terms) {
      by_len[3].push_back(eps_equal(a, b));
      by_len[3].push_back(eps_member(a, b));
    }
  for (std::size_t len = 4; len <= maxlen; ++len) {
    for (const auto& f : by_len[len - 1]) by_len[len].push_back(eps_not(f));
    if (len >= 5)
      for (const auto& f : by_len[len - 2])
        for (std::size_t v = 0; v < vars; ++v) by_len[len].push_back(eps_exists(v, f));
    for (std::size_t la = 3; la + 3 <= len - 1; ++la)
      for (const auto& a : by_len[la])
        for (const auto& b : by_len[len - 1 - la]) by_len[len].push_back(eps_or(a, b));
  }
  std::set<HfSet> out;
  for (const auto& level : by_len)
    for (const auto& f : level) {
      auto free = free_variables(f);
      if (free.size() != 1) continue;
      std::vector<HfSet> members;
      for (const HfSet& e : u.elements()) {
        std::map<std::size_t, HfSet> env{{free[0], e}};
        if (naive_eval(*f, u.elements(), env)) members.push_back(e);
      }
      HfSet s = HfSet::from_elements(std::move(members));
      if (u.contains(s)) out.insert(s);
    }
  return out;
}

TEST(Definability, ExhaustiveStepMatchesBruteForce) {
  BoundedUniverse u(16);
  for (std::vector<std::uint64_t> codes : {std::vector<std::uint64_t>{}, {0}, {1, 4}, {0, 3, 9}}) {
    std::vector<HfSet> params;
    for (auto c : codes) params.push_back(set_of(c));
    for (std::size_t maxlen : {3, 5, 7}) {
      DefOptions opts;
      opts.maxlen = maxlen;
      opts.variable_pool = 3;
      opts.class_budget = 1'000'000;
      opts.work_budget = 100'000'000;
      DefStep step = def_step(FiniteStructure(params), u, opts);
      ASSERT_TRUE(step.exhaustive);
      std::set<HfSet> got;
      for (const Definition& d : step.definitions) got.insert(d.set);
      EXPECT_EQ(got, brute_force_step(u.structure(), params, maxlen, 3)) << "params " << codes.size() << " maxlen " << maxlen;
    }
  }
}

TEST(Definability, FixedPointCheck) {
  BoundedUniverse u(16);
  DefOptions opts;
  opts.maxlen = 5;
  DefClosure c = def_closure(FiniteStructure{}, u, opts);
  EXPECT_TRUE(is_definably_closed(c.closure, FiniteStructure{}, u, opts));
  EXPECT_FALSE(is_definably_closed(structure_of({0}), FiniteStructure{}, u, opts));
  EXPECT_THROW(def_closure(structure_of({16}), u, opts), std::invalid_argument);
}

TEST(Elementary, Examples) {
  BoundedUniverse u(16);
  const FiniteStructure& m = u.structure();
  std::vector<HfSet> all(m.elements().begin(), m.elements().end());
  auto corpus = random_corpus(all, 100, 5, RandomFormulaSpec{4, 2, 0});
  EXPECT_TRUE(elementary_check(m, m, corpus));

  DefOptions opts;
  opts.maxlen = 12;
  DefClosure c = def_closure(FiniteStructure{}, u, opts);
  ASSERT_EQ(c.closure.size(), m.size());
  EXPECT_TRUE(elementary_check(c.closure, m, corpus));

  // {{{}}}'s only member {{}} is outside C.
  const FiniteStructure pair = structure_of({0, 2});
  std::vector<EpsPtr> with_witness{parse_eps("exists v. v in {{{}}}")};
  ElementaryReport r = elementary_report(pair, m, with_witness);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_THROW(elementary_check(m, pair, with_witness), std::invalid_argument);

  auto skipped = elementary_report(pair, m, {parse_eps("exists v. v in {{}, {{}}}")});
  EXPECT_EQ(skipped.skipped, 1u);
  EXPECT_TRUE(skipped.holds);
}

TEST(Elementary, RandomCorpusIsSeeded) {
  std::vector<HfSet> params{set_of(0), set_of(1)};
  auto a = random_corpus(params, 20, 8), b = random_corpus(params, 20, 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(same(a[i], b[i]));
    EXPECT_TRUE(is_closed(a[i]));
    EXPECT_LE(quantifier_depth(a[i]), 4u);
  }
}

}  // namespace
}  // namespace hyperlab::tarski

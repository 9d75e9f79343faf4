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

#include "hyperlab/numbers.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace hyperlab::num {
namespace {

bool lowest_terms(const Rat& q) { return q.den() > 0 && gcd(hyperlab::abs(q.num()), q.den()) == 1; }

TEST(Int, PairRepresentation) {
  Int a = Int::from_pair(0, 3);  // -3
  Int b = Int::from_pair(5, 0);  // 5
  Int sum = a + b;
  EXPECT_EQ(sum.pair(), std::make_pair(BigInt(2), BigInt(0)));
  EXPECT_EQ(sum.value(), BigInt(-3) + 5);
  EXPECT_EQ((a * Int::from_pair(0, 0)).pair(), std::make_pair(BigInt(0), BigInt(0)));
  EXPECT_LT(Int::from_pair(0, 1), Int::from_pair(1, 0));
  EXPECT_EQ((-b).pair(), std::make_pair(BigInt(0), BigInt(5)));
}

TEST(Int, ZeroIsUnique) {
  EXPECT_EQ(Int::from_pair(4, 4), Int());
  EXPECT_EQ((-Int()).pair(), Int().pair());
}

TEST(Int, RingAgreesWithBigIntegers) {
  for (int x = -12; x <= 12; ++x)
    for (int y = -12; y <= 12; ++y) {
      ASSERT_EQ((Int(x) + Int(y)).value(), x + y);
      ASSERT_EQ((Int(x) * Int(y)).value(), x * y);
      ASSERT_EQ(Int(x) < Int(y), x < y);
    }
}

TEST(Rat, Examples) {
  EXPECT_EQ(Rat(1, 2) + Rat(1, 3), Rat(5, 6));  // 1·3 + 1·2 over 6
  EXPECT_EQ(Rat(2, 3) * Rat(3, 2), Rat(1, 1));
  EXPECT_THROW(Rat(0).inv(), std::domain_error);
  EXPECT_EQ(Rat(6, -4).str(), "-3/2");
  EXPECT_LT(Rat(-1, 2), Rat(1, 3));
}

TEST(Rat, AlwaysLowestTerms) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-60, 60);
  for (int i = 0; i < 5000; ++i) {
    int an = d(rng), ad = d(rng), bn = d(rng), bd = d(rng);
    if (ad == 0 || bd == 0) continue;
    Rat a(an, ad), b(bn, bd);
    for (const Rat& r : {a + b, a - b, a * b, -a}) ASSERT_TRUE(lowest_terms(r)) << r.str();
    if (!b.is_zero()) ASSERT_TRUE(lowest_terms(a / b));
    // cross-multiplication oracle
    ASSERT_EQ((a + b).num() * BigInt(ad) * bd, (BigInt(an) * bd + BigInt(bn) * ad) * (a + b).den());
  }
}

TEST(Rat, Parsing) {
  EXPECT_EQ(parse_rat("3/6"), Rat(1, 2));
  EXPECT_EQ(parse_rat("-7"), Rat(-7));
  EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rat("a/2"), std::invalid_argument);
}

TEST(Rat, DecimalRepetend) {
  EXPECT_EQ(to_decimal(Rat(1, 2)), "0.5");
  EXPECT_EQ(to_decimal(Rat(1, 3)), "0.[3]");
  EXPECT_EQ(to_decimal(Rat(1, 6)), "0.1[6]");
  EXPECT_EQ(to_decimal(Rat(-22, 7)), "-3.[142857]");
  EXPECT_EQ(to_decimal(Rat(5)), "5");
  EXPECT_EQ(to_decimal(Rat(1, 97), 8), "0.01030927...");
}

TEST(Feasibility, Small) {
  FeasibilityContext ctx(4);
  EXPECT_TRUE(is_small(0, ctx));
  EXPECT_TRUE(is_small(4, ctx));
  EXPECT_FALSE(is_small(5, ctx));
  EXPECT_THROW(FeasibilityContext(1), std::invalid_argument);
}

TEST(Feasibility, Bounded) {
  FeasibilityContext ctx(4);
  EXPECT_TRUE(is_bounded(Rat(7, 2), ctx));
  EXPECT_FALSE(is_bounded(Rat(4), ctx));
  EXPECT_TRUE(is_bounded(Rat(0), FeasibilityContext(2)));
  EXPECT_FALSE(is_bounded(Rat(-4), ctx));
}

TEST(Feasibility, Infinitesimal) {
  FeasibilityContext ctx(4);
  EXPECT_TRUE(is_infinitesimal(Rat(0), ctx));
  EXPECT_TRUE(is_infinitesimal(Rat(1, 5), ctx));
  EXPECT_FALSE(is_infinitesimal(Rat(1, 4), ctx));
  EXPECT_FALSE(is_infinitesimal(Rat(-1, 4), ctx));
}

TEST(StandardPart, IdentityOnBoundedAndKernel) {
  FeasibilityContext ctx(4);
  EXPECT_EQ(st(Rat(1, 2), ctx), Rat(1, 2));
  EXPECT_THROW(st(Rat(5), ctx), std::domain_error);
  EXPECT_TRUE(close(st(Rat(1, 2), ctx), st(Rat(33, 64), ctx), ctx));
}

std::vector<Rat> grid(const BigInt& num_limit, const BigInt& den_limit) {
  std::vector<Rat> out;
  for (BigInt d = 1; d <= den_limit; ++d)
    for (BigInt n = -num_limit; n <= num_limit; ++n) out.emplace_back(n, d);
  return out;
}

TEST(StandardPart, HomomorphismOnGrid) {
  FeasibilityContext ctx(16);
  auto g = grid(6, 5);
  for (const Rat& a : g)
    for (const Rat& b : g) {
      if (!is_bounded(a + b, ctx) || !is_bounded(a * b, ctx)) continue;
      ASSERT_EQ(st(a + b, ctx), st(a, ctx) + st(b, ctx));
      ASSERT_EQ(st(a * b, ctx), st(a, ctx) * st(b, ctx));
    }
}

TEST(StandardPart, KernelCharacterization) {
  FeasibilityContext ctx(8);
  auto g = grid(9, 9);
  for (const Rat& a : g)
    for (const Rat& b : g) ASSERT_EQ(close(a, b, ctx), is_infinitesimal(a - b, ctx));
}

TEST(Close, ReflexiveSymmetricAndDoubledTransitivity) {
  FeasibilityContext ctx(4);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n(-200, 200);
  const Rat two_over_s(2, 4);
  for (int i = 0; i < 20000; ++i) {
    Rat a(n(rng), 64), b = a + Rat(n(rng) % 20, 64), c = b + Rat(n(rng) % 20, 64);
    ASSERT_TRUE(close(a, a, ctx));
    ASSERT_EQ(close(a, b, ctx), close(b, a, ctx));
    if (close(a, b, ctx) && close(b, c, ctx)) ASSERT_LT(abs(a - c), two_over_s);
  }
  // plain transitivity genuinely fails at the boundary
  EXPECT_TRUE(close(Rat(0), Rat(3, 16), ctx));
  EXPECT_TRUE(close(Rat(3, 16), Rat(6, 16), ctx));
  EXPECT_FALSE(close(Rat(0), Rat(6, 16), ctx));
}

TEST(Ideal, GradedDeepInfinitesimalTimesBounded) {
  for (int s : {4, 10, 64}) {
    FeasibilityContext ctx(s);
    const Rat deep(1, s * s);
    std::mt19937_64 rng(s);
    std::uniform_int_distribution<int> n(-999, 999);
    for (int i = 0; i < 10000; ++i) {
      Rat a = deep * Rat(n(rng), 1000);
      Rat b = Rat(s) * Rat(n(rng), 1000);
      ASSERT_TRUE(abs(a) < deep && abs(b) < Rat(s));
      ASSERT_TRUE(is_infinitesimal(a * b, ctx));
    }
  }
}

TEST(Standard, GridModel) {
  FeasibilityContext ctx(4);
  EXPECT_TRUE(is_standard(Rat(-4, 3), ctx));
  EXPECT_FALSE(is_standard(Rat(1, 5), ctx));
  EXPECT_FALSE(is_standard(Rat(5), ctx));
}

}  // namespace
}  // namespace hyperlab::num

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

#include "hyperlab/hyperarith.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>

namespace hyperlab::hyper {
namespace {

// Direct 64-bit evaluation of the TINY operations (ω = 2048, ε = 1/64),
// written independently of the library's reduction and flooring.
constexpr std::int64_t kOmega = 2048;
constexpr std::int64_t kMod = 2 * kOmega + 1;

std::int64_t sym(std::int64_t v) {
  std::int64_t r = ((v % kMod) + kMod) % kMod;
  return r > kOmega ? r - kMod : r;
}
std::int64_t floor64(std::int64_t n) { return n >= 0 ? n / 64 : -((-n + 63) / 64); }
std::int64_t oadd(std::int64_t a, std::int64_t b) { return sym(a + b); }
std::int64_t omul(std::int64_t a, std::int64_t b) { return sym(floor64(a * b)); }

class Tiny : public ::testing::Test {
 protected:
  HyperParams p = HyperParams::tiny();
  HyperElem e(std::int64_t k) const { return p.elem(k); }
};

TEST_F(Tiny, DerivedThresholds) {
  EXPECT_EQ(p.bounded_limit(), 255);
  EXPECT_EQ(p.rho_gap(), 16);
  EXPECT_EQ(p.modulus(), 4097);
}

TEST(Params, PresetsSatisfyInvariants) {
  EXPECT_NO_THROW(HyperParams::tiny());
  EXPECT_NO_THROW(HyperParams::fine());
  EXPECT_NO_THROW(HyperParams::preset("FINE"));
  EXPECT_THROW(HyperParams::preset("huge"), InvalidParams);
}

TEST(Params, RejectsViolatedInvariantsByName) {
  try {
    HyperParams::make(2048, Rat(1, 4), 4);
    FAIL();
  } catch (const InvalidParams& e) {
    EXPECT_NE(std::string(e.what()).find("eps < 1/S"), std::string::npos);
  }
  try {
    HyperParams::make(100, Rat(1, 64), 4);
    FAIL();
  } catch (const InvalidParams& e) {
    EXPECT_NE(std::string(e.what()).find("omega*eps > S"), std::string::npos);
  }
  EXPECT_THROW(HyperParams::make(2048, Rat(0), 4), InvalidParams);
  EXPECT_THROW(HyperParams::make(2048, Rat(1, 64), 1), InvalidParams);
}

TEST_F(Tiny, AddExamples) {
  EXPECT_EQ(hadd(e(3), e(5), p).k, 8);
  EXPECT_EQ(hadd(e(2048), e(1), p).k, -2048);  // 2049 - 4097
  for (int k : {0, 1, 700, -2048, 2048}) EXPECT_EQ(hadd(e(k), e(-k), p).k, 0);
}

TEST_F(Tiny, MulExamples) {
  EXPECT_EQ(hmul(e(64), e(64), p).k, 64);
  EXPECT_EQ(hmul(e(96), e(96), p).k, 144);
  EXPECT_EQ(hmul(e(0), e(1234), p).k, 0);
  EXPECT_EQ(hmul(e(-1), e(1), p).k, -1);  // floor(-1/64)
}

TEST_F(Tiny, OperationsMatchDirectEvaluation) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> d(-kOmega, kOmega);
  for (int i = 0; i < 200000; ++i) {
    std::int64_t a = d(rng), b = d(rng);
    ASSERT_EQ(hadd(e(a), e(b), p).k, oadd(a, b));
    ASSERT_EQ(hmul(e(a), e(b), p).k, omul(a, b));
  }
}

TEST_F(Tiny, Bounded) {
  EXPECT_TRUE(elem_bounded(e(255), p));
  EXPECT_TRUE(elem_bounded(e(-255), p));
  EXPECT_FALSE(elem_bounded(e(256), p));
  EXPECT_TRUE(elem_bounded(e(0), p));
}

TEST_F(Tiny, Rho) {
  EXPECT_TRUE(rho(e(0), e(15), p));
  EXPECT_FALSE(rho(e(0), e(16), p));
  EXPECT_TRUE(rho(e(77), e(77), p));
  EXPECT_FALSE(rho(e(-8), e(8), p));
}

TEST_F(Tiny, Embed) {
  EXPECT_EQ(embed(Rat(1, 2), p).k, 32);
  EXPECT_EQ(embed(Rat(0), p).k, 0);
  EXPECT_EQ(embed(Rat(1, 3), p).k, 21);
  EXPECT_EQ(embed(Rat(1, 128), p).k, 1);  // tie rounds away from zero
  EXPECT_EQ(embed(Rat(-1, 128), p).k, -1);
  EXPECT_THROW(embed(Rat(4), p), std::domain_error);
}

TEST_F(Tiny, EmbedIsSignSymmetricAndHalfUlpAccurate) {
  for (int n = -1000; n <= 1000; ++n) {
    Rat q(n, 257);
    HyperElem k = embed(q, p);
    ASSERT_EQ(embed(-q, p).k, -k.k);
    ASSERT_LE(abs(value(k, p) - q), Rat(1, 128));
  }
}

TEST_F(Tiny, Project) {
  EXPECT_EQ(project(e(64), p), Rat(1));
  EXPECT_EQ(project(e(0), p), Rat(0));
  EXPECT_EQ(project(e(96), p), Rat(3, 2));
  EXPECT_THROW(project(e(300), p), std::domain_error);
}

TEST_F(Tiny, ProjectRespectsRho) {
  // F(k) = F(m) in the tolerance sense iff k ρ m
  for (int k = -255; k <= 255; k += 3)
    for (int m = -255; m <= 255; m += 5)
      ASSERT_EQ(num::close(project(e(k), p), project(e(m), p), p.ctx()), rho(e(k), e(m), p));
}

TEST_F(Tiny, NetExamples) {
  auto net = select_representatives(p);
  ASSERT_EQ(net.size(), 32u);  // floor(510/16) + 1
  EXPECT_EQ(net_size(p), 32);
  EXPECT_EQ(net[0].k, -255);
  EXPECT_EQ(net[1].k, -239);
  EXPECT_EQ(net[2].k, -223);
}

TEST_F(Tiny, NetCoversAndIsAnAntichain) {
  auto net = select_representatives(p);
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j) ASSERT_FALSE(rho(net[i], net[j], p));
  for (int k = -255; k <= 255; ++k) {
    bool covered = std::any_of(net.begin(), net.end(), [&](const HyperElem& r) { return rho(e(k), r, p); });
    ASSERT_TRUE(covered) << k;
    HyperElem r = representative_of(e(k), p);
    ASSERT_TRUE(std::find(net.begin(), net.end(), r) != net.end());
    ASSERT_TRUE(rho(e(k), r, p));
  }
}

TEST(Net, PropertiesHoldForOtherParameters) {
  // gap that does not divide the bounded range evenly
  HyperParams q = HyperParams::make(1000, Rat(1, 37), 5);
  auto net = select_representatives(q);
  for (std::size_t i = 1; i < net.size(); ++i) ASSERT_FALSE(rho(net[i - 1], net[i], q));
  for (BigInt k = -q.bounded_limit(); k <= q.bounded_limit(); ++k)
    ASSERT_TRUE(rho(HyperElem{k}, representative_of(HyperElem{k}, q), q));
}

TEST_F(Tiny, PigeonholeForcesRhoPairs) {
  std::vector<int> all;
  for (int k = -255; k <= 255; ++k) all.push_back(k);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> subset(all.begin(), all.begin() + 33);
    std::sort(subset.begin(), subset.end());
    bool pair = false;
    for (std::size_t i = 1; i < subset.size() && !pair; ++i) pair = rho(e(subset[i - 1]), e(subset[i]), p);
    ASSERT_TRUE(pair);
  }
}

TEST_F(Tiny, AdditiveGroupLaws) {
  for (int a = -kOmega; a <= kOmega; a += 7)
    for (int b = -kOmega; b <= kOmega; b += 11) ASSERT_EQ(hadd(e(a), e(b), p), hadd(e(b), e(a), p));
  for (int a = -kOmega; a <= kOmega; ++a) {
    ASSERT_EQ(hadd(e(a), e(0), p).k, a);
    ASSERT_EQ(hadd(e(a), hneg(e(a), p), p).k, 0);
  }
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::int64_t> d(-kOmega, kOmega);
  for (int i = 0; i < 100000; ++i) {
    HyperElem a = e(d(rng)), b = e(d(rng)), c = e(d(rng));
    ASSERT_EQ(hadd(hadd(a, b, p), c, p), hadd(a, hadd(b, c, p), p));
  }
}

TEST_F(Tiny, BoundedSumsDoNotWrap) {
  for (int a = -255; a <= 255; ++a)
    for (int b = -255; b <= 255; ++b)
      if (std::abs(a + b) <= 255) ASSERT_EQ(hadd(e(a), e(b), p).k, a + b);
}

TEST_F(Tiny, MultiplicationErrorBound) {
  for (int k = -255; k <= 255; ++k)
    for (int m = -255; m <= 255; ++m) {
      // nε <= kmε² < (n+1)ε  <=>  64n <= km < 64(n+1)
      const std::int64_t n = to_int64(hmul(e(k), e(m), p).k);
      ASSERT_LE(64 * n, k * m);
      ASSERT_LT(k * m, 64 * (n + 1));
      ASSERT_EQ(n, floor64(k * m));  // no wrap
    }
}

TEST_F(Tiny, RhoIsReflexiveSymmetricWithDoubledTransitivity) {
  for (int a = -300; a <= 300; a += 3)
    for (int b = a - 40; b <= a + 40; ++b) {
      ASSERT_TRUE(rho(e(a), e(a), p));
      ASSERT_EQ(rho(e(a), e(b), p), rho(e(b), e(a), p));
    }
  // |Δ1|, |Δ2| < T/2  =>  |Δ1 + Δ2| < T
  for (int d1 = -7; d1 <= 7; ++d1)
    for (int d2 = -7; d2 <= 7; ++d2) ASSERT_TRUE(rho(e(100), e(100 + d1 + d2), p));
  EXPECT_TRUE(rho(e(0), e(10), p));
  EXPECT_TRUE(rho(e(10), e(20), p));
  EXPECT_FALSE(rho(e(0), e(20), p));
}

TEST_F(Tiny, GradedCongruence) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> small(-256, 256);  // |kε| < S
  std::uniform_int_distribution<std::int64_t> delta(-1, 1);
  int checked = 0;
  while (checked < 20000) {
    std::int64_t k = small(rng), m = small(rng), k2 = k + delta(rng);
    if (std::abs(k) > 255 || std::abs(k2) > 255 || std::abs(m) > 255) continue;
    ++checked;
    ASSERT_TRUE(rho(hadd(e(k), e(m), p), hadd(e(k2), e(m), p), p));
    ASSERT_TRUE(rho(hmul(e(k), e(m), p), hmul(e(k2), e(m), p), p));
  }
}

TEST_F(Tiny, HomomorphismUpToTolerance) {
  for (int k = -255; k <= 255; k += 2)
    for (int m = -255; m <= 255; ++m) {
      HyperElem prod = hmul(e(k), e(m), p);
      if (!elem_bounded(prod, p)) continue;
      Rat gap = abs(project(prod, p) - project(e(k), p) * project(e(m), p));
      ASSERT_LT(gap, p.eps());
      ASSERT_TRUE(num::close(project(prod, p), project(e(k), p) * project(e(m), p), p.ctx()));
    }
}

TEST_F(Tiny, MulAssocWitnessExample) {
  auto [lhs, rhs] = evaluate_law(Law::mul_assoc, e(3), e(3), e(2000), p);
  EXPECT_EQ(lhs.k, 0);
  EXPECT_EQ(rhs.k, 4);
  EXPECT_EQ(omul(omul(3, 3), 2000), 0);
  EXPECT_EQ(omul(3, omul(3, 2000)), 4);
}

TEST_F(Tiny, SearchFindsVerifiedWitnesses) {
  for (Law law : {Law::mul_assoc, Law::distrib}) {
    SearchResult r = search_counterexample(law, p, {1'000'000, 42, 1});
    ASSERT_TRUE(r.witness) << law_name(law);
    const Witness& w = *r.witness;
    std::int64_t a = to_int64(w.a.k), b = to_int64(w.b.k), c = to_int64(w.c.k);
    if (law == Law::mul_assoc) {
      EXPECT_NE(omul(omul(a, b), c), omul(a, omul(b, c)));
      EXPECT_EQ(w.lhs.k, omul(omul(a, b), c));
    } else {
      EXPECT_NE(omul(a, oadd(b, c)), oadd(omul(a, b), omul(a, c)));
    }
    EXPECT_LE(r.probes, 1'000'000u);
  }
}

TEST_F(Tiny, AddAssocSearchFindsNothing) {
  SearchResult r = search_counterexample(Law::add_assoc, p, {200'000, 42, 1});
  EXPECT_FALSE(r.witness);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.probes, 200'000u);
}

TEST(Search, ExhaustiveOnSmallArithmetic) {
  HyperParams q = HyperParams::make(20, Rat(1, 8), 2);  // 41^3 triples
  SearchResult add = search_counterexample(Law::add_assoc, q, {100'000, 1, 1});
  EXPECT_TRUE(add.exhaustive);
  EXPECT_FALSE(add.witness);
  EXPECT_EQ(add.probes, 41u * 41 * 41);
  SearchResult mul = search_counterexample(Law::mul_assoc, q, {100'000, 1, 1});
  ASSERT_TRUE(mul.witness);
  EXPECT_NE(mul.witness->lhs, mul.witness->rhs);
}

TEST_F(Tiny, SearchIsDeterministicAcrossThreadCounts) {
  SearchResult one = search_counterexample(Law::distrib, p, {500'000, 99, 1});
  SearchResult four = search_counterexample(Law::distrib, p, {500'000, 99, 4});
  ASSERT_TRUE(one.witness && four.witness);
  EXPECT_EQ(one.witness->a, four.witness->a);
  EXPECT_EQ(one.witness->b, four.witness->b);
  EXPECT_EQ(one.witness->c, four.witness->c);
  EXPECT_EQ(one.probes, four.probes);
}

TEST(Fine, ScaleSeparatedArithmetic) {
  HyperParams f = HyperParams::fine();
  EXPECT_EQ(f.rho_gap(), 1024);
  EXPECT_EQ(f.bounded_limit(), (BigInt(1) << 30) - 1);
  HyperElem one = embed(Rat(1), f);
  EXPECT_EQ(one.k, BigInt(1) << 20);
  HyperElem x = embed(Rat(3, 7), f);
  EXPECT_TRUE(num::close(project(hmul(x, x, f), f), Rat(9, 49), f.ctx()));
  EXPECT_EQ(net_size(f), (BigInt(1) << 21));
  EXPECT_THROW(bounded_elements(f), ResourceLimit);
}

}  // namespace
}  // namespace hyperlab::hyper

// Copyright 2026 The tpsa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "common.hpp"
#include "tpsa/goldie.hpp"

using namespace tpsa;
using namespace tpsa::testing;

namespace {

FiniteRing m2z2() { return FiniteRing({FactorSpec::matrix(2, 2)}); }

}  // namespace

TEST(SimpleRightIdeals, Examples) {
  auto r = cyclic_product({2, 2});
  auto s = simple_right_ideals(r);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].format_members(), (std::vector<std::string>{"(0,0)", "(0,1)"}));
  EXPECT_EQ(s[1].format_members(), (std::vector<std::string>{"(0,0)", "(1,0)"}));
  auto m = simple_right_ideals(m2z2());
  EXPECT_EQ(m.size(), 3u);
  for (const auto& v : m) EXPECT_EQ(v.size(), 4u);
  auto z4 = simple_right_ideals(cyclic_product({4}));
  ASSERT_EQ(z4.size(), 1u);
  EXPECT_EQ(z4[0].format_members(), (std::vector<std::string>{"(0)", "(2)"}));
}

TEST(SimpleRightIdeals, MatrixRowsOfRightIdealsAreFixed) {
  // a right ideal of M_2(F) is {X : column space of X inside a fixed line}
  FiniteRing m = m2z2();
  for (const auto& v : simple_right_ideals(m)) {
    for (Elem x : v.members()) {
      for (Elem y = 0; y < m.size(); ++y) EXPECT_TRUE(v.contains(m.mul(x, y)));
    }
  }
}

TEST(UniformDim, Examples) {
  EXPECT_EQ(uniform_dim(cyclic_product({2, 2})).rank, 2);
  EXPECT_EQ(uniform_dim(m2z2()).rank, 2);
  EXPECT_EQ(uniform_dim(cyclic_product({4})).rank, 1);
  EXPECT_EQ(uniform_dim(FiniteRing({FactorSpec::matrix(2, 3), FactorSpec::cyclic(5)})).rank, 3);
}

TEST(UniformDim, CertificatesAreValid) {
  for (const auto& r : {cyclic_product({2, 2}), cyclic_product({4, 3}), cyclic_product({8}), m2z2()}) {
    auto c = uniform_dim(r);
    EXPECT_FALSE(c.defect().has_value()) << *c.defect();
    IdealSet total = IdealSet::zero(r);
    for (const auto& v : c.summands) total = sum(total, v);
    EXPECT_EQ(total, right_socle(r));
  }
  auto m = materialize_finite(f3(), Flavor::laurent);
  auto c = uniform_dim(m.ring);
  EXPECT_FALSE(c.defect().has_value());
}

TEST(UniformDim, AdditiveOverProducts) {
  const std::vector<std::vector<FactorSpec>> parts{
      {FactorSpec::cyclic(4)}, {FactorSpec::cyclic(2), FactorSpec::cyclic(3)}, {FactorSpec::matrix(2, 2)}};
  for (const auto& a : parts) {
    for (const auto& b : parts) {
      std::vector<FactorSpec> ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      EXPECT_EQ(uniform_dim(FiniteRing(ab)).rank, uniform_dim(FiniteRing(a)).rank + uniform_dim(FiniteRing(b)).rank);
    }
  }
}

TEST(UniformDim, SemisimpleRankIsSumOfMatrixSizes) {
  EXPECT_EQ(uniform_dim(FiniteRing({FactorSpec::matrix(2, 2), FactorSpec::cyclic(3), FactorSpec::cyclic(2)})).rank, 4);
  EXPECT_EQ(uniform_dim(FiniteRing({FactorSpec::matrix(3, 2)})).rank, 3);
}

TEST(Uniform, Examples) {
  auto r = cyclic_product({2, 2});
  EXPECT_TRUE(is_uniform_right_ideal(r, simple_right_ideals(r)[0]));
  EXPECT_FALSE(is_uniform_right_ideal(r, IdealSet::whole(r)));
  EXPECT_TRUE(is_uniform_right_ideal(cyclic_product({8}), IdealSet::whole(cyclic_product({8}))));
  EXPECT_THROW(is_uniform_right_ideal(r, IdealSet::zero(r)), Error);
}

TEST(Uniform, SimpleTimesSeriesRingIsUniform) {
  for (const auto& a : {f3(), f3p(), block_pair(), chain3(), trivial_partial(m2z2())}) {
    for (Flavor fl : {Flavor::power, Flavor::laurent}) {
      auto m = materialize_finite(a, fl);
      for (const auto& v : simple_right_ideals(a.ring())) {
        std::vector<Elem> gens;
        for (Elem x : v.members()) gens.push_back(m.monomial(x, 0));
        auto vm = right_ideal_closure(m.ring, gens);
        EXPECT_TRUE(is_uniform_right_ideal(m.ring, vm)) << a.describe();
      }
    }
  }
}

TEST(Chain, F3Exact) {
  auto a = f3();
  const Ring& r = a.ring();
  auto v = right_ideal_closure(r, {a.idempotent(1)});
  auto rep = uniform_chain_check(a, v, 0, 0, 0);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
  EXPECT_EQ(rep.details["chain_sizes"], json({4, 2, 1}));
  for (const auto& s : simple_right_ideals(r)) EXPECT_TRUE(uniform_chain_check(a, s, 0, 0, 0).passed());
  try {
    uniform_chain_check(a, IdealSet::zero(r), 0, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_simple);
  }
}

TEST(Chain, EveryFiniteSupportFixtureExact) {
  for (const auto& a : {f3p(), block_pair(), chain3(), trivial_partial(m2z2())}) {
    for (const auto& s : simple_right_ideals(a.ring())) {
      auto rep = uniform_chain_check(a, s, 0, 0, 0);
      EXPECT_TRUE(rep.passed()) << a.describe() << rep.to_json().dump(2);
    }
  }
}

TEST(Chain, TruncatedSamples) {
  for (const auto& a : {f1(), f2()}) {
    for (const auto& s : simple_right_ideals(a.ring())) {
      auto rep = uniform_chain_check(a, s, 6, 50, 3);
      EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
    }
  }
}

TEST(RankComparison, Examples) {
  auto rep = rank_comparison(f3(), 0, 0, 0);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
  EXPECT_EQ(rep.details["rank_base"], 2);
  EXPECT_EQ(rep.details["rank_power"], 2);
  EXPECT_EQ(rep.details["rank_laurent"], 2);
  try {
    rank_comparison(trivial_partial(cyclic_product({4})), 0, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_semiprime);
  }
  auto d = rank_comparison(f1(), 6, 30, 1);
  EXPECT_TRUE(d.passed()) << d.to_json().dump(2);
  EXPECT_EQ(d.details["summands"], 2);
  EXPECT_EQ(d.details["mode"], "decomposition");
}

TEST(RankComparison, OtherSemiprimeFixtures) {
  for (const auto& a : {f3p(), block_pair(), chain3(), trivial_partial(m2z2())}) {
    auto rep = rank_comparison(a, 0, 0, 0);
    EXPECT_TRUE(rep.passed()) << a.describe() << rep.to_json().dump(2);
  }
}

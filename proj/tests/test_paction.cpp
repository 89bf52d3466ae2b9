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

#include <random>

#include "common.hpp"
#include "tpsa/paction.hpp"

using namespace tpsa;
using namespace tpsa::testing;

namespace {

TwistedPartialAction random_restriction(std::mt19937_64& gen) {
  const std::vector<FactorSpec> menu{FactorSpec::cyclic(2), FactorSpec::cyclic(3), FactorSpec::cyclic(4),
                                     FactorSpec::cyclic(5), FactorSpec::matrix(2, 2)};
  std::vector<FactorSpec> factors;
  const int count = 1 + static_cast<int>(gen() % 3);
  for (int k = 0; k < count; ++k) factors.push_back(menu[gen() % menu.size()]);
  if (gen() % 2) factors.push_back(factors.front());
  FiniteRing t(factors);
  std::vector<std::size_t> perm(factors.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (int rounds = 0; rounds < 4; ++rounds) {
    std::size_t a = gen() % perm.size(), b = gen() % perm.size();
    if (factors[perm[a]] == factors[perm[b]]) std::swap(perm[a], perm[b]);
  }
  std::vector<std::vector<std::uint32_t>> conj(factors.size());
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (factors[f].kind == FactorSpec::Kind::matrix && gen() % 2) conj[f] = {1, 1, 0, 1};
  }
  auto beta = RingMorphism::factor_action(t, perm, conj);
  const auto units = [&] {
    std::vector<Elem> out;
    for (Elem x = 0; x < t.size(); ++x) {
      if (t.is_central(x) && beta(x) == x && t.corner_inverse(x, t.one()) != kNoElem) out.push_back(x);
    }
    return out;
  }();
  const Elem lambda = units[gen() % units.size()];
  auto g = std::make_shared<const GlobalTwistedAction>(beta, lambda, gen() % 2 == 0);
  const auto ids = central_idempotents(t);
  return restrict_global(g, ids[gen() % ids.size()]);
}

}  // namespace

TEST(Restriction, F1Idempotents) {
  auto a = f1();
  auto t = cyclic_product({2, 2, 2});
  const auto* env = a.envelope();
  ASSERT_NE(env, nullptr);
  auto in_t = [&](Elem x) { return t.format(env->embedding[x]); };
  EXPECT_EQ(a.ring().size(), 4u);
  EXPECT_EQ(in_t(a.idempotent(1)), "(0,1,0)");
  EXPECT_EQ(in_t(a.idempotent(-1)), "(1,0,0)");
  EXPECT_EQ(in_t(a.idempotent(2)), "(1,0,0)");
  EXPECT_EQ(in_t(a.idempotent(0)), "(1,1,0)");
  EXPECT_EQ(a.period(), 3);
}

TEST(Restriction, F2Units) {
  auto a = f2();
  auto t = cyclic_product({5, 5, 5});
  const auto* env = a.envelope();
  auto in_t = [&](Elem x) { return t.format(env->embedding[x]); };
  EXPECT_EQ(a.cocycle_period(), 12);
  // w_{1,1} = 2 * 1_1 * 1_2 = 2 * (0,1,0)(1,0,0) = 0
  EXPECT_EQ(in_t(a.w(1, 1)), "(0,0,0)");
  // w_{1,2} = 2^2 * 1_1 * 1_3 = 4 * (0,1,0)
  EXPECT_EQ(in_t(a.w(1, 2)), "(0,4,0)");
  EXPECT_EQ(in_t(a.w(1, -1)), "(0,3,0)");  // 2^{-1} = 3 mod 5
}

TEST(Restriction, ByIdentityRecoversGlobalAction) {
  auto r = cyclic_product({2, 2, 2});
  auto beta = RingMorphism::factor_action(r, {1, 2, 0});
  auto g = std::make_shared<const GlobalTwistedAction>(beta, r.one(), false);
  auto a = restrict_global(g, r.one());
  for (Index i = -4; i <= 4; ++i) {
    EXPECT_EQ(a.idempotent(i), a.ring().one());
    for (Elem x = 0; x < 8; ++x) EXPECT_EQ(a.alpha(i, x), g->beta(i, x));
  }
}

TEST(Restriction, RejectsNonIdempotent) {
  auto r = cyclic_product({4});
  auto g = std::make_shared<const GlobalTwistedAction>(RingMorphism::identity(r), r.one(), false);
  try {
    restrict_global(g, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_central_idempotent);
  }
}

TEST(GlobalAction, CocycleIdentity) {
  auto t = cyclic_product({5, 5, 5});
  auto beta = RingMorphism::factor_action(t, {1, 2, 0});
  GlobalTwistedAction g(beta, tuple(t, {2, 2, 2}), true);
  EXPECT_EQ(g.order(), 3);
  EXPECT_EQ(g.lambda_order(), 4);
  EXPECT_TRUE(g.check().passed());
  EXPECT_THROW(GlobalTwistedAction(beta, tuple(t, {2, 3, 2}), true), Error);  // not beta-fixed
}

TEST(FiniteSupport, F3Tables) {
  auto a = f3();
  const Ring& r = a.ring();
  EXPECT_EQ(r.format(a.idempotent(1)), "(1,0)");
  EXPECT_EQ(r.format(a.idempotent(-1)), "(0,1)");
  EXPECT_EQ(a.idempotent(2), 0u);
  EXPECT_EQ(r.format(a.alpha(1, 1)), "(1,0)");
  EXPECT_EQ(r.format(a.alpha(-1, 2)), "(0,1)");
  EXPECT_EQ(a.alpha(5, 0), 0u);
  EXPECT_EQ(a.w(3, 1), 0u);
}

TEST(FiniteSupport, MalformedTables) {
  auto r = cyclic_product({2, 2});
  FiniteSupportSpec s;
  s.bound = 1;
  s.idempotents = {{1, tuple(r, {1, 0})}, {-1, tuple(r, {0, 1})}};
  EXPECT_THROW(make_finite_support(r, s), Error);  // alpha_1 missing
  s.alpha[1][tuple(r, {1, 0})] = tuple(r, {1, 0});
  EXPECT_THROW(make_finite_support(r, s), Error);  // entry outside D_{-1}
  FiniteSupportSpec bad;
  bad.idempotents = {{0, tuple(r, {1, 0})}};
  EXPECT_THROW(make_finite_support(r, bad), Error);  // e_0 != 1
}

TEST(FiniteSupport, TrivialAction) {
  auto a = trivial_partial(cyclic_product({4}));
  EXPECT_EQ(a.idempotent(0), a.ring().one());
  EXPECT_EQ(a.idempotent(1), 0u);
  EXPECT_TRUE(check_axioms(a).passed());
}

TEST(CheckAxioms, CanonicalFixturesPass) {
  for (const auto& a : {f1(), f2(), f3(), f3p(), block_pair(), chain3(), trivial_global(cyclic_product({4})),
                        trivial_global(cyclic_product({2, 2}))}) {
    auto rep = check_axioms(a);
    EXPECT_TRUE(rep.passed()) << a.describe() << "\n" << rep.to_json().dump(2);
  }
}

TEST(CheckAxioms, RandomRestrictionsPass) {
  std::mt19937_64 gen(20);
  for (int k = 0; k < 25; ++k) {
    auto a = random_restriction(gen);
    auto rep = check_axioms(a);
    EXPECT_TRUE(rep.passed()) << a.describe() << "\n" << rep.to_json().dump(2);
  }
}

TEST(CheckAxioms, SpecDataOverZ5IsRejected) {
  // alpha_1((0,a)) = (2a,0) is additive but not multiplicative over Z_5
  auto r = cyclic_product({5, 5});
  FiniteSupportSpec s;
  s.bound = 1;
  s.idempotents = {{1, tuple(r, {1, 0})}, {-1, tuple(r, {0, 1})}};
  for (std::uint32_t a = 0; a < 5; ++a) s.alpha[1][tuple(r, {0, a})] = tuple(r, {2 * a % 5, 0});
  auto rep = check_axioms(make_finite_support(r, s));
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.details["axioms"]["isomorphism"], "fail");
}

TEST(CheckAxioms, InjectedMutationsAreCaughtWithWitness) {
  const auto cases = axiom_mutations();
  for (const auto& c : cases) {
    auto rep = check_axioms(c.action);
    ASSERT_FALSE(rep.passed()) << c.axiom;
    EXPECT_EQ(rep.details["axioms"][c.axiom], "fail") << rep.to_json().dump(2);
    const json* w = witness_for(rep, c.axiom);
    ASSERT_NE(w, nullptr);
    EXPECT_TRUE(witness_is_violation(c.action, *w)) << w->dump();
  }
}

TEST(Accessors, PeriodicAndVanishing) {
  auto a = f1();
  for (Index i = -6; i <= 6; ++i) EXPECT_EQ(a.idempotent(i), a.idempotent(i + a.period()));
  auto b = f3();
  for (Index i : {-4, -3, -2, 2, 3, 4}) {
    EXPECT_EQ(b.idempotent(i), 0u);
    EXPECT_EQ(b.alpha(i, 0), 0u);
    EXPECT_EQ(b.w(i, 0), 0u);
    EXPECT_EQ(b.w(0, i), 0u);
  }
}

TEST(Accessors, OppositeMapsComposeToConjugation) {
  for (const auto& a : {f1(), f2(), f3(), f3p()}) {
    const Ring& r = a.ring();
    for (Index i : a.index_window()) {
      for (Elem x : a.domain(i)) {
        // axiom (iii) with j = -i: alpha_i(alpha_{-i}(x)) = w_{i,-i} x w_{i,-i}^{-1}
        EXPECT_EQ(a.alpha(i, a.alpha(-i, x)), r.mul(a.w(i, -i), x, a.w_inv(i, -i)));
      }
    }
  }
}

TEST(AlphaIdeals, F3SupportIdeal) {
  auto a = f3();
  auto d1 = ideal_closure(a.ring(), {a.idempotent(1)});
  EXPECT_TRUE(is_alpha_ideal(a, d1));
  EXPECT_FALSE(is_alpha_invariant(a, d1));
  EXPECT_TRUE(is_alpha_invariant(a, IdealSet::zero(a.ring())));
  EXPECT_TRUE(is_alpha_invariant(a, IdealSet::whole(a.ring())));
}

TEST(QuotientAction, EveryInvariantIdealOfEveryFixture) {
  for (const auto& a : {f1(), f2(), f3(), f3p(), chain3(), trivial_global(cyclic_product({4, 2})),
                        trivial_partial(cyclic_product({4}))}) {
    int count = 0;
    for (const auto& ideal : enumerate_ideals(a.ring())) {
      if (!is_alpha_invariant(a, ideal)) continue;
      ++count;
      auto q = quotient_action(a, ideal);
      EXPECT_EQ(q.action.ring().size() * ideal.size(), a.ring().size());
      EXPECT_TRUE(check_axioms(q.action).passed()) << a.describe();
    }
    EXPECT_GE(count, 2);
  }
  auto a = f3();
  try {
    quotient_action(a, ideal_closure(a.ring(), {a.idempotent(1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_alpha_invariant);
  }
}

TEST(FiniteType, Examples) {
  auto r1 = is_finite_type(f1(), 2);
  EXPECT_TRUE(r1.finite_type);
  EXPECT_EQ(r1.witness, (std::vector<Index>{0, 1}));
  EXPECT_FALSE(is_finite_type(f3(), 2).finite_type);
  auto g = is_finite_type(trivial_global(cyclic_product({2, 2})), 2);
  EXPECT_TRUE(g.finite_type);
  EXPECT_EQ(g.witness, (std::vector<Index>{0}));
}

TEST(FiniteType, WitnessCoversEveryResidue) {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 20; ++k) {
    auto a = random_restriction(gen);
    auto res = is_finite_type(a, std::max(2, a.period()));
    ASSERT_TRUE(res.finite_type) << a.describe();
    const Ring& r = a.ring();
    for (Index j = 0; j < a.period(); ++j) {
      std::vector<char> seen(r.size(), 0);
      AdditiveSubgroup span(r);
      for (Index s : res.witness) {
        for (Elem x : a.domain(j + s)) span.add_generator(x);
      }
      EXPECT_EQ(span.size(), r.size());
    }
  }
}

TEST(Enveloping, DefiningGlobalActionEnvelopesF1) {
  auto a = f1();
  const auto* env = a.envelope();
  RingMorphism phi(a.ring(), env->global->ring(), env->embedding);
  auto rep = verify_enveloping(a, *env->global, phi);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
}

TEST(Enveloping, TooSmallGlobalRingFailsSpanning) {
  // T' = Z_2^4 with the shift on the first three coordinates: the fourth
  // coordinate is never reached by translates of R
  auto t = cyclic_product({2, 2, 2, 2});
  auto beta = RingMorphism::factor_action(t, {1, 2, 0, 3});
  GlobalTwistedAction g(beta, t.one(), false);
  auto a = f1();
  auto t3 = cyclic_product({2, 2, 2});
  std::vector<Elem> emb(a.ring().size());
  for (Elem x = 0; x < emb.size(); ++x) {
    auto v = t3.decode(a.envelope()->embedding[x]);
    emb[x] = tuple(t, {v.coords[0][0], v.coords[1][0], v.coords[2][0], 0});
  }
  auto rep = verify_enveloping(a, g, RingMorphism(a.ring(), t, emb));
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.details["conditions"]["ii"], "fail");
}

TEST(Enveloping, IdentityCase) {
  auto r = cyclic_product({4, 2});
  auto a = trivial_global(r);
  const auto* env = a.envelope();
  auto rep = verify_enveloping(a, *env->global, RingMorphism(a.ring(), env->global->ring(), env->embedding));
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
}

TEST(Enveloping, ViaDecomposition) {
  auto rep = enveloping_via_decomposition(f1());
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
  EXPECT_EQ(rep.details["summands"], 2);
  auto rep3 = enveloping_via_decomposition(f3());
  EXPECT_EQ(rep3.status, Status::reported);
  EXPECT_EQ(rep3.details["finite_type"], false);
  auto repg = enveloping_via_decomposition(trivial_global(cyclic_product({2, 2})));
  EXPECT_TRUE(repg.passed());
}

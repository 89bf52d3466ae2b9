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

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tpsa/finite_ring.hpp"
#include "tpsa/paction.hpp"
#include "tpsa/report.hpp"

namespace tpsa::testing {

inline FiniteRing cyclic_product(std::initializer_list<std::uint32_t> ms) {
  std::vector<FactorSpec> f;
  for (auto m : ms) f.push_back(FactorSpec::cyclic(m));
  return FiniteRing(f);
}

inline Elem tuple(const FiniteRing& r, std::vector<std::uint32_t> residues) {
  RingElement e;
  for (auto x : residues) e.coords.push_back({x});
  return r.encode(e);
}

/// T = Z_p^3 with the cyclic coordinate shift, restricted by e = (1,1,0).
inline TwistedPartialAction shift_restriction(std::uint32_t p, std::uint32_t lambda, bool product) {
  auto t = cyclic_product({p, p, p});
  auto beta = RingMorphism::factor_action(t, {1, 2, 0});
  auto g = std::make_shared<const GlobalTwistedAction>(beta, tuple(t, {lambda, lambda, lambda}), product);
  return restrict_global(g, tuple(t, {1, 1, 0}));
}

inline TwistedPartialAction f1() { return shift_restriction(2, 1, false); }
inline TwistedPartialAction f2() { return shift_restriction(5, 2, true); }

/// Z_p x Z_p, D_1 = first coordinate, D_{-1} = second, alpha_1((0,a)) = (a,0).
inline TwistedPartialAction swap_pair(std::uint32_t p, std::uint32_t twist) {
  auto r = cyclic_product({p, p});
  FiniteSupportSpec s;
  s.bound = 1;
  s.idempotents = {{1, tuple(r, {1, 0})}, {-1, tuple(r, {0, 1})}};
  for (std::uint32_t a = 0; a < p; ++a) s.alpha[1][tuple(r, {0, a})] = tuple(r, {a, 0});
  if (twist != 1) {
    s.w[{1, -1}] = tuple(r, {twist, 0});
    s.w[{-1, 1}] = tuple(r, {0, twist});
  }
  return make_finite_support(r, s);
}

inline TwistedPartialAction f3() { return swap_pair(2, 1); }
inline TwistedPartialAction f3p() { return swap_pair(5, 2); }

/// Global action with beta = id on a ring, seen as a partial action (e = 1).
inline TwistedPartialAction trivial_global(const FiniteRing& r) {
  auto g = std::make_shared<const GlobalTwistedAction>(RingMorphism::identity(r), r.one(), false);
  return restrict_global(g, r.one());
}

/// Z_2^4 with D_1 = (*,*,0,0), D_{-1} = (0,0,*,*), alpha_1((0,0,a,b)) = (a,b,0,0).
inline TwistedPartialAction block_pair() {
  auto r = cyclic_product({2, 2, 2, 2});
  FiniteSupportSpec s;
  s.bound = 1;
  s.idempotents = {{1, tuple(r, {1, 1, 0, 0})}, {-1, tuple(r, {0, 0, 1, 1})}};
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) s.alpha[1][tuple(r, {0, 0, a, b})] = tuple(r, {a, b, 0, 0});
  return make_finite_support(r, s);
}

/// Z_2^3 partial shift: alpha_1((0,a,b)) = (a,b,0), alpha_2((0,0,a)) = (a,0,0).
inline TwistedPartialAction chain3() {
  auto r = cyclic_product({2, 2, 2});
  FiniteSupportSpec s;
  s.bound = 2;
  s.idempotents = {{1, tuple(r, {1, 1, 0})}, {-1, tuple(r, {0, 1, 1})}, {2, tuple(r, {1, 0, 0})}, {-2, tuple(r, {0, 0, 1})}};
  for (std::uint32_t a = 0; a < 2; ++a) {
    for (std::uint32_t b = 0; b < 2; ++b) s.alpha[1][tuple(r, {0, a, b})] = tuple(r, {a, b, 0});
    s.alpha[2][tuple(r, {0, 0, a})] = tuple(r, {a, 0, 0});
  }
  return make_finite_support(r, s);
}

/// Finite-support action with N = 0 (only D_0 = R).
inline TwistedPartialAction trivial_partial(const Ring& r) { return make_finite_support(r, FiniteSupportSpec{}); }

inline Elem parse_element(const Ring& r, const std::string& text) {
  for (Elem a = 0; a < r.size(); ++a) {
    if (r.format(a) == text) return a;
  }
  return kNoElem;
}

inline const json* witness_for(const VerificationReport& rep, const std::string& axiom) {
  for (const auto& w : rep.witnesses) {
    if (w.at("axiom") == axiom) return &w;
  }
  return nullptr;
}

/// Re-evaluates a reported witness against the literal axiom statement.
inline bool witness_is_violation(const TwistedPartialAction& act, const json& w) {
  const Ring& r = act.ring();
  const std::string axiom = w.at("axiom");
  const auto idx = w.at("indices").get<std::vector<Index>>();
  const Elem a = w.contains("element") ? parse_element(r, w.at("element")) : kNoElem;
  if (axiom == "i") return act.idempotent(0) != r.one() || act.alpha(0, a) != a;
  if (axiom == "ii") {
    const Index i = idx[0], j = idx[1];
    const Elem src = r.mul(act.idempotent(-i), act.idempotent(j));
    const Elem dst = r.mul(act.idempotent(i), act.idempotent(i + j));
    if (r.mul(a, src) == a) {
      const Elem b = act.alpha(i, a);
      return b >= r.size() || r.mul(b, dst) != b;
    }
    // a is a target element outside the image
    for (Elem x : idempotent_members(r, src)) {
      if (act.alpha(i, x) == a) return false;
    }
    return r.mul(a, dst) == a;
  }
  if (axiom == "iii") {
    const Index i = idx[0], j = idx[1];
    const Elem x = act.alpha(j, a);
    if (x >= r.size()) return true;
    return act.alpha(i, x) != r.mul(act.w(i, j), act.alpha(i + j, a), act.w_inv(i, j));
  }
  if (axiom == "iv") return act.w(idx[0], 0) != act.idempotent(idx[0]) || act.w(0, idx[0]) != act.idempotent(idx[0]);
  if (axiom == "v") {
    const Index i = idx[0], j = idx[1], k = idx[2];
    return r.mul(act.alpha(i, r.mul(a, act.w(j, k))), act.w(i, j + k)) !=
           r.mul(act.alpha(i, a), act.w(i, j), act.w(i + j, k));
  }
  if (axiom == "invertible") {
    const Index i = idx[0], j = idx[1];
    const Elem e = r.mul(act.idempotent(i), act.idempotent(i + j));
    const Elem v = act.w(i, j);
    for (Elem b : idempotent_members(r, e)) {
      if (r.mul(v, b) == e && r.mul(b, v) == e) return false;
    }
    return true;
  }
  return false;
}

struct Mutation {
  std::string axiom;
  TwistedPartialAction action;
};

/// One broken action per axiom, plus a non-invertible cocycle value.
inline std::vector<Mutation> axiom_mutations() {
  std::vector<Mutation> cases;
  {
    auto a = f3();
    std::vector<Elem> swap(4);
    for (Elem x = 0; x < 4; ++x) swap[x] = ((x & 1U) << 1) | (x >> 1);
    cases.push_back({"i", a.with_alpha(0, swap)});
  }
  {
    auto a = f3();
    std::vector<Elem> zero(4, kNoElem);
    for (Elem x : a.domain(-1)) zero[x] = 0;
    cases.push_back({"ii", a.with_alpha(1, zero)});
  }
  {
    auto a = block_pair();
    const Ring& r = a.ring();
    std::vector<Elem> twisted(r.size(), kNoElem);
    for (Elem x : a.domain(1)) {
      RingElement v = static_cast<const FiniteRing&>(cyclic_product({2, 2, 2, 2})).decode(x);
      const Elem b = tuple(cyclic_product({2, 2, 2, 2}), {0, 0, v.coords[1][0], v.coords[0][0]});
      twisted[x] = b;
    }
    cases.push_back({"iii", a.with_alpha(-1, twisted)});
  }
  {
    auto a = f2();
    cases.push_back({"iv", a.with_w(1, 0, a.ring().times(a.idempotent(1), 2))});
  }
  {
    auto a = f3p();
    auto r = cyclic_product({5, 5});
    cases.push_back({"v", a.with_w(-1, 1, tuple(r, {0, 3}))});
  }
  {
    auto a = f1();
    cases.push_back({"invertible", a.with_w(1, 2, 0)});
  }
  return cases;
}

}  // namespace tpsa::testing

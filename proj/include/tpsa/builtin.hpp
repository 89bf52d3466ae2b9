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

#include <string>
#include <vector>

#include "tpsa/fixture.hpp"

namespace tpsa {

namespace detail {

inline RingElement residues(std::initializer_list<std::uint32_t> xs) {
  RingElement e;
  for (auto x : xs) e.coords.push_back({x});
  return e;
}

/// Z_p^3 with the coordinate shift, restricted to e = (1,1,0).
inline FixtureSpec shift_spec(std::string name, std::uint32_t p, std::uint32_t lambda) {
  FixtureSpec s;
  s.name = std::move(name);
  s.presentation = Presentation::periodic;
  s.factors.assign(3, FactorSpec::cyclic(p));
  s.permutation = {1, 2, 0};
  s.conjugants.assign(3, {});
  s.product_cocycle = lambda != 1;
  s.lambda = residues({lambda, lambda, lambda});
  s.e = residues({1, 1, 0});
  return s;
}

/// Z_p x Z_p with alpha_1((0,a)) = (a,0) and w_{1,-1} = (t,0), w_{-1,1} = (0,t).
inline FixtureSpec swap_spec(std::string name, std::uint32_t p, std::uint32_t twist) {
  FixtureSpec s;
  s.name = std::move(name);
  s.presentation = Presentation::finite_support;
  s.factors.assign(2, FactorSpec::cyclic(p));
  s.bound = 1;
  s.idempotents = {{1, residues({1, 0})}, {-1, residues({0, 1})}};
  for (std::uint32_t a = 0; a < p; ++a) s.maps[1].emplace_back(residues({0, a}), residues({a, 0}));
  if (twist != 1) {
    s.units[{1, -1}] = residues({twist, 0});
    s.units[{-1, 1}] = residues({0, twist});
  }
  return s;
}

}  // namespace detail

/// The four reference fixtures: two restrictions of a cyclic shift (f1, f2)
/// and two finite-support swaps (f3, f3p).
inline std::vector<FixtureSpec> builtin_fixture_specs() {
  return {detail::shift_spec("f1", 2, 1), detail::shift_spec("f2", 5, 2), detail::swap_spec("f3", 2, 1),
          detail::swap_spec("f3p", 5, 2)};
}

inline Fixture builtin_fixture(const std::string& name) {
  for (auto& s : builtin_fixture_specs()) {
    if (s.name == name) return make_fixture(std::move(s));
  }
  throw Error(ErrorCode::schema_error, "no built-in fixture named " + name);
}

}  // namespace tpsa

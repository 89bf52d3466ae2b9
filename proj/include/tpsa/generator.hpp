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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tpsa/fixture.hpp"
#include "tpsa/skewseries.hpp"

namespace tpsa {

struct GeneratorCaps {
  enum class Mix { both, restricted_global, finite_support };

  Mix mix = Mix::both;
  bool allow_matrix = true;
  std::size_t max_base = 64;           // elements of R
  std::size_t max_global = 256;        // elements of T for restrictions
  std::size_t max_materialized = 512;  // elements of the finite power series ring
  int max_bound = 3;
};

struct GeneratorStats {
  std::size_t attempts = 0;
  std::size_t accepted = 0;
  std::size_t rejected_axioms = 0;
  std::size_t rejected_size = 0;
  std::size_t rejected_construction = 0;

  json to_json() const {
    return {{"attempts", attempts},
            {"accepted", accepted},
            {"rejected_axioms", rejected_axioms},
            {"rejected_size", rejected_size},
            {"rejected_construction", rejected_construction}};
  }
};

/// Deterministic stream of fixtures that pass check_axioms.
///
/// Restrictions draw a random product ring T, a factor permutation with
/// optional matrix conjugation, a beta-fixed central unit for the cocycle and
/// a central idempotent e. Finite-support fixtures place copies of a factor at
/// integer positions on one or two lines; alpha_i carries the copy at q to the
/// copy at q - i (conjugated on matrix lines) and w is the product cocycle of
/// a scalar unit. A quarter of the finite-support drafts get one unit or map
/// entry perturbed at random, which the axiom filter usually rejects.
class FixtureGenerator {
 public:
  explicit FixtureGenerator(std::uint64_t seed, GeneratorCaps caps = {}) : gen_(seed), seed_(seed), caps_(caps) {}

  Fixture next() {
    for (;;) {
      ++stats_.attempts;
      const bool fs = caps_.mix == GeneratorCaps::Mix::finite_support ||
                      (caps_.mix == GeneratorCaps::Mix::both && gen_() % 2 == 1);
      std::optional<FixtureSpec> spec;
      try {
        spec = fs ? draft_finite_support() : draft_restriction();
      } catch (const Error&) {
        ++stats_.rejected_construction;
        continue;
      }
      if (!spec) {
        ++stats_.rejected_size;
        continue;
      }
      spec->name = "gen-" + std::to_string(seed_) + "-" + std::to_string(stats_.accepted);
      spec->seed = seed_;
      Fixture f;
      try {
        f = make_fixture(*spec);
      } catch (const Error&) {
        ++stats_.rejected_construction;
        continue;
      }
      if (f.action.ring().size() > caps_.max_base) {
        ++stats_.rejected_size;
        continue;
      }
      if (!check_axioms(f.action).passed()) {
        ++stats_.rejected_axioms;
        continue;
      }
      ++stats_.accepted;
      return f;
    }
  }

  const GeneratorStats& stats() const { return stats_; }

 private:
  std::vector<FactorSpec> menu() const {
    std::vector<FactorSpec> m{FactorSpec::cyclic(2), FactorSpec::cyclic(3), FactorSpec::cyclic(4), FactorSpec::cyclic(5)};
    if (caps_.allow_matrix) m.push_back(FactorSpec::matrix(2, 2));
    return m;
  }

  static std::vector<std::uint32_t> unit_of(const FactorSpec& f, std::uint32_t k) {
    if (f.kind == FactorSpec::Kind::matrix) {
      std::vector<std::uint32_t> d(f.digits(), 0);
      for (std::uint32_t r = 0; r < f.size; ++r) d[r * f.size + r] = 1;
      return d;
    }
    std::vector<std::uint32_t> units;
    for (std::uint32_t x = 1; x < f.modulus; ++x) {
      if (std::gcd(x, f.modulus) == 1) units.push_back(x);
    }
    return {units[k % units.size()]};
  }

  std::optional<FixtureSpec> draft_restriction() {
    const auto m = menu();
    std::vector<FactorSpec> factors;
    const int count = 1 + static_cast<int>(gen_() % 3);
    for (int k = 0; k < count; ++k) factors.push_back(m[pick(gen_, m.size())]);
    if (gen_() % 2) factors.push_back(factors.front());
    if (detail::cardinality(factors) == 0 || detail::cardinality(factors) > caps_.max_global) return std::nullopt;
    FiniteRing t(factors);
    FixtureSpec s;
    s.presentation = Presentation::periodic;
    s.factors = factors;
    s.permutation.resize(factors.size());
    std::iota(s.permutation.begin(), s.permutation.end(), std::size_t{0});
    for (int rounds = 0; rounds < 4; ++rounds) {
      const std::size_t a = pick(gen_, factors.size()), b = pick(gen_, factors.size());
      if (factors[s.permutation[a]] == factors[s.permutation[b]]) std::swap(s.permutation[a], s.permutation[b]);
    }
    s.conjugants.assign(factors.size(), {});
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (factors[f].kind == FactorSpec::Kind::matrix && gen_() % 2) s.conjugants[f] = {1, 1, 0, 1};
    }
    auto beta = RingMorphism::factor_action(t, s.permutation, s.conjugants);
    std::vector<Elem> units;
    for (Elem x = 0; x < t.size(); ++x) {
      if (t.is_central(x) && beta(x) == x && t.corner_inverse(x, t.one()) != kNoElem) units.push_back(x);
    }
    s.product_cocycle = gen_() % 2 == 0;
    s.lambda = t.decode(units[pick(gen_, units.size())]);
    if (!s.product_cocycle) s.lambda = t.decode(t.one());
    std::vector<Elem> ids;
    for (Elem e : central_idempotents(t)) {
      if (e != 0) ids.push_back(e);
    }
    s.e = t.decode(ids[pick(gen_, ids.size())]);
    return s;
  }

  std::optional<FixtureSpec> draft_finite_support() {
    const auto m = menu();
    struct Line {
      FactorSpec factor;
      std::vector<int> positions;
      std::vector<std::uint32_t> conj;
      std::vector<std::uint32_t> lambda;
      std::size_t first = 0;  // index of its first factor in the ring
    };
    const int span = 1 + static_cast<int>(pick(gen_, static_cast<std::size_t>(caps_.max_bound)));
    std::vector<Line> lines(1 + pick(gen_, 2));
    std::vector<FactorSpec> factors;
    for (auto& l : lines) {
      l.factor = m[pick(gen_, m.size())];
      for (int q = 0; q <= span; ++q) {
        if (gen_() % 3 != 0) l.positions.push_back(q);
      }
      if (l.positions.empty()) l.positions.push_back(0);
      if (l.factor.kind == FactorSpec::Kind::matrix && gen_() % 2) l.conj = {1, 1, 0, 1};
      l.lambda = gen_() % 2 ? unit_of(l.factor, static_cast<std::uint32_t>(gen_() % 8)) : unit_of(l.factor, 0);
      if (l.factor.kind == FactorSpec::Kind::cyclic && gen_() % 2) l.lambda = {1};
      l.first = factors.size();
      for (std::size_t k = 0; k < l.positions.size(); ++k) factors.push_back(l.factor);
    }
    const auto card = detail::cardinality(factors);
    if (card == 0 || card > caps_.max_base) return std::nullopt;
    int bound = 0;
    for (const auto& l : lines) bound = std::max(bound, l.positions.back() - l.positions.front());
    FiniteRing r(factors);

    auto locate = [&](const Line& l, int q) -> std::optional<std::size_t> {
      auto it = std::find(l.positions.begin(), l.positions.end(), q);
      if (it == l.positions.end()) return std::nullopt;
      return l.first + static_cast<std::size_t>(it - l.positions.begin());
    };
    auto factor_one = [](const FactorSpec& f) { return unit_of(f, 0); };
    auto element = [&](auto digit) {
      RingElement e;
      for (const auto& l : lines) {
        for (int q : l.positions) e.coords.push_back(digit(l, q));
      }
      return e;
    };
    auto zero_of = [](const FactorSpec& f) { return std::vector<std::uint32_t>(f.digits(), 0); };
    // 1_i: copies at q with q + i on the line
    auto unit_idem = [&](Index i) {
      return element([&](const Line& l, int q) {
        return locate(l, q + static_cast<int>(i)) ? factor_one(l.factor) : zero_of(l.factor);
      });
    };
    auto power = [&](const FactorSpec& f, std::vector<std::uint32_t> x, long long k) {
      std::vector<std::uint32_t> out = factor_one(f);
      if (k < 0) {
        x = RingMorphism::factor_inverse(f, x);
        k = -k;
      }
      for (long long t = 0; t < k; ++t) out = detail::ProductBackend::mul_factor(f, out, x);
      return out;
    };

    FixtureSpec s;
    s.presentation = Presentation::finite_support;
    s.factors = factors;
    s.bound = bound;
    for (Index i = -bound; i <= bound; ++i) {
      if (i == 0) continue;
      s.idempotents[i] = unit_idem(i);
      const Elem dom = r.encode(unit_idem(-i));
      auto& pairs = s.maps[i];
      for (Elem a = 0; a < r.size(); ++a) {
        if (r.mul(a, dom) != a) continue;
        const RingElement x = r.decode(a);
        RingElement y = element([&](const Line& l, int) { return zero_of(l.factor); });
        for (const auto& l : lines) {
          for (int q : l.positions) {
            auto dst = locate(l, q - static_cast<int>(i));
            if (!dst) continue;
            auto c = x.coords[*locate(l, q)];
            if (!l.conj.empty()) {
              const auto ci = power(l.factor, l.conj, i);
              c = detail::ProductBackend::mul_factor(
                  l.factor, detail::ProductBackend::mul_factor(l.factor, ci, c), RingMorphism::factor_inverse(l.factor, ci));
            }
            y.coords[*dst] = c;
          }
        }
        pairs.emplace_back(x, y);
      }
      for (Index j = -bound; j <= bound; ++j) {
        if (j == 0 || i + j < -bound || i + j > bound) continue;
        const Index ij = i * j;
        RingElement w = element([&](const Line& l, int q) {
          const bool in = locate(l, q + static_cast<int>(i)) && locate(l, q + static_cast<int>(i + j));
          return in ? power(l.factor, l.lambda, ij) : zero_of(l.factor);
        });
        if (!(w == r.decode(r.mul(r.encode(unit_idem(i)), r.encode(unit_idem(i + j)))))) s.units[{i, j}] = w;
      }
    }
    if (bound > 0 && gen_() % 4 == 0) perturb(s, r);

    std::size_t power_size = 1;
    for (Index i = 0; i <= bound; ++i) {
      power_size *= idempotent_members(r, i == 0 ? r.one() : r.encode(s.idempotents[i])).size();
      if (power_size > caps_.max_materialized) return std::nullopt;
    }
    return s;
  }

  void perturb(FixtureSpec& s, const FiniteRing& r) {
    const Index i = 1 + static_cast<Index>(pick(gen_, static_cast<std::size_t>(s.bound)));
    const Elem d = r.encode(s.idempotents[i]);
    const auto members = idempotent_members(r, d);
    if (gen_() % 2) {
      std::vector<Elem> units;
      for (Elem x : members) {
        if (r.corner_inverse(x, d) != kNoElem) units.push_back(x);
      }
      if (!units.empty()) s.units[{i, -i}] = r.decode(units[pick(gen_, units.size())]);
    } else {
      auto& pairs = s.maps[i];
      if (pairs.size() > 1) {
        const std::size_t a = pick(gen_, pairs.size()), b = pick(gen_, pairs.size());
        std::swap(pairs[a].second, pairs[b].second);
      }
    }
  }

  std::mt19937_64 gen_;
  std::uint64_t seed_;
  GeneratorCaps caps_;
  GeneratorStats stats_;
};

}  // namespace tpsa

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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpsa/ideal.hpp"
#include "tpsa/paction.hpp"
#include "tpsa/skewseries.hpp"

namespace tpsa {

using ElemPair = std::pair<Elem, Elem>;

namespace detail {

inline void require_proper(const IdealSet& p) {
  if (p.is_whole()) throw Error(ErrorCode::not_proper, "the whole ring is never prime");
}

inline void require_invariant(const TwistedPartialAction& act, const IdealSet& p) {
  if (!is_alpha_invariant(act, p)) throw Error(ErrorCode::not_alpha_invariant, "ideal is not alpha-invariant");
}

/// Deduplicated products x r over x in xs and r in the additive generators of R.
inline std::vector<Elem> spread_right(const Ring& r, const std::vector<Elem>& xs) {
  std::vector<char> seen(r.size(), 0);
  std::vector<Elem> out;
  for (Elem x : xs) {
    for (Elem g : r.additive_generators()) {
      Elem y = r.mul(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  }
  return out;
}

/// First pair (a, b) outside P with left(a) * right(b) inside P.
template <typename Left, typename Right>
std::optional<ElemPair> find_annihilating_pair(const IdealSet& p, Left left, Right right) {
  const Ring& r = p.ring();
  std::vector<std::vector<Elem>> rights(r.size());
  for (Elem b = 0; b < r.size(); ++b) {
    if (!p.contains(b)) rights[b] = right(b);
  }
  for (Elem a = 0; a < r.size(); ++a) {
    if (p.contains(a)) continue;
    const auto ls = left(a);
    for (Elem b = 0; b < r.size(); ++b) {
      if (p.contains(b)) continue;
      bool inside = true;
      for (Elem x : ls) {
        for (Elem y : rights[b]) {
          if (!p.contains(r.mul(x, y))) {
            inside = false;
            break;
          }
        }
        if (!inside) break;
      }
      if (inside) return ElemPair{a, b};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// A pair a, b outside P with aRb inside P, if any.
inline std::optional<ElemPair> prime_witness(const IdealSet& p) {
  detail::require_proper(p);
  const Ring& r = p.ring();
  return detail::find_annihilating_pair(
      p, [&](Elem a) { return detail::spread_right(r, {a}); }, [](Elem b) { return std::vector<Elem>{b}; });
}

inline bool is_prime_ideal(const IdealSet& p) { return !prime_witness(p).has_value(); }

/// All proper prime ideals of a complete ideal lattice. AB lies in P iff
/// (A+P)(B+P) does, and every ideal strictly above P contains a cover of P,
/// so P is prime iff no two covers of P multiply into P.
inline std::vector<IdealSet> prime_ideals(const std::vector<IdealSet>& lattice) {
  const std::size_t n = lattice.size();
  std::vector<std::vector<std::uint64_t>> bits(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& m = lattice[k].mask();
    bits[k].assign((m.size() + 63) / 64, 0);
    for (Elem a : lattice[k].members()) bits[k][a / 64] |= std::uint64_t{1} << (a % 64);
  }
  auto strictly_below = [&](std::size_t x, std::size_t y) {
    if (lattice[x].size() >= lattice[y].size()) return false;
    for (std::size_t w = 0; w < bits[x].size(); ++w) {
      if (bits[x][w] & ~bits[y][w]) return false;
    }
    return true;
  };
  std::vector<IdealSet> out;
  for (std::size_t p = 0; p < n; ++p) {
    if (lattice[p].is_whole()) continue;
    std::vector<std::size_t> above;
    for (std::size_t q = 0; q < n; ++q) {
      if (strictly_below(p, q)) above.push_back(q);
    }
    std::vector<std::size_t> covers;
    for (std::size_t q : above) {
      bool minimal = true;
      for (std::size_t s : above) {
        if (strictly_below(s, q)) {
          minimal = false;
          break;
        }
      }
      if (minimal) covers.push_back(q);
    }
    bool prime = true;
    for (std::size_t x = 0; x < covers.size() && prime; ++x) {
      for (std::size_t y = 0; y < covers.size() && prime; ++y) {
        if (product_within(lattice[covers[x]], lattice[covers[y]], lattice[p])) prime = false;
      }
    }
    if (prime) out.push_back(lattice[p]);
  }
  return out;
}

/// Intersection of a family inside a ring; the empty family gives the ring.
inline IdealSet intersection_of(const Ring& ring, const std::vector<IdealSet>& family) {
  IdealSet acc = IdealSet::whole(ring);
  for (const auto& i : family) acc = intersect(acc, i);
  return acc;
}

/// The alpha-invariant ideal sum_i R alpha_i(a 1_{-i}) R.
inline IdealSet alpha_invariant_closure(const TwistedPartialAction& act, Elem a) {
  std::vector<Elem> gens;
  for (Index i : act.index_window()) gens.push_back(act.alpha_cut(i, a));
  return ideal_closure(act.ring(), gens);
}

/// {alpha_i(a 1_{-i})} over the index window; later indices repeat these by
/// periodicity or vanish outside the support.
inline std::vector<Elem> alpha_orbit(const TwistedPartialAction& act, Elem a, bool nonnegative) {
  std::vector<Elem> out;
  for (Index i : nonnegative ? act.nonnegative_window() : act.index_window()) out.push_back(act.alpha_cut(i, a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// A pair a, b outside P with alpha_j(a1_{-j}) R alpha_i(b1_{-i}) inside P
/// for all i, j.
inline std::optional<ElemPair> alpha_prime_witness(const TwistedPartialAction& act, const IdealSet& p) {
  detail::require_proper(p);
  detail::require_invariant(act, p);
  const Ring& r = act.ring();
  return detail::find_annihilating_pair(
      p, [&](Elem a) { return detail::spread_right(r, alpha_orbit(act, a, false)); },
      [&](Elem b) { return alpha_orbit(act, b, false); });
}

/// A pair a, b outside P with a R alpha_j(b1_{-j}) inside P for all j >= 0.
inline std::optional<ElemPair> strongly_alpha_prime_witness(const TwistedPartialAction& act, const IdealSet& p) {
  detail::require_proper(p);
  detail::require_invariant(act, p);
  const Ring& r = act.ring();
  return detail::find_annihilating_pair(
      p, [&](Elem a) { return detail::spread_right(r, {a}); }, [&](Elem b) { return alpha_orbit(act, b, true); });
}

inline bool is_alpha_prime(const TwistedPartialAction& act, const IdealSet& p) {
  return !alpha_prime_witness(act, p).has_value();
}

inline bool is_strongly_alpha_prime(const TwistedPartialAction& act, const IdealSet& p) {
  return !strongly_alpha_prime_witness(act, p).has_value();
}

/// Ideal pair (J, K) violating primality of P, with J, K drawn from the
/// given candidate lists.
inline std::optional<std::pair<IdealSet, IdealSet>> violating_ideal_pair(const IdealSet& p,
                                                                       const std::vector<IdealSet>& left,
                                                                       const std::vector<IdealSet>& right) {
  for (const auto& j : left) {
    if (j.subset_of(p)) continue;
    for (const auto& k : right) {
      if (k.subset_of(p)) continue;
      if (product_within(j, k, p)) return std::make_pair(j, k);
    }
  }
  return std::nullopt;
}

/// Alpha-primality straight from the definition: JK inside P for
/// alpha-invariant J, K forces J or K inside P.
inline bool is_alpha_prime_by_ideals(const TwistedPartialAction& act, const IdealSet& p,
                                     const std::vector<IdealSet>& lattice) {
  detail::require_proper(p);
  detail::require_invariant(act, p);
  std::vector<IdealSet> inv;
  for (const auto& i : lattice) {
    if (is_alpha_invariant(act, i)) inv.push_back(i);
  }
  return !violating_ideal_pair(p, inv, inv).has_value();
}

/// Strong alpha-primality from the definition: MN inside P for an ideal M
/// and an alpha-ideal N forces M or N inside P.
inline bool is_strongly_alpha_prime_by_ideals(const TwistedPartialAction& act, const IdealSet& p,
                                              const std::vector<IdealSet>& lattice) {
  detail::require_proper(p);
  detail::require_invariant(act, p);
  std::vector<IdealSet> alpha;
  for (const auto& i : lattice) {
    if (is_alpha_ideal(act, i)) alpha.push_back(i);
  }
  return !violating_ideal_pair(p, lattice, alpha).has_value();
}

struct RadicalBundle {
  IdealSet nil_star;      // intersection of primes
  IdealSet nil_alpha;     // intersection of alpha-primes
  IdealSet n_alpha;       // intersection of strongly alpha-primes
  std::vector<IdealSet> primes;
  std::vector<IdealSet> alpha_primes;
  std::vector<IdealSet> strongly_alpha_primes;

  json to_json() const {
    auto list = [](const std::vector<IdealSet>& v) {
      json out = json::array();
      for (const auto& i : v) out.push_back(i.format_members());
      return out;
    };
    return {{"nil_star", nil_star.format_members()},
            {"nil_alpha", nil_alpha.format_members()},
            {"n_alpha", n_alpha.format_members()},
            {"primes", list(primes)},
            {"alpha_primes", list(alpha_primes)},
            {"strongly_alpha_primes", list(strongly_alpha_primes)}};
  }
};

inline RadicalBundle radicals(const TwistedPartialAction& act, const std::vector<IdealSet>& lattice) {
  const Ring& r = act.ring();
  RadicalBundle b;
  b.primes = prime_ideals(lattice);
  for (const auto& i : lattice) {
    if (i.is_whole() || !is_alpha_invariant(act, i)) continue;
    if (is_alpha_prime(act, i)) b.alpha_primes.push_back(i);
    if (is_strongly_alpha_prime(act, i)) b.strongly_alpha_primes.push_back(i);
  }
  b.nil_star = intersection_of(r, b.primes);
  b.nil_alpha = intersection_of(r, b.alpha_primes);
  b.n_alpha = intersection_of(r, b.strongly_alpha_primes);
  return b;
}

inline RadicalBundle radicals(const TwistedPartialAction& act) { return radicals(act, enumerate_ideals(act.ring())); }

/// Nil_alpha(R)<x;alpha,w>, the closed form for the prime radical of the
/// Laurent ring.
inline SeriesIdeal laurent_radical_formula(const RadicalBundle& b, const SeriesRing& h) {
  return ideal_extension(b.nil_alpha, h);
}

/// C_0 + sum_{i >= 1} (C_+ cap D_i) x^i, the shape of the closed forms for
/// the prime radical of a power series ring.
struct PowerRadicalFormula {
  IdealSet constant;
  IdealSet higher;
  bool theorem_backed = false;

  bool contains(const SkewSeries& f) const {
    for (auto [i, c] : f.terms()) {
      if (!(i == 0 ? constant : higher).contains(c)) return false;
    }
    return true;
  }

  IdealSet on(const MaterializedSeries& m) const {
    return IdealSet::from_predicate(m.ring, [&](Elem a) { return contains(m.to_series(a)); });
  }

  std::string label() const { return theorem_backed ? "theorem-backed" : "conjectural"; }
};

/// (N_alpha cap Nil_*) + sum_{i>=1} (N_alpha cap D_i) x^i. Backed by a
/// theorem when the action has an enveloping action.
inline PowerRadicalFormula powerseries_radical_formula(const TwistedPartialAction& act, const RadicalBundle& b) {
  return {intersect(b.n_alpha, b.nil_star), b.n_alpha, act.envelope() != nullptr};
}

/// Contraction K cap R of an ideal of a materialized series ring.
inline IdealSet contraction(const IdealSet& k, const MaterializedSeries& m) {
  const Ring& r = m.handle.base();
  return IdealSet::from_predicate(r, [&](Elem a) { return k.contains(m.monomial(a, 0)); });
}

}  // namespace tpsa

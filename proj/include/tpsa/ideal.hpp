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
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tpsa/error.hpp"
#include "tpsa/ring.hpp"

namespace tpsa {

/// Explicit subset of a ring closed under addition (two-sided ideal, right
/// ideal, or any additive subgroup, depending on how it was built).
class IdealSet {
 public:
  IdealSet() = default;

  IdealSet(Ring ring, std::vector<char> mask, std::vector<Elem> generators)
      : ring_(std::move(ring)), mask_(std::move(mask)), generators_(std::move(generators)) {
    for (Elem a = 0; a < mask_.size(); ++a) {
      if (mask_[a]) members_.push_back(a);
    }
  }

  static IdealSet zero(const Ring& ring) {
    std::vector<char> m(ring.size(), 0);
    m[0] = 1;
    return {ring, std::move(m), {}};
  }
  static IdealSet whole(const Ring& ring) {
    return {ring, std::vector<char>(ring.size(), 1), {ring.one()}};
  }
  static IdealSet from_predicate(const Ring& ring, const std::function<bool(Elem)>& pred) {
    std::vector<char> m(ring.size(), 0);
    for (Elem a = 0; a < ring.size(); ++a) m[a] = pred(a) ? 1 : 0;
    return {ring, std::move(m), {}};
  }

  const Ring& ring() const { return ring_; }
  bool contains(Elem a) const { return mask_[a] != 0; }
  std::size_t size() const { return members_.size(); }
  bool is_zero() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == ring_.size(); }
  const std::vector<Elem>& members() const { return members_; }
  const std::vector<char>& mask() const { return mask_; }
  const std::vector<Elem>& generators() const { return generators_; }

  bool subset_of(const IdealSet& other) const {
    for (Elem a : members_) {
      if (!other.contains(a)) return false;
    }
    return true;
  }

  std::vector<Elem> additive_generators() const {
    AdditiveSubgroup span(ring_);
    std::vector<Elem> gens;
    for (Elem a : members_) {
      if (span.size() == members_.size()) break;
      if (span.add_generator(a)) gens.push_back(a);
    }
    return gens;
  }

  std::vector<std::string> format_members() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (Elem a : members_) out.push_back(ring_.format(a));
    return out;
  }

  friend bool operator==(const IdealSet& a, const IdealSet& b) { return a.members_ == b.members_; }

 private:
  Ring ring_;
  std::vector<char> mask_;
  std::vector<Elem> members_;
  std::vector<Elem> generators_;
};

enum class Side { two_sided, right, left };

namespace detail {

/// Saturates span(gens) under multiplication by additive generators of the
/// ring on the requested side(s). Closing on generators suffices because
/// r -> r*h and r -> h*r are additive.
inline AdditiveSubgroup saturate(const Ring& ring, AdditiveSubgroup span, std::vector<Elem> pending, Side side) {
  const auto& rgens = ring.additive_generators();
  std::size_t idx = 0;
  auto push = [&](Elem x) {
    if (span.add_generator(x)) pending.push_back(x);
  };
  while (idx < pending.size()) {
    Elem h = pending[idx++];
    for (Elem r : rgens) {
      if (side != Side::left) push(ring.mul(h, r));
      if (side != Side::right) push(ring.mul(r, h));
    }
    if (span.size() > ring.size()) throw Error(ErrorCode::cap_exceeded, "closure outgrew its ring");
  }
  return span;
}

}  // namespace detail

/// Smallest ideal (of the given side) containing gens.
inline IdealSet closure(const Ring& ring, const std::vector<Elem>& gens, Side side = Side::two_sided) {
  AdditiveSubgroup span(ring);
  std::vector<Elem> pending;
  for (Elem g : gens) {
    if (g >= ring.size()) throw Error(ErrorCode::not_an_ideal, "generator outside ring");
    if (span.add_generator(g)) pending.push_back(g);
  }
  span = detail::saturate(ring, std::move(span), std::move(pending), side);
  return {ring, std::move(span).release_mask(), gens};
}

/// ideal_closure: two-sided ideal generated by gens.
inline IdealSet ideal_closure(const Ring& ring, const std::vector<Elem>& gens) {
  return closure(ring, gens, Side::two_sided);
}

inline IdealSet right_ideal_closure(const Ring& ring, const std::vector<Elem>& gens) {
  return closure(ring, gens, Side::right);
}

inline IdealSet intersect(const IdealSet& a, const IdealSet& b) {
  std::vector<char> m(a.ring().size(), 0);
  for (Elem x : a.members()) m[x] = b.contains(x) ? 1 : 0;
  return {a.ring(), std::move(m), {}};
}

/// Sum of two additive subgroups that are closed on the same side(s); the
/// result keeps that closure.
inline IdealSet sum(const IdealSet& a, const IdealSet& b) {
  AdditiveSubgroup span(a.ring());
  for (Elem x : a.additive_generators()) span.add_generator(x);
  for (Elem x : b.additive_generators()) span.add_generator(x);
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return {a.ring(), std::move(span).release_mask(), std::move(gens)};
}

/// True iff the ideal product a*b lies in p (checked on additive generators).
inline bool product_within(const IdealSet& a, const IdealSet& b, const IdealSet& p) {
  const auto ga = a.additive_generators();
  const auto gb = b.additive_generators();
  for (Elem x : ga) {
    for (Elem y : gb) {
      if (!p.contains(a.ring().mul(x, y))) return false;
    }
  }
  return true;
}

inline bool is_two_sided_ideal(const IdealSet& s) {
  const Ring& r = s.ring();
  if (!s.contains(0)) return false;
  for (Elem x : s.members()) {
    if (!s.contains(r.neg(x))) return false;
    for (Elem g : r.additive_generators()) {
      if (!s.contains(r.mul(g, x)) || !s.contains(r.mul(x, g))) return false;
    }
  }
  for (Elem x : s.additive_generators()) {
    for (Elem y : s.members()) {
      if (!s.contains(r.add(x, y))) return false;
    }
  }
  return true;
}

/// All two-sided ideals, sorted by (size, members). Every ideal is a sum of
/// principal ideals, so the lattice is the closure of the principal ideals
/// under pairwise sums.
inline std::vector<IdealSet> enumerate_ideals(const Ring& ring, std::size_t cap = kLatticeCap) {
  if (ring.size() > cap) {
    throw Error(ErrorCode::cap_exceeded, "ideal lattice enumeration capped at " + std::to_string(cap) + " elements, ring has " +
                                             std::to_string(ring.size()));
  }
  auto key_of = [](const IdealSet& s) { return std::string(s.mask().begin(), s.mask().end()); };
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<IdealSet> principal;
  for (Elem a = 1; a < ring.size(); ++a) {
    IdealSet p = ideal_closure(ring, {a});
    auto k = key_of(p);
    if (seen.emplace(k, principal.size()).second) {
      principal.push_back(std::move(p));
    }
  }
  std::vector<IdealSet> lattice;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](IdealSet s) {
    auto k = key_of(s);
    if (index.emplace(std::move(k), lattice.size()).second) lattice.push_back(std::move(s));
  };
  add(IdealSet::zero(ring));
  for (std::size_t qi = 0; qi < lattice.size(); ++qi) {
    for (const auto& p : principal) {
      if (p.subset_of(lattice[qi])) continue;
      add(sum(lattice[qi], p));
    }
  }
  std::sort(lattice.begin(), lattice.end(), [](const IdealSet& x, const IdealSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.members() < y.members();
  });
  return lattice;
}

namespace detail {

class QuotientBackend final : public RingBackend {
 public:
  QuotientBackend(Ring parent, const IdealSet& ideal) : parent_(std::move(parent)), coset_(parent_.size(), kNoElem) {
    for (Elem a = 0; a < parent_.size(); ++a) {
      if (coset_[a] != kNoElem) continue;
      Elem id = static_cast<Elem>(reps_.size());
      reps_.push_back(a);
      for (Elem i : ideal.members()) coset_[parent_.add(a, i)] = id;
    }
  }
  std::size_t size() const override { return reps_.size(); }
  Elem one() const override { return coset_[parent_.one()]; }
  Elem add(Elem a, Elem b) const override { return coset_[parent_.add(reps_[a], reps_[b])]; }
  Elem neg(Elem a) const override { return coset_[parent_.neg(reps_[a])]; }
  Elem mul(Elem a, Elem b) const override { return coset_[parent_.mul(reps_[a], reps_[b])]; }
  std::string format(Elem a) const override { return "[" + parent_.format(reps_[a]) + "]"; }

  const std::vector<Elem>& coset_table() const { return coset_; }
  const std::vector<Elem>& representatives() const { return reps_; }

 private:
  Ring parent_;
  std::vector<Elem> coset_;
  std::vector<Elem> reps_;
};

}  // namespace detail

/// R/I with cosets ordered by their least representative, plus the projection.
struct QuotientRing {
  Ring ring;
  std::vector<Elem> projection;       // R index -> R/I index
  std::vector<Elem> representatives;  // R/I index -> least R representative
};

inline QuotientRing quotient_ring(const Ring& ring, const IdealSet& ideal) {
  if (!ideal.ring().same_as(ring)) throw Error(ErrorCode::not_an_ideal, "ideal belongs to a different ring");
  if (!is_two_sided_ideal(ideal)) throw Error(ErrorCode::not_an_ideal, "set is not a two-sided ideal");
  auto backend = std::make_shared<const detail::QuotientBackend>(ring, ideal);
  QuotientRing q;
  q.projection = backend->coset_table();
  q.representatives = backend->representatives();
  q.ring = Ring(backend, "(" + ring.name() + ")/I");
  return q;
}

/// Least representatives of the cosets of an additive subgroup.
inline std::vector<Elem> coset_representatives(const IdealSet& s) {
  const Ring& r = s.ring();
  std::vector<char> done(r.size(), 0);
  std::vector<Elem> reps;
  for (Elem a = 0; a < r.size(); ++a) {
    if (done[a]) continue;
    reps.push_back(a);
    for (Elem i : s.members()) done[r.add(a, i)] = 1;
  }
  return reps;
}

/// Image of a subset under an element map, as a membership mask.
inline IdealSet image(const IdealSet& s, const Ring& target, const std::vector<Elem>& map) {
  std::vector<char> m(target.size(), 0);
  for (Elem a : s.members()) m[map[a]] = 1;
  return {target, std::move(m), {}};
}

}  // namespace tpsa

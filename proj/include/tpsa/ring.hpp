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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tpsa/error.hpp"

namespace tpsa {

/// Index of an element in a ring's canonical (lexicographic) enumeration.
/// Index 0 is always the additive identity.
using Elem = std::uint32_t;

inline constexpr Elem kNoElem = std::numeric_limits<Elem>::max();

/// Default cardinality caps.
inline constexpr std::size_t kRingCap = 65536;
inline constexpr std::size_t kLatticeCap = 4096;

/// Operations a concrete finite ring must provide on canonical indices.
class RingBackend {
 public:
  virtual ~RingBackend() = default;
  virtual std::size_t size() const = 0;
  virtual Elem add(Elem a, Elem b) const = 0;
  virtual Elem neg(Elem a) const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem one() const = 0;
  virtual std::string format(Elem a) const = 0;
};

/// Immutable, shared handle to a finite unital ring whose elements are the
/// indices 0..size()-1. Rings up to kTabulateCap elements carry full
/// addition/multiplication tables.
class Ring {
 public:
  static constexpr std::size_t kTabulateCap = 2048;

  Ring() = default;

  Ring(std::shared_ptr<const RingBackend> backend, std::string name)
      : state_(std::make_shared<State>()) {
    auto& s = const_cast<State&>(*state_);
    s.backend = std::move(backend);
    s.name = std::move(name);
    s.n = s.backend->size();
    s.one = s.backend->one();
    if (s.n <= kTabulateCap) {
      s.add_table.resize(s.n * s.n);
      s.mul_table.resize(s.n * s.n);
      for (Elem a = 0; a < s.n; ++a) {
        for (Elem b = 0; b < s.n; ++b) {
          s.add_table[a * s.n + b] = static_cast<std::uint16_t>(s.backend->add(a, b));
          s.mul_table[a * s.n + b] = static_cast<std::uint16_t>(s.backend->mul(a, b));
        }
      }
    }
    s.neg_table.resize(s.n);
    for (Elem a = 0; a < s.n; ++a) s.neg_table[a] = s.backend->neg(a);
    s.additive_generators = compute_additive_generators();
  }

  bool valid() const { return state_ != nullptr; }
  std::size_t size() const { return state_->n; }
  const std::string& name() const { return state_->name; }
  Elem zero() const { return 0; }
  Elem one() const { return state_->one; }

  Elem add(Elem a, Elem b) const {
    const auto& s = *state_;
    return s.add_table.empty() ? s.backend->add(a, b) : s.add_table[a * s.n + b];
  }
  Elem neg(Elem a) const { return state_->neg_table[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    const auto& s = *state_;
    return s.mul_table.empty() ? s.backend->mul(a, b) : s.mul_table[a * s.n + b];
  }
  Elem mul(Elem a, Elem b, Elem c) const { return mul(mul(a, b), c); }

  /// k-fold sum of a (k >= 0).
  Elem times(Elem a, std::uint64_t k) const {
    Elem acc = zero();
    Elem base = a;
    while (k) {
      if (k & 1U) acc = add(acc, base);
      base = add(base, base);
      k >>= 1U;
    }
    return acc;
  }

  Elem pow(Elem a, std::uint64_t k) const {
    Elem acc = one();
    Elem base = a;
    while (k) {
      if (k & 1U) acc = mul(acc, base);
      base = mul(base, base);
      k >>= 1U;
    }
    return acc;
  }

  std::string format(Elem a) const { return state_->backend->format(a); }

  /// A small set of elements whose additive span is the whole ring.
  const std::vector<Elem>& additive_generators() const { return state_->additive_generators; }

  const RingBackend& backend() const { return *state_->backend; }

  bool same_as(const Ring& other) const { return state_ == other.state_; }
  const void* identity() const { return state_.get(); }

  bool is_central(Elem a) const {
    for (Elem g : additive_generators()) {
      if (mul(a, g) != mul(g, a)) return false;
    }
    return true;
  }
  bool is_idempotent(Elem a) const { return mul(a, a) == a; }

  /// Inverse of a inside the corner e R e where e is a central idempotent
  /// with a = a e; kNoElem if none. The zero corner has 0 as its identity.
  Elem corner_inverse(Elem a, Elem e) const {
    for (Elem b = 0; b < size(); ++b) {
      if (mul(b, e) != b) continue;
      if (mul(a, b) == e && mul(b, a) == e) return b;
    }
    return kNoElem;
  }

 private:
  struct State {
    std::shared_ptr<const RingBackend> backend;
    std::string name;
    std::size_t n = 0;
    Elem one = 0;
    std::vector<std::uint16_t> add_table;
    std::vector<std::uint16_t> mul_table;
    std::vector<Elem> neg_table;
    std::vector<Elem> additive_generators;
  };

  std::vector<Elem> compute_additive_generators() const;

  std::shared_ptr<const State> state_;
};

/// Additive subgroup of a ring, grown one generator at a time.
class AdditiveSubgroup {
 public:
  explicit AdditiveSubgroup(const Ring& ring) : ring_(ring), mask_(ring.size(), 0) {
    mask_[0] = 1;
    members_.push_back(0);
  }

  bool contains(Elem a) const { return mask_[a] != 0; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Elem>& members() const { return members_; }
  const std::vector<char>& mask() const { return mask_; }

  /// Replaces the subgroup S by S + <g>. Returns false if g was already in S.
  bool add_generator(Elem g) {
    if (mask_[g]) return false;
    const std::size_t base_size = members_.size();
    Elem shift = g;
    while (!mask_[shift]) {
      for (std::size_t idx = 0; idx < base_size; ++idx) {
        Elem x = ring_.add(members_[idx], shift);
        mask_[x] = 1;
        members_.push_back(x);
      }
      shift = ring_.add(shift, g);
    }
    return true;
  }

  std::vector<char> release_mask() && { return std::move(mask_); }
  std::vector<Elem> release_members() && { return std::move(members_); }

 private:
  Ring ring_;
  std::vector<char> mask_;
  std::vector<Elem> members_;
};

inline std::vector<Elem> Ring::compute_additive_generators() const {
  AdditiveSubgroup span(*this);
  std::vector<Elem> gens;
  for (Elem a = 1; a < size() && span.size() < size(); ++a) {
    if (span.add_generator(a)) gens.push_back(a);
  }
  return gens;
}

}  // namespace tpsa

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
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tpsa/error.hpp"
#include "tpsa/ring.hpp"

namespace tpsa {

inline bool is_prime_number(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// One direct factor of a product ring: Z_m or M_k(Z_p).
struct FactorSpec {
  enum class Kind { cyclic, matrix };

  Kind kind = Kind::cyclic;
  std::uint32_t modulus = 2;  // m for cyclic, p for matrix
  std::uint32_t size = 1;     // k for matrix, 1 for cyclic

  static FactorSpec cyclic(std::uint32_t m) {
    if (m < 2) throw Error(ErrorCode::schema_error, "cyclic modulus must be >= 2, got " + std::to_string(m));
    return {Kind::cyclic, m, 1};
  }
  static FactorSpec matrix(std::uint32_t k, std::uint32_t p) {
    if (k < 1) throw Error(ErrorCode::schema_error, "matrix size must be >= 1");
    if (!is_prime_number(p)) throw Error(ErrorCode::schema_error, "matrix prime must be prime, got " + std::to_string(p));
    return {Kind::matrix, p, k};
  }

  std::uint32_t digits() const { return kind == Kind::cyclic ? 1 : size * size; }

  /// Cardinality, or 0 when it exceeds 2^32.
  std::uint64_t cardinality() const {
    std::uint64_t c = 1;
    for (std::uint32_t d = 0; d < digits(); ++d) {
      c *= modulus;
      if (c > (1ULL << 32)) return 0;
    }
    return c;
  }

  std::string describe() const {
    if (kind == Kind::cyclic) return "Z_" + std::to_string(modulus);
    return "M_" + std::to_string(size) + "(Z_" + std::to_string(modulus) + ")";
  }

  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

/// Coordinates of an element of a product ring: one digit vector per factor
/// (a residue, or a row-major k x k matrix of residues).
struct RingElement {
  std::vector<std::vector<std::uint32_t>> coords;
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

namespace detail {

class ProductBackend final : public RingBackend {
 public:
  explicit ProductBackend(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
    std::uint64_t n = 1;
    for (const auto& f : factors_) {
      std::uint64_t c = f.cardinality();
      if (c == 0 || n * c > kRingCap) {
        throw Error(ErrorCode::cap_exceeded, "ring cardinality exceeds cap " + std::to_string(kRingCap));
      }
      n *= c;
    }
    size_ = static_cast<std::size_t>(n);
    RingElement id;
    for (const auto& f : factors_) {
      std::vector<std::uint32_t> d(f.digits(), 0);
      if (f.kind == FactorSpec::Kind::cyclic) {
        d[0] = 1 % f.modulus;
      } else {
        for (std::uint32_t r = 0; r < f.size; ++r) d[r * f.size + r] = 1;
      }
      id.coords.push_back(std::move(d));
    }
    one_ = encode(id);
  }

  const std::vector<FactorSpec>& factors() const { return factors_; }

  std::size_t size() const override { return size_; }
  Elem one() const override { return one_; }

  RingElement decode(Elem a) const {
    RingElement e;
    e.coords.resize(factors_.size());
    std::uint64_t rest = a;
    for (std::size_t f = factors_.size(); f-- > 0;) {
      const auto& spec = factors_[f];
      auto& d = e.coords[f];
      d.resize(spec.digits());
      for (std::size_t i = d.size(); i-- > 0;) {
        d[i] = static_cast<std::uint32_t>(rest % spec.modulus);
        rest /= spec.modulus;
      }
    }
    return e;
  }

  Elem encode(const RingElement& e) const {
    std::uint64_t idx = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      for (std::uint32_t digit : e.coords[f]) idx = idx * factors_[f].modulus + digit;
    }
    return static_cast<Elem>(idx);
  }

  Elem add(Elem a, Elem b) const override {
    RingElement x = decode(a);
    RingElement y = decode(b);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      for (std::size_t i = 0; i < x.coords[f].size(); ++i) {
        x.coords[f][i] = (x.coords[f][i] + y.coords[f][i]) % factors_[f].modulus;
      }
    }
    return encode(x);
  }

  Elem neg(Elem a) const override {
    RingElement x = decode(a);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      for (auto& digit : x.coords[f]) digit = (factors_[f].modulus - digit) % factors_[f].modulus;
    }
    return encode(x);
  }

  Elem mul(Elem a, Elem b) const override {
    RingElement x = decode(a);
    RingElement y = decode(b);
    RingElement z;
    z.coords.resize(factors_.size());
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      z.coords[f] = mul_factor(factors_[f], x.coords[f], y.coords[f]);
    }
    return encode(z);
  }

  static std::vector<std::uint32_t> mul_factor(const FactorSpec& spec, const std::vector<std::uint32_t>& x,
                                               const std::vector<std::uint32_t>& y) {
    const std::uint64_t m = spec.modulus;
    if (spec.kind == FactorSpec::Kind::cyclic) {
      return {static_cast<std::uint32_t>(std::uint64_t{x[0]} * y[0] % m)};
    }
    const std::uint32_t k = spec.size;
    std::vector<std::uint32_t> out(k * k, 0);
    for (std::uint32_t r = 0; r < k; ++r) {
      for (std::uint32_t c = 0; c < k; ++c) {
        std::uint64_t acc = 0;
        for (std::uint32_t t = 0; t < k; ++t) acc += std::uint64_t{x[r * k + t]} * y[t * k + c];
        out[r * k + c] = static_cast<std::uint32_t>(acc % m);
      }
    }
    return out;
  }

  std::string format(Elem a) const override {
    RingElement e = decode(a);
    std::ostringstream os;
    os << '(';
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      if (f) os << ',';
      const auto& spec = factors_[f];
      if (spec.kind == FactorSpec::Kind::cyclic) {
        os << e.coords[f][0];
      } else {
        os << '[';
        for (std::uint32_t r = 0; r < spec.size; ++r) {
          if (r) os << ',';
          os << '[';
          for (std::uint32_t c = 0; c < spec.size; ++c) {
            if (c) os << ',';
            os << e.coords[f][r * spec.size + c];
          }
          os << ']';
        }
        os << ']';
      }
    }
    os << ')';
    return os.str();
  }

 private:
  std::vector<FactorSpec> factors_;
  std::size_t size_ = 0;
  Elem one_ = 0;
};

/// Sub-ring e*P of a parent ring P cut out by a central idempotent e, with
/// e as identity; indices follow the parent's order.
class CornerBackend final : public RingBackend {
 public:
  CornerBackend(Ring parent, Elem e) : parent_(std::move(parent)), e_(e), index_(parent_.size(), kNoElem) {
    for (Elem a = 0; a < parent_.size(); ++a) {
      if (parent_.mul(e_, a) == a) {
        index_[a] = static_cast<Elem>(members_.size());
        members_.push_back(a);
      }
    }
  }

  std::size_t size() const override { return members_.size(); }
  Elem one() const override { return index_[e_]; }
  Elem add(Elem a, Elem b) const override { return index_[parent_.add(members_[a], members_[b])]; }
  Elem neg(Elem a) const override { return index_[parent_.neg(members_[a])]; }
  Elem mul(Elem a, Elem b) const override { return index_[parent_.mul(members_[a], members_[b])]; }
  std::string format(Elem a) const override { return parent_.format(members_[a]); }

  const std::vector<Elem>& members() const { return members_; }
  Elem index_of(Elem parent_elem) const { return index_[parent_elem]; }

 private:
  Ring parent_;
  Elem e_;
  std::vector<Elem> index_;
  std::vector<Elem> members_;
};

}  // namespace detail

/// Finite ring presented as an ordered product of Z_m and M_k(Z_p) factors.
class FiniteRing : public Ring {
 public:
  FiniteRing() = default;

  explicit FiniteRing(std::vector<FactorSpec> factors) : FiniteRing(make(std::move(factors))) {}

  const std::vector<FactorSpec>& factors() const { return product_->factors(); }
  RingElement decode(Elem a) const { return product_->decode(a); }
  Elem encode(const RingElement& e) const {
    if (e.coords.size() != factors().size()) throw Error(ErrorCode::schema_error, "element has wrong factor count");
    for (std::size_t f = 0; f < factors().size(); ++f) {
      const auto& spec = factors()[f];
      if (e.coords[f].size() != spec.digits()) {
        throw Error(ErrorCode::schema_error, "coordinate " + std::to_string(f) + " has wrong shape");
      }
      for (auto d : e.coords[f]) {
        if (d >= spec.modulus) throw Error(ErrorCode::schema_error, "coordinate not reduced mod " + std::to_string(spec.modulus));
      }
    }
    return product_->encode(e);
  }

  std::string describe() const {
    std::string out;
    for (std::size_t f = 0; f < factors().size(); ++f) {
      if (f) out += " x ";
      out += factors()[f].describe();
    }
    return out;
  }

 private:
  struct Parts {
    std::shared_ptr<const detail::ProductBackend> product;
    std::string name;
  };
  static Parts make(std::vector<FactorSpec> factors) {
    if (factors.empty()) throw Error(ErrorCode::schema_error, "ring needs at least one factor");
    auto backend = std::make_shared<const detail::ProductBackend>(std::move(factors));
    std::string name;
    for (std::size_t f = 0; f < backend->factors().size(); ++f) {
      if (f) name += " x ";
      name += backend->factors()[f].describe();
    }
    return {backend, name};
  }
  explicit FiniteRing(Parts parts) : Ring(parts.product, parts.name), product_(std::move(parts.product)) {}

  std::shared_ptr<const detail::ProductBackend> product_;
};

/// ring_product: componentwise product ring; CapExceeded above kRingCap.
inline FiniteRing ring_product(std::vector<FactorSpec> factors) { return FiniteRing(std::move(factors)); }

/// A sub-ring e*R for a central idempotent e, plus its inclusion into R.
struct CornerRing {
  Ring ring;
  std::vector<Elem> embedding;  // corner index -> parent index
  std::vector<Elem> projection;  // parent index -> corner index (kNoElem off the corner)
};

inline CornerRing corner_ring(const Ring& parent, Elem e) {
  if (!parent.is_idempotent(e) || !parent.is_central(e)) {
    throw Error(ErrorCode::not_central_idempotent, parent.format(e) + " is not a central idempotent");
  }
  auto backend = std::make_shared<const detail::CornerBackend>(parent, e);
  CornerRing out;
  out.embedding = backend->members();
  out.projection.assign(parent.size(), kNoElem);
  for (Elem i = 0; i < out.embedding.size(); ++i) out.projection[out.embedding[i]] = i;
  out.ring = Ring(backend, parent.format(e) + "*(" + parent.name() + ")");
  return out;
}

/// Central idempotents of a ring, by enumeration, in canonical order.
inline std::vector<Elem> central_idempotents(const Ring& ring) {
  std::vector<Elem> out;
  for (Elem a = 0; a < ring.size(); ++a) {
    if (ring.is_idempotent(a) && ring.is_central(a)) out.push_back(a);
  }
  return out;
}

/// Same result for product rings, computed factor by factor: each factor's
/// central idempotents are enumerated and the results multiplied out.
inline std::vector<Elem> central_idempotents(const FiniteRing& ring) {
  std::vector<std::vector<std::vector<std::uint32_t>>> per_factor;
  for (const auto& spec : ring.factors()) {
    std::vector<std::vector<std::uint32_t>> idem;
    if (spec.kind == FactorSpec::Kind::cyclic) {
      for (std::uint32_t x = 0; x < spec.modulus; ++x) {
        if (std::uint64_t{x} * x % spec.modulus == x) idem.push_back({x});
      }
    } else {
      // M_k over a field is simple: its center is the scalars, idempotent scalars are 0 and 1.
      std::vector<std::uint32_t> zero(spec.digits(), 0);
      std::vector<std::uint32_t> id(spec.digits(), 0);
      for (std::uint32_t r = 0; r < spec.size; ++r) id[r * spec.size + r] = 1;
      idem = {zero, id};
    }
    per_factor.push_back(std::move(idem));
  }
  std::vector<Elem> out;
  RingElement cur;
  cur.coords.resize(per_factor.size());
  auto rec = [&](auto&& self, std::size_t f) -> void {
    if (f == per_factor.size()) {
      out.push_back(ring.encode(cur));
      return;
    }
    for (const auto& c : per_factor[f]) {
      cur.coords[f] = c;
      self(self, f + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Orthogonal primitive central idempotents summing to 1, sorted. Any summand
/// eR whose central idempotents exceed {0, e} is split until none remain.
inline std::vector<Elem> primitive_central_decomposition(const Ring& ring) {
  if (ring.size() == 1) return {};
  const auto all = central_idempotents(ring);
  std::vector<Elem> work{ring.one()};
  std::vector<Elem> done;
  while (!work.empty()) {
    Elem e = work.back();
    work.pop_back();
    // central idempotents of eR are exactly e*f for central idempotents f of R
    Elem split = kNoElem;
    for (Elem f : all) {
      Elem g = ring.mul(e, f);
      if (g != 0 && g != e) {
        split = g;
        break;
      }
    }
    if (split == kNoElem) {
      done.push_back(e);
    } else {
      work.push_back(split);
      work.push_back(ring.sub(e, split));
    }
  }
  std::sort(done.begin(), done.end());
  return done;
}

/// Ring map stored as a full table over the source.
class RingMorphism {
 public:
  RingMorphism() = default;
  RingMorphism(Ring source, Ring target, std::vector<Elem> table)
      : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
    if (table_.size() != source_.size()) throw Error(ErrorCode::malformed_table, "morphism table has wrong size");
  }

  static RingMorphism identity(const Ring& r) {
    std::vector<Elem> t(r.size());
    std::iota(t.begin(), t.end(), Elem{0});
    return {r, r, std::move(t)};
  }

  /// Factor permutation composed with per-factor conjugation:
  /// result[perm[i]] = c_i * x[i] * c_i^{-1}. Conjugants must be units of
  /// their factor; an empty conjugant means identity.
  static RingMorphism factor_action(const FiniteRing& ring, const std::vector<std::size_t>& perm,
                                    const std::vector<std::vector<std::uint32_t>>& conjugants = {}) {
    const auto& fs = ring.factors();
    if (perm.size() != fs.size()) throw Error(ErrorCode::schema_error, "permutation length mismatch");
    std::vector<char> seen(fs.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (perm[i] >= fs.size() || seen[perm[i]]) throw Error(ErrorCode::schema_error, "not a permutation");
      seen[perm[i]] = 1;
      if (!(fs[i] == fs[perm[i]])) throw Error(ErrorCode::schema_error, "permutation maps between different factor types");
    }
    std::vector<std::vector<std::uint32_t>> conj(fs.size()), conj_inv(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i < conjugants.size() && !conjugants[i].empty()) {
        conj[i] = conjugants[i];
        conj_inv[i] = factor_inverse(fs[i], conj[i]);
        if (conj_inv[i].empty()) throw Error(ErrorCode::schema_error, "conjugant of factor " + std::to_string(i) + " is not a unit");
      }
    }
    std::vector<Elem> table(ring.size());
    for (Elem a = 0; a < ring.size(); ++a) {
      RingElement x = ring.decode(a);
      RingElement y;
      y.coords.resize(fs.size());
      for (std::size_t i = 0; i < fs.size(); ++i) {
        auto c = x.coords[i];
        if (!conj[i].empty()) {
          c = detail::ProductBackend::mul_factor(fs[i], detail::ProductBackend::mul_factor(fs[i], conj[i], c), conj_inv[i]);
        }
        y.coords[perm[i]] = std::move(c);
      }
      table[a] = ring.encode(y);
    }
    return {ring, ring, std::move(table)};
  }

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem a) const { return table_[a]; }

  bool is_bijective() const {
    if (source_.size() != target_.size()) return false;
    std::vector<char> hit(target_.size(), 0);
    for (Elem b : table_) {
      if (b >= target_.size() || hit[b]) return false;
      hit[b] = 1;
    }
    return true;
  }

  bool is_injective() const {
    std::vector<char> hit(target_.size(), 0);
    for (Elem b : table_) {
      if (b >= target_.size() || hit[b]) return false;
      hit[b] = 1;
    }
    return true;
  }

  /// Additive and multiplicative on all pairs (exhaustive; fine up to a few
  /// thousand elements since additive generators suffice on one side).
  bool is_homomorphism() const {
    const auto& gens = source_.additive_generators();
    for (Elem a = 0; a < source_.size(); ++a) {
      for (Elem g : gens) {
        if (table_[source_.add(a, g)] != target_.add(table_[a], table_[g])) return false;
        if (table_[source_.mul(a, g)] != target_.mul(table_[a], table_[g])) return false;
        if (table_[source_.mul(g, a)] != target_.mul(table_[g], table_[a])) return false;
      }
    }
    return true;
  }

  RingMorphism compose_after(const RingMorphism& first) const {
    std::vector<Elem> t(first.source().size());
    for (Elem a = 0; a < t.size(); ++a) t[a] = table_[first(a)];
    return {first.source(), target_, std::move(t)};
  }

  RingMorphism inverse() const {
    if (!is_bijective()) throw Error(ErrorCode::malformed_table, "morphism is not bijective");
    std::vector<Elem> t(table_.size());
    for (Elem a = 0; a < table_.size(); ++a) t[table_[a]] = a;
    return {target_, source_, std::move(t)};
  }

  friend bool operator==(const RingMorphism& a, const RingMorphism& b) { return a.table_ == b.table_; }

  /// Inverse of a unit of one factor; empty for non-units.
  static std::vector<std::uint32_t> factor_inverse(const FactorSpec& spec, const std::vector<std::uint32_t>& x) {
    // brute force over the factor; factors are small
    std::vector<std::uint32_t> id(spec.digits(), 0);
    if (spec.kind == FactorSpec::Kind::cyclic) {
      id[0] = 1 % spec.modulus;
    } else {
      for (std::uint32_t r = 0; r < spec.size; ++r) id[r * spec.size + r] = 1;
    }
    std::vector<std::uint32_t> cand(spec.digits(), 0);
    const std::uint64_t total = spec.cardinality();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t d = cand.size(); d-- > 0;) {
        cand[d] = static_cast<std::uint32_t>(rest % spec.modulus);
        rest /= spec.modulus;
      }
      if (detail::ProductBackend::mul_factor(spec, x, cand) == id && detail::ProductBackend::mul_factor(spec, cand, x) == id) {
        return cand;
      }
    }
    return {};
  }

 private:
  Ring source_;
  Ring target_;
  std::vector<Elem> table_;
};

/// Multiplicative order of an automorphism (smallest m >= 1 with f^m = id).
inline int automorphism_order(const RingMorphism& f) {
  const auto n = f.source().size();
  std::vector<Elem> cur(n);
  std::iota(cur.begin(), cur.end(), Elem{0});
  for (int m = 1;; ++m) {
    for (auto& x : cur) x = f(x);
    bool id = true;
    for (Elem a = 0; a < n && id; ++a) id = cur[a] == a;
    if (id) return m;
    if (m > static_cast<int>(n) * 64) throw Error(ErrorCode::malformed_table, "automorphism order not found");
  }
}

}  // namespace tpsa

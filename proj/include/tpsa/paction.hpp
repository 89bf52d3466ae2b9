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
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tpsa/error.hpp"
#include "tpsa/finite_ring.hpp"
#include "tpsa/ideal.hpp"
#include "tpsa/report.hpp"
#include "tpsa/ring.hpp"

namespace tpsa {

using Index = long long;

inline Index floor_mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

/// Members of e*R for a central idempotent e, ascending.
inline std::vector<Elem> idempotent_members(const Ring& r, Elem e) {
  std::vector<Elem> out;
  for (Elem a = 0; a < r.size(); ++a) {
    if (r.mul(a, e) == a) out.push_back(a);
  }
  return out;
}

/// Generator of eR + fR for commuting idempotents e, f.
inline Elem idempotent_join(const Ring& r, Elem e, Elem f) { return r.sub(r.add(e, f), r.mul(e, f)); }

/// Memo of e -> members(eR); the rings involved are small and idempotents repeat.
class MemberCache {
 public:
  explicit MemberCache(Ring r) : ring_(std::move(r)) {}
  const std::vector<Elem>& operator()(Elem e) {
    auto it = memo_.find(e);
    if (it == memo_.end()) it = memo_.emplace(e, idempotent_members(ring_, e)).first;
    return it->second;
  }

 private:
  Ring ring_;
  std::unordered_map<Elem, std::vector<Elem>> memo_;
};

/// Multiplicative order of a unit (smallest k >= 1 with u^k = 1).
inline int unit_order(const Ring& r, Elem u) {
  Elem cur = u;
  for (int k = 1; k <= static_cast<int>(r.size()) + 1; ++k) {
    if (cur == r.one()) return k;
    cur = r.mul(cur, u);
  }
  throw Error(ErrorCode::malformed_table, r.format(u) + " is not a unit");
}

/// Automorphism beta of T with cocycle u_{i,j} = lambda^{ij} (or trivial).
class GlobalTwistedAction {
 public:
  GlobalTwistedAction(RingMorphism beta, Elem lambda, bool product_cocycle)
      : beta_(std::move(beta)), lambda_(lambda), product_(product_cocycle) {
    const Ring& t = beta_.source();
    if (!beta_.target().same_as(t) || !beta_.is_bijective() || !beta_.is_homomorphism()) {
      throw Error(ErrorCode::malformed_table, "generator is not an automorphism of T");
    }
    order_ = automorphism_order(beta_);
    powers_.assign(order_, std::vector<Elem>(t.size()));
    for (Elem a = 0; a < t.size(); ++a) powers_[0][a] = a;
    for (int k = 1; k < order_; ++k) {
      for (Elem a = 0; a < t.size(); ++a) powers_[k][a] = beta_(powers_[k - 1][a]);
    }
    if (!product_) lambda_ = t.one();
    if (!t.is_central(lambda_)) throw Error(ErrorCode::malformed_table, "cocycle base is not central");
    if (beta_(lambda_) != lambda_) throw Error(ErrorCode::malformed_table, "cocycle base is not fixed by the automorphism");
    lambda_order_ = unit_order(t, lambda_);
    lambda_powers_.resize(lambda_order_);
    lambda_powers_[0] = t.one();
    for (int k = 1; k < lambda_order_; ++k) lambda_powers_[k] = t.mul(lambda_powers_[k - 1], lambda_);
  }

  const Ring& ring() const { return beta_.source(); }
  const RingMorphism& generator() const { return beta_; }
  Elem lambda() const { return lambda_; }
  bool product_cocycle() const { return product_; }
  int order() const { return order_; }
  int lambda_order() const { return lambda_order_; }
  /// Common period of beta_i and u_{i,j} in every index.
  int cocycle_period() const { return std::lcm(order_, lambda_order_); }

  Elem beta(Index i, Elem a) const { return powers_[floor_mod(i, order_)][a]; }
  Elem u(Index i, Index j) const { return lambda_powers_[floor_mod(i * j, lambda_order_)]; }

  /// Normalization and the 2-cocycle identity on indices in [-2m, 2m].
  VerificationReport check() const {
    VerificationReport rep;
    rep.check_id = "cocycle";
    const Ring& t = ring();
    const Index m = order_;
    for (Index i = -2 * m; i <= 2 * m; ++i) {
      if (u(i, 0) != t.one() || u(0, i) != t.one()) rep.fail({{"condition", "normalization"}, {"indices", {i}}});
      for (Index j = -2 * m; j <= 2 * m; ++j) {
        for (Index k = -2 * m; k <= 2 * m; ++k) {
          if (t.mul(u(j, k), u(i, j + k)) != t.mul(u(i, j), u(i + j, k))) {
            rep.fail({{"condition", "cocycle"}, {"indices", {i, j, k}}});
            return rep;
          }
        }
      }
    }
    rep.details["window"] = {-2 * m, 2 * m};
    return rep;
  }

 private:
  RingMorphism beta_;
  Elem lambda_;
  bool product_;
  int order_ = 1;
  int lambda_order_ = 1;
  std::vector<std::vector<Elem>> powers_;
  std::vector<Elem> lambda_powers_;
};

enum class Presentation { periodic, finite_support };

/// Unital twisted partial action of Z on a finite ring, stored as finite
/// tables. Periodic data repeats with period m (ideals, maps) and P (units)
/// in each index; finite-support data vanishes for |i| > N.
class TwistedPartialAction {
 public:
  struct Tables {
    Presentation presentation = Presentation::finite_support;
    int period = 1;          // m
    int cocycle_period = 1;  // P, a multiple of m
    int bound = 0;           // N
    std::vector<Elem> idempotents;         // per slot
    std::vector<std::vector<Elem>> alpha;  // per slot, table over R, kNoElem off D_{-i}
    std::vector<Elem> w;                   // per unit slot
  };

  /// Enveloping data when the action was built by restriction.
  struct Envelope {
    std::shared_ptr<const GlobalTwistedAction> global;
    Elem e = 0;
    std::vector<Elem> embedding;   // R index -> T index
    std::vector<Elem> projection;  // T index -> R index, kNoElem off R
  };

  TwistedPartialAction() = default;

  TwistedPartialAction(Ring ring, Tables tables, std::optional<Envelope> envelope = std::nullopt)
      : ring_(std::move(ring)), t_(std::move(tables)), envelope_(std::move(envelope)) {
    const std::size_t slots = slot_count();
    if (t_.idempotents.size() != slots || t_.alpha.size() != slots || t_.w.size() != unit_slot_count()) {
      throw Error(ErrorCode::malformed_table, "action tables have the wrong shape");
    }
    for (const auto& tab : t_.alpha) {
      if (tab.size() != ring_.size()) throw Error(ErrorCode::malformed_table, "map table has the wrong size");
    }
    domains_.resize(slots);
    for (std::size_t s = 0; s < slots; ++s) domains_[s] = idempotent_members(ring_, t_.idempotents[s]);
    alpha_inv_.assign(slots, std::vector<Elem>(ring_.size(), kNoElem));
    for (std::size_t s = 0; s < slots; ++s) {
      const Index i = index_of_slot(s);
      for (Elem a : domain(-i)) {
        Elem b = t_.alpha[s][a];
        if (b < ring_.size() && alpha_inv_[s][b] == kNoElem) alpha_inv_[s][b] = a;
      }
    }
    w_inv_.resize(t_.w.size());
    for (std::size_t s = 0; s < t_.w.size(); ++s) {
      auto [i, j] = indices_of_unit_slot(s);
      Elem e = ring_.mul(idempotent(i), idempotent(i + j));
      w_inv_[s] = ring_.mul(t_.w[s], e) == t_.w[s] ? ring_.corner_inverse(t_.w[s], e) : kNoElem;
    }
  }

  const Ring& ring() const { return ring_; }
  Presentation presentation() const { return t_.presentation; }
  bool periodic() const { return t_.presentation == Presentation::periodic; }
  int period() const { return t_.period; }
  int cocycle_period() const { return t_.cocycle_period; }
  int bound() const { return t_.bound; }
  const Tables& tables() const { return t_; }
  const Envelope* envelope() const { return envelope_ ? &*envelope_ : nullptr; }

  Elem idempotent(Index i) const {
    const auto s = slot(i);
    return s < 0 ? 0 : t_.idempotents[s];
  }
  bool in_domain(Index i, Elem a) const { return ring_.mul(a, idempotent(i)) == a; }
  const std::vector<Elem>& domain(Index i) const {
    static const std::vector<Elem> zero{0};
    const auto s = slot(i);
    return s < 0 ? zero : domains_[s];
  }

  /// alpha_i(a) for a in D_{-i}; kNoElem if the table has no entry.
  Elem alpha(Index i, Elem a) const {
    const auto s = slot(i);
    if (s < 0) return a == 0 ? 0 : kNoElem;
    return t_.alpha[s][a];
  }
  /// alpha_i^{-1}(a) for a in D_i.
  Elem alpha_inv(Index i, Elem a) const {
    const auto s = slot(i);
    if (s < 0) return a == 0 ? 0 : kNoElem;
    return alpha_inv_[s][a];
  }
  /// alpha_i(a 1_{-i}), defined for every a.
  Elem alpha_cut(Index i, Elem a) const { return alpha(i, ring_.mul(a, idempotent(-i))); }

  Elem w(Index i, Index j) const {
    const auto s = unit_slot(i, j);
    return s < 0 ? 0 : t_.w[s];
  }
  /// Inverse of w_{i,j} inside D_iD_{i+j}; kNoElem when it has none.
  Elem w_inv(Index i, Index j) const {
    const auto s = unit_slot(i, j);
    return s < 0 ? 0 : w_inv_[s];
  }

  /// Indices covering "for all i in Z": one period, or the support [-N, N].
  std::vector<Index> index_window() const {
    std::vector<Index> out;
    if (periodic()) {
      for (Index i = 0; i < t_.period; ++i) out.push_back(i);
    } else {
      for (Index i = -t_.bound; i <= t_.bound; ++i) out.push_back(i);
    }
    return out;
  }
  /// Nonnegative part of the index window.
  std::vector<Index> nonnegative_window() const {
    std::vector<Index> out;
    const Index top = periodic() ? t_.period - 1 : t_.bound;
    for (Index i = 0; i <= top; ++i) out.push_back(i);
    return out;
  }
  /// Indices on which every axiom instance is decided: one common period of
  /// all tables, or [-2N, 2N] (any larger index only meets zero ideals).
  std::vector<Index> axiom_window() const {
    std::vector<Index> out;
    if (periodic()) {
      for (Index i = 0; i < t_.cocycle_period; ++i) out.push_back(i);
    } else {
      for (Index i = -2 * t_.bound; i <= 2 * t_.bound; ++i) out.push_back(i);
    }
    return out;
  }

  TwistedPartialAction with_w(Index i, Index j, Elem v) const {
    Tables t = t_;
    const auto s = unit_slot(i, j);
    if (s < 0) throw Error(ErrorCode::malformed_table, "unit slot outside the stored window");
    t.w[s] = v;
    return {ring_, std::move(t)};
  }
  TwistedPartialAction with_alpha(Index i, std::vector<Elem> table) const {
    Tables t = t_;
    const auto s = slot(i);
    if (s < 0) throw Error(ErrorCode::malformed_table, "map slot outside the stored window");
    t.alpha[s] = std::move(table);
    return {ring_, std::move(t)};
  }
  TwistedPartialAction with_idempotent(Index i, Elem e) const {
    Tables t = t_;
    const auto s = slot(i);
    if (s < 0) throw Error(ErrorCode::malformed_table, "idempotent slot outside the stored window");
    t.idempotents[s] = e;
    return {ring_, std::move(t)};
  }

  std::string describe() const {
    if (periodic()) {
      return std::string(envelope_ ? "restricted-global" : "periodic") + " action on " + ring_.name() + ", period " +
             std::to_string(t_.period);
    }
    return "finite-support action on " + ring_.name() + ", bound " + std::to_string(t_.bound);
  }

 private:
  std::size_t slot_count() const { return periodic() ? t_.period : 2 * t_.bound + 1; }
  std::size_t unit_slot_count() const {
    const std::size_t k = periodic() ? t_.cocycle_period : 2 * t_.bound + 1;
    return k * k;
  }
  long long slot(Index i) const {
    if (periodic()) return floor_mod(i, t_.period);
    if (i < -t_.bound || i > t_.bound) return -1;
    return i + t_.bound;
  }
  Index index_of_slot(std::size_t s) const { return periodic() ? static_cast<Index>(s) : static_cast<Index>(s) - t_.bound; }
  long long unit_slot(Index i, Index j) const {
    if (periodic()) {
      const Index p = t_.cocycle_period;
      return floor_mod(i, p) * p + floor_mod(j, p);
    }
    const Index n = t_.bound;
    if (i < -n || i > n || j < -n || j > n || i + j < -n || i + j > n) return -1;
    return (i + n) * (2 * n + 1) + (j + n);
  }
  std::pair<Index, Index> indices_of_unit_slot(std::size_t s) const {
    if (periodic()) {
      const Index p = t_.cocycle_period;
      return {static_cast<Index>(s) / p, static_cast<Index>(s) % p};
    }
    const Index k = 2 * t_.bound + 1;
    return {static_cast<Index>(s) / k - t_.bound, static_cast<Index>(s) % k - t_.bound};
  }

  Ring ring_;
  Tables t_;
  std::optional<Envelope> envelope_;
  std::vector<std::vector<Elem>> domains_;
  std::vector<std::vector<Elem>> alpha_inv_;
  std::vector<Elem> w_inv_;
};

/// restrict_global: R = eT, D_i = e beta_i(e) T, alpha_i = beta_i on D_{-i},
/// w_{i,j} = u_{i,j} 1_i 1_{i+j}.
inline TwistedPartialAction restrict_global(std::shared_ptr<const GlobalTwistedAction> g, Elem e) {
  const Ring& t = g->ring();
  if (e >= t.size() || !t.is_idempotent(e) || !t.is_central(e)) {
    throw Error(ErrorCode::not_central_idempotent, "restriction idempotent is not a central idempotent of T");
  }
  CornerRing corner = corner_ring(t, e);
  const Ring& r = corner.ring;
  const auto& emb = corner.embedding;
  const auto& proj = corner.projection;
  const int m = g->order();
  const int p = g->cocycle_period();

  TwistedPartialAction::Tables tab;
  tab.presentation = Presentation::periodic;
  tab.period = m;
  tab.cocycle_period = p;
  auto unit_t = [&](Index i) { return t.mul(e, g->beta(i, e)); };  // 1_i inside T
  for (int s = 0; s < m; ++s) tab.idempotents.push_back(proj[unit_t(s)]);
  for (int s = 0; s < m; ++s) {
    std::vector<Elem> table(r.size(), kNoElem);
    const Elem dom = unit_t(-s);
    for (Elem a = 0; a < r.size(); ++a) {
      const Elem x = emb[a];
      if (t.mul(x, dom) == x) table[a] = proj[g->beta(s, x)];
    }
    tab.alpha.push_back(std::move(table));
  }
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const Elem v = t.mul(g->u(i, j), t.mul(unit_t(i), unit_t(i + j)));
      tab.w.push_back(proj[v]);
    }
  }
  TwistedPartialAction::Envelope env{std::move(g), e, emb, proj};
  return {r, std::move(tab), std::move(env)};
}

/// Explicit finite-support description. Missing w entries default to
/// 1_i 1_{i+j}; a missing alpha_{-i} is derived from alpha_i through the
/// axiom instance alpha_i(alpha_{-i}(a)) = w_{i,-i} a w_{i,-i}^{-1}.
struct FiniteSupportSpec {
  int bound = 0;
  std::map<Index, Elem> idempotents;
  std::map<Index, std::map<Elem, Elem>> alpha;
  std::map<std::pair<Index, Index>, Elem> w;
};

inline TwistedPartialAction make_finite_support(const Ring& r, const FiniteSupportSpec& spec) {
  const Index n = spec.bound;
  if (n < 0) throw Error(ErrorCode::malformed_table, "support bound must be >= 0");
  auto idem_at = [&](Index i) -> Elem {
    if (i < -n || i > n) return 0;
    if (i == 0) {
      auto it = spec.idempotents.find(0);
      if (it != spec.idempotents.end() && it->second != r.one()) throw Error(ErrorCode::malformed_table, "e_0 must be 1");
      return r.one();
    }
    auto it = spec.idempotents.find(i);
    if (it == spec.idempotents.end()) throw Error(ErrorCode::malformed_table, "missing idempotent e_" + std::to_string(i));
    if (it->second >= r.size()) throw Error(ErrorCode::malformed_table, "idempotent outside ring");
    return it->second;
  };
  for (const auto& [i, e] : spec.idempotents) {
    if (i < -n || i > n) throw Error(ErrorCode::malformed_table, "idempotent index outside the support bound");
  }
  TwistedPartialAction::Tables tab;
  tab.presentation = Presentation::finite_support;
  tab.bound = static_cast<int>(n);
  for (Index i = -n; i <= n; ++i) tab.idempotents.push_back(idem_at(i));

  for (Index i = -n; i <= n; ++i) {
    for (Index j = -n; j <= n; ++j) {
      auto it = spec.w.find({i, j});
      if (i + j < -n || i + j > n) {
        if (it != spec.w.end() && it->second != 0) {
          throw Error(ErrorCode::malformed_table, "w_{" + std::to_string(i) + "," + std::to_string(j) + "} lies outside the support");
        }
        tab.w.push_back(0);
        continue;
      }
      if (it != spec.w.end()) {
        if (it->second >= r.size()) throw Error(ErrorCode::malformed_table, "unit outside ring");
        tab.w.push_back(it->second);
      } else {
        tab.w.push_back(r.mul(idem_at(i), idem_at(i + j)));
      }
    }
  }
  for (const auto& [key, v] : spec.w) {
    if (key.first < -n || key.first > n || key.second < -n || key.second > n) {
      throw Error(ErrorCode::malformed_table, "unit index outside the support bound");
    }
  }

  auto explicit_table = [&](Index i) -> std::optional<std::vector<Elem>> {
    auto it = spec.alpha.find(i);
    if (it == spec.alpha.end()) return std::nullopt;
    std::vector<Elem> table(r.size(), kNoElem);
    const Elem dom = idem_at(-i);
    for (const auto& [a, b] : it->second) {
      if (a >= r.size() || b >= r.size()) throw Error(ErrorCode::malformed_table, "map entry outside ring");
      if (r.mul(a, dom) != a) throw Error(ErrorCode::malformed_table, "map entry outside D_{" + std::to_string(-i) + "}");
      table[a] = b;
    }
    for (Elem a = 0; a < r.size(); ++a) {
      if (r.mul(a, dom) == a && table[a] == kNoElem) {
        throw Error(ErrorCode::malformed_table, "map alpha_" + std::to_string(i) + " missing entry for " + r.format(a));
      }
    }
    return table;
  };
  for (const auto& [i, m] : spec.alpha) {
    if (i < -n || i > n) throw Error(ErrorCode::malformed_table, "map index outside the support bound");
  }

  std::vector<std::vector<Elem>> tables(2 * n + 1);
  for (Index i = -n; i <= n; ++i) {
    if (auto t = explicit_table(i)) {
      tables[i + n] = std::move(*t);
    } else if (i == 0) {
      tables[n].resize(r.size());
      std::iota(tables[n].begin(), tables[n].end(), Elem{0});
    }
  }
  for (Index i = 1; i <= n; ++i) {
    if (tables[i + n].empty()) throw Error(ErrorCode::malformed_table, "missing map alpha_" + std::to_string(i));
  }
  for (Index i = 1; i <= n; ++i) {
    auto& neg = tables[-i + n];
    if (!neg.empty()) continue;
    const auto& pos = tables[i + n];
    std::vector<Elem> inv(r.size(), kNoElem);
    for (Elem a = 0; a < r.size(); ++a) {
      if (pos[a] != kNoElem) inv[pos[a]] = a;
    }
    const Elem e = r.mul(idem_at(i), idem_at(0));
    const Elem u = tab.w[(i + n) * (2 * n + 1) + (-i + n)];
    const Elem uinv = r.corner_inverse(u, e);
    if (uinv == kNoElem) throw Error(ErrorCode::malformed_table, "w_{i,-i} is not invertible; alpha_{-i} must be given");
    neg.assign(r.size(), kNoElem);
    for (Elem a = 0; a < r.size(); ++a) {
      if (r.mul(a, e) != a) continue;
      neg[a] = inv[r.mul(u, a, uinv)];
    }
  }
  tab.alpha = std::move(tables);
  return {r, std::move(tab)};
}

/// check_axioms: the unital twisted partial action axioms on the decisive
/// window, plus the standing hypotheses (central idempotents, ring
/// isomorphisms alpha_i: D_{-i} -> D_i, invertible units). The first witness of
/// each violated condition is recorded.
inline VerificationReport check_axioms(const TwistedPartialAction& act) {
  VerificationReport rep;
  rep.check_id = "AX-1.1";
  const Ring& r = act.ring();
  MemberCache members(r);
  const auto win = act.axiom_window();
  static const std::vector<std::string> kNames{"i", "ii", "iii", "iv", "v", "idempotent", "isomorphism", "invertible"};
  std::map<std::string, json> first;
  auto flag = [&](const std::string& axiom, std::vector<Index> idx, Elem a) {
    if (first.count(axiom)) return;
    json w{{"axiom", axiom}, {"indices", idx}};
    if (a != kNoElem) w["element"] = r.format(a);
    first[axiom] = std::move(w);
  };
  auto cut = [&](std::initializer_list<Index> idx) {
    Elem e = r.one();
    for (Index i : idx) e = r.mul(e, act.idempotent(i));
    return e;
  };

  for (Index i : win) {
    const Elem e = act.idempotent(i);
    if (!r.is_idempotent(e) || !r.is_central(e)) flag("idempotent", {i}, e);
  }
  if (act.idempotent(0) != r.one()) flag("i", {0}, act.idempotent(0));
  for (Elem a = 0; a < r.size(); ++a) {
    if (act.alpha(0, a) != a) {
      flag("i", {0}, a);
      break;
    }
  }
  for (Index i : win) {
    const auto& dom = members(act.idempotent(-i));
    const auto& cod = members(act.idempotent(i));
    std::vector<Elem> gens;
    for (Elem g : r.additive_generators()) gens.push_back(r.mul(g, act.idempotent(-i)));
    std::vector<char> hit(r.size(), 0);
    bool ok = dom.size() == cod.size();
    Elem bad = kNoElem;
    for (Elem a : dom) {
      const Elem b = act.alpha(i, a);
      if (b >= r.size() || !act.in_domain(i, b) || hit[b]) {
        ok = false;
        bad = a;
        break;
      }
      hit[b] = 1;
    }
    for (std::size_t k = 0; ok && k < dom.size(); ++k) {
      const Elem a = dom[k];
      for (Elem g : gens) {
        if (act.alpha(i, r.add(a, g)) != r.add(act.alpha(i, a), act.alpha(i, g)) ||
            act.alpha(i, r.mul(a, g)) != r.mul(act.alpha(i, a), act.alpha(i, g)) ||
            act.alpha(i, r.mul(g, a)) != r.mul(act.alpha(i, g), act.alpha(i, a))) {
          ok = false;
          bad = a;
          break;
        }
      }
    }
    if (!ok) flag("isomorphism", {i}, bad);
  }
  for (Index i : win) {
    for (Index j : win) {
      const Elem e = cut({i, i + j});
      const Elem v = act.w(i, j);
      if (r.mul(v, e) != v || act.w_inv(i, j) == kNoElem) flag("invertible", {i, j}, v);
    }
  }
  // (ii) alpha_i(D_{-i} D_j) = D_i D_{i+j}
  for (Index i : win) {
    for (Index j : win) {
      const auto& src = members(cut({-i, j}));
      const auto& dst = members(cut({i, i + j}));
      std::vector<char> hit(r.size(), 0);
      bool done = false;
      for (Elem a : src) {
        const Elem b = act.alpha(i, a);
        if (b >= r.size() || r.mul(b, cut({i, i + j})) != b) {
          flag("ii", {i, j}, a);
          done = true;
          break;
        }
        hit[b] = 1;
      }
      if (done) continue;
      for (Elem b : dst) {
        if (!hit[b]) {
          flag("ii", {i, j}, b);
          break;
        }
      }
    }
  }
  // (iii) alpha_i(alpha_j(a)) = w_{i,j} alpha_{i+j}(a) w_{i,j}^{-1} on D_{-j} D_{-j-i}
  for (Index i : win) {
    for (Index j : win) {
      const Elem winv = act.w_inv(i, j);
      if (winv == kNoElem) continue;
      for (Elem a : members(cut({-j, -j - i}))) {
        const Elem x = act.alpha(j, a);
        const Elem z = act.alpha(i + j, a);
        if (x >= r.size() || z >= r.size() || !act.in_domain(-i, x)) {
          flag("iii", {i, j}, a);
          break;
        }
        const Elem y = act.alpha(i, x);
        if (y != r.mul(act.w(i, j), z, winv)) {
          flag("iii", {i, j}, a);
          break;
        }
      }
    }
  }
  // (iv) w_{i,0} = w_{0,i} = 1_i
  for (Index i : win) {
    if (act.w(i, 0) != act.idempotent(i) || act.w(0, i) != act.idempotent(i)) flag("iv", {i}, act.w(i, 0));
  }
  // (v) alpha_i(a w_{j,k}) w_{i,j+k} = alpha_i(a) w_{i,j} w_{i+j,k} on D_{-i} D_j D_{j+k}
  for (Index i : win) {
    for (Index j : win) {
      for (Index k : win) {
        for (Elem a : members(cut({-i, j, j + k}))) {
          const Elem x = act.alpha(i, r.mul(a, act.w(j, k)));
          const Elem y = act.alpha(i, a);
          if (x >= r.size() || y >= r.size() ||
              r.mul(x, act.w(i, j + k)) != r.mul(y, act.w(i, j), act.w(i + j, k))) {
            flag("v", {i, j, k}, a);
            break;
          }
        }
      }
    }
  }

  json axioms = json::object();
  for (const auto& name : kNames) {
    auto it = first.find(name);
    axioms[name] = it == first.end() ? "pass" : "fail";
    if (it != first.end()) rep.fail(it->second);
  }
  rep.details["axioms"] = axioms;
  rep.details["window"] = {win.front(), win.back()};
  rep.details["presentation"] = act.describe();
  return rep;
}

/// Index i with alpha_i(S cap D_{-i}) != S cap D_i, over the index window;
/// nonnegative indices only and containment only when ideal_only is set.
inline std::optional<Index> alpha_invariance_failure(const TwistedPartialAction& act, const IdealSet& s, bool ideal_only) {
  const Ring& r = act.ring();
  const auto win = ideal_only ? act.nonnegative_window() : act.index_window();
  for (Index i : win) {
    std::size_t src = 0;
    for (Elem a : act.domain(-i)) {
      if (!s.contains(a)) continue;
      ++src;
      const Elem b = act.alpha(i, a);
      if (b >= r.size() || !s.contains(b)) return i;
    }
    if (ideal_only) continue;
    std::size_t dst = 0;
    for (Elem b : act.domain(i)) dst += s.contains(b) ? 1 : 0;
    if (src != dst) return i;
  }
  return std::nullopt;
}

/// alpha_i(S cap D_{-i}) subset of S cap D_i for all i >= 0.
inline bool is_alpha_ideal(const TwistedPartialAction& act, const IdealSet& s) {
  return !alpha_invariance_failure(act, s, true);
}

/// alpha_i(S cap D_{-i}) = S cap D_i for all i.
inline bool is_alpha_invariant(const TwistedPartialAction& act, const IdealSet& s) {
  return !alpha_invariance_failure(act, s, false);
}

/// Induced action on R/I for an alpha-invariant ideal I, with the projection.
struct QuotientAction {
  TwistedPartialAction action;
  QuotientRing quotient;
};

inline QuotientAction quotient_action(const TwistedPartialAction& act, const IdealSet& ideal) {
  if (!is_alpha_invariant(act, ideal)) throw Error(ErrorCode::not_alpha_invariant, "ideal is not alpha-invariant");
  QuotientRing q = quotient_ring(act.ring(), ideal);
  const Ring& r = act.ring();
  const Ring& rq = q.ring;
  const auto& pi = q.projection;
  TwistedPartialAction::Tables t;
  const auto& src = act.tables();
  t.presentation = src.presentation;
  t.period = src.period;
  t.cocycle_period = src.cocycle_period;
  t.bound = src.bound;
  for (Elem e : src.idempotents) t.idempotents.push_back(pi[e]);
  const std::size_t slots = src.idempotents.size();
  for (std::size_t s = 0; s < slots; ++s) {
    const Index i = act.periodic() ? static_cast<Index>(s) : static_cast<Index>(s) - src.bound;
    const Elem dom = act.idempotent(-i);
    std::vector<Elem> table(rq.size(), kNoElem);
    for (Elem x = 0; x < rq.size(); ++x) {
      if (rq.mul(x, pi[dom]) != x) continue;
      const Elem a = r.mul(q.representatives[x], dom);
      const Elem b = act.alpha(i, a);
      if (b < r.size()) table[x] = pi[b];
    }
    t.alpha.push_back(std::move(table));
  }
  for (Elem v : src.w) t.w.push_back(pi[v]);
  return {TwistedPartialAction(rq, std::move(t)), std::move(q)};
}

struct FiniteTypeResult {
  bool finite_type = false;
  std::vector<Index> witness;
  std::string reason;
};

/// Searches S subset of [-w, w] with sum_{s in S} D_{j+s} = R for all j,
/// smallest sets first, candidates ordered 0, 1, -1, 2, -2, ...
inline FiniteTypeResult is_finite_type(const TwistedPartialAction& act, int window_size) {
  const Ring& r = act.ring();
  FiniteTypeResult res;
  if (window_size < 1) throw Error(ErrorCode::malformed_table, "window size must be >= 1");
  if (r.size() == 1) {
    res.finite_type = true;
    res.witness = {0};
    res.reason = "zero ring";
    return res;
  }
  if (!act.periodic()) {
    res.reason = "D_i = 0 for |i| > " + std::to_string(act.bound()) + ", so every finite sum of translates vanishes for large j";
    return res;
  }
  const auto residues = act.index_window();
  auto covers = [&](const std::vector<Index>& set) {
    for (Index j : residues) {
      Elem acc = 0;
      for (Index s : set) acc = idempotent_join(r, acc, act.idempotent(j + s));
      if (acc != r.one()) return false;
    }
    return true;
  };
  std::vector<Index> cand{0};
  for (Index k = 1; k <= window_size; ++k) {
    cand.push_back(k);
    cand.push_back(-k);
  }
  constexpr std::size_t kBudget = 1 << 16;
  std::size_t tried = 0;
  for (std::size_t size = 1; size <= cand.size() && tried < kBudget; ++size) {
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (tried < kBudget) {
      ++tried;
      std::vector<Index> set;
      for (auto p : pick) set.push_back(cand[p]);
      if (covers(set)) {
        res.finite_type = true;
        res.witness = set;
        res.reason = "translates cover R for every residue mod " + std::to_string(act.period());
        return res;
      }
      std::size_t k = size;
      while (k > 0 && pick[k - 1] == cand.size() - size + k - 1) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t t = k; t < size; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  // a full period of translates always contains D_0 = R
  if (window_size + 1 >= act.period()) {
    std::vector<Index> set(act.period());
    std::iota(set.begin(), set.end(), Index{0});
    if (covers(set)) {
      res.finite_type = true;
      res.witness = set;
      res.reason = "a full period of translates contains D_0 = R";
      return res;
    }
  }
  res.reason = "no covering set within the window";
  return res;
}

/// Conditions (i)-(v) for (T, beta, u) with embedding phi to be an enveloping
/// action of the partial action.
inline VerificationReport verify_enveloping(const TwistedPartialAction& act, const GlobalTwistedAction& g,
                                            const RingMorphism& phi) {
  VerificationReport rep;
  rep.check_id = "enveloping";
  const Ring& r = act.ring();
  const Ring& t = g.ring();
  if (phi.source().size() != r.size() || !phi.target().same_as(t) || !phi.is_injective()) {
    throw Error(ErrorCode::not_injective, "embedding is not an injective map R -> T");
  }
  std::map<std::string, std::string> cond;
  for (const char* c : {"morphism", "i", "ii", "iii", "iv", "v"}) cond[c] = "pass";
  auto flag = [&](const std::string& c, json w) {
    if (cond[c] == "fail") return;
    cond[c] = "fail";
    w["condition"] = c;
    rep.fail(std::move(w));
  };
  const auto& rgens = r.additive_generators();
  for (Elem a = 0; a < r.size(); ++a) {
    bool ok = true;
    for (Elem b : rgens) {
      ok = ok && phi(r.add(a, b)) == t.add(phi(a), phi(b)) && phi(r.mul(a, b)) == t.mul(phi(a), phi(b)) &&
           phi(r.mul(b, a)) == t.mul(phi(b), phi(a));
    }
    if (!ok) {
      flag("morphism", {{"element", r.format(a)}});
      break;
    }
  }
  std::vector<char> img(t.size(), 0);
  for (Elem a = 0; a < r.size(); ++a) img[phi(a)] = 1;
  IdealSet image_set(t, img, {});
  if (!is_two_sided_ideal(image_set)) flag("i", {{"note", "phi(R) is not an ideal of T"}});

  AdditiveSubgroup span(t);
  for (Index i = 0; i < g.order(); ++i) {
    for (Elem a = 0; a < r.size(); ++a) span.add_generator(g.beta(i, phi(a)));
  }
  if (span.size() != t.size()) {
    for (Elem x = 0; x < t.size(); ++x) {
      if (!span.contains(x)) {
        flag("ii", {{"element", t.format(x)}, {"note", "not in the sum of translates of phi(R)"}});
        break;
      }
    }
  }
  Index lo = 0;
  Index hi = 0;
  if (act.periodic()) {
    hi = std::lcm(static_cast<Index>(act.cocycle_period()), static_cast<Index>(g.cocycle_period())) - 1;
  } else {
    hi = act.bound() + g.cocycle_period();
    lo = -hi;
  }
  for (Index i = lo; i <= hi; ++i) {
    std::vector<char> lhs(t.size(), 0);
    std::vector<char> rhs(t.size(), 0);
    for (Elem a : act.domain(i)) lhs[phi(a)] = 1;
    for (Elem a = 0; a < r.size(); ++a) {
      const Elem x = g.beta(i, phi(a));
      if (img[x]) rhs[x] = 1;
    }
    if (lhs != rhs) {
      for (Elem x = 0; x < t.size(); ++x) {
        if (lhs[x] != rhs[x]) {
          flag("iii", {{"indices", {i}}, {"element", t.format(x)}});
          break;
        }
      }
    }
    for (Elem a : act.domain(-i)) {
      const Elem b = act.alpha(i, a);
      if (b >= r.size() || phi(b) != g.beta(i, phi(a))) {
        flag("iv", {{"indices", {i}}, {"element", r.format(a)}});
        break;
      }
    }
    for (Index j = lo; j <= hi; ++j) {
      const Elem u = g.u(i, j);
      const Elem w = act.w(i, j);
      for (Elem a : idempotent_members(r, r.mul(act.idempotent(i), act.idempotent(i + j)))) {
        if (phi(r.mul(a, w)) != t.mul(phi(a), u) || phi(r.mul(w, a)) != t.mul(u, phi(a))) {
          flag("v", {{"indices", {i, j}}, {"element", r.format(a)}});
          break;
        }
      }
    }
  }
  json c = json::object();
  for (const auto& [k, v] : cond) c[k] = v;
  rep.details["conditions"] = c;
  rep.details["window"] = {lo, hi};
  return rep;
}

/// Finite type plus the primitive central decomposition of R; for actions
/// built by restriction the defining global action is also verified as an
/// enveloping action.
inline VerificationReport enveloping_via_decomposition(const TwistedPartialAction& act) {
  VerificationReport rep;
  rep.check_id = "ENV-3.5";
  const Ring& r = act.ring();
  const int window = act.periodic() ? std::max(2, act.period()) : 2;
  const FiniteTypeResult ft = is_finite_type(act, window);
  rep.details["finite_type"] = ft.finite_type;
  rep.details["finite_type_witness"] = ft.witness;
  rep.details["finite_type_reason"] = ft.reason;
  const auto decomposition = primitive_central_decomposition(r);
  json parts = json::array();
  for (Elem e : decomposition) parts.push_back(r.format(e));
  rep.details["decomposition"] = parts;
  rep.details["summands"] = decomposition.size();
  if (!ft.finite_type) {
    rep.status = Status::reported;
    rep.details["hypotheses"] = "unmet: not of finite type, no claim either way";
    rep.witness({{"finite_type", false}, {"reason", ft.reason}});
    return rep;
  }
  rep.details["hypotheses"] = "met: finite type, finite rank";
  if (const auto* env = act.envelope()) {
    const RingMorphism phi(r, env->global->ring(), env->embedding);
    rep.absorb(verify_enveloping(act, *env->global, phi), "enveloping");
  } else {
    rep.status = Status::reported;
    rep.witness({{"finite_type", true}, {"note", "no enveloping data stored for this presentation"}});
  }
  return rep;
}

}  // namespace tpsa

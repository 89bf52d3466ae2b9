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
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "tpsa/alpha_ideals.hpp"
#include "tpsa/ideal.hpp"
#include "tpsa/report.hpp"
#include "tpsa/skewseries.hpp"

namespace tpsa {

/// Right ideals reuse the element-set type; closure is on the right only.
using RightIdealSet = IdealSet;

namespace detail {

inline std::string mask_key(const IdealSet& s) { return std::string(s.mask().begin(), s.mask().end()); }

/// Distinct principal right ideals aR for nonzero a in a container, plus the
/// index of aR for every such a.
struct PrincipalRightIdeals {
  std::vector<IdealSet> ideals;
  std::vector<std::size_t> of;  // element -> position in ideals, npos for 0 / outside
};

inline PrincipalRightIdeals principal_right_ideals(const Ring& ring, const std::vector<Elem>& elements) {
  PrincipalRightIdeals out;
  out.of.assign(ring.size(), std::string::npos);
  std::unordered_map<std::string, std::size_t> seen;
  for (Elem a : elements) {
    if (a == 0 || out.of[a] != std::string::npos) continue;
    IdealSet p = right_ideal_closure(ring, {a});
    auto [it, fresh] = seen.emplace(mask_key(p), out.ideals.size());
    if (fresh) out.ideals.push_back(std::move(p));
    out.of[a] = it->second;
  }
  return out;
}

inline std::vector<Elem> all_elements(const Ring& ring) {
  std::vector<Elem> out(ring.size());
  for (Elem a = 0; a < ring.size(); ++a) out[a] = a;
  return out;
}

}  // namespace detail

/// Minimal nonzero right ideals: principal right ideals every nonzero
/// element of which generates the whole ideal.
inline std::vector<RightIdealSet> simple_right_ideals(const Ring& ring, std::size_t cap = kRingCap) {
  if (ring.size() > cap) throw Error(ErrorCode::cap_exceeded, "ring too large for right ideal enumeration");
  auto pr = detail::principal_right_ideals(ring, detail::all_elements(ring));
  std::vector<RightIdealSet> out;
  for (std::size_t k = 0; k < pr.ideals.size(); ++k) {
    bool simple = true;
    for (Elem b : pr.ideals[k].members()) {
      if (b != 0 && pr.of[b] != k) {
        simple = false;
        break;
      }
    }
    if (simple) out.push_back(pr.ideals[k]);
  }
  std::sort(out.begin(), out.end(), [](const IdealSet& x, const IdealSet& y) { return x.members() < y.members(); });
  return out;
}

inline RightIdealSet right_socle(const Ring& ring) {
  RightIdealSet acc = IdealSet::zero(ring);
  for (const auto& v : simple_right_ideals(ring)) acc = sum(acc, v);
  return acc;
}

/// A direct sum of simple right ideals equal to the right socle. In a finite
/// ring every nonzero right ideal contains a simple one, so the socle is
/// essential and the number of summands is the uniform dimension.
struct RankCertificate {
  Ring ring;
  int rank = 0;
  std::vector<RightIdealSet> summands;

  /// Re-checks simplicity, independence, and essentiality of the sum.
  std::optional<std::string> defect() const {
    auto simples = simple_right_ideals(ring);
    for (const auto& v : summands) {
      if (std::find(simples.begin(), simples.end(), v) == simples.end()) return "summand is not simple";
    }
    for (std::size_t k = 0; k < summands.size(); ++k) {
      IdealSet others = IdealSet::zero(ring);
      for (std::size_t l = 0; l < summands.size(); ++l) {
        if (l != k) others = sum(others, summands[l]);
      }
      if (!intersect(others, summands[k]).is_zero()) return "summands are not independent";
    }
    IdealSet total = IdealSet::zero(ring);
    for (const auto& v : summands) total = sum(total, v);
    for (Elem a = 1; a < ring.size(); ++a) {
      if (intersect(right_ideal_closure(ring, {a}), total).is_zero()) return "sum is not essential";
    }
    if (static_cast<std::size_t>(rank) != summands.size()) return "rank does not match summand count";
    return std::nullopt;
  }

  json to_json() const {
    json s = json::array();
    for (const auto& v : summands) s.push_back(v.format_members());
    return {{"rank", rank}, {"summands", s}};
  }
};

inline RankCertificate uniform_dim(const Ring& ring) {
  RankCertificate cert{ring, 0, {}};
  IdealSet acc = IdealSet::zero(ring);
  for (const auto& v : simple_right_ideals(ring)) {
    if (!intersect(acc, v).is_zero()) continue;
    acc = sum(acc, v);
    cert.summands.push_back(v);
  }
  cert.rank = static_cast<int>(cert.summands.size());
  return cert;
}

/// Every two nonzero right subideals of I meet; principal subideals suffice
/// since each nonzero subideal contains one.
inline bool is_uniform_right_ideal(const Ring& ring, const RightIdealSet& i) {
  if (i.is_zero()) throw Error(ErrorCode::not_simple, "the zero right ideal is not uniform");
  auto pr = detail::principal_right_ideals(ring, i.members());
  for (std::size_t a = 0; a < pr.ideals.size(); ++a) {
    for (std::size_t b = a + 1; b < pr.ideals.size(); ++b) {
      if (intersect(pr.ideals[a], pr.ideals[b]).is_zero()) return false;
    }
  }
  return true;
}

/// All right subideals of a right ideal: sums of its principal subideals.
inline std::vector<RightIdealSet> right_subideal_lattice(const Ring& ring, const RightIdealSet& container) {
  auto pr = detail::principal_right_ideals(ring, container.members());
  std::vector<RightIdealSet> lattice{IdealSet::zero(ring)};
  std::unordered_map<std::string, std::size_t> index{{detail::mask_key(lattice[0]), 0}};
  for (std::size_t q = 0; q < lattice.size(); ++q) {
    for (const auto& p : pr.ideals) {
      if (p.subset_of(lattice[q])) continue;
      auto s = sum(lattice[q], p);
      if (index.emplace(detail::mask_key(s), lattice.size()).second) lattice.push_back(std::move(s));
    }
  }
  std::sort(lattice.begin(), lattice.end(), [](const IdealSet& x, const IdealSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.members() < y.members();
  });
  return lattice;
}

namespace detail {

inline void require_simple(const Ring& r, const RightIdealSet& v) {
  auto simples = simple_right_ideals(r);
  if (std::find(simples.begin(), simples.end(), v) == simples.end()) {
    throw Error(ErrorCode::not_simple, "V is not a simple right ideal");
  }
}

/// Chain member V(sum_{i>=k} D_i x^i): coefficients in V 1_i from degree k on.
inline bool in_chain_member(const TwistedPartialAction& act, const RightIdealSet& v, const SkewSeries& f, Index k) {
  const Ring& r = act.ring();
  for (auto [i, c] : f.terms()) {
    if (i < k || !v.contains(c) || r.mul(c, act.idempotent(i)) != c) return false;
  }
  return true;
}

/// Element v with v0 * s = target for some s in D_t, searched over D_t.
inline std::optional<Elem> solve_in_domain(const TwistedPartialAction& act, Index k, Elem vk, Index t, Elem target) {
  for (Elem s : act.domain(t)) {
    if (monomial_product(act, k, vk, t, s) == target) return s;
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks that the submodules of V R[[x;alpha,w]] form the chain
/// V R[[x]] > V(sum_{i>=1} D_i x^i) > V(sum_{i>=2} D_i x^i) > ...
inline VerificationReport uniform_chain_check(const TwistedPartialAction& act, const RightIdealSet& v,
                                              int truncation, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.check_id = "CHAIN-3.1";
  const Ring& r = act.ring();
  detail::require_simple(r, v);
  rep.details["V"] = v.format_members();

  if (!act.periodic()) {
    auto m = materialize_finite(act, Flavor::power);
    std::vector<Elem> gens;
    for (Elem x : v.members()) gens.push_back(m.monomial(x, 0));
    auto vm = right_ideal_closure(m.ring, gens);
    std::vector<RightIdealSet> chain;
    for (Index k = 0; k <= act.bound() + 1; ++k) {
      auto member = IdealSet::from_predicate(
          m.ring, [&](Elem a) { return detail::in_chain_member(act, v, m.to_series(a), k); });
      if (chain.empty() || !(chain.back() == member)) chain.push_back(std::move(member));
    }
    if (!chain.front().is_zero() && !chain.back().is_zero()) chain.push_back(IdealSet::zero(m.ring));
    auto lattice = right_subideal_lattice(m.ring, vm);
    rep.details["mode"] = "exact";
    rep.details["chain_sizes"] = json::array();
    for (const auto& c : chain) rep.details["chain_sizes"].push_back(c.size());
    rep.details["submodules"] = lattice.size();
    if (!(chain.front() == vm)) rep.fail({{"property", "top"}, {"note", "V R[[x]] differs from the first chain member"}});
    std::vector<RightIdealSet> sorted = chain;
    std::sort(sorted.begin(), sorted.end(), [](const IdealSet& x, const IdealSet& y) {
      if (x.size() != y.size()) return x.size() < y.size();
      return x.members() < y.members();
    });
    if (sorted != lattice) {
      for (const auto& s : lattice) {
        if (std::find(chain.begin(), chain.end(), s) == chain.end()) {
          rep.fail({{"property", "chain"}, {"submodule", s.format_members()}});
          break;
        }
      }
      if (rep.passed()) rep.fail({{"property", "chain"}, {"note", "a chain member is not a submodule"}});
    }
    return rep;
  }

  SeriesRing h(act, Flavor::power, truncation);
  std::mt19937_64 gen(seed);
  rep.details["mode"] = "sampled";
  rep.details["samples"] = samples;
  rep.details["truncation"] = truncation;
  std::vector<std::size_t> by_degree(static_cast<std::size_t>(truncation), 0);
  auto random_member = [&](Index k) {
    std::map<Index, Elem> c;
    for (Index i = k; i < truncation; ++i) {
      std::vector<Elem> options;
      for (Elem x : v.members()) {
        if (r.mul(x, act.idempotent(i)) == x) options.push_back(x);
      }
      c[i] = options[pick(gen, options.size())];
    }
    return series_make(h, c);
  };
  for (std::size_t n = 0; n < samples; ++n) {
    const Index k = static_cast<Index>(pick(gen, static_cast<std::size_t>(std::max(1, truncation - 2))));
    auto f = random_member(k);
    if (f.is_zero() || f.low() != k) continue;
    ++by_degree[k];
    // f R[[x]] lies inside the chain member of its leading degree
    auto g = random_series(h, gen, 0);
    if (!detail::in_chain_member(act, v, f * g, k)) {
      rep.fail({{"property", "containment"}, {"f", f.format()}, {"g", g.format()}});
      continue;
    }
    // and reaches every element of it
    auto target = random_member(k);
    std::optional<SkewSeries> reached;
    if (k == 0) {
      auto dec = solve_decomposition(f);
      if (!dec) {
        rep.fail({{"property", "decomposition"}, {"f", f.format()}});
        continue;
      }
      auto q = chain_divide(f, *dec);
      const Elem v0 = f.coeff(0);
      std::map<Index, Elem> c;
      bool ok = true;
      for (auto [i, ti] : target.terms()) {
        std::optional<Elem> s = detail::solve_in_domain(act, 0, v0, i, ti);
        if (!s) {
          ok = false;
          break;
        }
        c[i] = *s;
      }
      if (ok) reached = f * (q * series_make(h, c));
    } else {
      // degree-by-degree solve of f h = target
      std::map<Index, Elem> c;
      bool ok = true;
      for (Index t = 0; k + t < truncation && ok; ++t) {
        auto partial = f * series_make(h, c);
        const Elem need = r.sub(target.coeff(k + t), partial.coeff(k + t));
        auto s = detail::solve_in_domain(act, k, f.coeff(k), t, need);
        if (!s) ok = false;
        else c[t] = *s;
      }
      if (ok) reached = f * series_make(h, c);
    }
    if (!reached || !(*reached == target)) {
      rep.fail({{"property", "generation"}, {"f", f.format()}, {"target", target.format()}});
    }
  }
  rep.details["samples_by_degree"] = by_degree;
  return rep;
}

inline bool is_semiprime(const Ring& ring) { return intersection_of(ring, prime_ideals(enumerate_ideals(ring))).is_zero(); }

/// Uniform dimension of R against its power series and Laurent rings.
inline VerificationReport rank_comparison(const TwistedPartialAction& act, int truncation, std::size_t samples,
                                          std::uint64_t seed) {
  VerificationReport rep;
  rep.check_id = "RANK-3.3";
  const Ring& r = act.ring();
  if (!is_semiprime(r)) throw Error(ErrorCode::not_semiprime, "the base ring has a nonzero prime radical");
  auto base = uniform_dim(r);
  rep.details["rank_base"] = base.rank;
  if (!act.periodic()) {
    auto pm = materialize_finite(act, Flavor::power);
    auto lm = materialize_finite(act, Flavor::laurent);
    auto rp = uniform_dim(pm.ring);
    auto rl = uniform_dim(lm.ring);
    rep.details["mode"] = "exact";
    rep.details["rank_power"] = rp.rank;
    rep.details["rank_laurent"] = rl.rank;
    rep.details["certificate_base"] = base.to_json();
    if (rp.rank != base.rank || rl.rank != base.rank) {
      rep.fail({{"ranks", {base.rank, rp.rank, rl.rank}}});
    }
    return rep;
  }
  // a finite semiprime ring is semisimple: R is the direct sum of the summands
  IdealSet total = IdealSet::zero(r);
  for (const auto& v : base.summands) total = sum(total, v);
  rep.details["mode"] = "decomposition";
  rep.details["summands"] = base.rank;
  rep.details["certificate_base"] = base.to_json();
  if (!total.is_whole()) rep.fail({{"property", "decomposition"}, {"socle", total.format_members()}});
  for (std::size_t k = 0; k < base.summands.size(); ++k) {
    rep.absorb(uniform_chain_check(act, base.summands[k], truncation, samples, seed + k),
               "chain_" + std::to_string(k));
  }
  return rep;
}

}  // namespace tpsa

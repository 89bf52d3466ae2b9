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

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tpsa/builtin.hpp"
#include "tpsa/checks.hpp"
#include "tpsa/generator.hpp"

namespace tpsa {

struct SearchParams {
  std::size_t budget = 200;  // fixtures scanned, built-ins included
  std::uint64_t seed = 0;
};

struct SearchOutcome {
  VerificationReport report;
  bool budget_exhausted = false;
};

inline const std::vector<std::string>& open_question_ids() {
  static const std::vector<std::string> ids{"OQ-2.5", "OQ-2.16i", "OQ-2.16ii", "OQ-3.14"};
  return ids;
}

namespace detail {

/// Scans built-in fixtures, then the generator stream, until the visitor
/// asks to stop or the budget runs out. Returns the number scanned.
inline std::size_t scan_fixtures(const SearchParams& p, GeneratorCaps::Mix mix, bool finite_support_only,
                                 const std::function<bool(const Fixture&)>& visit, GeneratorStats* stats) {
  std::size_t scanned = 0;
  for (const char* name : {"f3", "f3p", "f1", "f2"}) {
    if (scanned >= p.budget) return scanned;
    Fixture f = builtin_fixture(name);
    if (finite_support_only && f.action.periodic()) continue;
    ++scanned;
    if (visit(f)) return scanned;
  }
  GeneratorCaps caps;
  caps.mix = mix;
  FixtureGenerator gen(p.seed, caps);
  while (scanned < p.budget) {
    Fixture f = gen.next();
    ++scanned;
    if (visit(f)) break;
  }
  if (stats) *stats = gen.stats();
  return scanned;
}

inline bool within_exact_limit(CheckContext& c) { return !checks::exact_series(c).has_value(); }

/// Witness for converse maximality: a prime P with P != (P cap R)-extension
/// that some strictly larger ideal with the same contraction contains.
inline std::optional<json> non_maximal_prime(CheckContext& c, Flavor f) {
  const auto& act = c.act();
  const auto& m = c.series(f);
  const auto& lattice = c.series_lattice(f);
  for (const auto& p : c.series_primes(f)) {
    const auto q = contraction(p, m);
    if (p == ideal_extension(q, m)) continue;
    if (f == Flavor::power) {
      bool omits = false;
      for (Index i = 1; i <= act.bound(); ++i) omits = omits || !p.contains(m.monomial(act.idempotent(i), i));
      if (!omits || !is_alpha_invariant(act, q) || !is_strongly_alpha_prime(act, q)) continue;
    }
    for (const auto& n : lattice) {
      if (n.size() > p.size() && p.subset_of(n) && contraction(n, m) == q) {
        return json{{"fixture", c.fixture().name},
                    {"spec", spec_to_json(c.fixture().spec)},
                    {"prime", checks::series_members(p, m)},
                    {"contraction", checks::members(q)},
                    {"larger_ideal", checks::series_members(n, m)}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Scans for instances bearing on an open question. Statuses are always
/// "reported"; budget_exhausted is set when a witness search ends without one.
inline SearchOutcome search_open_question(const std::string& id, const SearchParams& params) {
  SearchOutcome out;
  auto& rep = out.report;
  rep.check_id = id;
  rep.fixture = "generator";
  rep.status = Status::reported;
  rep.parameters = {{"budget", params.budget}, {"seed", params.seed}};
  const auto start = std::chrono::steady_clock::now();
  GeneratorStats stats;
  std::size_t scanned = 0;
  bool found = false;

  if (id == "OQ-2.5") {
    scanned = detail::scan_fixtures(
        params, GeneratorCaps::Mix::both, false,
        [&](const Fixture& f) {
          CheckContext c(f, {});
          for (const auto& s : c.base_lattice()) {
            if (is_alpha_ideal(f.action, s) && !is_alpha_invariant(f.action, s)) {
              rep.witness({{"fixture", f.name},
                           {"spec", spec_to_json(f.spec)},
                           {"ideal", s.format_members()},
                           {"alpha_ideal", true},
                           {"alpha_invariant", false},
                           {"noetherian", "finite ring"}});
              found = true;
              return true;
            }
          }
          return false;
        },
        &stats);
  } else if (id == "OQ-2.16i" || id == "OQ-2.16ii") {
    const Flavor flavor = id == "OQ-2.16i" ? Flavor::laurent : Flavor::power;
    std::size_t examined = 0;
    scanned = detail::scan_fixtures(
        params, GeneratorCaps::Mix::finite_support, true,
        [&](const Fixture& f) {
          CheckContext c(f, {});
          if (!detail::within_exact_limit(c)) return false;
          ++examined;
          if (auto w = detail::non_maximal_prime(c, flavor)) {
            rep.witness(std::move(*w));
            found = true;
            return true;
          }
          return false;
        },
        &stats);
    rep.details["fixtures_examined"] = examined;
  } else if (id == "OQ-3.14") {
    std::size_t agree = 0, disagree = 0, skipped = 0;
    scanned = detail::scan_fixtures(
        params, GeneratorCaps::Mix::finite_support, true,
        [&](const Fixture& f) {
          CheckContext c(f, {});
          if (!detail::within_exact_limit(c)) {
            ++skipped;
            return false;
          }
          const auto& pm = c.series(Flavor::power);
          const auto brute = intersection_of(pm.ring, c.series_primes(Flavor::power));
          const auto rhs = powerseries_radical_formula(f.action, c.bundle()).on(pm);
          const bool same = brute == rhs;
          (same ? agree : disagree) += 1;
          json row{{"fixture", f.name}, {"power_ring_size", pm.ring.size()}, {"agree", same}};
          if (!same) {
            row["spec"] = spec_to_json(f.spec);
            row["brute_force"] = checks::series_members(brute, pm);
            row["formula"] = checks::series_members(rhs, pm);
          }
          rep.witness(std::move(row));
          return false;
        },
        &stats);
    rep.details["agree"] = agree;
    rep.details["disagree"] = disagree;
    rep.details["skipped_over_limit"] = skipped;
    found = true;
  } else {
    throw Error(ErrorCode::unknown_check, "unknown question id " + id);
  }

  rep.details["fixtures_scanned"] = scanned;
  rep.details["generator"] = stats.to_json();
  rep.details["witness_found"] = found;
  if (!found) {
    out.budget_exhausted = true;
    rep.details["budget_exhausted"] = true;
    rep.witness({{"fixtures_scanned", scanned}, {"witness", nullptr}});
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace tpsa

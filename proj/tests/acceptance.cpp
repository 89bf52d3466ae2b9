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

// Acceptance run: one [PASS]/[FAIL] line per criterion, each with its time
// bound. Exit status is the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "common.hpp"
#include "tpsa/tpsa.hpp"

using namespace tpsa;
using namespace tpsa::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::string fixture_path(const std::string& name) { return std::string(TPSA_FIXTURE_DIR) + "/" + name + ".json"; }

Fixture fixture(const std::string& name) { return load_fixture(fixture_path(name)); }

std::vector<Fixture> finite_support_pool(std::size_t generated) {
  std::vector<Fixture> out;
  for (const char* n : {"f3", "f3p", "block_pair", "chain3"}) out.push_back(fixture(n));
  GeneratorCaps caps;
  caps.mix = GeneratorCaps::Mix::finite_support;
  FixtureGenerator gen(2026, caps);
  while (out.size() < 4 + generated) {
    Fixture f = gen.next();
    CheckContext c(f, {});
    if (!checks::exact_series(c)) out.push_back(std::move(f));
  }
  return out;
}

/// Element-wise primality: a R b inside P forces a or b inside P.
std::vector<IdealSet> primes_by_elements(const Ring& r) {
  std::vector<IdealSet> out;
  for (const auto& i : enumerate_ideals(r)) {
    if (!i.is_whole() && is_prime_ideal(i)) out.push_back(i);
  }
  return out;
}

bool ring_is_prime(const Ring& r) { return r.size() > 1 && is_prime_ideal(IdealSet::zero(r)); }

Outcome ac1() {
  Outcome o;
  for (const char* n : {"f1", "f2", "f3", "f3p"}) o.require(check_axioms(fixture(n).action).passed(), std::string(n) + " axioms");
  FixtureGenerator gen(1);
  for (int k = 0; k < 25; ++k) {
    const auto f = gen.next();
    o.require(check_axioms(f.action).passed(), f.name + " axioms");
  }
  std::size_t caught = 0;
  for (const auto& m : axiom_mutations()) {
    if (m.axiom == "invertible") continue;
    const auto rep = check_axioms(m.action);
    const json* w = witness_for(rep, m.axiom);
    const bool ok = !rep.passed() && w && witness_is_violation(m.action, *w);
    o.require(ok, "mutation of axiom " + m.axiom + " not caught with a valid witness");
    caught += ok;
  }
  o.require(caught == 5, "expected five caught mutations");
  if (o.ok) o.note = "4 reference + 25 generated fixtures pass; 5/5 mutations caught";
  return o;
}

Outcome ac2() {
  Outcome o;
  for (Flavor fl : {Flavor::power, Flavor::laurent}) {
    const auto m = materialize_finite(fixture("f3").action, fl);
    const Ring& s = m.ring;
    o.require(s.size() == (fl == Flavor::power ? 8u : 16u), "materialized sizes");
    std::size_t bad = 0;
    for (Elem a = 0; a < s.size(); ++a) {
      for (Elem b = 0; b < s.size(); ++b) {
        for (Elem c = 0; c < s.size(); ++c) {
          bad += s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c));
          bad += s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c));
          bad += s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c));
        }
      }
    }
    o.require(bad == 0, "F3 materialized triple failures");
  }
  std::mt19937_64 gen(2);
  for (const char* n : {"f1", "f2"}) {
    const auto act = fixture(n).action;
    for (Flavor fl : {Flavor::power, Flavor::laurent}) {
      SeriesRing h(act, fl, 8);
      std::size_t bad = 0;
      for (int k = 0; k < 10000; ++k) {
        const Index low = fl == Flavor::power ? 0 : -static_cast<Index>(pick(gen, 3));
        const auto f = random_series(h, gen, low), g = random_series(h, gen, low), q = random_series(h, gen, low);
        bad += !((f * g) * q == f * (g * q));
        bad += !(f * (g + q) == f * g + f * q);
        bad += !((f + g) * q == f * q + g * q);
      }
      o.require(bad == 0, std::string(n) + " random triple failures");
    }
  }
  if (o.ok) o.note = "F3: all 8^3 and 16^3 triples; F1/F2: 10^4 triples per flavor at N = 8";
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto f3a = fixture("f3").action;
  std::size_t ideals = 0;
  for (const auto& i : enumerate_ideals(f3a.ring())) {
    if (i.is_whole() || !is_alpha_invariant(f3a, i)) continue;
    ++ideals;
    for (Flavor fl : {Flavor::power, Flavor::laurent}) {
      o.require(quotient_iso_check(f3a, i, 0, 8, 0, fl).passed(), "F3 exact quotient check");
    }
  }
  const auto f1a = fixture("f1").action;
  std::size_t sampled = 0;
  for (const auto& i : enumerate_ideals(f1a.ring())) {
    if (i.is_whole() || !is_alpha_invariant(f1a, i)) continue;
    ++sampled;
    o.require(quotient_iso_check(f1a, i, 10000, 8, 3, Flavor::power).passed(), "F1 sampled quotient check");
  }
  o.require(ideals > 0 && sampled > 0, "no invariant ideals examined");
  if (o.ok) o.note = std::to_string(ideals) + " F3 ideals exact, " + std::to_string(sampled) + " F1 ideals with 10^4 pairs";
  return o;
}

Outcome ac4() {
  Outcome o;
  const auto pool = finite_support_pool(4);
  for (const auto& f : pool) {
    const auto zero = IdealSet::zero(f.action.ring());
    const bool ap = is_alpha_prime(f.action, zero);
    const bool sp = is_strongly_alpha_prime(f.action, zero);
    const bool lp = ring_is_prime(materialize_finite(f.action, Flavor::laurent).ring);
    const bool pp = ring_is_prime(materialize_finite(f.action, Flavor::power).ring);
    o.require(ap == lp, f.name + ": alpha-prime vs Laurent primality");
    o.require(sp == pp, f.name + ": strongly alpha-prime vs power primality");
    if (f.name == "f3") o.require(ap && lp && !sp && !pp, "F3 divergence");
  }
  if (o.ok) o.note = std::to_string(pool.size()) + " finite-support fixtures; F3 Laurent prime, power ring not prime";
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto pool = finite_support_pool(16);
  for (const auto& f : pool) {
    const auto lm = materialize_finite(f.action, Flavor::laurent);
    const auto primes = lm.ring.size() <= 128 ? primes_by_elements(lm.ring) : prime_ideals(enumerate_ideals(lm.ring));
    const auto brute = intersection_of(lm.ring, primes);
    const auto formula = ideal_extension(radicals(f.action).nil_alpha, lm);
    o.require(brute == formula, f.name + ": Laurent prime radical differs from the formula");
  }
  if (o.ok) o.note = std::to_string(pool.size()) + " finite-support fixtures, element sets equal";
  return o;
}

Outcome ac6() {
  Outcome o;
  std::vector<Fixture> pool;
  for (const char* n : {"f1", "f2", "f3", "f3p", "block_pair", "chain3", "trivial_global", "global_m2"}) pool.push_back(fixture(n));
  FixtureGenerator gen(6);
  for (int k = 0; k < 20; ++k) pool.push_back(gen.next());
  std::size_t ideals = 0;
  for (const auto& f : pool) {
    if (f.action.ring().size() > 256) continue;
    const auto rep = run_check("CRIT-2.3", f, {});
    o.require(rep.passed(), f.name + ": criteria disagree");
    ideals += rep.details["ideals_checked"].get<std::size_t>();
  }
  if (o.ok) o.note = std::to_string(pool.size()) + " fixtures, " + std::to_string(ideals) + " invariant ideals";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::mt19937_64 gen(7);
  for (const char* n : {"f1", "f2", "f3", "f3p", "chain3"}) {
    SeriesRing h(fixture(n).action, Flavor::power, 8);
    int accepted = 0;
    for (int tries = 0; tries < 200000 && accepted < 100; ++tries) {
      const auto f = random_series(h, gen, 0);
      if (f.coeff(0) == 0) continue;
      const auto dec = solve_decomposition(f);
      if (!dec) continue;
      ++accepted;
      const auto g = chain_divide(f, *dec);
      o.require(f * g == series_monomial(h, f.coeff(0), 0), std::string(n) + ": f g != v_0 mod x^8");
    }
    o.require(accepted == 100, std::string(n) + ": only " + std::to_string(accepted) + " accepted inputs");
  }
  if (o.ok) o.note = "100 accepted inputs on each of 5 fixtures";
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto act = fixture("f3").action;
  const auto simple = simple_right_ideals(act.ring());
  for (const auto& v : simple) o.require(uniform_chain_check(act, v, 8, 200, 0).passed(), "chain check on F3");
  const auto rep = rank_comparison(act, 8, 200, 0);
  o.require(rep.passed() && rep.details["rank_base"] == 2 && rep.details["rank_power"] == 2 && rep.details["rank_laurent"] == 2,
            "F3 ranks");
  o.require(uniform_dim(FiniteRing({FactorSpec::matrix(2, 2)})).rank == 2, "rank M2(Z2)");
  o.require(uniform_dim(cyclic_product({2, 2})).rank == 2, "rank Z2 x Z2");
  if (o.ok) o.note = std::to_string(simple.size()) + " simple right ideals; ranks 2 = 2 = 2; M2(Z2) and Z2xZ2 rank 2";
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto exact = run_check("SEMI-2.10", fixture("f3"), {});
  o.require(exact.passed() && exact.details["mode"] == "exact", "F3 exact witness search");
  std::size_t witnessed = exact.details["witnessed"].get<std::size_t>();
  o.require(witnessed == 15, "F3: expected 15 nonzero Laurent series");
  for (const char* n : {"f1", "f2"}) {
    CheckParams p;
    p.samples = 1000;
    p.seed = 9;
    const auto rep = run_check("SEMI-2.10", fixture(n), p);
    o.require(rep.passed(), std::string(n) + ": witness search failed");
    witnessed += rep.details["witnessed"].get<std::size_t>();
  }
  if (o.ok) o.note = std::to_string(witnessed) + " series witnessed, none with f S f = 0";
  return o;
}

Outcome ac10() {
  Outcome o;
  const auto rep = run_check("DICH-2.11", fixture("f3"), {});
  o.require(rep.passed(), "a prime falls in zero or two branches");
  o.require(rep.details["primes"].get<std::size_t>() > 0, "no primes");
  if (o.ok) {
    o.note = std::to_string(rep.details["primes"].get<std::size_t>()) + " primes: " + rep.details["branch_i"].dump() +
             " in branch (i), " + rep.details["branch_ii"].dump() + " in branch (ii)";
  }
  return o;
}

Outcome ac11() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = search_open_question("OQ-2.5", {});
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(s < 1.0, "OQ-2.5 took longer than 1 s");
  o.require(a.report.status == Status::reported && !a.budget_exhausted, "OQ-2.5 status");
  o.require(!a.report.witnesses.empty() && a.report.witnesses[0]["fixture"] == "f3" &&
                a.report.witnesses[0]["ideal"] == json({"(0,0)", "(1,0)"}),
            "OQ-2.5 witness is not D_1 of F3");
  const auto b = search_open_question("OQ-3.14", {50, 0});
  o.require(b.report.status == Status::reported, "OQ-3.14 status");
  o.require(!b.report.witnesses.empty(), "OQ-3.14 table is empty");
  if (o.ok) {
    o.note = "OQ-2.5 in " + std::to_string(s) + " s; OQ-3.14 table: " + b.report.details["agree"].dump() + " agree, " +
             b.report.details["disagree"].dump() + " disagree";
  }
  return o;
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome ac12() {
  Outcome o;
  const std::string cmd = std::string(TPSA_CLI) + " --no-cache verify all " + fixture_path("f3") + " --seed 7";
  const auto [rc1, first] = capture(cmd);
  const auto [rc2, second] = capture(cmd);
  o.require(rc1 == 0 && rc2 == 0, "CLI exit status");
  o.require(!first.empty() && first == second, "reports differ");
  o.require(json::parse(first).value("schema_version", 0) == 1, "schema version");
  if (o.ok) o.note = std::to_string(first.size()) + " identical bytes";
  return o;
}

struct Criterion {
  int id;
  double bound;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{{1, 10, ac1},  {2, 60, ac2},  {3, 60, ac3},   {4, 120, ac4},
                                        {5, 120, ac5}, {6, 60, ac6},  {7, 30, ac7},   {8, 60, ac8},
                                        {9, 60, ac9},  {10, 30, ac10}, {11, 300, ac11}, {12, 60, ac12}};
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s >= c.bound) {
      o.ok = false;
      o.note += " (over the time bound)";
    }
    failed += !o.ok;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (o.ok ? "[PASS]" : "[FAIL]") << " AC-" << c.id << " (" << s << " s, bound " << c.bound
         << " s): " << o.note;
    std::cout << line.str() << std::endl;
  }
  return failed;
}

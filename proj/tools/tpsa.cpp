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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "tpsa/tpsa.hpp"

namespace {

using namespace tpsa;

struct Globals {
  std::string json_out;
  std::string cache_dir;
  bool no_cache = false;
};

int emit(const Globals& g, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (g.json_out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(g.json_out);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + g.json_out);
  out << text;
  return 0;
}

LatticeCache make_cache(const Globals& g) {
  if (g.no_cache) return {};
  return LatticeCache(g.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g.cache_dir));
}

json envelope(const std::string& command, const Fixture& f) {
  return {{"schema_version", 1}, {"command", command}, {"fixture", f.name}};
}

json ideal_list(const std::vector<IdealSet>& v, const MaterializedSeries* m) {
  json out = json::array();
  for (const auto& i : v) out.push_back(m ? checks::series_members(i, *m) : json(i.format_members()));
  return out;
}

int cmd_validate(const Globals& g, const std::string& path) {
  const Fixture f = load_fixture(path);
  const auto rep = check_axioms(f.action);
  json j = envelope("validate", f);
  j["valid"] = rep.passed();
  j["presentation"] = f.action.periodic() ? "restricted_global" : "finite_support";
  j["ring_size"] = f.action.ring().size();
  j["description"] = f.action.describe();
  j["axioms"] = rep.to_json();
  emit(g, j);
  return rep.passed() ? 0 : 1;
}

int cmd_radicals(const Globals& g, const std::string& path) {
  const Fixture f = load_fixture(path);
  auto cache = make_cache(g);
  CheckContext c(f, {}, &cache);
  const auto& b = c.bundle();
  const auto pf = powerseries_radical_formula(f.action, b);
  json j = envelope("radicals", f);
  j["base"] = b.to_json();
  j["laurent_formula"] = {{"coefficients", b.nil_alpha.format_members()}};
  j["power_formula"] = {{"constant", pf.constant.format_members()}, {"higher", pf.higher.format_members()}, {"label", pf.label()}};
  if (!f.action.periodic() && !checks::exact_series(c)) {
    const auto& pm = c.series(Flavor::power);
    const auto& lm = c.series(Flavor::laurent);
    const auto pr = intersection_of(pm.ring, c.series_primes(Flavor::power));
    const auto lr = intersection_of(lm.ring, c.series_primes(Flavor::laurent));
    j["power_brute_force"] = {{"radical", checks::series_members(pr, pm)}, {"agrees_with_formula", pr == pf.on(pm)}};
    j["laurent_brute_force"] = {{"radical", checks::series_members(lr, lm)},
                                {"agrees_with_formula", lr == ideal_extension(b.nil_alpha, lm)}};
  }
  return emit(g, j);
}

int cmd_primes(const Globals& g, const std::string& path, const std::string& ring) {
  const Fixture f = load_fixture(path);
  auto cache = make_cache(g);
  CheckContext c(f, {}, &cache);
  json j = envelope("primes", f);
  j["ring"] = ring;
  if (ring == "base") {
    j["primes"] = ideal_list(c.bundle().primes, nullptr);
    j["ring_size"] = f.action.ring().size();
    return emit(g, j);
  }
  const Flavor fl = ring == "power" ? Flavor::power : Flavor::laurent;
  if (f.action.periodic()) throw Error(ErrorCode::not_finite_support, "series rings of periodic actions are infinite");
  const auto& m = c.series(fl);
  j["ring_size"] = m.ring.size();
  j["primes"] = ideal_list(c.series_primes(fl), &m);
  return emit(g, j);
}

int cmd_rank(const Globals& g, const std::string& path) {
  const Fixture f = load_fixture(path);
  CheckContext c(f, {});
  json j = envelope("rank", f);
  j["base"] = uniform_dim(f.action.ring()).to_json();
  if (!f.action.periodic() && !checks::exact_series(c)) {
    j["power"] = uniform_dim(c.series(Flavor::power).ring).to_json();
    j["laurent"] = uniform_dim(c.series(Flavor::laurent).ring).to_json();
  }
  return emit(g, j);
}

int cmd_verify(const Globals& g, const std::string& id, const std::string& path, int truncation, std::size_t samples,
               std::optional<std::uint64_t> seed) {
  const Fixture f = load_fixture(path);
  CheckParams p;
  p.truncation = truncation;
  p.samples = samples;
  p.seed = seed.value_or(f.seed);
  auto cache = make_cache(g);
  if (id == "all") {
    const auto res = run_all(f, p, &cache);
    emit(g, res.to_json(f, p));
    return res.any_fail() ? 1 : 0;
  }
  const auto rep = run_check(id, f, p, &cache);
  emit(g, rep.to_json());
  return rep.status == Status::fail || rep.status == Status::error ? 1 : 0;
}

int cmd_search(const Globals& g, const std::string& id, std::size_t budget, std::uint64_t seed) {
  const auto out = search_open_question(id, {budget, seed});
  emit(g, out.report.to_json());
  if (out.budget_exhausted) {
    std::cerr << "BudgetExceeded: " << id << " scanned " << budget << " fixtures without a witness\n";
    return 3;
  }
  return 0;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::cap_exceeded:
    case ErrorCode::budget_exceeded: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted partial actions: fixtures, checks and searches"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--json-out", g.json_out, "write the JSON report here instead of stdout");
  app.add_option("--cache-dir", g.cache_dir, "ideal lattice cache directory");
  app.add_flag("--no-cache", g.no_cache, "recompute ideal lattices");

  std::string fixture, id, ring = "base";
  int truncation = 8;
  std::size_t samples = 200, budget = 200;
  std::uint64_t search_seed = 0;
  std::optional<std::uint64_t> seed;

  auto* validate = app.add_subcommand("validate", "parse a fixture and run the axiom check");
  validate->add_option("fixture", fixture)->required();
  auto* rad = app.add_subcommand("radicals", "prime, alpha and strong alpha radicals");
  rad->add_option("fixture", fixture)->required();
  auto* primes = app.add_subcommand("primes", "prime ideals of the base or a materialized series ring");
  primes->add_option("fixture", fixture)->required();
  primes->add_option("--ring", ring)->check(CLI::IsMember({"base", "power", "laurent"}));
  auto* rank = app.add_subcommand("rank", "uniform dimension certificates");
  rank->add_option("fixture", fixture)->required();
  auto* verify = app.add_subcommand("verify", "run a registered check or all of them");
  verify->add_option("check", id)->required();
  verify->add_option("fixture", fixture)->required();
  verify->add_option("--truncation", truncation)->check(CLI::Range(1, 64));
  verify->add_option("--samples", samples);
  verify->add_option("--seed", seed);
  auto* search = app.add_subcommand("search", "scan fixtures for open-question instances");
  search->add_option("question", id)->required();
  search->add_option("--budget", budget)->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  search->add_option("--seed", search_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(g, fixture);
    if (*rad) return cmd_radicals(g, fixture);
    if (*primes) return cmd_primes(g, fixture, ring);
    if (*rank) return cmd_rank(g, fixture);
    if (*verify) return cmd_verify(g, id, fixture, truncation, samples, seed);
    if (*search) return cmd_search(g, id, budget, search_seed);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

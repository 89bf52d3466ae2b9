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

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tpsa/finite_ring.hpp"
#include "tpsa/paction.hpp"
#include "tpsa/report.hpp"

namespace tpsa {

struct FixtureCaps {
  std::size_t ring = kRingCap;
  std::size_t lattice = kLatticeCap;
  friend bool operator==(const FixtureCaps&, const FixtureCaps&) = default;
};

/// Plain description of an action, mirroring the JSON schema one-to-one.
struct FixtureSpec {
  std::string name;
  Presentation presentation = Presentation::periodic;
  std::vector<FactorSpec> factors;

  // restricted_global
  std::vector<std::size_t> permutation;
  std::vector<std::vector<std::uint32_t>> conjugants;  // empty entry: no conjugation
  bool product_cocycle = false;
  RingElement lambda;
  RingElement e;

  // finite_support
  int bound = 0;
  std::map<Index, RingElement> idempotents;
  std::map<Index, std::vector<std::pair<RingElement, RingElement>>> maps;
  std::map<std::pair<Index, Index>, RingElement> units;

  std::optional<std::uint64_t> seed;
  std::optional<FixtureCaps> caps;
};

struct Fixture {
  std::string name;
  FixtureSpec spec;
  TwistedPartialAction action;
  FixtureCaps caps;
  std::uint64_t seed = 0;

  /// Sorted-key JSON text; the identity of the fixture for caching.
  std::string canonical() const;
};

namespace detail {

inline Error schema(const std::string& path, const std::string& what) {
  return Error(ErrorCode::schema_error, path + ": " + what);
}

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& node() const { return j_; }
  const std::string& path() const { return path_; }

  void object(const std::set<std::string>& required, const std::set<std::string>& optional) const {
    if (!j_.is_object()) throw schema(path_, "expected an object");
    for (const auto& [k, v] : j_.items()) {
      if (!required.count(k) && !optional.count(k)) throw schema(path_ + "." + k, "unknown field");
    }
    for (const auto& k : required) {
      if (!j_.contains(k)) throw schema(path_ + "." + k, "missing required field");
    }
  }

  Reader at(const std::string& key) const { return {j_.at(key), path_ + "." + key}; }
  Reader at(std::size_t k) const { return {j_.at(k), path_ + "[" + std::to_string(k) + "]"}; }
  bool has(const std::string& key) const { return j_.contains(key); }

  std::size_t array_size() const {
    if (!j_.is_array()) throw schema(path_, "expected an array");
    return j_.size();
  }

  std::string string() const {
    if (!j_.is_string()) throw schema(path_, "expected a string");
    return j_.get<std::string>();
  }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) const {
    if (!j_.is_number_integer()) throw schema(path_, "expected an integer");
    const auto v = j_.get<std::int64_t>();
    if (v < lo || v > hi) {
      throw schema(path_, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  std::vector<std::uint32_t> digits(std::size_t count) const {
    if (!j_.is_array() || j_.size() != count) throw schema(path_, "expected " + std::to_string(count) + " digits");
    std::vector<std::uint32_t> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(static_cast<std::uint32_t>(at(k).integer(0, 1LL << 31)));
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

inline RingElement read_element(const Reader& rd, const std::vector<FactorSpec>& factors) {
  if (rd.array_size() != factors.size()) {
    throw schema(rd.path(), "expected one coordinate per factor (" + std::to_string(factors.size()) + ")");
  }
  RingElement e;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    Reader c = rd.at(f);
    std::vector<std::uint32_t> d;
    if (factors[f].kind == FactorSpec::Kind::cyclic && c.node().is_number()) {
      d = {static_cast<std::uint32_t>(c.integer(0, 1LL << 31))};
    } else {
      d = c.digits(factors[f].digits());
    }
    for (auto x : d) {
      if (x >= factors[f].modulus) throw schema(c.path(), "digit not reduced mod " + std::to_string(factors[f].modulus));
    }
    e.coords.push_back(std::move(d));
  }
  return e;
}

inline json write_element(const RingElement& e, const std::vector<FactorSpec>& factors) {
  json out = json::array();
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (factors[f].kind == FactorSpec::Kind::cyclic) {
      out.push_back(e.coords[f][0]);
    } else {
      out.push_back(e.coords[f]);
    }
  }
  return out;
}

inline std::vector<FactorSpec> read_factors(const Reader& ring) {
  ring.object({"factors"}, {});
  Reader fs = ring.at("factors");
  if (fs.array_size() == 0) throw schema(fs.path(), "at least one factor required");
  std::vector<FactorSpec> out;
  for (std::size_t k = 0; k < fs.array_size(); ++k) {
    Reader f = fs.at(k);
    if (!f.node().is_object() || !f.has("kind")) throw schema(f.path(), "factor needs a kind");
    const std::string kind = f.at("kind").string();
    if (kind == "cyclic") {
      f.object({"kind", "modulus"}, {});
      const auto m = f.at("modulus").integer(std::numeric_limits<std::int32_t>::min(), 1LL << 31);
      if (m < 2) throw schema(f.path() + ".modulus", "modulus must be >= 2, got " + std::to_string(m));
      out.push_back(FactorSpec::cyclic(static_cast<std::uint32_t>(m)));
    } else if (kind == "matrix") {
      f.object({"kind", "size", "prime"}, {});
      const auto k2 = f.at("size").integer(1, 8);
      const auto p = f.at("prime").integer(2, 1LL << 31);
      if (!is_prime_number(static_cast<std::uint32_t>(p))) throw schema(f.path() + ".prime", std::to_string(p) + " is not prime");
      out.push_back(FactorSpec::matrix(static_cast<std::uint32_t>(k2), static_cast<std::uint32_t>(p)));
    } else {
      throw schema(f.path() + ".kind", "unknown factor kind '" + kind + "'");
    }
  }
  return out;
}

inline json write_factors(const std::vector<FactorSpec>& factors) {
  json fs = json::array();
  for (const auto& f : factors) {
    if (f.kind == FactorSpec::Kind::cyclic) {
      fs.push_back({{"kind", "cyclic"}, {"modulus", f.modulus}});
    } else {
      fs.push_back({{"kind", "matrix"}, {"size", f.size}, {"prime", f.modulus}});
    }
  }
  return {{"factors", fs}};
}

inline std::uint64_t cardinality(const std::vector<FactorSpec>& factors) {
  std::uint64_t c = 1;
  for (const auto& f : factors) {
    const auto k = f.cardinality();
    if (k == 0 || c * k > (1ULL << 32)) return 0;
    c *= k;
  }
  return c;
}

}  // namespace detail

/// Schema validation of a parsed JSON document; unknown fields are rejected.
inline FixtureSpec spec_from_json(const json& j) {
  using detail::Reader;
  using detail::schema;
  Reader root(j, "$");
  if (!j.is_object() || !j.contains("presentation")) throw schema("$.presentation", "missing required field");
  FixtureSpec s;
  const std::string pres = root.at("presentation").string();
  const std::set<std::string> optional{"seed", "caps", "description"};
  if (pres == "restricted_global") {
    s.presentation = Presentation::periodic;
    root.object({"name", "presentation", "ring", "automorphism", "cocycle", "e"}, optional);
  } else if (pres == "finite_support") {
    s.presentation = Presentation::finite_support;
    root.object({"name", "presentation", "ring", "support"}, optional);
  } else {
    throw schema("$.presentation", "expected \"restricted_global\" or \"finite_support\", got \"" + pres + "\"");
  }
  s.name = root.at("name").string();
  s.factors = detail::read_factors(root.at("ring"));
  const auto card = detail::cardinality(s.factors);
  if (card == 0 || card > kRingCap) throw schema("$.ring", "ring exceeds " + std::to_string(kRingCap) + " elements");
  if (root.has("seed")) s.seed = static_cast<std::uint64_t>(root.at("seed").integer(0, std::numeric_limits<std::int64_t>::max()));
  if (root.has("caps")) {
    Reader c = root.at("caps");
    c.object({}, {"ring", "lattice"});
    FixtureCaps caps;
    if (c.has("ring")) caps.ring = static_cast<std::size_t>(c.at("ring").integer(1, kRingCap));
    if (c.has("lattice")) caps.lattice = static_cast<std::size_t>(c.at("lattice").integer(1, kLatticeCap));
    s.caps = caps;
  }
  const auto& fs = s.factors;

  if (s.presentation == Presentation::periodic) {
    Reader a = root.at("automorphism");
    a.object({"permutation"}, {"conjugants"});
    Reader p = a.at("permutation");
    if (p.array_size() != fs.size()) throw schema(p.path(), "expected one entry per factor");
    for (std::size_t k = 0; k < fs.size(); ++k) {
      s.permutation.push_back(static_cast<std::size_t>(p.at(k).integer(0, static_cast<std::int64_t>(fs.size()) - 1)));
    }
    s.conjugants.assign(fs.size(), {});
    if (a.has("conjugants")) {
      Reader c = a.at("conjugants");
      if (c.array_size() != fs.size()) throw schema(c.path(), "expected one entry per factor");
      for (std::size_t k = 0; k < fs.size(); ++k) {
        Reader ck = c.at(k);
        if (ck.node().is_null()) continue;
        if (fs[k].kind != FactorSpec::Kind::matrix) throw schema(ck.path(), "conjugants apply to matrix factors only");
        s.conjugants[k] = ck.digits(fs[k].digits());
        for (auto x : s.conjugants[k]) {
          if (x >= fs[k].modulus) throw schema(ck.path(), "digit not reduced");
        }
      }
    }
    Reader co = root.at("cocycle");
    if (!co.node().is_object() || !co.has("kind")) throw schema(co.path(), "cocycle needs a kind");
    const std::string kind = co.at("kind").string();
    if (kind == "trivial") {
      co.object({"kind"}, {});
    } else if (kind == "product") {
      co.object({"kind", "lambda"}, {});
      s.product_cocycle = true;
      s.lambda = detail::read_element(co.at("lambda"), fs);
    } else {
      throw schema(co.path() + ".kind", "expected \"trivial\" or \"product\"");
    }
    s.e = detail::read_element(root.at("e"), fs);
  } else {
    Reader sup = root.at("support");
    sup.object({"bound", "idempotents", "maps"}, {"units"});
    s.bound = static_cast<int>(sup.at("bound").integer(0, 16));
    const Index n = s.bound;
    Reader ids = sup.at("idempotents");
    for (std::size_t k = 0; k < ids.array_size(); ++k) {
      Reader it = ids.at(k);
      it.object({"index", "e"}, {});
      const Index i = it.at("index").integer(-n, n);
      if (i == 0) throw schema(it.path() + ".index", "e_0 is always 1 and is not listed");
      if (!s.idempotents.emplace(i, detail::read_element(it.at("e"), fs)).second) {
        throw schema(it.path() + ".index", "duplicate index");
      }
    }
    Reader maps = sup.at("maps");
    for (std::size_t k = 0; k < maps.array_size(); ++k) {
      Reader it = maps.at(k);
      it.object({"index", "pairs"}, {});
      const Index i = it.at("index").integer(-n, n);
      if (s.maps.count(i)) throw schema(it.path() + ".index", "duplicate index");
      auto& out = s.maps[i];
      Reader pairs = it.at("pairs");
      for (std::size_t q = 0; q < pairs.array_size(); ++q) {
        Reader pr = pairs.at(q);
        if (pr.array_size() != 2) throw schema(pr.path(), "expected [source, image]");
        out.emplace_back(detail::read_element(pr.at(std::size_t{0}), fs), detail::read_element(pr.at(std::size_t{1}), fs));
      }
    }
    if (sup.has("units")) {
      Reader us = sup.at("units");
      for (std::size_t k = 0; k < us.array_size(); ++k) {
        Reader it = us.at(k);
        it.object({"i", "j", "w"}, {});
        const Index i = it.at("i").integer(-n, n);
        const Index jj = it.at("j").integer(-n, n);
        if (!s.units.emplace(std::make_pair(i, jj), detail::read_element(it.at("w"), fs)).second) {
          throw schema(it.path(), "duplicate unit index pair");
        }
      }
    }
  }
  return s;
}

inline json spec_to_json(const FixtureSpec& s) {
  json j;
  j["name"] = s.name;
  j["ring"] = detail::write_factors(s.factors);
  const auto& fs = s.factors;
  if (s.presentation == Presentation::periodic) {
    j["presentation"] = "restricted_global";
    json conj = json::array();
    bool any = false;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (k < s.conjugants.size() && !s.conjugants[k].empty()) {
        conj.push_back(s.conjugants[k]);
        any = true;
      } else {
        conj.push_back(nullptr);
      }
    }
    j["automorphism"] = {{"permutation", s.permutation}};
    if (any) j["automorphism"]["conjugants"] = conj;
    if (s.product_cocycle) {
      j["cocycle"] = {{"kind", "product"}, {"lambda", detail::write_element(s.lambda, fs)}};
    } else {
      j["cocycle"] = {{"kind", "trivial"}};
    }
    j["e"] = detail::write_element(s.e, fs);
  } else {
    j["presentation"] = "finite_support";
    json ids = json::array(), maps = json::array(), units = json::array();
    for (const auto& [i, e] : s.idempotents) ids.push_back({{"index", i}, {"e", detail::write_element(e, fs)}});
    for (const auto& [i, m] : s.maps) {
      json pairs = json::array();
      for (const auto& [a, b] : m) pairs.push_back({detail::write_element(a, fs), detail::write_element(b, fs)});
      maps.push_back({{"index", i}, {"pairs", pairs}});
    }
    for (const auto& [ij, w] : s.units) units.push_back({{"i", ij.first}, {"j", ij.second}, {"w", detail::write_element(w, fs)}});
    j["support"] = {{"bound", s.bound}, {"idempotents", ids}, {"maps", maps}};
    if (!units.empty()) j["support"]["units"] = units;
  }
  if (s.seed) j["seed"] = *s.seed;
  if (s.caps) j["caps"] = {{"ring", s.caps->ring}, {"lattice", s.caps->lattice}};
  return j;
}

inline std::string Fixture::canonical() const { return spec_to_json(spec).dump(); }

/// Builds the action; construction errors surface as SchemaError naming the
/// offending block. Axiom violations are not errors here (see check_axioms).
inline TwistedPartialAction build_action(const FixtureSpec& s) {
  auto rethrow = [](const std::string& path, const Error& e) { return detail::schema(path, e.what()); };
  FiniteRing ring;
  try {
    ring = FiniteRing(s.factors);
  } catch (const Error& e) {
    throw rethrow("$.ring", e);
  }
  auto encode = [&](const RingElement& x, const std::string& path) {
    try {
      return ring.encode(x);
    } catch (const Error& e) {
      throw rethrow(path, e);
    }
  };
  if (s.presentation == Presentation::periodic) {
    RingMorphism beta;
    try {
      beta = RingMorphism::factor_action(ring, s.permutation, s.conjugants);
    } catch (const Error& e) {
      throw rethrow("$.automorphism", e);
    }
    const Elem lambda = s.product_cocycle ? encode(s.lambda, "$.cocycle.lambda") : ring.one();
    if (s.product_cocycle && ring.corner_inverse(lambda, ring.one()) == kNoElem) {
      throw detail::schema("$.cocycle.lambda", "lambda is not a unit");
    }
    std::shared_ptr<const GlobalTwistedAction> g;
    try {
      g = std::make_shared<const GlobalTwistedAction>(beta, lambda, s.product_cocycle);
    } catch (const Error& e) {
      throw rethrow("$.cocycle", e);
    }
    const Elem e = encode(s.e, "$.e");
    if (!ring.is_idempotent(e)) throw detail::schema("$.e", ring.format(e) + " is not idempotent");
    if (!ring.is_central(e)) throw detail::schema("$.e", ring.format(e) + " is not central");
    if (e == 0) throw detail::schema("$.e", "e must be nonzero");
    return restrict_global(g, e);
  }
  FiniteSupportSpec fs;
  fs.bound = s.bound;
  for (const auto& [i, x] : s.idempotents) {
    const std::string path = "$.support.idempotents[" + std::to_string(i) + "]";
    const Elem e = encode(x, path);
    if (!ring.is_idempotent(e)) throw detail::schema(path, ring.format(e) + " is not idempotent");
    if (!ring.is_central(e)) throw detail::schema(path, ring.format(e) + " is not central");
    fs.idempotents[i] = e;
  }
  for (const auto& [i, pairs] : s.maps) {
    auto& m = fs.alpha[i];
    for (const auto& [a, b] : pairs) {
      const std::string path = "$.support.maps[" + std::to_string(i) + "]";
      const Elem x = encode(a, path);
      if (!m.emplace(x, encode(b, path)).second) throw detail::schema(path, "two images for " + ring.format(x));
    }
  }
  for (const auto& [ij, w] : s.units) fs.w[ij] = encode(w, "$.support.units");
  try {
    return make_finite_support(ring, fs);
  } catch (const Error& e) {
    throw rethrow("$.support", e);
  }
}

inline Fixture make_fixture(FixtureSpec spec) {
  Fixture f;
  f.name = spec.name;
  f.action = build_action(spec);
  f.caps = spec.caps.value_or(FixtureCaps{});
  f.seed = spec.seed.value_or(0);
  f.spec = std::move(spec);
  return f;
}

inline Fixture parse_fixture(const std::string& text, const std::string& origin = "<string>") {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, origin + ": " + e.what());
  }
  return make_fixture(spec_from_json(j));
}

inline Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fixture(buf.str(), path);
}

/// Spec of an action built in memory, for serialization. Finite-support
/// tables are written in full.
inline FixtureSpec describe_finite_support(const std::string& name, const FiniteRing& ring, const TwistedPartialAction& act) {
  if (act.periodic()) throw Error(ErrorCode::not_finite_support, "periodic actions are described by their global data");
  FixtureSpec s;
  s.name = name;
  s.presentation = Presentation::finite_support;
  s.factors = ring.factors();
  s.bound = act.bound();
  for (Index i = -act.bound(); i <= act.bound(); ++i) {
    if (i == 0) continue;
    s.idempotents[i] = ring.decode(act.idempotent(i));
    auto& pairs = s.maps[i];
    for (Elem a : act.domain(-i)) pairs.emplace_back(ring.decode(a), ring.decode(act.alpha(i, a)));
    for (Index j = -act.bound(); j <= act.bound(); ++j) {
      if (i + j < -act.bound() || i + j > act.bound() || j == 0) continue;
      const Elem def = ring.mul(act.idempotent(i), act.idempotent(i + j));
      if (act.w(i, j) != def) s.units[{i, j}] = ring.decode(act.w(i, j));
    }
  }
  return s;
}

}  // namespace tpsa

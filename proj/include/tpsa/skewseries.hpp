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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tpsa/ideal.hpp"
#include "tpsa/paction.hpp"
#include "tpsa/report.hpp"

namespace tpsa {

enum class Flavor { power, laurent };

inline std::string_view to_string(Flavor f) { return f == Flavor::power ? "power" : "laurent"; }

/// Uniform pick in [0, n) that is stable across standard libraries.
inline std::size_t pick(std::mt19937_64& gen, std::size_t n) { return static_cast<std::size_t>(gen() % n); }

/// Handle to R[[x;alpha,w]] (power) or R<x;alpha,w> (laurent) truncated at x^N.
class SeriesRing {
 public:
  SeriesRing() = default;
  SeriesRing(TwistedPartialAction action, Flavor flavor, int truncation) : state_(std::make_shared<State>()) {
    if (truncation < 1) throw Error(ErrorCode::malformed_table, "truncation must be at least 1");
    auto& s = const_cast<State&>(*state_);
    s.action = std::move(action);
    s.flavor = flavor;
    s.truncation = truncation;
    s.exact = !s.action.periodic() && truncation > s.action.bound();
  }

  const TwistedPartialAction& action() const { return state_->action; }
  const Ring& base() const { return state_->action.ring(); }
  Flavor flavor() const { return state_->flavor; }
  int truncation() const { return state_->truncation; }
  /// True when every coefficient at degree >= N vanishes identically.
  bool exact() const { return state_->exact; }
  /// Lowest degree a nonzero coefficient can occupy, if bounded.
  Index min_degree() const {
    if (flavor() == Flavor::power) return 0;
    return exact() ? -action().bound() : std::numeric_limits<Index>::min() / 4;
  }
  bool same_as(const SeriesRing& other) const { return state_ == other.state_; }

 private:
  struct State {
    TwistedPartialAction action;
    Flavor flavor = Flavor::power;
    int truncation = 1;
    bool exact = false;
  };
  std::shared_ptr<const State> state_;
};

/// sum_{low <= i < precision} c_i x^i with c_i in D_i. Coefficients at
/// degrees >= precision are unknown; equality is tested below it.
class SkewSeries {
 public:
  SkewSeries(SeriesRing ring, Index low, Index precision, std::vector<Elem> coeffs)
      : ring_(std::move(ring)), low_(low), prec_(precision), c_(std::move(coeffs)) {
    normalize();
  }

  const SeriesRing& ring() const { return ring_; }
  /// Degree of the lowest nonzero coefficient; equals precision() for zero.
  Index low() const { return low_; }
  Index precision() const { return prec_; }
  Elem coeff(Index i) const { return i < low_ || i >= prec_ ? 0 : c_[i - low_]; }
  bool is_zero() const { return c_.empty(); }

  std::vector<std::pair<Index, Elem>> terms() const {
    std::vector<std::pair<Index, Elem>> out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] != 0) out.emplace_back(low_ + static_cast<Index>(k), c_[k]);
    }
    return out;
  }

  std::string format() const {
    std::string out;
    for (auto [i, c] : terms()) {
      if (!out.empty()) out += " + ";
      out += ring_.base().format(c);
      if (i != 0) out += "x^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      low_ = prec_;
      return;
    }
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<Index>(lead);
  }

  SeriesRing ring_;
  Index low_;
  Index prec_;
  std::vector<Elem> c_;
};

namespace detail {

inline void require_same(const SkewSeries& f, const SkewSeries& g) {
  if (!f.ring().same_as(g.ring())) throw Error(ErrorCode::handle_mismatch, "series belong to different rings");
}

/// (a x^i)(b x^j) = alpha_i(alpha_i^{-1}(a) b) w_{i,j} x^{i+j}.
inline Elem monomial_product(const TwistedPartialAction& act, Index i, Elem a, Index j, Elem b) {
  const Ring& r = act.ring();
  const Elem x = r.mul(act.alpha_inv(i, a), b);
  if (x == 0) return 0;
  return r.mul(act.alpha(i, x), act.w(i, j));
}

}  // namespace detail

inline SkewSeries series_zero(const SeriesRing& h) {
  const Index n = h.truncation();
  return SkewSeries(h, n, n, {});
}

inline SkewSeries series_make(const SeriesRing& h, const std::map<Index, Elem>& coeffs) {
  const Index n = h.truncation();
  const TwistedPartialAction& act = h.action();
  Index low = n;
  for (const auto& [i, a] : coeffs) {
    if (a >= h.base().size()) throw Error(ErrorCode::malformed_table, "coefficient index out of range");
    if (!act.in_domain(i, a)) {
      throw Error(ErrorCode::coefficient_outside_domain,
                  h.base().format(a) + " is not in D_" + std::to_string(i));
    }
    if (a != 0 && i < 0 && h.flavor() == Flavor::power) {
      throw Error(ErrorCode::coefficient_outside_domain, "power series have no negative degrees");
    }
    if (a != 0 && i < n) low = std::min(low, i);
  }
  std::vector<Elem> c(static_cast<std::size_t>(n - low), 0);
  for (const auto& [i, a] : coeffs) {
    if (i >= low && i < n) c[i - low] = a;
  }
  return SkewSeries(h, low, n, std::move(c));
}

inline SkewSeries series_monomial(const SeriesRing& h, Elem a, Index i) { return series_make(h, {{i, a}}); }

inline SkewSeries series_one(const SeriesRing& h) { return series_monomial(h, h.base().one(), 0); }

inline SkewSeries series_add(const SkewSeries& f, const SkewSeries& g) {
  detail::require_same(f, g);
  const Ring& r = f.ring().base();
  const Index lo = std::min(f.low(), g.low());
  const Index prec = std::min(f.precision(), g.precision());
  std::vector<Elem> c(static_cast<std::size_t>(std::max<Index>(prec - lo, 0)), 0);
  for (Index i = lo; i < prec; ++i) c[i - lo] = r.add(f.coeff(i), g.coeff(i));
  return SkewSeries(f.ring(), std::min(lo, prec), prec, std::move(c));
}

inline SkewSeries series_neg(const SkewSeries& f) {
  const Ring& r = f.ring().base();
  std::vector<Elem> c;
  for (Index i = f.low(); i < f.precision(); ++i) c.push_back(r.neg(f.coeff(i)));
  return SkewSeries(f.ring(), f.low(), f.precision(), std::move(c));
}

inline SkewSeries series_sub(const SkewSeries& f, const SkewSeries& g) { return series_add(f, series_neg(g)); }

inline SkewSeries series_mul(const SkewSeries& f, const SkewSeries& g) {
  detail::require_same(f, g);
  const SeriesRing& h = f.ring();
  const TwistedPartialAction& act = h.action();
  const Ring& r = act.ring();
  const Index lo = f.low() + g.low();
  Index prec = h.truncation();
  if (!h.exact()) prec = std::min({prec, f.precision() + g.low(), g.precision() + f.low()});
  if (prec <= lo) return SkewSeries(h, prec, prec, {});
  std::vector<Elem> c(static_cast<std::size_t>(prec - lo), 0);
  const auto tf = f.terms();
  const auto tg = g.terms();
  for (auto [i, a] : tf) {
    for (auto [j, b] : tg) {
      if (i + j >= prec) break;
      const Elem t = detail::monomial_product(act, i, a, j, b);
      if (t != 0) c[i + j - lo] = r.add(c[i + j - lo], t);
    }
  }
  return SkewSeries(h, lo, prec, std::move(c));
}

/// Equality modulo x^min(precisions).
inline bool series_eq(const SkewSeries& f, const SkewSeries& g) {
  detail::require_same(f, g);
  const Index prec = std::min(f.precision(), g.precision());
  const Index lo = std::min(f.low(), g.low());
  for (Index i = lo; i < prec; ++i) {
    if (f.coeff(i) != g.coeff(i)) return false;
  }
  return true;
}

inline SkewSeries operator+(const SkewSeries& f, const SkewSeries& g) { return series_add(f, g); }
inline SkewSeries operator-(const SkewSeries& f, const SkewSeries& g) { return series_sub(f, g); }
inline SkewSeries operator-(const SkewSeries& f) { return series_neg(f); }
inline SkewSeries operator*(const SkewSeries& f, const SkewSeries& g) { return series_mul(f, g); }
inline bool operator==(const SkewSeries& f, const SkewSeries& g) { return series_eq(f, g); }

/// Random series with coefficients uniform in D_i for low <= i < N.
inline SkewSeries random_series(const SeriesRing& h, std::mt19937_64& gen, Index low = 0) {
  if (h.flavor() == Flavor::power) low = std::max<Index>(low, 0);
  low = std::max(low, h.min_degree());
  std::map<Index, Elem> c;
  for (Index i = low; i < h.truncation(); ++i) {
    const auto& d = h.action().domain(i);
    c[i] = d[pick(gen, d.size())];
  }
  return series_make(h, c);
}

namespace detail {

/// Series ring of a finite-support action as a finite ring of coefficient
/// tuples, lowest degree most significant.
class SeriesBackend final : public RingBackend {
 public:
  SeriesBackend(SeriesRing handle, std::vector<Index> degrees)
      : handle_(std::move(handle)), degrees_(std::move(degrees)) {
    const Ring& r = handle_.base();
    position_.assign(degrees_.size(), std::vector<Elem>(r.size(), kNoElem));
    size_ = 1;
    for (std::size_t k = 0; k < degrees_.size(); ++k) {
      const auto& d = handle_.action().domain(degrees_[k]);
      for (std::size_t p = 0; p < d.size(); ++p) position_[k][d[p]] = static_cast<Elem>(p);
      radix_.push_back(d.size());
      size_ *= d.size();
    }
    one_ = encode(series_one(handle_));
  }

  std::size_t size() const override { return size_; }
  Elem one() const override { return one_; }
  Elem add(Elem a, Elem b) const override { return encode(series_add(decode(a), decode(b))); }
  Elem neg(Elem a) const override { return encode(series_neg(decode(a))); }
  Elem mul(Elem a, Elem b) const override { return encode(series_mul(decode(a), decode(b))); }
  std::string format(Elem a) const override { return decode(a).format(); }

  const SeriesRing& handle() const { return handle_; }
  const std::vector<Index>& degrees() const { return degrees_; }

  SkewSeries decode(Elem a) const {
    std::map<Index, Elem> c;
    for (std::size_t k = degrees_.size(); k-- > 0;) {
      const auto& d = handle_.action().domain(degrees_[k]);
      c[degrees_[k]] = d[a % radix_[k]];
      a = static_cast<Elem>(a / radix_[k]);
    }
    return series_make(handle_, c);
  }

  Elem encode(const SkewSeries& f) const {
    std::size_t code = 0;
    for (std::size_t k = 0; k < degrees_.size(); ++k) {
      code = code * radix_[k] + position_[k][f.coeff(degrees_[k])];
    }
    return static_cast<Elem>(code);
  }

 private:
  SeriesRing handle_;
  std::vector<Index> degrees_;
  std::vector<std::vector<Elem>> position_;
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
  Elem one_ = 0;
};

}  // namespace detail

/// Exact finite model of a series ring over a finite-support action.
struct MaterializedSeries {
  Ring ring;
  SeriesRing handle;
  std::shared_ptr<const detail::SeriesBackend> backend;

  const std::vector<Index>& degrees() const { return backend->degrees(); }
  SkewSeries to_series(Elem a) const { return backend->decode(a); }
  Elem from_series(const SkewSeries& f) const {
    if (!f.ring().same_as(handle)) throw Error(ErrorCode::handle_mismatch, "series from another ring");
    return backend->encode(f);
  }
  /// Index of the monomial a x^i.
  Elem monomial(Elem a, Index i) const { return from_series(series_monomial(handle, a, i)); }
};

inline MaterializedSeries materialize_finite(const TwistedPartialAction& act, Flavor flavor,
                                             std::size_t cap = kRingCap) {
  if (act.periodic()) throw Error(ErrorCode::not_finite_support, "series ring of a periodic action is infinite");
  const Index n = act.bound();
  std::vector<Index> degrees;
  std::size_t card = 1;
  for (Index i = flavor == Flavor::power ? 0 : -n; i <= n; ++i) {
    degrees.push_back(i);
    card *= act.domain(i).size();
    if (card > cap) throw Error(ErrorCode::cap_exceeded, "materialized series ring exceeds the cap");
  }
  SeriesRing handle(act, flavor, static_cast<int>(2 * n + 1));
  auto backend = std::make_shared<const detail::SeriesBackend>(handle, degrees);
  std::string name = std::string(flavor == Flavor::power ? "R[[x]]" : "R<x>") + " over " + act.ring().name();
  return {Ring(backend, name), handle, backend};
}

/// Decomposition v_i = v_0 a_i found by linear search over R, if one exists.
inline std::optional<std::map<Index, Elem>> solve_decomposition(const SkewSeries& f) {
  const Ring& r = f.ring().base();
  const Elem v0 = f.coeff(0);
  std::map<Index, Elem> out;
  for (Index i = 1; i < f.precision(); ++i) {
    const Elem vi = f.coeff(i);
    Elem found = kNoElem;
    for (Elem a = 0; a < r.size() && found == kNoElem; ++a) {
      if (r.mul(v0, a) == vi) found = a;
    }
    if (found == kNoElem) return std::nullopt;
    out[i] = found;
  }
  return out;
}

/// For f = v_0 + v_1 x + ... with v_i = v_0 a_i, returns g = 1 + u_1 x + ...
/// with f g = v_0 modulo x^N, where
///   u_n = -a_n - sum_{i=1}^{n-1} a_i alpha_i(u_{n-i} 1_{-i}) w_{i,n-i}.
inline SkewSeries chain_divide(const SkewSeries& f, const std::map<Index, Elem>& decomposition) {
  const SeriesRing& h = f.ring();
  if (h.flavor() != Flavor::power) throw Error(ErrorCode::handle_mismatch, "division needs a power series");
  const TwistedPartialAction& act = h.action();
  const Ring& r = act.ring();
  const Elem v0 = f.coeff(0);
  if (v0 == 0) throw Error(ErrorCode::decomposition_invalid, "constant coefficient is zero");
  const Index n = h.truncation();
  std::vector<Elem> a(static_cast<std::size_t>(n), 0);
  for (Index i = 1; i < n; ++i) {
    auto it = decomposition.find(i);
    const Elem ai = it == decomposition.end() ? 0 : it->second;
    if (ai >= r.size() || r.mul(v0, ai) != f.coeff(i)) {
      throw Error(ErrorCode::decomposition_invalid, "v_" + std::to_string(i) + " != v_0 a_" + std::to_string(i));
    }
    a[i] = r.mul(ai, act.idempotent(i));
  }
  std::vector<Elem> u(static_cast<std::size_t>(n), 0);
  u[0] = r.one();
  for (Index k = 1; k < n; ++k) {
    Elem acc = r.neg(a[k]);
    for (Index i = 1; i < k; ++i) {
      const Elem t = r.mul(a[i], act.alpha_cut(i, u[k - i]), act.w(i, k - i));
      acc = r.sub(acc, t);
    }
    u[k] = acc;
  }
  std::map<Index, Elem> c;
  for (Index k = 0; k < n; ++k) c[k] = u[k];
  return series_make(h, c);
}

/// I[[x;alpha,w]] or I<x;alpha,w>: series whose coefficients all lie in I.
struct SeriesIdeal {
  IdealSet base;
  SeriesRing handle;

  bool contains(const SkewSeries& f) const {
    for (auto [i, c] : f.terms()) {
      if (!base.contains(c)) return false;
    }
    return true;
  }
};

inline SeriesIdeal ideal_extension(const IdealSet& ideal, const SeriesRing& h) { return {ideal, h}; }

/// The same set as an element set of the materialized ring.
inline IdealSet ideal_extension(const IdealSet& ideal, const MaterializedSeries& m) {
  return IdealSet::from_predicate(m.ring, [&](Elem a) { return ideal_extension(ideal, m.handle).contains(m.to_series(a)); });
}

namespace detail {

inline json series_pair(const SkewSeries& f, const SkewSeries& g) { return json{f.format(), g.format()}; }

}  // namespace detail

/// Checks that coefficientwise reduction R[[x]] -> (R/I)[[x]] is a surjective
/// ring map with kernel I[[x]].
inline VerificationReport quotient_iso_check(const TwistedPartialAction& act, const IdealSet& ideal,
                                             std::size_t samples, int truncation, std::uint64_t seed,
                                             Flavor flavor = Flavor::power) {
  VerificationReport rep;
  rep.check_id = "ISO-2.1";
  auto q = quotient_action(act, ideal);
  const Ring& r = act.ring();
  const auto& proj = q.quotient.projection;
  rep.details["ideal"] = ideal.format_members();
  rep.details["flavor"] = std::string(to_string(flavor));

  if (!act.periodic()) {
    auto src = materialize_finite(act, flavor);
    auto dst = materialize_finite(q.action, flavor);
    std::vector<Elem> phi(src.ring.size());
    for (Elem a = 0; a < phi.size(); ++a) {
      std::map<Index, Elem> c;
      for (auto [i, x] : src.to_series(a).terms()) c[i] = proj[x];
      phi[a] = dst.from_series(series_make(dst.handle, c));
    }
    const Ring& s = src.ring;
    const Ring& t = dst.ring;
    rep.details["mode"] = "exact";
    rep.details["source_size"] = s.size();
    rep.details["target_size"] = t.size();
    std::size_t pairs = 0;
    for (Elem a = 0; a < s.size() && rep.passed(); ++a) {
      for (Elem b = 0; b < s.size(); ++b) {
        ++pairs;
        if (phi[s.add(a, b)] != t.add(phi[a], phi[b])) {
          rep.fail({{"property", "additive"}, {"pair", {s.format(a), s.format(b)}}});
          break;
        }
        if (phi[s.mul(a, b)] != t.mul(phi[a], phi[b])) {
          rep.fail({{"property", "multiplicative"}, {"pair", {s.format(a), s.format(b)}}});
          break;
        }
      }
    }
    rep.details["pairs"] = pairs;
    std::vector<char> hit(t.size(), 0);
    for (Elem a = 0; a < s.size(); ++a) hit[phi[a]] = 1;
    for (Elem y = 0; y < t.size(); ++y) {
      if (!hit[y]) {
        rep.fail({{"property", "surjective"}, {"element", t.format(y)}});
        break;
      }
    }
    auto ext = ideal_extension(ideal, src);
    for (Elem a = 0; a < s.size(); ++a) {
      if ((phi[a] == 0) != ext.contains(a)) {
        rep.fail({{"property", "kernel"}, {"element", s.format(a)}});
        break;
      }
    }
    return rep;
  }

  SeriesRing hs(act, flavor, truncation);
  SeriesRing ht(q.action, flavor, truncation);
  auto phi = [&](const SkewSeries& f) {
    std::vector<Elem> c;
    for (Index i = f.low(); i < f.precision(); ++i) c.push_back(proj[f.coeff(i)]);
    return SkewSeries(ht, f.low(), f.precision(), std::move(c));
  };
  const Index low = flavor == Flavor::power ? 0 : -2;
  rep.details["mode"] = "sampled";
  rep.details["samples"] = samples;
  std::mt19937_64 gen(seed);
  auto ext = ideal_extension(ideal, hs);
  for (std::size_t k = 0; k < samples && rep.passed(); ++k) {
    auto f = random_series(hs, gen, low + static_cast<Index>(pick(gen, 3)));
    auto g = random_series(hs, gen, low + static_cast<Index>(pick(gen, 3)));
    if (!(phi(f + g) == phi(f) + phi(g))) rep.fail({{"property", "additive"}, {"pair", detail::series_pair(f, g)}});
    if (!(phi(f * g) == phi(f) * phi(g))) {
      rep.fail({{"property", "multiplicative"}, {"pair", detail::series_pair(f, g)}});
    }
    if (phi(f).is_zero() != ext.contains(f)) rep.fail({{"property", "kernel"}, {"element", f.format()}});
    // a series with every coefficient in I must reduce to zero
    std::map<Index, Elem> c;
    for (Index i = 0; i < truncation; ++i) {
      auto ci = intersect(ideal, ideal_closure(r, {act.idempotent(i)}));
      c[i] = ci.members()[pick(gen, ci.size())];
    }
    auto z = series_make(hs, c);
    if (!phi(z).is_zero()) rep.fail({{"property", "kernel"}, {"element", z.format()}});
  }
  // coefficientwise surjectivity: each bar D_i is the image of D_i
  for (Index i : q.action.index_window()) {
    std::vector<char> hit(q.action.ring().size(), 0);
    for (Elem a : act.domain(i)) hit[proj[a]] = 1;
    for (Elem y : q.action.domain(i)) {
      if (!hit[y]) {
        rep.fail({{"property", "surjective"}, {"degree", i}, {"element", q.action.ring().format(y)}});
        break;
      }
    }
  }
  return rep;
}

/// The 2x2 array ring [[R<x>, U], [V, T<x>]] of a restriction to R = eT,
/// with every entry stored as a Laurent series over the global action.
class MoritaContextRing {
 public:
  struct Element {
    SkewSeries a, u, v, t;
  };

  MoritaContextRing(const TwistedPartialAction& act, int truncation) {
    const auto* env = act.envelope();
    if (!env) throw Error(ErrorCode::no_enveloping_data, "the action was not built by restriction");
    partial_ = SeriesRing(act, Flavor::laurent, truncation);
    const Ring& t = env->global->ring();
    global_action_ = restrict_global(env->global, t.one());
    global_ = SeriesRing(global_action_, Flavor::laurent, truncation);
    embedding_ = env->embedding;
    projection_ = env->projection;
    e_ = env->e;
    const auto& beta = *env->global;
    beta_r_.resize(static_cast<std::size_t>(beta.order()));
    for (Index i = 0; i < beta.order(); ++i) beta_r_[i] = beta.beta(i, e_);
  }

  const SeriesRing& partial() const { return partial_; }
  const SeriesRing& global() const { return global_; }

  /// Coefficientwise image of a partial-side series in T<x>.
  SkewSeries embed(const SkewSeries& f) const {
    std::vector<Elem> c;
    for (Index i = f.low(); i < f.precision(); ++i) c.push_back(embedding_[f.coeff(i)]);
    return SkewSeries(global_, f.low(), f.precision(), std::move(c));
  }

  bool in_partial(const SkewSeries& f) const {
    for (auto [i, c] : f.terms()) {
      if (projection_[c] == kNoElem || !partial_.action().in_domain(i, projection_[c])) return false;
    }
    return true;
  }
  bool in_u(const SkewSeries& f) const {
    for (auto [i, c] : f.terms()) {
      if (projection_[c] == kNoElem) return false;
    }
    return true;
  }
  bool in_v(const SkewSeries& f) const {
    const Ring& t = global_.base();
    for (auto [i, c] : f.terms()) {
      if (t.mul(c, beta_e(i)) != c) return false;
    }
    return true;
  }
  bool contains(const Element& x) const { return in_partial(x.a) && in_u(x.u) && in_v(x.v); }

  Element zero() const {
    auto z = series_zero(global_);
    return {z, z, z, z};
  }
  Element one() const {
    auto z = series_zero(global_);
    return {series_monomial(global_, e_, 0), z, z, series_one(global_)};
  }
  Element add(const Element& x, const Element& y) const { return {x.a + y.a, x.u + y.u, x.v + y.v, x.t + y.t}; }
  Element mul(const Element& x, const Element& y) const {
    return {x.a * y.a + x.u * y.v, x.a * y.u + x.u * y.t, x.v * y.a + x.t * y.v, x.v * y.u + x.t * y.t};
  }
  bool eq(const Element& x, const Element& y) const { return x.a == y.a && x.u == y.u && x.v == y.v && x.t == y.t; }

  Element random(std::mt19937_64& gen, Index low) const {
    auto a = embed(random_series(partial_, gen, low));
    const Ring& t = global_.base();
    auto constrained = [&](auto keep) {
      std::map<Index, Elem> c;
      for (Index i = low; i < global_.truncation(); ++i) {
        const auto x = static_cast<Elem>(pick(gen, t.size()));
        c[i] = keep(i, x);
      }
      return series_make(global_, c);
    };
    auto u = constrained([&](Index, Elem x) { return t.mul(x, e_); });
    auto v = constrained([&](Index i, Elem x) { return t.mul(x, beta_e(i)); });
    auto w = constrained([](Index, Elem x) { return x; });
    return {a, u, v, w};
  }

  json format(const Element& x) const { return json{{x.a.format(), x.u.format()}, {x.v.format(), x.t.format()}}; }

  /// Embedding, bimodule absorption, associativity and identity on samples.
  VerificationReport verify(std::size_t samples, std::uint64_t seed) const {
    VerificationReport rep;
    rep.check_id = "MORITA-3.6";
    rep.details["samples"] = samples;
    std::mt19937_64 gen(seed);
    std::map<std::string, std::string> props;
    for (const char* p : {"embedding", "absorption", "associativity", "identity", "closure"}) props[p] = "pass";
    auto flag = [&](const std::string& p, json w) {
      if (props[p] == "fail") return;
      props[p] = "fail";
      w["property"] = p;
      rep.fail(std::move(w));
    };
    for (std::size_t k = 0; k < samples; ++k) {
      const Index low = -static_cast<Index>(pick(gen, 2));
      auto f = random_series(partial_, gen, low);
      auto g = random_series(partial_, gen, low);
      if (!(embed(f * g) == embed(f) * embed(g))) flag("embedding", {{"pair", detail::series_pair(f, g)}});
      auto x = random(gen, low);
      auto y = random(gen, low);
      auto z = random(gen, low);
      if (!in_u(x.a * y.u) || !in_u(x.u * y.t) || !in_v(x.t * y.v) || !in_v(x.v * y.a)) {
        flag("absorption", {{"left", format(x)}, {"right", format(y)}});
      }
      if (!contains(mul(x, y))) flag("closure", {{"left", format(x)}, {"right", format(y)}});
      if (!eq(mul(mul(x, y), z), mul(x, mul(y, z)))) {
        flag("associativity", {{"x", format(x)}, {"y", format(y)}, {"z", format(z)}});
      }
      if (!eq(mul(one(), x), x) || !eq(mul(x, one()), x)) flag("identity", {{"element", format(x)}});
    }
    rep.details["properties"] = props;
    return rep;
  }

 private:
  Elem beta_e(Index i) const { return beta_r_[floor_mod(i, static_cast<Index>(beta_r_.size()))]; }

  SeriesRing partial_;
  SeriesRing global_;
  TwistedPartialAction global_action_;
  std::vector<Elem> embedding_;
  std::vector<Elem> projection_;
  std::vector<Elem> beta_r_;
  Elem e_ = 0;
};

inline MoritaContextRing morita_ring(const TwistedPartialAction& act, int truncation) {
  return MoritaContextRing(act, truncation);
}

}  // namespace tpsa

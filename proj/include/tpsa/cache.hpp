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

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tpsa/ideal.hpp"
#include "tpsa/report.hpp"

namespace tpsa {

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::io_error, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[digest[k] >> 4]);
    out.push_back(hex[digest[k] & 15]);
  }
  return out;
}

/// Default location: $XDG_CACHE_HOME/tpsa, else ~/.cache/tpsa.
inline std::filesystem::path default_cache_dir() {
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "tpsa";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "tpsa";
  return ".tpsa-cache";
}

/// Content-addressed store of ideal lattices. The file name is the SHA-256
/// of the fixture's canonical form and the operation id; the file holds the
/// member lists of every ideal in lattice order.
class LatticeCache {
 public:
  LatticeCache() = default;
  explicit LatticeCache(std::filesystem::path dir) : dir_(std::move(dir)), enabled_(true) {}

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

  static std::string key(const std::string& canonical, const std::string& op) { return sha256_hex(canonical + "\n" + op); }

  std::vector<IdealSet> lattice(const Ring& ring, const std::string& canonical, const std::string& op, std::size_t cap) {
    if (!enabled_) return enumerate_ideals(ring, cap);
    const auto path = dir_ / (key(canonical, op) + ".json");
    if (auto hit = read(ring, path, op)) {
      ++hits_;
      return std::move(*hit);
    }
    ++misses_;
    auto out = enumerate_ideals(ring, cap);
    write(out, path, op);
    return out;
  }

 private:
  static std::optional<std::vector<IdealSet>> read(const Ring& ring, const std::filesystem::path& path, const std::string& op) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error&) {
      return std::nullopt;
    }
    if (!j.is_object() || j.value("schema_version", 0) != 1 || j.value("operation", "") != op ||
        j.value("ring_size", std::size_t{0}) != ring.size() || !j.contains("ideals")) {
      return std::nullopt;
    }
    std::vector<IdealSet> out;
    for (const auto& members : j["ideals"]) {
      std::vector<char> mask(ring.size(), 0);
      for (const auto& a : members) {
        const auto x = a.get<std::size_t>();
        if (x >= ring.size()) return std::nullopt;
        mask[x] = 1;
      }
      out.emplace_back(ring, std::move(mask), std::vector<Elem>{});
    }
    return out;
  }

  static void write(const std::vector<IdealSet>& lattice, const std::filesystem::path& path, const std::string& op) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot create cache directory " + path.parent_path().string());
    json ideals = json::array();
    for (const auto& i : lattice) ideals.push_back(i.members());
    const std::size_t n = lattice.empty() ? 0 : lattice.front().ring().size();
    json j{{"schema_version", 1}, {"operation", op}, {"ring_size", n}, {"ideals", ideals}};
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp);
      out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot move cache entry into " + path.string());
  }

  std::filesystem::path dir_;
  bool enabled_ = false;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace tpsa

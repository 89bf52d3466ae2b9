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

#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

namespace tpsa {

using json = nlohmann::json;

enum class Status { pass, fail, reported, error };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::reported: return "reported";
    case Status::error: return "error";
  }
  return "error";
}

/// Outcome of one check or search. Object keys serialize sorted, so equal
/// reports produce equal bytes.
struct VerificationReport {
  std::string fixture;
  std::string check_id;
  Status status = Status::pass;
  json witnesses = json::array();
  json parameters = json::object();
  json details = json::object();
  double seconds = 0.0;

  bool passed() const { return status == Status::pass; }

  /// Records a violation; the first call flips the status to fail.
  void fail(json witness) {
    status = Status::fail;
    witnesses.push_back(std::move(witness));
  }

  void witness(json w) { witnesses.push_back(std::move(w)); }

  /// Folds a sub-report in: failures propagate, witnesses are tagged.
  void absorb(const VerificationReport& sub, const std::string& tag) {
    details[tag] = sub.details;
    details[tag]["status"] = std::string(to_string(sub.status));
    for (const auto& w : sub.witnesses) {
      json t = w;
      t["from"] = tag;
      witnesses.push_back(std::move(t));
    }
    if (sub.status == Status::fail) status = Status::fail;
    if (sub.status == Status::error && status != Status::fail) status = Status::error;
  }

  json to_json(bool include_timing = false) const {
    json j;
    j["schema_version"] = 1;
    j["fixture"] = fixture;
    j["check"] = check_id;
    j["status"] = std::string(to_string(status));
    j["witnesses"] = witnesses;
    j["parameters"] = parameters;
    j["details"] = details;
    if (include_timing) j["seconds"] = seconds;
    return j;
  }
};

}  // namespace tpsa

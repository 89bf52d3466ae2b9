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

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpsa {

enum class ErrorCode {
  cap_exceeded,
  not_an_ideal,
  not_central_idempotent,
  malformed_table,
  not_alpha_invariant,
  not_proper,
  handle_mismatch,
  coefficient_outside_domain,
  not_finite_support,
  decomposition_invalid,
  not_simple,
  not_semiprime,
  no_enveloping_data,
  not_injective,
  parse_error,
  schema_error,
  unknown_check,
  incompatible_fixture,
  budget_exceeded,
  io_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::not_an_ideal: return "NotAnIdeal";
    case ErrorCode::not_central_idempotent: return "NotCentralIdempotent";
    case ErrorCode::malformed_table: return "MalformedTable";
    case ErrorCode::not_alpha_invariant: return "NotAlphaInvariant";
    case ErrorCode::not_proper: return "NotProper";
    case ErrorCode::handle_mismatch: return "HandleMismatch";
    case ErrorCode::coefficient_outside_domain: return "CoefficientOutsideDomainIdeal";
    case ErrorCode::not_finite_support: return "NotFiniteSupport";
    case ErrorCode::decomposition_invalid: return "DecompositionInvalid";
    case ErrorCode::not_simple: return "NotSimple";
    case ErrorCode::not_semiprime: return "NotSemiprime";
    case ErrorCode::no_enveloping_data: return "NoEnvelopingData";
    case ErrorCode::not_injective: return "NotInjective";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::schema_error: return "SchemaError";
    case ErrorCode::unknown_check: return "UnknownCheck";
    case ErrorCode::incompatible_fixture: return "IncompatibleFixture";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library; the code names the failed contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tpsa

// Copyright 2026 The nli-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLIFORGE_DIAGNOSTICS_HPP_
#define NLIFORGE_DIAGNOSTICS_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nliforge/core.hpp"

namespace nliforge {
namespace diagnostics {

// The closed phenomenon inventory for hand-written diagnostic pairs.
const std::vector<std::string>& phenomenon_inventory();

// The phenomena that only exist in Chinese (classifier, idioms, non-core
// argument, pro-drop, time-of-event).
bool is_chinese_specific(std::string_view phenomenon);

struct DiagnosticRecord {
  NLIPair pair;
  std::string phenomenon;
  bool chinese_specific = false;
};

struct DiagnosticReport {
  std::map<std::string, std::size_t> counts;  // per phenomenon
  std::size_t total = 0;
  // Human-readable schema violations, prefixed with the record id.
  std::vector<std::string> violations;
  // Mismatches against a caller-supplied expected-count manifest.
  std::vector<std::string> manifest_mismatches;
};

// Validation is total: malformed content becomes a violation entry, never an
// exception. The optional manifest maps phenomenon -> expected count; counts
// for phenomena absent from the manifest are not checked.
DiagnosticReport validate_diagnostics(
    const std::vector<DiagnosticRecord>& records,
    const std::map<std::string, std::size_t>* manifest = nullptr);

// JSONL with the core pair schema plus `phenomenon` and `chinese_specific`.
std::vector<DiagnosticRecord> read_diagnostics(const std::string& path);
void write_diagnostics(const std::vector<DiagnosticRecord>& records,
                       const std::string& path);

std::string format_diagnostic_report(const DiagnosticReport& report);

}  // namespace diagnostics
}  // namespace nliforge

#endif  // NLIFORGE_DIAGNOSTICS_HPP_

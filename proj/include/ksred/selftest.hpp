/*
 * Copyright 2026 The ksred Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KSRED_SELFTEST_HPP
#define KSRED_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ksred {

struct SelftestOptions {
  /// Random structures for the reduction properties (states 1..8, <= 2 atoms).
  std::size_t cases = 200;
  /// Random pairs for the oracle cross-validation (states 1..6).
  std::size_t pair_cases = 100;
  std::uint64_t seed = 1;
  /// Exhaustive search runs only when there are at most this many
  /// label-respecting partitions.
  std::uint64_t exhaustive_limit = 5000;
  /// Worker threads; 0 reads KSRED_THREADS and falls back to 1.
  std::size_t threads = 0;
};

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_failure;  // empty if none
};

struct SelftestReport {
  std::vector<PropertyResult> reduction;  // per-structure properties
  std::vector<PropertyResult> oracle;     // pair cross-validation
  /// Partitions accepted by the literal WKME condition whose quotient
  /// changes the stutter traces. Informational.
  std::size_t literal_wkme_findings = 0;
  std::size_t literal_wkme_checked = 0;
  double elapsed_ms = 0;

  bool passed() const;
};

/// Runs the property suites. Results do not depend on the thread count.
SelftestReport run_selftest(const SelftestOptions& opts = {});

}  // namespace ksred

#endif  // KSRED_SELFTEST_HPP

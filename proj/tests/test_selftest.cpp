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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksred/selftest.hpp"

using namespace ksred;

namespace {

void show(const std::vector<PropertyResult>& props) {
  for (const auto& p : props) {
    MESSAGE(p.name << ": " << p.checked << " checked, " << p.violations << " violations " << p.first_failure);
  }
}

}  // namespace

TEST_CASE("all properties hold on the default sweep") {
  SelftestOptions o;
  const auto r = run_selftest(o);
  show(r.reduction);
  show(r.oracle);
  MESSAGE("literal WKME candidates " << r.literal_wkme_checked << ", unsound " << r.literal_wkme_findings
                                     << ", " << r.elapsed_ms << " ms");
  CHECK(r.passed());
  for (const auto& p : r.reduction) CHECK(p.checked > 0);
  for (const auto& p : r.oracle) CHECK(p.checked > 0);
}

TEST_CASE("thread count does not change the report") {
  SelftestOptions o;
  o.cases = 40;
  o.pair_cases = 40;
  o.threads = 1;
  const auto a = run_selftest(o);
  o.threads = 4;
  const auto b = run_selftest(o);
  REQUIRE(a.reduction.size() == b.reduction.size());
  for (std::size_t i = 0; i < a.reduction.size(); ++i) CHECK(a.reduction[i].checked == b.reduction[i].checked);
  for (std::size_t i = 0; i < a.oracle.size(); ++i) CHECK(a.oracle[i].checked == b.oracle[i].checked);
  CHECK(a.literal_wkme_findings == b.literal_wkme_findings);
}

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

#include "ksred/compose.hpp"
#include "ksred/error.hpp"
#include "ksred/generate.hpp"
#include "ksred/kme.hpp"
#include "support.hpp"

using namespace ksred;
using testing::fixture;

TEST_CASE("product with a one-state component only extends labels") {
  const auto unit = parse_ks("aps p\nstates u\ninit u\nlabel u p\ntrans u u\n");
  const auto f2 = fixture("fig2.ks");
  const auto prod = sync_compose(unit, f2);
  std::vector<Label> labels;
  for (auto l : f2.labels()) {
    l.push_back("p");
    labels.push_back(make_label(l));
  }
  const KripkeStructure expected(f2.names(), {"a", "b", "p"}, labels, f2.transitions(), f2.initial());
  CHECK(isomorphic(prod, expected));
  CHECK(prod.name(0) == "u_s0");
}

TEST_CASE("toggler times fig2") {
  const auto t = fixture("toggler.ks");
  const auto f2 = fixture("fig2.ks");
  const auto full = sync_compose(t, f2);
  CHECK(full.num_states() == 16);
  for (StateId i = 0; i < 2; ++i) {
    for (StateId j = 0; j < 8; ++j) {
      auto u = t.label(i);
      u.insert(u.end(), f2.label(j).begin(), f2.label(j).end());
      CHECK(full.label(i * 8 + j) == make_label(u));
    }
  }
  CHECK(validate(full).empty());
  const auto reach = sync_compose(t, f2, {true});
  CHECK(reach.num_states() <= 16);
  CHECK(reach.num_states() == reachable_states(full).size());
  for (const auto& lasso : enumerate_lassos(reach, 5, 2)) {
    const auto w = trace_of(reach, lasso);
    for (std::size_t i = 0; i < 12; ++i) {
      const auto& l = w.letter(i);
      CHECK((std::find(l.begin(), l.end(), "p") != l.end()) == (i % 2 == 1));
    }
  }
  CHECK(isomorphic(sync_compose(t, f2), sync_compose(f2, t)));
}

TEST_CASE("reserved atoms are kept apart") {
  const auto a = normalize(fixture("toggler.ks"));
  const auto b = normalize(fixture("fig2.ks"));
  const auto prod = sync_compose(a, b);
  const auto& init = prod.label(prod.initial());
  CHECK(std::find(init.begin(), init.end(), "$1") != init.end());
  CHECK(std::find(init.begin(), init.end(), "$2") != init.end());
  CHECK_FALSE(find_root(prod));
  // Both factors are predecessor-total, so the product is too.
  CHECK(normalize(prod).num_states() == prod.num_states());
}

TEST_CASE("ambiguous product names fall back to indices") {
  const auto x = parse_ks("states a a_b\ninit a\ntrans a a\ntrans a_b a_b\n");
  const auto y = parse_ks("states b_c c\ninit c\ntrans c c\ntrans b_c b_c\n");
  const auto prod = sync_compose(x, y);
  CHECK(prod.name(0) == "p0_0");
  CHECK(prod.name(3) == "p1_1");
}

TEST_CASE("compositionality on fig2") {
  const auto ks = normalize(fixture("fig2.ks"));
  const auto p = testing::blocks_by_name(ks, {{"s0"}, {"s1"}, {"s2"}, {"s3", "s4", "s5"}, {"s6"}, {"s7"}, {"s_hat"}});
  const auto r = compositionality_check(ks, p, fixture("toggler.ks"));
  CHECK(r.trace.equivalent);
  CHECK(r.strict);
  CHECK(r.left_states > r.right_states);
  const auto unit = parse_ks("states u\ninit u\ntrans u u\n");
  const auto r1 = compositionality_check(ks, p, unit);
  CHECK(r1.trace.equivalent);
  CHECK(r1.strict);
  const auto bad = testing::blocks_by_name(ks, {{"s0"}, {"s1"}, {"s2"}, {"s3", "s4"}, {"s5"}, {"s6"}, {"s7"}, {"s_hat"}});
  CHECK_THROWS_AS(compositionality_check(ks, bad, unit), PreconditionError);
}

TEST_CASE("compositionality on random instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto ks = normalize(generate_random({5, 1, 0.3, seed}));
    const auto k1 = generate_random({3, 1, 0.3, seed + 1000});
    const auto r = compositionality_check(ks, kme_reduce(ks), k1);
    CHECK(r.trace.equivalent);
    CHECK(r.strict);
  }
}

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

#include "ksred/error.hpp"
#include "ksred/kripke.hpp"
#include "ksred/partition.hpp"
#include "support.hpp"

using namespace ksred;
using testing::fixture;
using testing::named;

namespace {

const std::string kBot(kBottomAtom);

bool has_violation(const std::vector<Violation>& vs, Violation::Kind kind, const std::string& subject) {
  return std::find(vs.begin(), vs.end(), Violation{kind, subject}) != vs.end();
}

}  // namespace

TEST_CASE("fig2 parses with the drawn edges and labels") {
  const auto ks = fixture("fig2.ks");
  CHECK(ks.num_states() == 8);
  CHECK(ks.name(ks.initial()) == "s0");
  const std::vector<std::pair<std::string, std::string>> expected{
      {"s0", "s1"}, {"s0", "s2"}, {"s1", "s3"}, {"s1", "s4"}, {"s2", "s4"}, {"s2", "s5"},
      {"s3", "s7"}, {"s4", "s6"}, {"s5", "s7"}, {"s6", "s6"}, {"s7", "s7"}};
  CHECK(ks.num_transitions() == expected.size());
  for (const auto& [from, to] : expected) CHECK(ks.has_transition(ks.id(from), ks.id(to)));
  CHECK(ks.label(ks.id("s0")) == Label{"a"});
  CHECK(ks.label(ks.id("s1")).empty());
  CHECK(ks.label(ks.id("s2")) == Label{"b"});
  CHECK(ks.label(ks.id("s6")) == Label{"b"});
  CHECK(ks.label(ks.id("s7")).empty());
  CHECK(validate(ks).empty());
}

TEST_CASE("fig3 has the stutter self-loop on s4") {
  const auto ks = fixture("fig3.ks");
  CHECK(ks.num_states() == 8);
  CHECK(ks.has_transition(ks.id("s4"), ks.id("s4")));
  CHECK(ks.has_transition(ks.id("s3"), ks.id("s4")));
}

TEST_CASE("one-state file") {
  const auto ks = parse_ks("states s\ninit s\ntrans s s\n");
  CHECK(ks.num_states() == 1);
  CHECK(ks.label(0).empty());
  CHECK(ks.has_transition(0, 0));
}

TEST_CASE("serialize round trip") {
  for (const char* name : {"fig2.ks", "fig3.ks", "toggler.ks", "fig2_quotient.ks"}) {
    const auto ks = fixture(name);
    CHECK(parse_ks(serialize_ks(ks)) == ks);
  }
  const auto n = normalize(fixture("fig2.ks"));
  CHECK(parse_ks(serialize_ks(n)) == n);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_ks("states a\ninit a\nbogus a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_ks("states a\ninit a\ninit a\ntrans a a\n"), ParseError);
  CHECK_THROWS_AS(parse_ks("states a\ninit a\ntrans a\n"), ParseError);
  CHECK_THROWS_AS(parse_ks("init a\n"), ParseError);
  CHECK_THROWS_AS(parse_ks("states a\ninit a\ntrans a b\n"), ParseError);
  CHECK_THROWS_AS(parse_ks("aps p\nstates a\ninit a\nlabel a q\ntrans a a\n"), ParseError);
  CHECK_THROWS_AS(parse_ks("states a\ninit a\n"), ParseError);
  CHECK_THROWS_AS(parse_ks("aps $x\nstates a\ninit a\ntrans a a\n"), ParseError);
}

TEST_CASE("validate names each violation") {
  SUBCASE("terminal state") {
    const auto d = parse_ks_description("states s t\ninit s\ntrans s t\n");
    const auto vs = validate(d);
    REQUIRE(vs.size() == 1);
    CHECK(vs.front() == Violation{Violation::Kind::totality, "t"});
    CHECK(vs.front().to_string() == "totality(t)");
  }
  SUBCASE("undeclared endpoint") {
    const auto vs = validate(parse_ks_description("states s\ninit s\ntrans s s\ntrans s u\n"));
    CHECK(has_violation(vs, Violation::Kind::unknown_state, "u"));
  }
  SUBCASE("label outside aps and reserved aps") {
    const auto vs = validate(parse_ks_description("aps p $m\nstates s\ninit s\nlabel s q\ntrans s s\n"));
    CHECK(has_violation(vs, Violation::Kind::unknown_atom, "q"));
    CHECK(has_violation(vs, Violation::Kind::reserved_atom, "$m"));
  }
  SUBCASE("duplicates and identifiers") {
    const auto vs = validate(parse_ks_description("states s s x-y\nlabel s\nlabel s\ntrans s s\n"));
    CHECK(has_violation(vs, Violation::Kind::duplicate_state, "s"));
    CHECK(has_violation(vs, Violation::Kind::duplicate_label, "s"));
    CHECK(has_violation(vs, Violation::Kind::bad_identifier, "x-y"));
    CHECK(has_violation(vs, Violation::Kind::missing_initial, ""));
  }
  SUBCASE("in-memory structure") {
    KripkeStructure ks({"s", "t"}, {}, {{}, {}}, {{0, 1}}, 0);
    const auto vs = validate(ks);
    REQUIRE(vs.size() == 1);
    CHECK(vs.front().subject == "t");
  }
}

TEST_CASE("normalize adds a root and the initial marker") {
  const auto ks = fixture("fig2.ks");
  NormalizeReport rep;
  const auto n = normalize(ks, {}, &rep);
  REQUIRE(n.num_states() == 9);
  CHECK(rep.added_root);
  CHECK(rep.marked_initial);
  REQUIRE(rep.root);
  const StateId root = *rep.root;
  CHECK(root == 8);
  CHECK(n.label(root) == Label{kBot});
  CHECK(n.has_transition(root, root));
  CHECK(n.has_transition(root, n.id("s0")));
  CHECK(n.successors(root).size() == 2);
  CHECK(n.label(n.id("s0")) == Label{"$", "a"});
  CHECK(n.aps() == ks.aps());
  for (StateId s = 0; s < n.num_states(); ++s) CHECK_FALSE(n.predecessors(s).empty());
  CHECK(pred_of(n, {n.id("s0")}) == StateSet{root});
  CHECK(find_root(n) == root);

  SUBCASE("idempotent") {
    NormalizeReport again;
    CHECK(normalize(n, {}, &again) == n);
    CHECK_FALSE(again.added_root);
    CHECK_FALSE(again.marked_initial);
  }
  SUBCASE("strip_reserved undoes it") { CHECK(strip_reserved(n) == ks); }
}

TEST_CASE("normalize with every state already reached only marks") {
  const auto ks = fixture("toggler.ks");
  NormalizeReport rep;
  const auto n = normalize(ks, {}, &rep);
  CHECK(n.num_states() == 2);
  CHECK_FALSE(rep.added_root);
  CHECK(rep.marked_initial);
  CHECK(n.label(0) == Label{"$"});
  CHECK(normalize(ks, {true, false}) == ks);
}

TEST_CASE("normalize keeps the reachable traces") {
  // Unreachable orphan u gets fed by the root but the initial part is unchanged.
  const auto ks = parse_ks("aps p\nstates s u\ninit s\nlabel u p\ntrans s s\ntrans u s\n");
  const auto n = normalize(ks);
  CHECK(n.num_states() == 3);
  CHECK(n.has_transition(2, 1));
  CHECK_FALSE(n.has_transition(2, 0));
  CHECK(reachable_states(n) == std::vector<StateId>{0});
}

TEST_CASE("post_in and pred_of") {
  const auto f2 = fixture("fig2.ks");
  const auto f3 = fixture("fig3.ks");
  CHECK(post_in(f2, f2.id("s1"), named(f2, {"s3", "s4", "s5"})) == named(f2, {"s3", "s4"}));
  CHECK(post_in(f2, f2.id("s1"), {}).empty());
  CHECK(post_in(f3, f3.id("s4"), named(f3, {"s3", "s4", "s5"})) == named(f3, {"s4"}));
  CHECK(pred_of(f2, named(f2, {"s3", "s4", "s5"})) == named(f2, {"s1", "s2"}));
  CHECK(pred_of(f3, named(f3, {"s3", "s4", "s5"})) == named(f3, {"s1", "s2", "s3", "s4"}));
  for (StateId s = 0; s < f2.num_states(); ++s) {
    CHECK(post_in(f2, s, testing::named(f2, f2.names())) == f2.successors(s));
    for (StateId t = 0; t < f2.num_states(); ++t) {
      const bool fwd = !post_in(f2, s, {t}).empty();
      const auto back = pred_of(f2, {t});
      CHECK(fwd == std::binary_search(back.begin(), back.end(), s));
    }
  }
  CHECK_THROWS_AS(post_in(f2, 99, {}), InvalidArgument);
}

TEST_CASE("is_stutter_step") {
  const auto f3 = fixture("fig3.ks");
  CHECK(is_stutter_step(f3, f3.id("s3"), f3.id("s4")));
  CHECK_FALSE(is_stutter_step(f3, f3.id("s4"), f3.id("s6")));
  CHECK(is_stutter_step(f3, f3.id("s7"), f3.id("s7")));
  CHECK_THROWS_AS(is_stutter_step(f3, f3.id("s0"), f3.id("s7")), InvalidArgument);
}

TEST_CASE("isomorphism ignores names but not labels or the initial state") {
  const auto q = fixture("fig2_quotient.ks");
  const auto renamed = parse_ks(
      "aps a b\nstates z5 z4 z3 z2 z1 z0\ninit z0\nlabel z0 a\nlabel z2 b\nlabel z3 a\nlabel z5 b\n"
      "trans z0 z1\ntrans z0 z2\ntrans z1 z3\ntrans z2 z3\ntrans z3 z4\ntrans z3 z5\ntrans z4 z4\ntrans z5 z5\n");
  CHECK(isomorphic(q, renamed));
  CHECK(isomorphic(renamed, q));
  CHECK_FALSE(isomorphic(q, fixture("fig3_quotient.ks")));
  const auto moved_init = parse_ks(serialize_ks(q).replace(serialize_ks(q).find("init q0"), 7, "init q1"));
  CHECK_FALSE(isomorphic(q, moved_init));
  CHECK(isomorphic(fixture("fig2.ks"), fixture("fig2.ks")));
  CHECK_FALSE(isomorphic(fixture("fig2.ks"), fixture("fig3.ks")));
}

TEST_CASE("disjoint union and induced substructure") {
  const auto a = fixture("toggler.ks");
  const auto b = fixture("fig2.ks");
  const auto u = disjoint_union(a, b);
  CHECK(u.num_states() == 10);
  CHECK(u.initial() == a.initial());
  CHECK(u.has_transition(2 + b.id("s0"), 2 + b.id("s1")));
  CHECK(u.name(0) == "l_v0");
  CHECK(u.name(2) == "r_s0");
  std::vector<bool> keep(10, false);
  for (StateId s = 2; s < 10; ++s) keep[s] = true;
  keep[0] = true;  // unreachable from r_* and not closed; only the kept edges survive
  const auto sub = induced_substructure(u, keep);
  CHECK(sub.num_states() == 9);
}

TEST_CASE("partition parsing") {
  const auto ks = fixture("fig2.ks");
  const auto p = parse_partition("{s0}{s1}{s2}{s3 s4 s5}{s6}{s7}", ks);
  CHECK(p.size() == 6);
  CHECK(p == load_partition(testing::data_path("fig2.part"), ks));
  CHECK(parse_partition("s0\ns1\ns2\ns3\ns4\ns5\ns6\ns7\n", ks) == Partition::identity(8));
  CHECK(parse_partition(serialize_partition(p, ks), ks) == p);
  CHECK(format_partition(p, ks) == "{s0}{s1}{s2}{s3 s4 s5}{s6}{s7}");
  auto message = [&](const char* text) {
    try {
      parse_partition(text, ks);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("s0\ns1\ns2\ns3 s4 s5\ns6\n").find("missing-state") != std::string::npos);
  CHECK(message("s0 s1\ns1\ns2\ns3 s4 s5\ns6\ns7\n").find("duplicated-state") != std::string::npos);
  CHECK(message("s0\ns1\ns2\ns3 s4 s5\ns6\ns7 s9\n").find("unknown-state") != std::string::npos);
}

TEST_CASE("partition canonical form and edits") {
  const Partition p(5, {{4, 2}, {3}, {1, 0}});
  CHECK(p.blocks() == std::vector<StateSet>{{0, 1}, {2, 4}, {3}});
  CHECK(p.block_of(4) == 1);
  CHECK(p == Partition::from_block_ids({7, 7, 1, 0, 1}));
  CHECK(p.merged({0, 2}).blocks() == std::vector<StateSet>{{0, 1, 3}, {2, 4}});
  CHECK(p.extended(6).block_of(5) == 3);
  CHECK(p.restricted({true, false, true, true, true}).blocks() == std::vector<StateSet>{{0}, {1, 3}, {2}});
  CHECK_THROWS_AS(Partition(3, {{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(Partition(3, {{0, 1, 2}, {}}), InvalidArgument);
}

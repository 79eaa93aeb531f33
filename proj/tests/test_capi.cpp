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

#include <string>

#include "ksred/ksred.h"

namespace {

std::string data(const std::string& file) { return std::string(KSRED_DATA_DIR) + "/" + file; }

ksred_model* load(const std::string& file) {
  ksred_model* m = nullptr;
  REQUIRE(ksred_model_load(data(file).c_str(), &m) == KSRED_OK);
  return m;
}

ksred_model* normalized(const ksred_model* m) {
  ksred_model* n = nullptr;
  REQUIRE(ksred_model_normalize(m, &n, nullptr) == KSRED_OK);
  return n;
}

// Partition file read against `m`, extended to the normalized `n`.
ksred_partition* part_for(const ksred_model* m, const ksred_model* n, const std::string& file) {
  ksred_partition* p = nullptr;
  REQUIRE(ksred_partition_load(m, data(file).c_str(), &p) == KSRED_OK);
  ksred_partition* e = nullptr;
  REQUIRE(ksred_partition_extend(p, ksred_model_num_states(n), &e) == KSRED_OK);
  ksred_partition_free(p);
  return e;
}

}  // namespace

TEST_CASE("status codes and last error") {
  ksred_model* m = nullptr;
  CHECK(ksred_model_load("/nonexistent/x.ks", &m) == KSRED_ERR_IO);
  CHECK(m == nullptr);
  CHECK(std::string(ksred_last_error()).find("cannot open") != std::string::npos);
  CHECK(ksred_model_parse("states a\ninit a\n", &m) == KSRED_ERR_PARSE);
  CHECK(std::string(ksred_last_error()).find("totality") != std::string::npos);
  CHECK(ksred_model_parse(nullptr, &m) == KSRED_ERR_INVALID_ARGUMENT);
  CHECK(ksred_model_generate(0, 1, 0.5, 1, &m) == KSRED_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ksred_status_name(KSRED_ERR_LIMIT)) == "limit exceeded");
  CHECK(std::string(ksred_version()).size() > 0);
}

TEST_CASE("model round trip and normalization report") {
  ksred_model* m = load("fig2.ks");
  CHECK(ksred_model_num_states(m) == 8);
  CHECK(ksred_model_num_transitions(m) == 11);
  CHECK(ksred_model_has_root(m) == 0);
  char* text = nullptr;
  REQUIRE(ksred_model_serialize(m, &text) == KSRED_OK);
  ksred_model* again = nullptr;
  REQUIRE(ksred_model_parse(text, &again) == KSRED_OK);
  ksred_string_free(text);
  int iso = 0;
  REQUIRE(ksred_model_isomorphic(m, again, &iso) == KSRED_OK);
  CHECK(iso == 1);

  ksred_model* n = nullptr;
  ksred_normalize_report r{};
  REQUIRE(ksred_model_normalize(m, &n, &r) == KSRED_OK);
  CHECK(r.added_root == 1);
  CHECK(r.marked_initial == 1);
  CHECK(ksred_model_num_states(n) == 9);
  CHECK(ksred_model_has_root(n) == 1);
  ksred_model* s = nullptr;
  REQUIRE(ksred_model_strip(n, &s) == KSRED_OK);
  REQUIRE(ksred_model_isomorphic(m, s, &iso) == KSRED_OK);
  CHECK(iso == 1);
  for (auto* x : {m, again, n, s}) ksred_model_free(x);
}

TEST_CASE("check, quotient and relation on the examples") {
  ksred_model* m = load("fig2.ks");
  ksred_model* n = normalized(m);
  ksred_partition* p = part_for(m, n, "fig2.part");
  CHECK(ksred_partition_num_blocks(p) == 7);
  size_t user = 0;
  REQUIRE(ksred_partition_num_user_blocks(p, n, &user) == KSRED_OK);
  CHECK(user == 6);
  char* lines = nullptr;
  REQUIRE(ksred_partition_serialize_user(p, n, &lines) == KSRED_OK);
  CHECK(std::string(lines) == "s0\ns1\ns2\ns3 s4 s5\ns6\ns7\n");
  ksred_string_free(lines);

  ksred_check_result r{};
  REQUIRE(ksred_check(n, p, KSRED_MODE_KME, &r) == KSRED_OK);
  CHECK(r.accepted == 1);
  CHECK(r.kind == KSRED_WITNESS_NONE);
  CHECK(r.block_c == nullptr);
  ksred_check_result_clear(&r);

  ksred_model* q = nullptr;
  REQUIRE(ksred_quotient(n, p, KSRED_MODE_KME, &q) == KSRED_OK);
  ksred_model* qs = nullptr;
  REQUIRE(ksred_model_strip(q, &qs) == KSRED_OK);
  ksred_model* expected = load("fig2_quotient.ks");
  int iso = 0;
  REQUIRE(ksred_model_isomorphic(qs, expected, &iso) == KSRED_OK);
  CHECK(iso == 1);
  int related = 0;
  REQUIRE(ksred_quotient_related(n, p, KSRED_MODE_KME, &related) == KSRED_OK);
  CHECK(related == 1);

  ksred_model* t = load("toggler.ks");
  ksred_compositionality_result c{};
  REQUIRE(ksred_compositionality(n, p, t, &c) == KSRED_OK);
  CHECK(c.trace_equivalent == 1);
  CHECK(c.strict == 1);

  ksred_model* f3 = load("fig3.ks");
  ksred_model* n3 = normalized(f3);
  ksred_partition* p3 = part_for(f3, n3, "fig3.part");
  REQUIRE(ksred_check(n3, p3, KSRED_MODE_KME, &r) == KSRED_OK);
  CHECK(r.accepted == 0);
  CHECK(r.kind == KSRED_WITNESS_PBR_MISMATCH);
  CHECK(std::string(r.block_c) == "{s3 s4 s5}");
  CHECK(std::string(r.block_d) == "{s6}");
  CHECK(r.value_a != r.value_b);
  ksred_check_result_clear(&r);
  CHECK(r.description == nullptr);
  ksred_model* bad = nullptr;
  CHECK(ksred_quotient(n3, p3, KSRED_MODE_KME, &bad) == KSRED_ERR_PRECONDITION);
  CHECK(bad == nullptr);
  REQUIRE(ksred_quotient(n3, p3, KSRED_MODE_WKME, &bad) == KSRED_OK);
  ksred_model_free(bad);

  // Size mismatch: partition of the raw structure against the normalized one.
  ksred_partition* raw = nullptr;
  REQUIRE(ksred_partition_load(m, data("fig2.part").c_str(), &raw) == KSRED_OK);
  CHECK(ksred_check(n, raw, KSRED_MODE_KME, &r) == KSRED_ERR_INVALID_ARGUMENT);
  CHECK(ksred_check(m, raw, KSRED_MODE_KME, &r) == KSRED_ERR_PRECONDITION);

  for (auto* x : {m, n, q, qs, expected, t, f3, n3}) ksred_model_free(x);
  for (auto* x : {p, p3, raw}) ksred_partition_free(x);
}

TEST_CASE("minimize and limits") {
  ksred_model* m = load("fig3.ks");
  ksred_model* n = normalized(m);
  struct Case {
    ksred_method method;
    ksred_strategy strategy;
    size_t blocks;
  };
  for (const Case c : {Case{KSRED_METHOD_BISIM, KSRED_STRATEGY_GREEDY, 8},
                       Case{KSRED_METHOD_STUTTER_BISIM, KSRED_STRATEGY_GREEDY, 8},
                       Case{KSRED_METHOD_WKME, KSRED_STRATEGY_EXHAUSTIVE, 6}}) {
    ksred_partition* p = nullptr;
    REQUIRE(ksred_minimize(n, c.method, c.strategy, &p) == KSRED_OK);
    size_t user = 0;
    REQUIRE(ksred_partition_num_user_blocks(p, n, &user) == KSRED_OK);
    CHECK(user == c.blocks);
    ksred_partition_free(p);
  }
  ksred_model* big = nullptr;
  REQUIRE(ksred_model_generate(14, 0, 0.2, 3, &big) == KSRED_OK);
  ksred_model* nb = normalized(big);
  ksred_partition* p = nullptr;
  CHECK(ksred_minimize(nb, KSRED_METHOD_KME, KSRED_STRATEGY_EXHAUSTIVE, &p) == KSRED_ERR_LIMIT);
  CHECK(p == nullptr);
  for (auto* x : {m, n, big, nb}) ksred_model_free(x);
}

TEST_CASE("oracles") {
  ksred_model* f2 = load("fig2.ks");
  ksred_model* f3 = load("fig3.ks");
  ksred_equiv_result r{};
  REQUIRE(ksred_equiv(f3, f2, KSRED_SEMANTICS_STUTTER_TRACE, &r) == KSRED_OK);
  CHECK(r.equivalent == 0);
  CHECK(r.divergence == 1);
  CHECK(r.in_first == 1);
  REQUIRE(r.length == 3);
  CHECK(std::string(r.letters[0]) == "{a}");
  CHECK(std::string(r.letters[1]) == "{}");
  CHECK(std::string(r.letters[2]) == "{a}");
  ksred_equiv_result_clear(&r);
  CHECK(r.letters == nullptr);
  REQUIRE(ksred_equiv(f2, f2, KSRED_SEMANTICS_TRACE, &r) == KSRED_OK);
  CHECK(r.equivalent == 1);
  CHECK(r.length == 0);
  ksred_equiv_result_clear(&r);

  ksred_ltl_result l{};
  REQUIRE(ksred_ltl_check(f2, "G(b -> G b)", 6, 3, &l) == KSRED_OK);
  CHECK(l.holds == 0);
  CHECK(std::string(l.counterexample) == "s0 s2 s4 | loop: s6");
  ksred_ltl_result_clear(&l);
  CHECK(ksred_ltl_check(f2, "G(", 6, 3, &l) == KSRED_ERR_PARSE);
  CHECK(ksred_ltl_check(f2, "a", 0, 3, &l) == KSRED_ERR_INVALID_ARGUMENT);

  ksred_model* t = load("toggler.ks");
  ksred_model* prod = nullptr;
  REQUIRE(ksred_compose(f2, t, 0, &prod) == KSRED_OK);
  CHECK(ksred_model_num_states(prod) == 16);
  ksred_model_free(prod);
  REQUIRE(ksred_compose(f2, t, 1, &prod) == KSRED_OK);
  CHECK(ksred_model_num_states(prod) == 10);
  for (auto* x : {f2, f3, t, prod}) ksred_model_free(x);
}

TEST_CASE("selftest through the C API") {
  ksred_selftest_options o{};
  ksred_selftest_defaults(&o);
  CHECK(o.cases == 200);
  o.cases = 20;
  o.pair_cases = 12;
  ksred_selftest_report r{};
  REQUIRE(ksred_selftest(&o, &r) == KSRED_OK);
  CHECK(r.passed == 1);
  CHECK(r.num_properties > 10);
  for (size_t i = 0; i < r.num_properties; ++i) CHECK(r.properties[i].violations == 0);
  ksred_selftest_report_clear(&r);
  CHECK(r.properties == nullptr);
}

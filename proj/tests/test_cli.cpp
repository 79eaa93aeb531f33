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

#include <cstdio>
#include <fstream>

#include "cli_runner.hpp"
#include "ksred/kripke.hpp"

using ksred::test::run_cli;

namespace {

std::string data(const std::string& file) { return std::string(KSRED_DATA_DIR) + "/" + file; }

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream(name) << text;
  return name;
}

}  // namespace

TEST_CASE("check accepts the example partitions") {
  auto r = run_cli({"check", "--mode", "kme", data("fig2.ks"), data("fig2.part")});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("accepted") != std::string::npos);
  CHECK(r.out.find("added root") != std::string::npos);

  r = run_cli({"check", "--mode", "wkme", data("fig3.ks"), data("fig3.part"), "--json"});
  CHECK(r.exit_code == 0);
  const auto j = r.json();
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "check");
  CHECK(j["verdict"] == "accepted");
  CHECK(j["witness"].is_null());
  CHECK(j["blocks"] == 6);
  CHECK(j["normalization"]["added_root"] == true);
  CHECK(j["timings_ms"].contains("total"));
}

TEST_CASE("check rejects with a witness") {
  auto r = run_cli({"check", "--mode", "kme", data("fig3.ks"), data("fig3.part"), "--json"});
  CHECK(r.exit_code == 1);
  const auto j = r.json();
  CHECK(j["verdict"] == "rejected");
  CHECK(j["witness"]["kind"] == "pbr_mismatch");
  CHECK(j["witness"]["blockC"] == "{s3 s4 s5}");
  CHECK(j["witness"]["blockD"] == "{s6}");
  CHECK(j["witness"]["predA"] == "s1");
  CHECK(j["witness"]["predB"] == "s2");

  r = run_cli({"check", "--mode", "wkme", data("fig2.ks"), data("fig3.part")});
  CHECK(r.exit_code == 0);
}

TEST_CASE("check without normalization needs predecessors") {
  const auto r = run_cli({"check", "--mode", "kme", "--no-normalize", data("fig2.ks"), data("fig2.part")});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("normalize first") != std::string::npos);
  const auto t = run_cli({"check", "--mode", "kme", "--no-normalize", data("toggler.ks"),
                          write_temp("toggler_id.part", "v0\nv1\n")});
  CHECK(t.exit_code == 0);
  std::remove("toggler_id.part");
}

TEST_CASE("quotient writes the reduced structures") {
  auto r = run_cli({"quotient", "--mode", "kme", data("fig2.ks"), data("fig2.part"), "-o", "q2.ks"});
  REQUIRE(r.exit_code == 0);
  CHECK(ksred::isomorphic(ksred::load_ks("q2.ks"), ksred::load_ks(data("fig2_quotient.ks"))));

  r = run_cli({"quotient", "--mode", "wkme", data("fig3.ks"), data("fig3.part"), "--json"});
  REQUIRE(r.exit_code == 0);
  const auto j = r.json();
  CHECK(j["states"] == 6);
  CHECK(ksred::isomorphic(ksred::parse_ks(j["quotient"].get<std::string>()),
                          ksred::load_ks(data("fig3_quotient.ks"))));

  r = run_cli({"quotient", "--mode", "kme", data("fig2.ks"), data("fig2.part"), "--keep-reserved"});
  REQUIRE(r.exit_code == 0);
  const auto kept = ksred::parse_ks(r.out.substr(r.out.find("aps")));
  CHECK(kept.num_states() == 7);
  CHECK(ksred::find_root(kept).has_value());
  std::remove("q2.ks");
}

TEST_CASE("quotient by a non-KME fails with the check witness") {
  const auto r = run_cli({"quotient", "--mode", "kme", data("fig3.ks"), data("fig3.part"), "--json"});
  CHECK(r.exit_code == 1);
  CHECK(r.json()["witness"]["kind"] == "pbr_mismatch");
  CHECK_FALSE(r.json().contains("quotient"));
}

TEST_CASE("minimize reports block counts without the root") {
  struct Case {
    const char* file;
    const char* mode;
    const char* strategy;
    int blocks;
  };
  for (const Case c : {Case{"fig2.ks", "bisim", "greedy", 7}, Case{"fig2.ks", "kme", "exhaustive", 6},
                       Case{"fig2.ks", "kme", "greedy", 6}, Case{"fig3.ks", "stutter-bisim", "greedy", 8},
                       Case{"fig3.ks", "wkme", "exhaustive", 6}, Case{"fig3.ks", "wkme", "greedy", 6}}) {
    CAPTURE(c.file);
    CAPTURE(c.mode);
    CAPTURE(c.strategy);
    const auto r = run_cli({"minimize", "--mode", c.mode, "--strategy", c.strategy, data(c.file), "--json"});
    REQUIRE(r.exit_code == 0);
    const auto j = r.json();
    CHECK(j["blocks"] == c.blocks);
    CHECK(j["partition"].size() == static_cast<std::size_t>(c.blocks));
  }
  const auto text = run_cli({"minimize", "--mode", "kme", "--strategy", "exhaustive", data("fig2.ks"), "-o", "m.part"});
  CHECK(text.out.find("blocks: 6") != std::string::npos);
  // The written partition is reusable with the original file.
  CHECK(run_cli({"check", "--mode", "kme", data("fig2.ks"), "m.part"}).exit_code == 0);
  std::remove("m.part");
}

TEST_CASE("minimize refuses oversized exhaustive searches") {
  const auto big = run_cli({"gen", "--states", "14", "--aps", "0", "-o", "big.ks"});
  REQUIRE(big.exit_code == 0);
  const auto r = run_cli({"minimize", "--mode", "kme", "--strategy", "exhaustive", "big.ks"});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("limit") != std::string::npos);
  CHECK(run_cli({"minimize", "--mode", "kme", "big.ks"}).exit_code == 0);
  std::remove("big.ks");
}

TEST_CASE("equiv") {
  auto r = run_cli({"equiv", "--semantics", "stutter-trace", data("fig3.ks"), data("fig2.ks"), "--json"});
  CHECK(r.exit_code == 1);
  auto j = r.json();
  CHECK(j["verdict"] == "not_equivalent");
  CHECK(j["witness"]["kind"] == "divergence");
  CHECK(j["witness"]["word"] == nlohmann::json::array({"{a}", "{}", "{a}"}));
  CHECK(j["witness"]["present_in"] == data("fig3.ks"));

  r = run_cli({"equiv", "--semantics", "trace", data("fig2.ks"), data("fig2_quotient.ks")});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "equivalent\n");
  r = run_cli({"equiv", "--semantics", "stutter-trace", data("fig3.ks"), data("fig3_quotient.ks")});
  CHECK(r.exit_code == 0);
  r = run_cli({"equiv", "--semantics", "trace", data("fig2.ks"), data("fig3.ks")});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("witness (prefix)") != std::string::npos);
}

TEST_CASE("compose") {
  auto r = run_cli({"compose", data("fig2.ks"), data("toggler.ks"), "--json"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.json()["states"] == 16);
  r = run_cli({"compose", data("fig2.ks"), data("toggler.ks"), "--reachable", "-o", "prod.ks"});
  REQUIRE(r.exit_code == 0);
  const auto prod = ksred::load_ks("prod.ks");
  CHECK(prod.num_states() == 10);
  CHECK(prod.aps() == std::vector<std::string>{"a", "b", "p"});
  std::remove("prod.ks");
}

TEST_CASE("ltl") {
  auto r = run_cli({"ltl", "--formula", "F b", "--stem", "6", "--loop", "3", data("fig2.ks"), "--json"});
  CHECK(r.exit_code == 1);
  auto j = r.json();
  CHECK(j["verdict"] == "fails");
  CHECK(j["witness"]["lasso"] == "s0 s1 s3 | loop: s7");
  CHECK(j["stutter_insensitive"] == true);
  r = run_cli({"ltl", "--formula", "a & X !a", "--stem", "6", "--loop", "3", data("fig2.ks"), "--json"});
  CHECK(r.exit_code == 0);
  CHECK(r.json()["stutter_insensitive"] == false);
  r = run_cli({"ltl", "--formula", "a U", "--stem", "2", "--loop", "2", data("fig2.ks")});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("column") != std::string::npos);
  CHECK(run_cli({"ltl", "--formula", "a", "--stem", "0", "--loop", "2", data("fig2.ks")}).exit_code == 2);
}

TEST_CASE("gen is reproducible and parseable") {
  const auto a = run_cli({"gen", "--states", "6", "--aps", "2", "--density", "0.4", "--seed", "11"});
  const auto b = run_cli({"gen", "--states", "6", "--aps", "2", "--density", "0.4", "--seed", "11"});
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto ks = ksred::parse_ks(a.out);
  CHECK(ks.num_states() == 6);
  CHECK(run_cli({"gen", "--density", "2"}).exit_code == 2);
  CHECK(run_cli({"gen", "--aps", "27"}).exit_code == 2);
}

TEST_CASE("selftest") {
  const auto r = run_cli({"selftest", "--cases", "30", "--pair-cases", "20", "--seed", "5", "--json"});
  CHECK(r.exit_code == 0);
  const auto j = r.json();
  CHECK(j["verdict"] == "passed");
  CHECK(j["cases"] == 30);
  for (const auto& p : j["properties"]) CHECK(p["violations"] == 0);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run_cli({}).exit_code == 2);
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  CHECK(run_cli({"check", "--mode", "kme", data("fig2.ks")}).exit_code == 2);
  CHECK(run_cli({"minimize", "--mode", "kme", "--strategy", "clever", data("fig2.ks")}).exit_code == 2);
  const auto bad = write_temp("bad.ks", "states a b\ninit a\ntrans a b\n");
  auto r = run_cli({"check", "--mode", "kme", bad, data("fig2.part"), "--json"});
  CHECK(r.exit_code == 2);
  CHECK(r.json()["verdict"] == "error");
  CHECK(r.err.find("totality") != std::string::npos);
  r = run_cli({"check", "--mode", "kme", data("fig2.ks"), write_temp("short.part", "s0 s1\n")});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("short.part") != std::string::npos);
  std::remove("bad.ks");
  std::remove("short.part");
  CHECK(run_cli({"--help"}).exit_code == 0);
  CHECK(run_cli({"--version"}).exit_code == 0);
}

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

// Command-line front end. Links only the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ksred/ksred.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct ModelDeleter {
  void operator()(ksred_model* m) const { ksred_model_free(m); }
};
struct PartitionDeleter {
  void operator()(ksred_partition* p) const { ksred_partition_free(p); }
};
using Model = std::unique_ptr<ksred_model, ModelDeleter>;
using Partition = std::unique_ptr<ksred_partition, PartitionDeleter>;

// Carries a failed C API call out to `main`.
struct ApiError {
  ksred_status status;
  std::string message;
};

void ok(ksred_status s) {
  if (s != KSRED_OK) throw ApiError{s, ksred_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ksred_string_free(s);
  return out;
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Output shared by every subcommand: text lines or one JSON object.
class Report {
 public:
  Report(std::string command, bool as_json) : as_json_(as_json) {
    doc_["schema"] = 1;
    doc_["command"] = std::move(command);
    doc_["verdict"] = nullptr;
    doc_["witness"] = nullptr;
    doc_["blocks"] = nullptr;
  }

  json& operator[](const char* key) { return doc_[key]; }
  void timing(const char* phase, double ms) { timings_[phase] = ms; }
  void line(const std::string& text) {
    if (!as_json_) std::cout << text << '\n';
  }
  bool json_mode() const { return as_json_; }

  int finish(int code) {
    if (as_json_) {
      double total = 0;
      for (const auto& [_, v] : timings_.items()) total += v.get<double>();
      timings_["total"] = total;
      doc_["timings_ms"] = timings_;
      doc_["exit_code"] = code;
      std::cout << doc_.dump(2) << '\n';
    }
    return code;
  }

 private:
  bool as_json_;
  json doc_;
  json timings_ = json::object();
};

Model load_model(const std::string& path) {
  ksred_model* m = nullptr;
  ok(ksred_model_load(path.c_str(), &m));
  return Model(m);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ApiError{KSRED_ERR_IO, "cannot write '" + path + "'"};
}

// Normalizes unless disabled and records what was added.
Model prepare(Model original, bool normalize, Report& report) {
  if (!normalize) {
    report["normalization"] = {{"applied", false}};
    return original;
  }
  ksred_model* n = nullptr;
  ksred_normalize_report r{};
  ok(ksred_model_normalize(original.get(), &n, &r));
  report["normalization"] = {
      {"applied", true}, {"added_root", r.added_root != 0}, {"marked_initial", r.marked_initial != 0}};
  std::string note = "normalized:";
  note += r.added_root ? " added root s_hat," : " no root needed,";
  note += r.marked_initial ? " marked initial state" : " initial already marked";
  report.line(note);
  return Model(n);
}

// Structure and partition as the checks need them: the partition is read
// against the file's states, then the normalized structure's extra root
// becomes a singleton block.
struct Instance {
  Model ks;
  Partition part;
};

Instance load_instance(const std::string& ks_path, const std::string& part_path, bool normalize, Report& report) {
  Model original = load_model(ks_path);
  ksred_partition* p = nullptr;
  ok(ksred_partition_load(original.get(), part_path.c_str(), &p));
  const Partition read(p);
  Model ks = prepare(std::move(original), normalize, report);
  ksred_partition* ext = nullptr;
  ok(ksred_partition_extend(read.get(), ksred_model_num_states(ks.get()), &ext));
  return {std::move(ks), Partition(ext)};
}

std::size_t user_blocks(const ksred_partition* p, const ksred_model* m) {
  std::size_t n = 0;
  ok(ksred_partition_num_user_blocks(p, m, &n));
  return n;
}

// Blocks as name lists, without the root block.
std::vector<std::vector<std::string>> block_list(const ksred_partition* p, const ksred_model* m) {
  char* s = nullptr;
  ok(ksred_partition_serialize_user(p, m, &s));
  std::istringstream in(take(s));
  std::vector<std::vector<std::string>> blocks;
  for (std::string line; std::getline(in, line);) {
    std::istringstream words(line);
    std::vector<std::string> block;
    for (std::string w; words >> w;) block.push_back(w);
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  return blocks;
}

std::string join_blocks(const std::vector<std::vector<std::string>>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? " " : "") + b[i];
    out += '\n';
  }
  return out;
}

const char* witness_kind(ksred_witness_kind k) {
  switch (k) {
    case KSRED_WITNESS_LABEL_MISMATCH: return "label_mismatch";
    case KSRED_WITNESS_PBR_MISMATCH: return "pbr_mismatch";
    case KSRED_WITNESS_WPBR_MISMATCH: return "wpbr_mismatch";
    case KSRED_WITNESS_DIVERGENCE_MISMATCH: return "divergence_mismatch";
    case KSRED_WITNESS_NONE: break;
  }
  return "none";
}

// Runs the check and reports it; returns true if accepted.
bool run_check(const Model& ks, const Partition& p, ksred_mode mode, Report& report) {
  ksred_check_result r{};
  ok(ksred_check(ks.get(), p.get(), mode, &r));
  const bool accepted = r.accepted != 0;
  const char* name = mode == KSRED_MODE_KME ? "KME" : "WKME";
  report["verdict"] = accepted ? "accepted" : "rejected";
  if (accepted) {
    report.line(std::string("accepted: the partition is a ") + name);
  } else {
    report["witness"] = {{"kind", witness_kind(r.kind)},
                         {"blockC", r.block_c},
                         {"blockD", r.block_d ? json(r.block_d) : json(nullptr)},
                         {"predA", r.pred_a},
                         {"predB", r.pred_b},
                         {"valueA", r.value_a},
                         {"valueB", r.value_b},
                         {"description", r.description}};
    report.line(std::string("rejected: not a ") + name);
    report.line(std::string("witness: ") + r.description);
  }
  ksred_check_result_clear(&r);
  return accepted;
}

ksred_mode parse_mode(const std::string& s) { return s == "kme" ? KSRED_MODE_KME : KSRED_MODE_WKME; }

struct Common {
  bool json = false;
  bool no_normalize = false;
};

int cmd_check(const Common& c, const std::string& mode, const std::string& ks_path, const std::string& part_path) {
  Report report("check", c.json);
  Stopwatch clock;
  report["mode"] = mode;
  const auto [ks, p] = load_instance(ks_path, part_path, !c.no_normalize, report);
  report.timing("load", clock.lap());
  report["blocks"] = user_blocks(p.get(), ks.get());
  const bool accepted = run_check(ks, p, parse_mode(mode), report);
  report.timing("check", clock.lap());
  return report.finish(accepted ? kOk : kFailed);
}

int cmd_quotient(const Common& c, const std::string& mode, const std::string& ks_path, const std::string& part_path,
                 const std::string& out_path, bool keep_reserved) {
  Report report("quotient", c.json);
  Stopwatch clock;
  report["mode"] = mode;
  const auto [ks, p] = load_instance(ks_path, part_path, !c.no_normalize, report);
  report.timing("load", clock.lap());
  report["blocks"] = user_blocks(p.get(), ks.get());
  if (!run_check(ks, p, parse_mode(mode), report)) return report.finish(kFailed);
  ksred_model* q = nullptr;
  ok(ksred_quotient(ks.get(), p.get(), parse_mode(mode), &q));
  Model quotient(q);
  if (!keep_reserved) {
    ksred_model* s = nullptr;
    ok(ksred_model_strip(quotient.get(), &s));
    quotient = Model(s);
  }
  report.timing("quotient", clock.lap());
  char* text = nullptr;
  ok(ksred_model_serialize(quotient.get(), &text));
  const std::string body = take(text);
  report["states"] = ksred_model_num_states(quotient.get());
  report["transitions"] = ksred_model_num_transitions(quotient.get());
  if (out_path.empty()) {
    if (report.json_mode()) {
      report["quotient"] = body;
    } else {
      std::cout << body;
    }
  } else {
    write_text(out_path, body);
    report["output"] = out_path;
    report.line("wrote " + out_path);
  }
  return report.finish(kOk);
}

int cmd_minimize(const Common& c, const std::string& method, const std::string& strategy, const std::string& ks_path,
                 const std::string& out_path) {
  Report report("minimize", c.json);
  Stopwatch clock;
  report["mode"] = method;
  const bool searches = method == "kme" || method == "wkme";
  report["strategy"] = searches ? json(strategy) : json(nullptr);
  const Model ks = prepare(load_model(ks_path), !c.no_normalize, report);
  report.timing("load", clock.lap());
  const ksred_method m = method == "bisim"           ? KSRED_METHOD_BISIM
                         : method == "stutter-bisim" ? KSRED_METHOD_STUTTER_BISIM
                         : method == "kme"           ? KSRED_METHOD_KME
                                                     : KSRED_METHOD_WKME;
  ksred_partition* raw = nullptr;
  ok(ksred_minimize(ks.get(), m, strategy == "exhaustive" ? KSRED_STRATEGY_EXHAUSTIVE : KSRED_STRATEGY_GREEDY, &raw));
  const Partition p(raw);
  report.timing("minimize", clock.lap());
  const std::size_t blocks = user_blocks(p.get(), ks.get());
  const auto list = block_list(p.get(), ks.get());
  report["verdict"] = "ok";
  report["blocks"] = blocks;
  report["partition"] = list;
  report.line("blocks: " + std::to_string(blocks));
  if (out_path.empty()) {
    if (!report.json_mode()) std::cout << join_blocks(list);
  } else {
    write_text(out_path, join_blocks(list));
    report["output"] = out_path;
    report.line("wrote " + out_path);
  }
  return report.finish(kOk);
}

int cmd_equiv(const Common& c, const std::string& semantics, const std::string& a_path, const std::string& b_path) {
  Report report("equiv", c.json);
  Stopwatch clock;
  report["semantics"] = semantics;
  const Model a = load_model(a_path);
  const Model b = load_model(b_path);
  report.timing("load", clock.lap());
  ksred_equiv_result r{};
  ok(ksred_equiv(a.get(), b.get(), semantics == "trace" ? KSRED_SEMANTICS_TRACE : KSRED_SEMANTICS_STUTTER_TRACE, &r));
  report.timing("compare", clock.lap());
  const bool equivalent = r.equivalent != 0;
  report["verdict"] = equivalent ? "equivalent" : "not_equivalent";
  if (equivalent) {
    report.line("equivalent");
  } else {
    std::vector<std::string> word(r.letters, r.letters + r.length);
    std::string shown;
    for (const auto& l : word) shown += (shown.empty() ? "" : " ") + l;
    const std::string& side = r.in_first ? a_path : b_path;
    const std::string& other = r.in_first ? b_path : a_path;
    const char* kind = r.divergence ? "divergence" : "prefix";
    report["witness"] = {{"kind", kind}, {"word", word}, {"present_in", side}, {"absent_from", other}};
    report.line("not equivalent");
    if (r.divergence) {
      report.line("witness (divergence): after block word " + shown + ", " + side + " can stay in " + word.back() +
                  " forever, " + other + " cannot");
    } else {
      report.line("witness (prefix): " + shown + " is a " + (semantics == "trace" ? "trace prefix" : "block word") +
                  " of " + side + " only");
    }
  }
  ksred_equiv_result_clear(&r);
  return report.finish(equivalent ? kOk : kFailed);
}

int cmd_compose(const Common& c, const std::string& a_path, const std::string& b_path, const std::string& out_path,
                bool reachable) {
  Report report("compose", c.json);
  Stopwatch clock;
  const Model a = load_model(a_path);
  const Model b = load_model(b_path);
  report.timing("load", clock.lap());
  ksred_model* raw = nullptr;
  ok(ksred_compose(a.get(), b.get(), reachable ? 1 : 0, &raw));
  const Model product(raw);
  report.timing("compose", clock.lap());
  char* text = nullptr;
  ok(ksred_model_serialize(product.get(), &text));
  const std::string body = take(text);
  report["verdict"] = "ok";
  report["reachable_only"] = reachable;
  report["states"] = ksred_model_num_states(product.get());
  report["transitions"] = ksred_model_num_transitions(product.get());
  report.line("product: " + std::to_string(ksred_model_num_states(product.get())) + " states, " +
              std::to_string(ksred_model_num_transitions(product.get())) + " transitions");
  if (out_path.empty()) {
    if (report.json_mode()) {
      report["product"] = body;
    } else {
      std::cout << body;
    }
  } else {
    write_text(out_path, body);
    report["output"] = out_path;
    report.line("wrote " + out_path);
  }
  return report.finish(kOk);
}

int cmd_ltl(const Common& c, const std::string& formula, std::size_t stem, std::size_t loop, const std::string& path) {
  Report report("ltl", c.json);
  Stopwatch clock;
  const Model ks = load_model(path);
  report.timing("load", clock.lap());
  ksred_ltl_result r{};
  ok(ksred_ltl_check(ks.get(), formula.c_str(), stem, loop, &r));
  report.timing("evaluate", clock.lap());
  const bool holds = r.holds != 0;
  report["formula"] = r.formula;
  report["stutter_insensitive"] = r.uses_next == 0;
  report["stem_bound"] = stem;
  report["loop_bound"] = loop;
  report["lassos_checked"] = r.lassos_checked;
  report["verdict"] = holds ? "holds" : "fails";
  const std::string bounds = "(stem <= " + std::to_string(stem) + ", loop <= " + std::to_string(loop) + ")";
  report.line(holds ? "holds on all " + std::to_string(r.lassos_checked) + " lassos " + bounds
                    : "fails at lasso " + std::to_string(r.lassos_checked) + " " + bounds);
  if (!holds) {
    report["witness"] = {{"kind", "lasso"}, {"lasso", r.counterexample}, {"word", r.counterexample_word}};
    report.line(std::string("counterexample: ") + r.counterexample);
    report.line(std::string("trace: ") + r.counterexample_word);
  }
  ksred_ltl_result_clear(&r);
  return report.finish(holds ? kOk : kFailed);
}

int cmd_gen(const Common& c, std::size_t states, std::size_t aps, double density, std::uint64_t seed,
            const std::string& out_path) {
  Report report("gen", c.json);
  Stopwatch clock;
  ksred_model* raw = nullptr;
  ok(ksred_model_generate(states, aps, density, seed, &raw));
  const Model ks(raw);
  report.timing("generate", clock.lap());
  char* text = nullptr;
  ok(ksred_model_serialize(ks.get(), &text));
  const std::string body = take(text);
  report["verdict"] = "ok";
  report["states"] = states;
  report["transitions"] = ksred_model_num_transitions(ks.get());
  if (out_path.empty()) {
    if (report.json_mode()) {
      report["model"] = body;
    } else {
      std::cout << body;
    }
  } else {
    write_text(out_path, body);
    report["output"] = out_path;
    report.line("wrote " + out_path);
  }
  return report.finish(kOk);
}

int cmd_selftest(const Common& c, const ksred_selftest_options& opts) {
  Report report("selftest", c.json);
  Stopwatch clock;
  ksred_selftest_report r{};
  ok(ksred_selftest(&opts, &r));
  report.timing("run", clock.lap());
  json props = json::array();
  for (std::size_t i = 0; i < r.num_properties; ++i) {
    const auto& p = r.properties[i];
    props.push_back({{"suite", p.suite},
                     {"name", p.name},
                     {"checked", p.checked},
                     {"violations", p.violations},
                     {"first_failure", p.first_failure ? json(p.first_failure) : json(nullptr)}});
    std::string text = std::string(p.violations ? "FAIL " : "ok   ") + "[" + p.suite + "] " + p.name + ": " +
                       std::to_string(p.checked) + " checked";
    if (p.violations) text += ", " + std::to_string(p.violations) + " violations, first: " + p.first_failure;
    report.line(text);
  }
  report["cases"] = opts.cases;
  report["pair_cases"] = opts.pair_cases;
  report["seed"] = opts.seed;
  report["properties"] = props;
  report["literal_wkme"] = {{"checked", r.literal_wkme_checked}, {"unsound", r.literal_wkme_findings}};
  report.line("literal WKME condition: " + std::to_string(r.literal_wkme_findings) + " of " +
              std::to_string(r.literal_wkme_checked) + " accepted partitions change stutter traces");
  const bool passed = r.passed != 0;
  report["verdict"] = passed ? "passed" : "failed";
  report.line(passed ? "selftest passed" : "selftest FAILED");
  ksred_selftest_report_clear(&r);
  return report.finish(passed ? kOk : kFailed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-space reduction of Kripke structures", "ksred"};
  app.set_version_flag("--version", ksred_version());
  app.require_subcommand(1);

  Common common;
  std::string command;
  auto add_common = [&](CLI::App* sub, bool normalizes) {
    sub->add_flag("--json", common.json, "Print a JSON report");
    if (normalizes) sub->add_flag("--no-normalize", common.no_normalize, "Use the structure as given");
  };
  const std::vector<std::string> check_modes{"kme", "wkme"};

  std::string mode, ks_path, part_path, out_path, second_path, strategy = "greedy", semantics, formula;
  bool keep_reserved = false, reachable = false;
  std::size_t stem = 0, loop = 0, states = 4, aps = 1;
  double density = 0.3;
  std::uint64_t seed = 1;
  ksred_selftest_options st{};
  ksred_selftest_defaults(&st);

  auto* check = app.add_subcommand("check", "Check that a partition is a KME or WKME");
  check->add_option("--mode", mode, "kme or wkme")->required()->check(CLI::IsMember(check_modes));
  check->add_option("ks", ks_path, "Structure (.ks)")->required();
  check->add_option("part", part_path, "Partition (.part)")->required();
  add_common(check, true);

  auto* quotient = app.add_subcommand("quotient", "Build the quotient by a KME or WKME");
  quotient->add_option("--mode", mode, "kme or wkme")->required()->check(CLI::IsMember(check_modes));
  quotient->add_option("ks", ks_path, "Structure (.ks)")->required();
  quotient->add_option("part", part_path, "Partition (.part)")->required();
  quotient->add_option("-o,--output", out_path, "Output file (default: stdout)");
  quotient->add_flag("--keep-reserved", keep_reserved, "Keep the root state and reserved atoms");
  add_common(quotient, true);

  auto* minimize = app.add_subcommand("minimize", "Compute a reducing partition");
  minimize->add_option("--mode", mode, "Equivalence")
      ->required()
      ->check(CLI::IsMember({"bisim", "stutter-bisim", "kme", "wkme"}));
  minimize->add_option("--strategy", strategy, "greedy or exhaustive (KME/WKME only)")
      ->check(CLI::IsMember({"greedy", "exhaustive"}));
  minimize->add_option("ks", ks_path, "Structure (.ks)")->required();
  minimize->add_option("-o,--output", out_path, "Write the partition here");
  add_common(minimize, true);

  auto* equiv = app.add_subcommand("equiv", "Compare the traces of two structures");
  equiv->add_option("--semantics", semantics, "trace or stutter-trace")
      ->required()
      ->check(CLI::IsMember({"trace", "stutter-trace"}));
  equiv->add_option("ks1", ks_path, "First structure")->required();
  equiv->add_option("ks2", second_path, "Second structure")->required();
  add_common(equiv, false);

  auto* compose = app.add_subcommand("compose", "Synchronous product of two structures");
  compose->add_option("ks1", ks_path, "Left factor")->required();
  compose->add_option("ks2", second_path, "Right factor")->required();
  compose->add_option("-o,--output", out_path, "Output file (default: stdout)");
  compose->add_flag("--reachable", reachable, "Keep only reachable product states");
  add_common(compose, false);

  auto* ltl = app.add_subcommand("ltl", "Evaluate an LTL formula on bounded lassos");
  ltl->add_option("--formula", formula, "Formula, e.g. 'G(b -> G b)'")->required();
  ltl->add_option("--stem", stem, "Maximal stem length")->required()->check(CLI::PositiveNumber);
  ltl->add_option("--loop", loop, "Maximal loop length")->required()->check(CLI::PositiveNumber);
  ltl->add_option("ks", ks_path, "Structure (.ks)")->required();
  add_common(ltl, false);

  auto* gen = app.add_subcommand("gen", "Generate a random structure");
  gen->add_option("--states", states, "Number of states")->check(CLI::PositiveNumber);
  gen->add_option("--aps", aps, "Number of atoms (at most 26)")->check(CLI::Range(0, 26));
  gen->add_option("--density", density, "Probability of each extra edge")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("-o,--output", out_path, "Output file (default: stdout)");
  add_common(gen, false);

  auto* selftest = app.add_subcommand("selftest", "Run the property suites");
  selftest->add_option("--cases", st.cases, "Random structures");
  selftest->add_option("--pair-cases", st.pair_cases, "Random pairs for the oracle cross-check");
  selftest->add_option("--seed", st.seed, "Base seed");
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  command = sub->get_name();
  try {
    if (sub == check) return cmd_check(common, mode, ks_path, part_path);
    if (sub == quotient) return cmd_quotient(common, mode, ks_path, part_path, out_path, keep_reserved);
    if (sub == minimize) return cmd_minimize(common, mode, strategy, ks_path, out_path);
    if (sub == equiv) return cmd_equiv(common, semantics, ks_path, second_path);
    if (sub == compose) return cmd_compose(common, ks_path, second_path, out_path, reachable);
    if (sub == ltl) return cmd_ltl(common, formula, stem, loop, ks_path);
    if (sub == gen) return cmd_gen(common, states, aps, density, seed, out_path);
    return cmd_selftest(common, st);
  } catch (const ApiError& e) {
    std::cerr << "ksred " << command << ": " << ksred_status_name(e.status) << ": " << e.message << '\n';
    if (common.json) {
      json doc = {{"schema", 1},         {"command", command},      {"verdict", "error"},
                  {"witness", nullptr},  {"blocks", nullptr},       {"error", e.message},
                  {"error_kind", ksred_status_name(e.status)}, {"timings_ms", json::object()},
                  {"exit_code", kUsage}};
      std::cout << doc.dump(2) << '\n';
    }
    return kUsage;
  }
}

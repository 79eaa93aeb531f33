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

#include "ksred/ksred.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "ksred/compose.hpp"
#include "ksred/error.hpp"
#include "ksred/generate.hpp"
#include "ksred/kme.hpp"
#include "ksred/kripke.hpp"
#include "ksred/ltl.hpp"
#include "ksred/oracles.hpp"
#include "ksred/partition.hpp"
#include "ksred/selftest.hpp"
#include "ksred/wkme.hpp"

struct ksred_model {
  ksred::KripkeStructure ks;
};

struct ksred_partition {
  ksred::Partition p;
};

namespace {

using namespace ksred;

thread_local std::string last_error;

struct IoError : Error {
  using Error::Error;
};

ksred_status fail(ksred_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
ksred_status guarded(F&& body) {
  try {
    body();
    return KSRED_OK;
  } catch (const ParseError& e) {
    return fail(KSRED_ERR_PARSE, e.what());
  } catch (const IoError& e) {
    return fail(KSRED_ERR_IO, e.what());
  } catch (const InvalidArgument& e) {
    return fail(KSRED_ERR_INVALID_ARGUMENT, e.what());
  } catch (const PreconditionError& e) {
    return fail(KSRED_ERR_PRECONDITION, e.what());
  } catch (const LimitError& e) {
    return fail(KSRED_ERR_LIMIT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KSRED_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KSRED_ERR_INTERNAL, e.what());
  }
}

template <typename... Ptrs>
void require(Ptrs... ptrs) {
  if (((ptrs == nullptr) || ...)) throw InvalidArgument("null argument");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_text(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open '") + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Prefixes parse errors with the file they came from.
template <typename F>
auto from_file(const char* path, F&& parse) {
  const std::string text = read_text(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(path) + ": " + e.what());
  }
}

void check_sizes(const ksred_model* m, const ksred_partition* p) {
  if (m->ks.num_states() != p->p.num_states()) {
    throw InvalidArgument("partition covers " + std::to_string(p->p.num_states()) + " states, model has " +
                          std::to_string(m->ks.num_states()));
  }
}

ksred_witness_kind to_c(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::label_mismatch: return KSRED_WITNESS_LABEL_MISMATCH;
    case Witness::Kind::pbr_mismatch: return KSRED_WITNESS_PBR_MISMATCH;
    case Witness::Kind::wpbr_mismatch: return KSRED_WITNESS_WPBR_MISMATCH;
    case Witness::Kind::divergence_mismatch: return KSRED_WITNESS_DIVERGENCE_MISMATCH;
  }
  return KSRED_WITNESS_NONE;
}

// True if some member of \`block\` carries the root atom itself.
bool has_root(const KripkeStructure& ks, const StateSet& block) {
  return std::any_of(block.begin(), block.end(), [&](StateId s) {
    const auto& l = ks.label(s);
    return std::find(l.begin(), l.end(), kBottomAtom) != l.end();
  });
}

void release(char*& s) {
  std::free(s);
  s = nullptr;
}

}  // namespace

extern "C" {

const char* ksred_version(void) { return "1.0.0"; }

const char* ksred_last_error(void) { return last_error.c_str(); }

const char* ksred_status_name(ksred_status status) {
  switch (status) {
    case KSRED_OK: return "ok";
    case KSRED_ERR_PARSE: return "parse error";
    case KSRED_ERR_INVALID_ARGUMENT: return "invalid argument";
    case KSRED_ERR_PRECONDITION: return "precondition violated";
    case KSRED_ERR_LIMIT: return "limit exceeded";
    case KSRED_ERR_IO: return "i/o error";
    case KSRED_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ksred_string_free(char* s) { std::free(s); }

// Models ----------------------------------------------------------------------

ksred_status ksred_model_parse(const char* text, ksred_model** out) {
  return guarded([&] {
    require(text, out);
    *out = new ksred_model{parse_ks(text)};
  });
}

ksred_status ksred_model_load(const char* path, ksred_model** out) {
  return guarded([&] {
    require(path, out);
    *out = new ksred_model{from_file(path, [](const std::string& t) { return parse_ks(t); })};
  });
}

void ksred_model_free(ksred_model* model) { delete model; }

ksred_status ksred_model_serialize(const ksred_model* model, char** out) {
  return guarded([&] {
    require(model, out);
    *out = dup(serialize_ks(model->ks));
  });
}

size_t ksred_model_num_states(const ksred_model* model) { return model ? model->ks.num_states() : 0; }

size_t ksred_model_num_transitions(const ksred_model* model) { return model ? model->ks.num_transitions() : 0; }

int ksred_model_has_root(const ksred_model* model) { return model && find_root(model->ks) ? 1 : 0; }

ksred_status ksred_model_normalize(const ksred_model* model, ksred_model** out, ksred_normalize_report* report) {
  return guarded([&] {
    require(model, out);
    NormalizeReport r;
    auto ks = normalize(model->ks, {}, &r);
    if (report) *report = {r.added_root ? 1 : 0, r.marked_initial ? 1 : 0};
    *out = new ksred_model{std::move(ks)};
  });
}

ksred_status ksred_model_strip(const ksred_model* model, ksred_model** out) {
  return guarded([&] {
    require(model, out);
    *out = new ksred_model{strip_reserved(model->ks)};
  });
}

ksred_status ksred_model_isomorphic(const ksred_model* a, const ksred_model* b, int* out) {
  return guarded([&] {
    require(a, b, out);
    *out = isomorphic(a->ks, b->ks) ? 1 : 0;
  });
}

ksred_status ksred_model_generate(size_t states, size_t aps, double density, uint64_t seed, ksred_model** out) {
  return guarded([&] {
    require(out);
    *out = new ksred_model{generate_random({states, aps, density, seed})};
  });
}

// Partitions ------------------------------------------------------------------

ksred_status ksred_partition_parse(const ksred_model* model, const char* text, ksred_partition** out) {
  return guarded([&] {
    require(model, text, out);
    *out = new ksred_partition{parse_partition(text, model->ks)};
  });
}

ksred_status ksred_partition_load(const ksred_model* model, const char* path, ksred_partition** out) {
  return guarded([&] {
    require(model, path, out);
    *out = new ksred_partition{from_file(path, [&](const std::string& t) { return parse_partition(t, model->ks); })};
  });
}

void ksred_partition_free(ksred_partition* partition) { delete partition; }

ksred_status ksred_partition_serialize(const ksred_partition* partition, const ksred_model* model, char** out) {
  return guarded([&] {
    require(partition, model, out);
    check_sizes(model, partition);
    *out = dup(serialize_partition(partition->p, model->ks));
  });
}

ksred_status ksred_partition_serialize_user(const ksred_partition* partition, const ksred_model* model,
                                            char** out) {
  return guarded([&] {
    require(partition, model, out);
    check_sizes(model, partition);
    std::string text;
    for (const auto& block : partition->p.blocks()) {
      if (has_root(model->ks, block)) continue;
      for (std::size_t i = 0; i < block.size(); ++i) text += (i ? " " : "") + model->ks.name(block[i]);
      text += '\n';
    }
    *out = dup(text);
  });
}

size_t ksred_partition_num_blocks(const ksred_partition* partition) { return partition ? partition->p.size() : 0; }

ksred_status ksred_partition_num_user_blocks(const ksred_partition* partition, const ksred_model* model,
                                             size_t* out) {
  return guarded([&] {
    require(partition, model, out);
    check_sizes(model, partition);
    const auto& blocks = partition->p.blocks();
    *out = static_cast<std::size_t>(
        std::count_if(blocks.begin(), blocks.end(), [&](const StateSet& b) { return !has_root(model->ks, b); }));
  });
}

ksred_status ksred_partition_extend(const ksred_partition* partition, size_t num_states, ksred_partition** out) {
  return guarded([&] {
    require(partition, out);
    if (num_states < partition->p.num_states()) throw InvalidArgument("cannot shrink a partition");
    *out = new ksred_partition{partition->p.extended(num_states)};
  });
}

// Checks and reductions -------------------------------------------------------

void ksred_check_result_clear(ksred_check_result* result) {
  if (!result) return;
  release(result->block_c);
  release(result->block_d);
  release(result->pred_a);
  release(result->pred_b);
  release(result->description);
  *result = ksred_check_result{};
}

ksred_status ksred_check(const ksred_model* model, const ksred_partition* partition, ksred_mode mode,
                         ksred_check_result* out) {
  return guarded([&] {
    require(model, partition, out);
    check_sizes(model, partition);
    const auto& ks = model->ks;
    const auto& p = partition->p;
    const Verdict v = mode == KSRED_MODE_KME ? is_kme(ks, p) : is_wkme(ks, p);
    ksred_check_result r{};
    r.accepted = v.accepted() ? 1 : 0;
    if (v.witness) {
      const Witness& w = *v.witness;
      r.kind = to_c(w.kind);
      r.block_c = dup(format_block(p.block(w.block_c), ks));
      if (w.block_d) r.block_d = dup(format_block(p.block(*w.block_d), ks));
      r.pred_a = dup(ks.name(w.pred_a));
      r.pred_b = dup(ks.name(w.pred_b));
      r.value_a = w.value_a;
      r.value_b = w.value_b;
      r.description = dup(describe(w, p, ks));
    }
    *out = r;
  });
}

ksred_status ksred_quotient(const ksred_model* model, const ksred_partition* partition, ksred_mode mode,
                            ksred_model** out) {
  return guarded([&] {
    require(model, partition, out);
    check_sizes(model, partition);
    auto q = mode == KSRED_MODE_KME ? kme_quotient(model->ks, partition->p) : wkme_quotient(model->ks, partition->p);
    *out = new ksred_model{std::move(q)};
  });
}

ksred_status ksred_minimize(const ksred_model* model, ksred_method method, ksred_strategy strategy,
                            ksred_partition** out) {
  return guarded([&] {
    require(model, out);
    ReduceOptions opts;
    opts.strategy = strategy == KSRED_STRATEGY_EXHAUSTIVE ? Strategy::exhaustive : Strategy::greedy;
    switch (method) {
      case KSRED_METHOD_BISIM: *out = new ksred_partition{strong_bisim_partition(model->ks)}; return;
      case KSRED_METHOD_STUTTER_BISIM: *out = new ksred_partition{div_stutter_bisim_partition(model->ks)}; return;
      case KSRED_METHOD_KME: *out = new ksred_partition{kme_reduce(model->ks, opts)}; return;
      case KSRED_METHOD_WKME: *out = new ksred_partition{wkme_reduce(model->ks, opts)}; return;
    }
    throw InvalidArgument("unknown method");
  });
}

ksred_status ksred_quotient_related(const ksred_model* model, const ksred_partition* partition, ksred_mode mode,
                                    int* out) {
  return guarded([&] {
    require(model, partition, out);
    check_sizes(model, partition);
    const bool ok = mode == KSRED_MODE_KME ? star_equivalent(model->ks, partition->p)
                                           : odot_equivalent(model->ks, partition->p);
    *out = ok ? 1 : 0;
  });
}

// Oracles ---------------------------------------------------------------------

void ksred_equiv_result_clear(ksred_equiv_result* result) {
  if (!result) return;
  for (std::size_t i = 0; i < result->length; ++i) std::free(result->letters[i]);
  std::free(result->letters);
  *result = ksred_equiv_result{};
}

ksred_status ksred_equiv(const ksred_model* a, const ksred_model* b, ksred_semantics semantics,
                         ksred_equiv_result* out) {
  return guarded([&] {
    require(a, b, out);
    const auto r = semantics == KSRED_SEMANTICS_TRACE ? trace_equivalent(a->ks, b->ks)
                                                      : stutter_trace_equivalent(a->ks, b->ks);
    ksred_equiv_result res{};
    res.equivalent = r.equivalent ? 1 : 0;
    if (r.witness) {
      res.divergence = r.witness->tag == TraceWitness::Tag::divergence ? 1 : 0;
      res.in_first = r.witness->in_first ? 1 : 0;
      const auto& word = r.witness->word;
      res.letters = static_cast<char**>(std::calloc(word.size() ? word.size() : 1, sizeof(char*)));
      if (!res.letters) throw std::bad_alloc();
      try {
        for (; res.length < word.size(); ++res.length) res.letters[res.length] = dup(format_label(word[res.length]));
      } catch (...) {
        ksred_equiv_result_clear(&res);
        throw;
      }
    }
    *out = res;
  });
}

void ksred_ltl_result_clear(ksred_ltl_result* result) {
  if (!result) return;
  release(result->formula);
  release(result->counterexample);
  release(result->counterexample_word);
  *result = ksred_ltl_result{};
}

ksred_status ksred_ltl_check(const ksred_model* model, const char* formula, size_t stem_bound, size_t loop_bound,
                             ksred_ltl_result* out) {
  return guarded([&] {
    require(model, formula, out);
    const auto f = LtlFormula::parse(formula);
    const auto v = ltl_bounded_verdict(model->ks, f, stem_bound, loop_bound);
    ksred_ltl_result r{};
    r.holds = v.holds ? 1 : 0;
    r.uses_next = f.uses_next() ? 1 : 0;
    r.lassos_checked = v.lassos_checked;
    r.formula = dup(f.to_string());
    if (v.counterexample) {
      r.counterexample = dup(format_lasso(*v.counterexample, model->ks));
      r.counterexample_word = dup(format_word(trace_of(model->ks, *v.counterexample)));
    }
    *out = r;
  });
}

// Composition -----------------------------------------------------------------

ksred_status ksred_compose(const ksred_model* a, const ksred_model* b, int reachable_only, ksred_model** out) {
  return guarded([&] {
    require(a, b, out);
    ComposeOptions opts;
    opts.reachable_only = reachable_only != 0;
    *out = new ksred_model{sync_compose(a->ks, b->ks, opts)};
  });
}

ksred_status ksred_compositionality(const ksred_model* model, const ksred_partition* partition,
                                    const ksred_model* other, ksred_compositionality_result* out) {
  return guarded([&] {
    require(model, partition, other, out);
    check_sizes(model, partition);
    const auto r = compositionality_check(model->ks, partition->p, other->ks);
    *out = {r.left_states, r.right_states, r.trace.equivalent ? 1 : 0, r.strict ? 1 : 0};
  });
}

// Self-test -------------------------------------------------------------------

void ksred_selftest_defaults(ksred_selftest_options* options) {
  if (!options) return;
  const SelftestOptions d;
  *options = {d.cases, d.pair_cases, d.seed, d.threads};
}

void ksred_selftest_report_clear(ksred_selftest_report* report) {
  if (!report) return;
  for (std::size_t i = 0; i < report->num_properties; ++i) {
    auto& p = report->properties[i];
    release(p.suite);
    release(p.name);
    release(p.first_failure);
  }
  std::free(report->properties);
  *report = ksred_selftest_report{};
}

ksred_status ksred_selftest(const ksred_selftest_options* options, ksred_selftest_report* out) {
  return guarded([&] {
    require(out);
    SelftestOptions opts;
    if (options) {
      opts.cases = options->cases;
      opts.pair_cases = options->pair_cases;
      opts.seed = options->seed;
      opts.threads = options->threads;
    }
    const auto report = run_selftest(opts);
    ksred_selftest_report r{};
    r.passed = report.passed() ? 1 : 0;
    r.literal_wkme_checked = report.literal_wkme_checked;
    r.literal_wkme_findings = report.literal_wkme_findings;
    r.elapsed_ms = report.elapsed_ms;
    const std::size_t total = report.reduction.size() + report.oracle.size();
    r.properties = static_cast<ksred_property*>(std::calloc(total ? total : 1, sizeof(ksred_property)));
    if (!r.properties) throw std::bad_alloc();
    try {
      for (const auto* suite : {&report.reduction, &report.oracle}) {
        for (const auto& p : *suite) {
          auto& c = r.properties[r.num_properties++];
          c.suite = dup(suite == &report.reduction ? "reduction" : "oracle");
          c.name = dup(p.name);
          c.checked = p.checked;
          c.violations = p.violations;
          if (!p.first_failure.empty()) c.first_failure = dup(p.first_failure);
        }
      }
    } catch (...) {
      ksred_selftest_report_clear(&r);
      throw;
    }
    *out = r;
  });
}

}  // extern "C"

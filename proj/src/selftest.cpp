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

#include "ksred/selftest.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "ksred/compose.hpp"
#include "ksred/error.hpp"
#include "ksred/generate.hpp"
#include "ksred/kme.hpp"
#include "ksred/oracles.hpp"
#include "ksred/trace.hpp"
#include "ksred/wkme.hpp"

namespace ksred {

namespace {

// Reference oracles --------------------------------------------------------
//
// Written against the definitions with bitmask state sets; they share
// nothing with the automata in oracles.cpp beyond the data model.

using Mask = std::uint64_t;

struct RefView {
  std::size_t n = 0;
  std::vector<Mask> succ;
  std::vector<Label> label;
  StateId init = 0;
};

RefView ref_view(const KripkeStructure& ks) {
  RefView v;
  v.n = ks.num_states();
  v.init = ks.initial();
  v.succ.assign(v.n, 0);
  for (auto [s, t] : ks.transitions()) v.succ[s] |= Mask{1} << t;
  for (StateId s = 0; s < v.n; ++s) v.label.push_back(project_label(ks.label(s)));
  return v;
}

Mask image(const RefView& v, Mask set, const Label& letter) {
  Mask out = 0;
  for (StateId s = 0; s < v.n; ++s) {
    if (!(set >> s & 1)) continue;
    for (StateId t = 0; t < v.n; ++t) {
      if ((v.succ[s] >> t & 1) && v.label[t] == letter) out |= Mask{1} << t;
    }
  }
  return out;
}

// Length of the shortest finite trace of exactly one side; 0 when the
// finite trace sets agree. Works level by level: each level is the set of
// subset pairs reached by words of that length and determines the next, so
// a repeated level means no difference can appear later. Throws past
// \`max_levels\` rather than guess.
std::size_t ref_first_prefix_difference(const RefView& a, const RefView& b, std::size_t max_levels) {
  if (a.label[a.init] != b.label[b.init]) return 1;
  using Level = std::set<std::pair<Mask, Mask>>;
  Level level{{Mask{1} << a.init, Mask{1} << b.init}};
  std::set<Level> seen{level};
  for (std::size_t len = 1; len < max_levels; ++len) {
    Level next;
    for (auto [x, y] : level) {
      std::set<Label> letters;
      for (const RefView* v : {&a, &b}) {
        const Mask set = v == &a ? x : y;
        for (StateId s = 0; s < v->n; ++s) {
          if (!(set >> s & 1)) continue;
          for (StateId t = 0; t < v->n; ++t) {
            if (v->succ[s] >> t & 1) letters.insert(v->label[t]);
          }
        }
      }
      for (const auto& l : letters) {
        const Mask x2 = image(a, x, l), y2 = image(b, y, l);
        if (!x2 || !y2) return len + 1;
        next.insert({x2, y2});
      }
    }
    if (!seen.insert(next).second) return 0;
    level = std::move(next);
  }
  throw InternalError("reference prefix comparison inconclusive after " + std::to_string(max_levels) + " levels");
}

bool ref_has_trace(const RefView& v, const std::vector<Label>& word) {
  if (word.empty()) return true;
  if (v.label[v.init] != word[0]) return false;
  Mask cur = Mask{1} << v.init;
  for (std::size_t i = 1; i < word.size() && cur; ++i) cur = image(v, cur, word[i]);
  return cur != 0;
}

// Some infinite path has a trace stutter equivalent to `w`. Product of
// states and word positions: a real step either stays at the position or
// advances; equal neighbouring letters may also be skipped without a step.
// Accept iff a reachable cycle advances and takes a real step.
bool ref_stutter_member(const RefView& v, const TraceWord& w) {
  const std::size_t positions = w.size();
  const std::size_t nodes = v.n * positions;
  struct Edge {
    std::size_t to;
    bool real, advance;
  };
  std::vector<std::vector<Edge>> out(nodes);
  auto node = [positions](StateId s, std::size_t i) { return s * positions + i; };
  for (StateId s = 0; s < v.n; ++s) {
    for (std::size_t i = 0; i < positions; ++i) {
      if (v.label[s] != w.at(i)) continue;
      const std::size_t j = w.next(i);
      for (StateId t = 0; t < v.n; ++t) {
        if (!(v.succ[s] >> t & 1)) continue;
        if (v.label[t] == w.at(i)) out[node(s, i)].push_back({node(t, i), true, j == i});
        if (j != i && v.label[t] == w.at(j)) out[node(s, i)].push_back({node(t, j), true, true});
      }
      if (j != i && w.at(j) == w.at(i)) out[node(s, i)].push_back({node(s, j), false, true});
    }
  }
  if (v.label[v.init] != w.at(0)) return false;
  auto reach_from = [&](std::size_t start) {
    std::vector<bool> seen(nodes, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const auto& e : out[u]) {
        if (!seen[e.to]) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  };
  const auto reachable = reach_from(node(v.init, 0));
  std::vector<std::vector<bool>> reach(nodes);
  for (std::size_t u = 0; u < nodes; ++u) {
    if (reachable[u]) reach[u] = reach_from(u);
  }
  // Cycle edges grouped by strongly connected component (smallest member).
  std::map<std::size_t, std::pair<bool, bool>> scc_kinds;
  for (std::size_t u = 0; u < nodes; ++u) {
    if (!reachable[u]) continue;
    for (const auto& e : out[u]) {
      if (!reach[e.to][u]) continue;
      std::size_t root = u;
      for (std::size_t x = 0; x < nodes; ++x) {
        if (reachable[x] && reach[u][x] && reach[x][u]) {
          root = x;
          break;
        }
      }
      auto& kinds = scc_kinds[root];
      kinds.first = kinds.first || e.real;
      kinds.second = kinds.second || e.advance;
    }
  }
  return std::any_of(scc_kinds.begin(), scc_kinds.end(),
                     [](const auto& kv) { return kv.second.first && kv.second.second; });
}

// Some finite path from the initial state has block word `u`.
bool ref_block_prefix(const RefView& v, const std::vector<Label>& u) {
  if (u.empty()) return true;
  if (v.label[v.init] != u[0]) return false;
  std::set<std::pair<StateId, std::size_t>> seen{{v.init, 0}};
  std::vector<std::pair<StateId, std::size_t>> stack{{v.init, 0}};
  while (!stack.empty()) {
    const auto [s, i] = stack.back();
    stack.pop_back();
    if (i + 1 == u.size()) return true;
    for (StateId t = 0; t < v.n; ++t) {
      if (!(v.succ[s] >> t & 1)) continue;
      for (std::size_t j : {i, i + 1}) {
        if (v.label[t] == u[j] && seen.insert({t, j}).second) stack.push_back({t, j});
      }
    }
  }
  return false;
}

// Harness -------------------------------------------------------------------

struct Observation {
  std::size_t property;
  bool ok;
  std::string detail;
};

struct CaseOutcome {
  std::vector<Observation> observations;
  std::size_t literal_checked = 0;
  std::size_t literal_findings = 0;
};

enum ReductionProperty : std::size_t {
  kIdentityKme,
  kIdentityWkme,
  kBisimIsKme,
  kDsbIsWkme,
  kKmeQuotientTraces,
  kWkmeQuotientStutter,
  kGreedyKmeBelowBisim,
  kGreedyWkmeBelowDsb,
  kExhaustiveKmeBelowGreedy,
  kExhaustiveWkmeBelowGreedy,
  kKmeImpliesWkme,
  kCompositionality,
  kReductionCount
};

const char* const kReductionNames[] = {
    "identity accepted by is_kme",
    "identity accepted by is_wkme",
    "coarsest strong bisimulation passes is_kme",
    "coarsest div-stutter bisimulation passes is_wkme",
    "KME quotients are trace equivalent",
    "WKME quotients are stutter-trace equivalent",
    "greedy KME blocks <= strong bisimulation blocks",
    "greedy WKME blocks <= div-stutter bisimulation blocks",
    "exhaustive KME blocks <= greedy KME blocks",
    "exhaustive WKME blocks <= greedy WKME blocks",
    "accepted KMEs pass is_wkme",
    "composition with a KME quotient keeps traces and pairing",
};

enum OracleProperty : std::size_t { kTraceVsPrefix, kStutterVsLassos, kOracleCount };

const char* const kOracleNames[] = {
    "trace_equivalent agrees with brute-force prefix-set equality",
    "stutter_trace_equivalent agrees with bounded lasso membership",
};

std::string case_tag(const char* kind, std::size_t i, const KripkeStructure& ks) {
  return std::string(kind) + " #" + std::to_string(i) + " (" + std::to_string(ks.num_states()) + " states)";
}

// Random coarsening of `base`: merges equally labelled blocks at random.
Partition random_coarsening(const KripkeStructure& ks, const Partition& base, std::mt19937_64& rng) {
  std::map<Label, std::vector<BlockId>> by_label;
  for (BlockId b = 0; b < base.size(); ++b) by_label[ks.label(base.block(b).front())].push_back(b);
  std::vector<BlockId> target(base.size());
  for (const auto& [_, blocks] : by_label) {
    for (BlockId b : blocks) target[b] = blocks[rng() % blocks.size()];
  }
  std::vector<BlockId> ids(ks.num_states());
  for (StateId s = 0; s < ks.num_states(); ++s) ids[s] = target[base.block_of(s)];
  return Partition::from_block_ids(ids);
}

CaseOutcome reduction_case(std::size_t i, const SelftestOptions& opts) {
  CaseOutcome out;
  auto note = [&](std::size_t prop, bool ok, const std::string& detail) {
    out.observations.push_back({prop, ok, ok ? std::string() : detail});
  };
  std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + i);
  GenOptions g;
  g.states = 1 + i % 8;
  g.aps = i % 3;
  g.density = std::array<double, 4>{0.1, 0.2, 0.3, 0.5}[(i / 8) % 4];
  g.seed = opts.seed * 1000003 + i;
  const KripkeStructure ks = normalize(generate_random(g));
  const std::string tag = case_tag("structure", i, ks) + " seed " + std::to_string(g.seed);
  const std::size_t n = ks.num_states();

  note(kIdentityKme, is_kme(ks, Partition::identity(n)).accepted(), tag);
  note(kIdentityWkme, is_wkme(ks, Partition::identity(n)).accepted(), tag);

  std::vector<Partition> kmes, wkmes;
  const Partition bisim = strong_bisim_partition(ks);
  const bool bisim_ok = is_kme(ks, bisim).accepted();
  note(kBisimIsKme, bisim_ok, tag);
  if (bisim_ok) kmes.push_back(bisim);
  const Partition dsb = div_stutter_bisim_partition(ks);
  const bool dsb_ok = is_wkme(ks, dsb).accepted();
  note(kDsbIsWkme, dsb_ok, tag);
  if (dsb_ok) wkmes.push_back(dsb);

  const Partition greedy_kme = kme_reduce(ks);
  const Partition greedy_wkme = wkme_reduce(ks);
  kmes.push_back(greedy_kme);
  wkmes.push_back(greedy_wkme);
  note(kGreedyKmeBelowBisim, greedy_kme.size() <= bisim.size(), tag);
  note(kGreedyWkmeBelowDsb, greedy_wkme.size() <= dsb.size(), tag);

  if (count_label_respecting(ks) <= opts.exhaustive_limit) {
    ReduceOptions ex;
    ex.strategy = Strategy::exhaustive;
    const Partition best_kme = kme_reduce(ks, ex);
    const Partition best_wkme = wkme_reduce(ks, ex);
    kmes.push_back(best_kme);
    wkmes.push_back(best_wkme);
    note(kExhaustiveKmeBelowGreedy, best_kme.size() <= greedy_kme.size(), tag);
    note(kExhaustiveWkmeBelowGreedy, best_wkme.size() <= greedy_wkme.size(), tag);
  }

  // Random candidates exercise partitions the strategies would not pick.
  WkmeOptions literal;
  literal.divergence_check = false;
  for (int k = 0; k < 12; ++k) {
    const Partition& base = k % 2 ? bisim : Partition::identity(n);
    const Partition cand = random_coarsening(ks, k < 6 ? base : label_partition(ks), rng);
    if (is_kme(ks, cand).accepted()) kmes.push_back(cand);
    if (is_wkme(ks, cand).accepted()) {
      wkmes.push_back(cand);
    } else if (is_wkme(ks, cand, literal).accepted()) {
      ++out.literal_checked;
      if (!stutter_trace_equivalent(ks, wkme_quotient(ks, cand, literal)).equivalent) ++out.literal_findings;
    }
  }

  for (const auto& p : kmes) {
    const auto r = trace_equivalent(ks, kme_quotient(ks, p));
    note(kKmeQuotientTraces, r.equivalent, tag + " partition " + format_partition(p, ks));
    note(kKmeImpliesWkme, is_wkme(ks, p).accepted(), tag + " partition " + format_partition(p, ks));
  }
  for (const auto& p : wkmes) {
    const auto r = stutter_trace_equivalent(ks, wkme_quotient(ks, p));
    note(kWkmeQuotientStutter, r.equivalent, tag + " partition " + format_partition(p, ks));
  }

  if (ks.num_states() <= 6) {
    GenOptions g1;
    g1.states = 1 + i % 3;
    g1.aps = 1;
    g1.density = 0.4;
    g1.seed = g.seed + 77;
    const auto k1 = generate_random(g1);
    const auto r = compositionality_check(ks, greedy_kme, k1);
    note(kCompositionality, r.trace.equivalent && r.strict, tag);
  }
  return out;
}

// Checks the oracles on one pair against the references.
void cross_validate(const KripkeStructure& k1, const KripkeStructure& k2, const std::string& tag, CaseOutcome& out) {
  const RefView a = ref_view(k1), b = ref_view(k2);

  {
    const auto r = trace_equivalent(k1, k2);
    const std::size_t diff = ref_first_prefix_difference(a, b, 100000);
    bool ok = r.equivalent == (diff == 0);
    std::string detail = tag + ": oracle says " + (r.equivalent ? "equivalent" : "different") +
                         ", reference first difference at length " + std::to_string(diff);
    if (ok && !r.equivalent) {
      const auto& w = r.witness->word;
      ok = w.size() == diff && ref_has_trace(a, w) == r.witness->in_first && ref_has_trace(b, w) != r.witness->in_first;
      if (!ok) detail = tag + ": witness " + format_word(w) + " not confirmed";
    }
    out.observations.push_back({kTraceVsPrefix, ok, ok ? std::string() : detail});
  }

  {
    const auto r = stutter_trace_equivalent(k1, k2);
    bool ok = true;
    std::string detail;
    if (r.equivalent) {
      for (const auto* pair : {&k1, &k2}) {
        const RefView& other = pair == &k1 ? b : a;
        std::set<TraceWord> words;
        for (const auto& l : enumerate_lassos(*pair, 4, 3)) words.insert(trace_of(*pair, l));
        for (const auto& w : words) {
          if (!ref_stutter_member(other, w)) {
            ok = false;
            detail = tag + ": lasso word " + format_word(w) + " has no stutter match on the other side";
            break;
          }
        }
        if (!ok) break;
      }
    } else {
      const auto& wit = *r.witness;
      if (wit.tag == TraceWitness::Tag::prefix) {
        ok = ref_block_prefix(a, wit.word) == wit.in_first && ref_block_prefix(b, wit.word) != wit.in_first;
      } else {
        // Block word, then the last letter forever.
        TraceWord lasso{wit.word, {wit.word.back()}};
        lasso.stem.pop_back();
        ok = ref_block_prefix(a, wit.word) && ref_block_prefix(b, wit.word) &&
             ref_stutter_member(a, lasso) == wit.in_first && ref_stutter_member(b, lasso) != wit.in_first;
      }
      if (!ok) detail = tag + ": witness " + format_word(wit.word) + " not confirmed";
    }
    out.observations.push_back({kStutterVsLassos, ok, detail});
  }
}

CaseOutcome oracle_case(std::size_t i, const SelftestOptions& opts) {
  CaseOutcome out;
  std::mt19937_64 rng(opts.seed * 0xD1B54A32D192ED03ULL + i);
  GenOptions g;
  g.states = 1 + rng() % 6;
  g.aps = 1 + (i / 4) % 2;
  g.density = std::array<double, 3>{0.15, 0.3, 0.5}[(i / 8) % 3];
  g.seed = opts.seed * 2000003 + i;
  const KripkeStructure k1 = generate_random(g);
  KripkeStructure k2 = k1;
  const char* kind = "";
  switch (i % 4) {
    case 0: {
      kind = "independent pair";
      GenOptions g2 = g;
      g2.states = 1 + rng() % 6;
      g2.seed = g.seed + 500009;
      k2 = generate_random(g2);
      break;
    }
    case 1: {
      kind = "KME quotient pair";
      const auto n = normalize(k1);
      k2 = strip_reserved(kme_quotient(n, kme_reduce(n)));
      break;
    }
    case 2: {
      kind = "WKME quotient pair";
      const auto n = normalize(k1);
      k2 = strip_reserved(wkme_quotient(n, wkme_reduce(n)));
      break;
    }
    default: {
      kind = "perturbed pair";
      auto edges = k1.transitions();
      auto labels = k1.labels();
      const auto s = static_cast<StateId>(rng() % k1.num_states());
      const auto t = static_cast<StateId>(rng() % k1.num_states());
      if (rng() % 2 && !k1.aps().empty()) {
        const auto& atom = k1.aps()[rng() % k1.aps().size()];
        auto& l = labels[s];
        auto it = std::find(l.begin(), l.end(), atom);
        if (it == l.end()) {
          l.push_back(atom);
          l = make_label(l);
        } else {
          l.erase(it);
        }
      } else if (!k1.has_transition(s, t)) {
        edges.emplace_back(s, t);
      } else if (k1.successors(s).size() > 1) {
        edges.erase(std::find(edges.begin(), edges.end(), std::make_pair(s, t)));
      }
      k2 = KripkeStructure(k1.names(), k1.aps(), labels, edges, k1.initial());
      break;
    }
  }
  cross_validate(k1, k2, case_tag(kind, i, k1) + " seed " + std::to_string(g.seed), out);
  return out;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("KSRED_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

// Runs `fn(i)` for every case, in parallel, and returns outcomes in order.
std::vector<CaseOutcome> run_cases(std::size_t count, std::size_t threads,
                                   const std::function<CaseOutcome(std::size_t)>& fn) {
  std::vector<CaseOutcome> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        results[i] = fn(i);
      } catch (const std::exception& e) {
        results[i].observations.push_back({static_cast<std::size_t>(-1), false, "case " + std::to_string(i) + ": " + e.what()});
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

std::vector<PropertyResult> tally(const std::vector<CaseOutcome>& outcomes, const char* const* names,
                                  std::size_t count) {
  std::vector<PropertyResult> props(count + 1);
  for (std::size_t k = 0; k < count; ++k) props[k].name = names[k];
  props[count].name = "cases finished without an exception";
  for (const auto& o : outcomes) {
    bool crashed = false;
    for (const auto& obs : o.observations) {
      auto& p = obs.property < count ? props[obs.property] : props[count];
      crashed = crashed || obs.property >= count;
      ++p.checked;
      if (!obs.ok && p.violations++ == 0) p.first_failure = obs.detail;
    }
    if (!crashed) ++props[count].checked;
  }
  return props;
}

}  // namespace

bool SelftestReport::passed() const {
  auto clean = [](const std::vector<PropertyResult>& ps) {
    return std::all_of(ps.begin(), ps.end(), [](const PropertyResult& p) { return p.violations == 0; });
  };
  return clean(reduction) && clean(oracle);
}

SelftestReport run_selftest(const SelftestOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t threads = resolve_threads(opts.threads);
  SelftestReport report;
  const auto reductions =
      run_cases(opts.cases, threads, [&](std::size_t i) { return reduction_case(i, opts); });
  report.reduction = tally(reductions, kReductionNames, kReductionCount);
  for (const auto& o : reductions) {
    report.literal_wkme_checked += o.literal_checked;
    report.literal_wkme_findings += o.literal_findings;
  }
  const auto pairs = run_cases(opts.pair_cases, threads, [&](std::size_t i) { return oracle_case(i, opts); });
  report.oracle = tally(pairs, kOracleNames, kOracleCount);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace ksred

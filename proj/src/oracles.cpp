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

#include "ksred/oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ksred/error.hpp"

namespace ksred {

namespace {

std::vector<Label> projected_labels(const KripkeStructure& ks, const OracleOptions& opts) {
  std::vector<Label> out;
  out.reserve(ks.num_states());
  for (StateId s = 0; s < ks.num_states(); ++s) out.push_back(project_label(ks.label(s), opts.keep_initial_marker));
  return out;
}

// Subset construction from the empty start set, whose only move is to the
// initial state. `moves(s)` lists the states a letter can lead to from s.
template <typename Moves>
PrefixAutomaton determinize(const KripkeStructure& ks, const std::vector<Label>& labels, Moves&& moves) {
  PrefixAutomaton a;
  std::map<StateSet, std::uint32_t> index;
  auto intern = [&](StateSet set) {
    auto [it, fresh] = index.emplace(set, static_cast<std::uint32_t>(a.subsets.size()));
    if (fresh) {
      a.subsets.push_back(std::move(set));
      a.delta.emplace_back();
    }
    return it->second;
  };
  intern({});
  for (std::uint32_t q = 0; q < a.subsets.size(); ++q) {
    std::map<Label, StateSet> by_letter;
    if (q == 0) {
      by_letter[labels[ks.initial()]].push_back(ks.initial());
    } else {
      for (StateId s : a.subsets[q]) {
        for (StateId t : moves(s)) by_letter[labels[t]].push_back(t);
      }
    }
    std::vector<PrefixAutomaton::Edge> edges;
    for (auto& [letter, targets] : by_letter) {
      const std::uint32_t target = intern(make_state_set(std::move(targets)));
      edges.push_back({letter, target});
    }
    a.delta[q] = std::move(edges);
  }
  return a;
}

// Shortest word on which the two automata disagree, breadth first with
// letters in increasing order.
EquivalenceResult compare(const PrefixAutomaton& a, const PrefixAutomaton& b, bool check_divergence) {
  struct Node {
    std::uint32_t qa, qb;
    std::size_t parent;
    Label letter;
  };
  std::vector<Node> nodes{{a.initial, b.initial, 0, {}}};
  std::map<std::pair<std::uint32_t, std::uint32_t>, bool> seen{{{a.initial, b.initial}, true}};
  auto word_to = [&](std::size_t i) {
    std::vector<Label> w;
    for (; i != 0; i = nodes[i].parent) w.push_back(nodes[i].letter);
    std::reverse(w.begin(), w.end());
    return w;
  };
  EquivalenceResult result;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [qa, qb, parent, letter] = nodes[i];
    if (check_divergence && a.divergent[qa] != b.divergent[qb]) {
      result.equivalent = false;
      result.witness = TraceWitness{word_to(i), TraceWitness::Tag::divergence, bool(a.divergent[qa])};
      return result;
    }
    std::vector<Label> letters;
    for (const auto& e : a.delta[qa]) letters.push_back(e.letter);
    for (const auto& e : b.delta[qb]) letters.push_back(e.letter);
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    for (const auto& x : letters) {
      const auto ta = a.step(qa, x);
      const auto tb = b.step(qb, x);
      if (!ta || !tb) {
        auto w = word_to(i);
        w.push_back(x);
        result.equivalent = false;
        result.witness = TraceWitness{std::move(w), TraceWitness::Tag::prefix, ta.has_value()};
        return result;
      }
      if (seen.emplace(std::make_pair(*ta, *tb), true).second) nodes.push_back({*ta, *tb, i, x});
    }
  }
  return result;
}

}  // namespace

std::optional<std::uint32_t> PrefixAutomaton::step(std::uint32_t q, const Label& letter) const {
  const auto& edges = delta.at(q);
  auto it = std::lower_bound(edges.begin(), edges.end(), letter,
                             [](const Edge& e, const Label& l) { return e.letter < l; });
  if (it == edges.end() || it->letter != letter) return std::nullopt;
  return it->target;
}

PrefixAutomaton build_prefix_automaton(const KripkeStructure& ks, const OracleOptions& opts) {
  const auto labels = projected_labels(ks, opts);
  PrefixAutomaton a = determinize(ks, labels, [&](StateId s) -> const StateSet& { return ks.successors(s); });
  a.divergent.assign(a.size(), false);
  return a;
}

PrefixAutomaton build_stutter_automaton(const KripkeStructure& ks, const OracleOptions& opts) {
  const auto labels = projected_labels(ks, opts);
  const std::size_t n = ks.num_states();
  // For every state: the label-changing successors reachable after a run of
  // equally labelled states, and whether the run can go on forever.
  std::vector<StateSet> exits(n);
  std::vector<bool> can_diverge(n, false);
  // A state is on a same-label cycle iff it can reach itself through
  // same-label states; compute per state with a BFS (structures are small).
  std::vector<bool> on_cycle(n, false);
  for (StateId s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<StateId> stack;
    for (StateId t : ks.successors(s)) {
      if (labels[t] == labels[s] && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
    while (!stack.empty() && !seen[s]) {
      const StateId u = stack.back();
      stack.pop_back();
      for (StateId t : ks.successors(u)) {
        if (labels[t] == labels[s] && !seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    on_cycle[s] = seen[s];
  }
  for (StateId s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<StateId> stack{s};
    seen[s] = true;
    StateSet out;
    while (!stack.empty()) {
      const StateId u = stack.back();
      stack.pop_back();
      if (on_cycle[u]) can_diverge[s] = true;
      for (StateId t : ks.successors(u)) {
        if (labels[t] != labels[s]) {
          out.push_back(t);
        } else if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    exits[s] = make_state_set(std::move(out));
  }
  PrefixAutomaton a = determinize(ks, labels, [&](StateId s) -> const StateSet& { return exits[s]; });
  a.divergent.assign(a.size(), false);
  for (std::uint32_t q = 0; q < a.size(); ++q) {
    for (StateId s : a.subsets[q]) {
      if (can_diverge[s]) a.divergent[q] = true;
    }
  }
  return a;
}

EquivalenceResult trace_equivalent(const KripkeStructure& k1, const KripkeStructure& k2, const OracleOptions& opts) {
  return compare(build_prefix_automaton(k1, opts), build_prefix_automaton(k2, opts), false);
}

EquivalenceResult stutter_trace_equivalent(const KripkeStructure& k1, const KripkeStructure& k2,
                                           const OracleOptions& opts) {
  return compare(build_stutter_automaton(k1, opts), build_stutter_automaton(k2, opts), true);
}

std::vector<Lasso> enumerate_lassos(const KripkeStructure& ks, std::size_t stem_bound, std::size_t loop_bound) {
  if (stem_bound < 1 || loop_bound < 1) throw InvalidArgument("lasso bounds must be at least 1");
  // All paths of each length from a start set, in lexicographic order.
  auto paths_from = [&](const std::vector<StateId>& starts, std::size_t max_len) {
    std::vector<std::vector<std::vector<StateId>>> by_len(max_len + 1);
    for (StateId s : starts) by_len[1].push_back({s});
    for (std::size_t len = 2; len <= max_len; ++len) {
      for (const auto& p : by_len[len - 1]) {
        for (StateId t : ks.successors(p.back())) {
          auto q = p;
          q.push_back(t);
          by_len[len].push_back(std::move(q));
        }
      }
    }
    return by_len;
  };
  std::vector<Lasso> out;
  const auto stems = paths_from({ks.initial()}, stem_bound);
  for (std::size_t sl = 1; sl <= stem_bound; ++sl) {
    for (const auto& stem : stems[sl]) {
      const auto loops = paths_from(ks.successors(stem.back()), loop_bound);
      for (std::size_t ll = 1; ll <= loop_bound; ++ll) {
        for (const auto& loop : loops[ll]) {
          if (ks.has_transition(loop.back(), loop.front())) out.push_back({stem, loop});
        }
      }
    }
  }
  return out;
}

LtlVerdict ltl_bounded_verdict(const KripkeStructure& ks, const LtlFormula& f, std::size_t stem_bound,
                               std::size_t loop_bound, const OracleOptions& opts) {
  LtlVerdict v;
  for (auto& lasso : enumerate_lassos(ks, stem_bound, loop_bound)) {
    ++v.lassos_checked;
    if (!ltl_eval_lasso(f, trace_of(ks, lasso, opts.keep_initial_marker))) {
      v.holds = false;
      v.counterexample = std::move(lasso);
      return v;
    }
  }
  return v;
}

}  // namespace ksred

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

#include "ksred/wkme.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ksred/error.hpp"
#include "ksred/kme.hpp"
#include "quotient_util.hpp"

namespace ksred {

namespace {

// States of block `b` reachable from `start` without leaving the block.
std::vector<StateId> in_block_closure(const KripkeStructure& ks, const std::vector<BlockId>& block_of,
                                      BlockId b, std::vector<StateId> start) {
  std::vector<bool> seen(ks.num_states(), false);
  std::vector<StateId> order;
  for (StateId s : start) {
    if (!seen[s]) {
      seen[s] = true;
      order.push_back(s);
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (StateId t : ks.successors(order[i])) {
      if (block_of[t] == b && !seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

// For every state, whether it lies on a cycle inside its own block.
std::vector<bool> on_block_cycle(const KripkeStructure& ks, const std::vector<BlockId>& block_of) {
  // Tarjan on the subgraph of intra-block edges.
  const auto n = static_cast<StateId>(ks.num_states());
  constexpr auto kUnvisited = static_cast<StateId>(-1);
  std::vector<StateId> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false), result(n, false);
  std::vector<StateId> stack;
  StateId counter = 0;
  struct Frame {
    StateId s;
    std::size_t next;
  };
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& f = frames.back();
      const auto& succ = ks.successors(f.s);
      if (f.next < succ.size()) {
        const StateId t = succ[f.next++];
        if (block_of[t] != block_of[f.s]) continue;
        if (t == f.s) result[t] = true;
        if (index[t] == kUnvisited) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.s] = std::min(low[f.s], index[t]);
        }
        continue;
      }
      const StateId s = f.s;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().s] = std::min(low[frames.back().s], low[s]);
      if (low[s] == index[s]) {
        std::vector<StateId> scc;
        StateId t;
        do {
          t = stack.back();
          stack.pop_back();
          on_stack[t] = false;
          scc.push_back(t);
        } while (t != s);
        if (scc.size() > 1) {
          for (StateId u : scc) result[u] = true;
        }
      }
    }
  }
  return result;
}

// Per-block view used by the checks: for an entry point `pred`, the
// blocks reachable by WPbr and whether an in-block cycle is reachable.
struct Entry {
  std::vector<BlockId> targets;
  bool divergent = false;
};

Entry entry_from(const KripkeStructure& ks, const Partition& p, const std::vector<bool>& cyclic,
                 StateId pred, BlockId c) {
  std::vector<StateId> start;
  for (StateId t : ks.successors(pred)) {
    if (p.block_of(t) == c) start.push_back(t);
  }
  Entry e;
  for (StateId u : in_block_closure(ks, p.block_ids(), c, std::move(start))) {
    if (cyclic[u]) e.divergent = true;
    for (StateId t : ks.successors(u)) {
      if (p.block_of(t) != c) e.targets.push_back(p.block_of(t));
    }
  }
  std::sort(e.targets.begin(), e.targets.end());
  e.targets.erase(std::unique(e.targets.begin(), e.targets.end()), e.targets.end());
  return e;
}

}  // namespace

bool wpbr(const KripkeStructure& ks, StateId s, const StateSet& c, const StateSet& d) {
  std::vector<bool> in_c(ks.num_states(), false), in_d(ks.num_states(), false), seen(ks.num_states(), false);
  for (StateId x : c) in_c.at(x) = true;
  for (StateId x : d) in_d.at(x) = true;
  std::vector<StateId> frontier = post_in(ks, s, c);
  for (StateId x : frontier) seen[x] = true;
  while (!frontier.empty()) {
    const StateId u = frontier.back();
    frontier.pop_back();
    for (StateId t : ks.successors(u)) {
      if (in_d[t]) return true;
      if (in_c[t] && !seen[t]) {
        seen[t] = true;
        frontier.push_back(t);
      }
    }
  }
  return false;
}

StateSet block_divergent(const KripkeStructure& ks, const StateSet& c) {
  // Two-block view: c against everything else.
  std::vector<BlockId> block_of(ks.num_states(), 1);
  for (StateId s : c) block_of.at(s) = 0;
  const auto cyclic = on_block_cycle(ks, block_of);
  StateSet out;
  for (StateId s : c) {
    if (cyclic[s]) out.push_back(s);
  }
  return make_state_set(std::move(out));
}

Verdict is_wkme(const KripkeStructure& ks, const Partition& p, const WkmeOptions& opts) {
  detail::require_matching(ks, p);
  detail::require_predecessors(ks);
  Verdict v;
  if (auto w = detail::label_witness(ks, p)) {
    v.witness = w;
    return v;
  }
  const auto cyclic = on_block_cycle(ks, p.block_ids());
  for (BlockId c = 0; c < p.size(); ++c) {
    std::vector<StateId> outside;
    for (StateId s : pred_of(ks, p.block(c))) {
      if (p.block_of(s) != c) outside.push_back(s);
    }
    if (outside.empty()) {
      v.internal_only_blocks.push_back(c);
      continue;
    }
    std::vector<Entry> entries;
    for (StateId s : outside) entries.push_back(entry_from(ks, p, cyclic, s, c));
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].targets == entries[0].targets) continue;
      const BlockId d = detail::first_difference(entries[0].targets, entries[i].targets);
      const auto has = [d](const Entry& e) { return std::binary_search(e.targets.begin(), e.targets.end(), d); };
      v.witness = Witness{Witness::Kind::wpbr_mismatch, c, d, outside[0], outside[i], has(entries[0]),
                          has(entries[i])};
      return v;
    }
    if (!opts.divergence_check) continue;
    const auto& members = p.block(c);
    const auto cycle_member = std::find_if(members.begin(), members.end(), [&](StateId s) { return cyclic[s]; });
    if (cycle_member == members.end()) continue;
    const auto stuck = std::find_if(entries.begin(), entries.end(), [](const Entry& e) { return !e.divergent; });
    if (stuck == entries.end()) continue;
    const auto free = std::find_if(entries.begin(), entries.end(), [](const Entry& e) { return e.divergent; });
    const StateId a = free != entries.end() ? outside[free - entries.begin()] : *cycle_member;
    v.witness = Witness{Witness::Kind::divergence_mismatch, c, std::nullopt, a, outside[stuck - entries.begin()],
                        true, false};
    return v;
  }
  return v;
}

KripkeStructure wkme_quotient(const KripkeStructure& ks, const Partition& p, const WkmeOptions& opts) {
  const Verdict v = is_wkme(ks, p, opts);
  if (!v.accepted()) throw PreconditionError("partition is not a WKME: " + describe(*v.witness, p, ks));
  const auto cyclic = on_block_cycle(ks, p.block_ids());
  std::vector<std::pair<StateId, StateId>> edges;
  for (BlockId c = 0; c < p.size(); ++c) {
    const StateSet preds = pred_of(ks, p.block(c));
    auto rep = std::find_if(preds.begin(), preds.end(), [&](StateId s) { return p.block_of(s) != c; });
    // Internal-only block: fall back to the smallest internal predecessor.
    const StateId from = rep != preds.end() ? *rep : preds.front();
    for (BlockId d : entry_from(ks, p, cyclic, from, c).targets) edges.emplace_back(c, d);
    const auto& members = p.block(c);
    if (std::any_of(members.begin(), members.end(), [&](StateId s) { return cyclic[s]; })) {
      edges.emplace_back(c, c);
    }
  }
  return detail::build_quotient(ks, p, std::move(edges));
}

Partition div_stutter_bisim_partition(const KripkeStructure& ks) {
  Partition current = label_partition(ks);
  while (true) {
    const auto cyclic = on_block_cycle(ks, current.block_ids());
    using Signature = std::tuple<BlockId, bool, std::vector<BlockId>>;
    std::map<Signature, BlockId> signatures;
    std::vector<BlockId> next(ks.num_states());
    for (StateId s = 0; s < ks.num_states(); ++s) {
      const BlockId b = current.block_of(s);
      bool divergent = false;
      std::vector<BlockId> exits;
      for (StateId u : in_block_closure(ks, current.block_ids(), b, {s})) {
        divergent = divergent || cyclic[u];
        for (StateId t : ks.successors(u)) {
          if (current.block_of(t) != b) exits.push_back(current.block_of(t));
        }
      }
      std::sort(exits.begin(), exits.end());
      exits.erase(std::unique(exits.begin(), exits.end()), exits.end());
      auto [it, _] = signatures.emplace(Signature{b, divergent, std::move(exits)},
                                        static_cast<BlockId>(signatures.size()));
      next[s] = it->second;
    }
    Partition refined = Partition::from_block_ids(next);
    if (refined.size() == current.size()) return refined;
    current = std::move(refined);
  }
}

Partition wkme_reduce(const KripkeStructure& ks, const ReduceOptions& opts, const WkmeOptions& wopts) {
  auto accept = [&](const Partition& candidate) { return is_wkme(ks, candidate, wopts).accepted(); };
  if (opts.strategy == Strategy::exhaustive) {
    detail::require_predecessors(ks);
    return exhaustive_search(ks, accept, opts);
  }
  return greedy_merge(ks, div_stutter_bisim_partition(ks), accept, opts.merge_width);
}

bool odot_related(const KripkeStructure& ks, const Partition& p, const KripkeStructure& quotient,
                  const WkmeOptions& opts) {
  const auto joined = disjoint_union(ks, quotient);
  try {
    return is_wkme(joined, union_pairing(ks, p, quotient), opts).accepted();
  } catch (const PreconditionError&) {
    return false;
  }
}

bool odot_equivalent(const KripkeStructure& ks, const Partition& p, const WkmeOptions& opts) {
  return odot_related(ks, p, wkme_quotient(ks, p, opts), opts);
}

}  // namespace ksred

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

#include "ksred/kme.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ksred/error.hpp"
#include "quotient_util.hpp"

namespace ksred {

bool pbr(const KripkeStructure& ks, StateId s, const StateSet& c, const StateSet& d) {
  for (StateId mid : post_in(ks, s, c)) {
    if (!post_in(ks, mid, d).empty()) return true;
  }
  return false;
}

namespace {

// Blocks D with Pbr(pred, C, D) = 1.
std::vector<BlockId> pbr_targets(const KripkeStructure& ks, const Partition& p, StateId pred, BlockId c) {
  std::vector<BlockId> out;
  for (StateId mid : ks.successors(pred)) {
    if (p.block_of(mid) != c) continue;
    for (StateId t : ks.successors(mid)) out.push_back(p.block_of(t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Verdict is_kme(const KripkeStructure& ks, const Partition& p) {
  detail::require_matching(ks, p);
  detail::require_predecessors(ks);
  Verdict v;
  if (auto w = detail::label_witness(ks, p)) {
    v.witness = w;
    return v;
  }
  for (BlockId c = 0; c < p.size(); ++c) {
    const StateSet preds = pred_of(ks, p.block(c));
    const auto reference = pbr_targets(ks, p, preds.front(), c);
    for (std::size_t i = 1; i < preds.size(); ++i) {
      const auto targets = pbr_targets(ks, p, preds[i], c);
      if (targets == reference) continue;
      const BlockId d = detail::first_difference(reference, targets);
      v.witness = Witness{Witness::Kind::pbr_mismatch, c, d, preds.front(), preds[i],
                          std::binary_search(reference.begin(), reference.end(), d),
                          std::binary_search(targets.begin(), targets.end(), d)};
      return v;
    }
  }
  return v;
}

KripkeStructure kme_quotient(const KripkeStructure& ks, const Partition& p) {
  const Verdict v = is_kme(ks, p);
  if (!v.accepted()) throw PreconditionError("partition is not a KME: " + describe(*v.witness, p, ks));
  std::vector<std::pair<StateId, StateId>> edges;
  for (BlockId c = 0; c < p.size(); ++c) {
    const StateSet preds = pred_of(ks, p.block(c));
    for (BlockId d : pbr_targets(ks, p, preds.front(), c)) edges.emplace_back(c, d);
  }
  return detail::build_quotient(ks, p, std::move(edges));
}

Partition strong_bisim_partition(const KripkeStructure& ks) {
  Partition current = label_partition(ks);
  while (true) {
    std::map<std::pair<BlockId, std::vector<BlockId>>, BlockId> signatures;
    std::vector<BlockId> next(ks.num_states());
    for (StateId s = 0; s < ks.num_states(); ++s) {
      std::vector<BlockId> succ_blocks;
      for (StateId t : ks.successors(s)) succ_blocks.push_back(current.block_of(t));
      std::sort(succ_blocks.begin(), succ_blocks.end());
      succ_blocks.erase(std::unique(succ_blocks.begin(), succ_blocks.end()), succ_blocks.end());
      auto key = std::make_pair(current.block_of(s), std::move(succ_blocks));
      auto [it, _] = signatures.emplace(std::move(key), static_cast<BlockId>(signatures.size()));
      next[s] = it->second;
    }
    Partition refined = Partition::from_block_ids(next);
    if (refined.size() == current.size()) return refined;
    current = std::move(refined);
  }
}

Partition kme_reduce(const KripkeStructure& ks, const ReduceOptions& opts) {
  auto accept = [&](const Partition& candidate) { return is_kme(ks, candidate).accepted(); };
  if (opts.strategy == Strategy::exhaustive) {
    detail::require_predecessors(ks);
    return exhaustive_search(ks, accept, opts);
  }
  return greedy_merge(ks, strong_bisim_partition(ks), accept, opts.merge_width);
}

Partition union_pairing(const KripkeStructure& ks, const Partition& p, const KripkeStructure& quotient) {
  if (quotient.num_states() != p.size()) {
    throw InvalidArgument("quotient has " + std::to_string(quotient.num_states()) + " states for " +
                          std::to_string(p.size()) + " blocks");
  }
  auto blocks = p.blocks();
  const auto offset = static_cast<StateId>(ks.num_states());
  for (BlockId b = 0; b < blocks.size(); ++b) blocks[b].push_back(offset + b);
  return Partition(ks.num_states() + quotient.num_states(), std::move(blocks));
}

bool star_related(const KripkeStructure& ks, const Partition& p, const KripkeStructure& quotient) {
  const auto joined = disjoint_union(ks, quotient);
  try {
    return is_kme(joined, union_pairing(ks, p, quotient)).accepted();
  } catch (const PreconditionError&) {
    return false;
  }
}

bool star_equivalent(const KripkeStructure& ks, const Partition& p) {
  return star_related(ks, p, kme_quotient(ks, p));
}

std::vector<std::string> block_names(const KripkeStructure& ks, const Partition& p) {
  std::vector<std::string> names;
  std::set<std::string> used;
  for (const auto& b : p.blocks()) {
    std::string name = ks.name(b.front());
    for (std::size_t i = 1; i < b.size(); ++i) name += "_" + ks.name(b[i]);
    while (!used.insert(name).second) name += '\'';
    names.push_back(std::move(name));
  }
  return names;
}

}  // namespace ksred

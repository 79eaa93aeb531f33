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

// Fixture access and brute-force references shared by the unit tests. The
// references follow the definitions literally and never call the code under
// test beyond the data model.

#ifndef KSRED_TESTS_SUPPORT_HPP
#define KSRED_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ksred/kripke.hpp"
#include "ksred/partition.hpp"

namespace testing {

using namespace ksred;

inline std::string data_path(const std::string& name) { return std::string(KSRED_DATA_DIR) + "/" + name; }
inline KripkeStructure fixture(const std::string& name) { return load_ks(data_path(name)); }

inline Partition blocks_by_name(const KripkeStructure& ks, const std::vector<std::vector<std::string>>& groups) {
  std::vector<StateSet> blocks;
  for (const auto& g : groups) {
    StateSet b;
    for (const auto& name : g) b.push_back(ks.id(name));
    blocks.push_back(b);
  }
  return Partition(ks.num_states(), blocks);
}

inline StateSet named(const KripkeStructure& ks, const std::vector<std::string>& names) {
  StateSet out;
  for (const auto& n : names) out.push_back(ks.id(n));
  std::sort(out.begin(), out.end());
  return out;
}

/// Every partition of {0..n-1}, via restricted growth strings.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<BlockId>&)>& fn) {
  std::vector<BlockId> a(n, 0);
  std::function<void(std::size_t, BlockId)> rec = [&](std::size_t i, BlockId max_used) {
    if (i == n) {
      fn(a);
      return;
    }
    for (BlockId b = 0; b <= max_used + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(max_used, b));
    }
  };
  if (n == 0) return;
  rec(1, 0);
}

inline bool label_uniform(const KripkeStructure& ks, const std::vector<BlockId>& block) {
  for (StateId s = 0; s < ks.num_states(); ++s) {
    for (StateId t = 0; t < ks.num_states(); ++t) {
      if (block[s] == block[t] && ks.label(s) != ks.label(t)) return false;
    }
  }
  return true;
}

inline std::size_t count_blocks(const std::vector<BlockId>& block) {
  return std::set<BlockId>(block.begin(), block.end()).size();
}

/// Two-step reachability by edge scan.
inline bool ref_pbr(const KripkeStructure& ks, StateId s, const std::vector<BlockId>& block, BlockId c, BlockId d) {
  for (const auto& [x, y] : ks.transitions()) {
    if (x != s || block[y] != c) continue;
    for (const auto& [u, v] : ks.transitions()) {
      if (u == y && block[v] == d) return true;
    }
  }
  return false;
}

/// Reachability inside block c from the c-successors of s, then one step into d.
inline bool ref_wpbr(const KripkeStructure& ks, StateId s, const std::vector<BlockId>& block, BlockId c, BlockId d) {
  std::set<StateId> reach;
  for (StateId t : ks.successors(s)) {
    if (block[t] == c) reach.insert(t);
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [x, y] : ks.transitions()) {
      if (reach.count(x) && block[y] == c && reach.insert(y).second) grew = true;
    }
  }
  for (const auto& [x, y] : ks.transitions()) {
    if (reach.count(x) && block[y] == d) return true;
  }
  return false;
}

inline std::vector<StateId> preds(const KripkeStructure& ks, const std::vector<BlockId>& block, BlockId c) {
  std::set<StateId> out;
  for (const auto& [x, y] : ks.transitions()) {
    if (block[y] == c) out.insert(x);
  }
  return {out.begin(), out.end()};
}

inline bool ref_is_kme(const KripkeStructure& ks, const std::vector<BlockId>& block) {
  if (!label_uniform(ks, block)) return false;
  const auto n = static_cast<BlockId>(count_blocks(block));
  for (BlockId c = 0; c < n; ++c) {
    const auto ps = preds(ks, block, c);
    for (BlockId d = 0; d < n; ++d) {
      for (StateId p : ps) {
        if (ref_pbr(ks, p, block, c, d) != ref_pbr(ks, ps.front(), block, c, d)) return false;
      }
    }
  }
  return true;
}

/// The condition as printed: outside predecessors agree on WPbr for C ≠ D.
inline bool ref_is_wkme_literal(const KripkeStructure& ks, const std::vector<BlockId>& block) {
  if (!label_uniform(ks, block)) return false;
  const auto n = static_cast<BlockId>(count_blocks(block));
  for (BlockId c = 0; c < n; ++c) {
    std::vector<StateId> ps;
    for (StateId p : preds(ks, block, c)) {
      if (block[p] != c) ps.push_back(p);
    }
    for (BlockId d = 0; d < n; ++d) {
      if (d == c) continue;
      for (StateId p : ps) {
        if (ref_wpbr(ks, p, block, c, d) != ref_wpbr(ks, ps.front(), block, c, d)) return false;
      }
    }
  }
  return true;
}

/// Strong bisimulation condition on a label-uniform partition.
inline bool ref_is_bisim(const KripkeStructure& ks, const std::vector<BlockId>& block) {
  if (!label_uniform(ks, block)) return false;
  for (StateId s = 0; s < ks.num_states(); ++s) {
    for (StateId t = 0; t < ks.num_states(); ++t) {
      if (block[s] != block[t]) continue;
      for (StateId s2 : ks.successors(s)) {
        bool matched = false;
        for (StateId t2 : ks.successors(t)) matched = matched || block[t2] == block[s2];
        if (!matched) return false;
      }
    }
  }
  return true;
}

/// States reachable from `s` by a path (length >= 0) inside block[s].
inline std::set<StateId> in_block_reach(const KripkeStructure& ks, const std::vector<BlockId>& block, StateId s) {
  std::set<StateId> reach{s};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [x, y] : ks.transitions()) {
      if (reach.count(x) && block[y] == block[s] && reach.insert(y).second) grew = true;
    }
  }
  return reach;
}

/// Some state reachable inside the block reaches itself inside the block.
inline bool ref_diverges(const KripkeStructure& ks, const std::vector<BlockId>& block, StateId s) {
  for (StateId u : in_block_reach(ks, block, s)) {
    for (StateId v : ks.successors(u)) {
      if (block[v] == block[s] && in_block_reach(ks, block, v).count(u)) return true;
    }
  }
  return false;
}

/// Divergence-sensitive stutter bisimulation condition.
inline bool ref_is_div_stutter_bisim(const KripkeStructure& ks, const std::vector<BlockId>& block) {
  if (!label_uniform(ks, block)) return false;
  for (StateId s = 0; s < ks.num_states(); ++s) {
    for (StateId t = 0; t < ks.num_states(); ++t) {
      if (block[s] != block[t]) continue;
      if (ref_diverges(ks, block, s) != ref_diverges(ks, block, t)) return false;
      const auto reach_t = in_block_reach(ks, block, t);
      for (StateId s2 : ks.successors(s)) {
        if (block[s2] == block[s]) continue;
        bool matched = false;
        for (StateId u : reach_t) {
          for (StateId v : ks.successors(u)) matched = matched || block[v] == block[s2];
        }
        if (!matched) return false;
      }
    }
  }
  return true;
}

/// Literal condition plus divergence agreement: if some member of C lies on
/// a cycle inside C, every outside predecessor can enter C and stay forever.
inline bool ref_is_wkme(const KripkeStructure& ks, const std::vector<BlockId>& block) {
  if (!ref_is_wkme_literal(ks, block)) return false;
  const auto n = static_cast<BlockId>(count_blocks(block));
  for (BlockId c = 0; c < n; ++c) {
    bool cyclic = false;
    for (StateId s = 0; s < ks.num_states(); ++s) cyclic = cyclic || (block[s] == c && ref_diverges(ks, block, s));
    if (!cyclic) continue;
    for (StateId p : preds(ks, block, c)) {
      if (block[p] == c) continue;
      bool enters_forever = false;
      for (StateId s : ks.successors(p)) enters_forever = enters_forever || (block[s] == c && ref_diverges(ks, block, s));
      if (!enters_forever) return false;
    }
  }
  return true;
}

/// Fewest-block partition satisfying `pred` (the coarsest, when unique).
inline std::vector<BlockId> ref_coarsest(const KripkeStructure& ks,
                                        const std::function<bool(const std::vector<BlockId>&)>& pred,
                                        std::size_t* count_out = nullptr) {
  std::vector<BlockId> best;
  std::size_t best_n = ~std::size_t{0};
  std::size_t count = 0;
  for_each_partition(ks.num_states(), [&](const std::vector<BlockId>& a) {
    if (!pred(a)) return;
    ++count;
    if (count_blocks(a) < best_n) {
      best_n = count_blocks(a);
      best = a;
    }
  });
  if (count_out) *count_out = count;
  return best;
}

}  // namespace testing

#endif  // KSRED_TESTS_SUPPORT_HPP

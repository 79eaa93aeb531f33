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

#ifndef KSRED_PARTITION_HPP
#define KSRED_PARTITION_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "ksred/kripke.hpp"

namespace ksred {

using BlockId = std::uint32_t;

/// Disjoint, covering, non-empty blocks over states `0..num_states()-1`.
///
/// Blocks are kept in canonical order: members ascending, blocks ordered by
/// their smallest member. Two partitions are equal iff they induce the same
/// equivalence relation.
class Partition {
 public:
  Partition(std::size_t num_states, std::vector<StateSet> blocks);

  static Partition identity(std::size_t num_states);
  static Partition from_block_ids(const std::vector<BlockId>& block_of);

  std::size_t num_states() const noexcept { return block_of_.size(); }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<StateSet>& blocks() const noexcept { return blocks_; }
  const StateSet& block(BlockId b) const { return blocks_.at(b); }
  BlockId block_of(StateId s) const { return block_of_.at(s); }
  const std::vector<BlockId>& block_ids() const noexcept { return block_of_; }
  bool same_block(StateId s, StateId t) const { return block_of(s) == block_of(t); }

  /// Merges the given blocks into one.
  Partition merged(const std::vector<BlockId>& group) const;
  /// States `>= num_states()` up to `n` become singleton blocks.
  Partition extended(std::size_t n) const;
  /// Keeps only states with `keep[s]`, renumbered densely.
  Partition restricted(const std::vector<bool>& keep) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }
  /// Lexicographic order on the canonical block lists.
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.blocks_ <=> b.blocks_; }

 private:
  std::vector<StateSet> blocks_;
  std::vector<BlockId> block_of_;
};

/// Partition grouping states with equal labels.
Partition label_partition(const KripkeStructure& ks);

/// True iff every block is label-uniform.
bool respects_labels(const KripkeStructure& ks, const Partition& p);

/// One block per line (or `{...}` groups); `#` comments and blank lines
/// ignored. Throws `ParseError` naming missing-state / duplicated-state /
/// unknown-state problems.
Partition parse_partition(std::string_view text, const KripkeStructure& ks);
Partition load_partition(const std::string& path, const KripkeStructure& ks);
std::string serialize_partition(const Partition& p, const KripkeStructure& ks);
/// Compact one-line form `{s0}{s1 s2}`.
std::string format_partition(const Partition& p, const KripkeStructure& ks);
std::string format_block(const StateSet& block, const KripkeStructure& ks);

}  // namespace ksred

#endif  // KSRED_PARTITION_HPP

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

#ifndef KSRED_REDUCE_HPP
#define KSRED_REDUCE_HPP

#include <cstdint>
#include <functional>

#include "ksred/kripke.hpp"
#include "ksred/partition.hpp"

namespace ksred {

enum class Strategy { greedy, exhaustive };

struct ReduceOptions {
  Strategy strategy = Strategy::greedy;
  /// Greedy merges groups of up to this many equally labelled blocks; pairs
  /// are tried before triples and so on.
  std::size_t merge_width = 3;
  /// Exhaustive search refuses label classes larger than this.
  std::size_t max_class_size = 12;
  /// Exhaustive search refuses when the number of label-respecting
  /// partitions exceeds this.
  std::uint64_t max_candidates = 20'000'000;
};

using PartitionCheck = std::function<bool(const Partition&)>;

/// Starting from `seed`, repeatedly applies the first merge (in the order
/// documented on `ReduceOptions::merge_width`) of equally labelled blocks
/// that keeps `accept` true, until no merge does. Blocks are ordered by
/// smallest member; groups of one size are tried in lexicographic order.
Partition greedy_merge(const KripkeStructure& ks, const Partition& seed, const PartitionCheck& accept,
                       std::size_t merge_width);

/// Accepted label-respecting partition with the fewest blocks; ties go to the
/// lexicographically least canonical form. Throws `LimitError` past the
/// bounds in `opts`.
Partition exhaustive_search(const KripkeStructure& ks, const PartitionCheck& accept,
                            const ReduceOptions& opts);

/// Number of label-respecting partitions of `ks` (saturates at UINT64_MAX).
std::uint64_t count_label_respecting(const KripkeStructure& ks);

}  // namespace ksred

#endif  // KSRED_REDUCE_HPP

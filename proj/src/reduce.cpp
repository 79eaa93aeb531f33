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

#include "ksred/reduce.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

#include "ksred/error.hpp"

namespace ksred {

namespace {

// Calls `fn` on every k-subset of `items` in lexicographic order; stops
// when it returns true.
template <typename Fn>
bool for_each_combination(const std::vector<BlockId>& items, std::size_t k, Fn&& fn) {
  if (k > items.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<BlockId> pick(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) pick[i] = items[idx[i]];
    if (fn(pick)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t bell_number(std::size_t n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) {
      std::uint64_t sum = next.back() + v;
      if (sum < v) return std::numeric_limits<std::uint64_t>::max();
      next.push_back(sum);
    }
    row = std::move(next);
  }
  return row.front();
}

}  // namespace

Partition greedy_merge(const KripkeStructure& ks, const Partition& seed, const PartitionCheck& accept,
                       std::size_t merge_width) {
  Partition current = seed;
  bool merged = true;
  while (merged) {
    merged = false;
    std::map<Label, std::vector<BlockId>> by_label;
    for (BlockId b = 0; b < current.size(); ++b) {
      by_label[ks.label(current.block(b).front())].push_back(b);
    }
    for (std::size_t k = 2; k <= merge_width && !merged; ++k) {
      // Lexicographic order over all classes at once.
      std::vector<std::vector<BlockId>> groups;
      for (const auto& [_, blocks] : by_label) {
        for_each_combination(blocks, k, [&](const std::vector<BlockId>& g) {
          groups.push_back(g);
          return false;
        });
      }
      std::sort(groups.begin(), groups.end());
      for (const auto& g : groups) {
        Partition candidate = current.merged(g);
        if (accept(candidate)) {
          current = std::move(candidate);
          merged = true;
          break;
        }
      }
    }
  }
  return current;
}

std::uint64_t count_label_respecting(const KripkeStructure& ks) {
  std::uint64_t total = 1;
  const Partition classes = label_partition(ks);
  for (const auto& cls : classes.blocks()) total = saturating_mul(total, bell_number(cls.size()));
  return total;
}

Partition exhaustive_search(const KripkeStructure& ks, const PartitionCheck& accept,
                            const ReduceOptions& opts) {
  const auto classes = label_partition(ks).blocks();
  for (const auto& cls : classes) {
    if (cls.size() > opts.max_class_size) {
      throw LimitError("exhaustive search refuses label class of " + std::to_string(cls.size()) +
                       " states (limit " + std::to_string(opts.max_class_size) + ")");
    }
  }
  const auto total = count_label_respecting(ks);
  if (total > opts.max_candidates) {
    throw LimitError("exhaustive search refuses " + std::to_string(total) +
                     " candidate partitions (limit " + std::to_string(opts.max_candidates) + ")");
  }

  // One restricted growth string per class; the odometer advances the last
  // class fastest.
  std::vector<std::vector<BlockId>> rgs;
  for (const auto& cls : classes) rgs.emplace_back(cls.size(), 0);

  auto advance = [](std::vector<BlockId>& a) {
    for (std::size_t i = a.size(); i-- > 1;) {
      BlockId max_prefix = 0;
      for (std::size_t j = 0; j < i; ++j) max_prefix = std::max(max_prefix, a[j]);
      if (a[i] <= max_prefix) {
        ++a[i];
        std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(), 0);
        return true;
      }
    }
    return false;
  };
  auto blocks_in = [](const std::vector<BlockId>& a) {
    return a.empty() ? BlockId{0} : *std::max_element(a.begin(), a.end()) + 1;
  };

  std::optional<Partition> best;
  std::vector<BlockId> block_of(ks.num_states());
  while (true) {
    std::size_t count = 0;
    for (const auto& a : rgs) count += blocks_in(a);
    if (!best || count <= best->size()) {
      BlockId offset = 0;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t i = 0; i < classes[c].size(); ++i) block_of[classes[c][i]] = offset + rgs[c][i];
        offset += blocks_in(rgs[c]);
      }
      Partition candidate = Partition::from_block_ids(block_of);
      if ((!best || candidate.size() < best->size() || (candidate.size() == best->size() && candidate < *best)) &&
          accept(candidate)) {
        best = std::move(candidate);
      }
    }
    std::size_t c = rgs.size();
    while (c > 0 && !advance(rgs[c - 1])) {
      std::fill(rgs[c - 1].begin(), rgs[c - 1].end(), 0);
      --c;
    }
    if (c == 0) break;
  }
  if (!best) throw InternalError("no accepted partition found (identity should always pass)");
  return *best;
}

}  // namespace ksred

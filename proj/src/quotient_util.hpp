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

#ifndef KSRED_QUOTIENT_UTIL_HPP
#define KSRED_QUOTIENT_UTIL_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "ksred/error.hpp"
#include "ksred/kme.hpp"
#include "ksred/partition.hpp"
#include "ksred/verdict.hpp"

namespace ksred::detail {

inline void require_matching(const KripkeStructure& ks, const Partition& p) {
  if (p.num_states() != ks.num_states()) {
    throw InvalidArgument("partition covers " + std::to_string(p.num_states()) + " states, structure has " +
                          std::to_string(ks.num_states()));
  }
}

inline void require_predecessors(const KripkeStructure& ks) {
  for (StateId s = 0; s < ks.num_states(); ++s) {
    if (ks.predecessors(s).empty()) {
      throw PreconditionError("state '" + ks.name(s) + "' has no predecessor; normalize first");
    }
  }
}

inline std::optional<Witness> label_witness(const KripkeStructure& ks, const Partition& p) {
  for (BlockId c = 0; c < p.size(); ++c) {
    const auto& b = p.block(c);
    for (StateId s : b) {
      if (ks.label(s) != ks.label(b.front())) {
        return Witness{Witness::Kind::label_mismatch, c, std::nullopt, b.front(), s};
      }
    }
  }
  return std::nullopt;
}

/// Smallest element of the symmetric difference of two sorted lists.
inline BlockId first_difference(const std::vector<BlockId>& a, const std::vector<BlockId>& b) {
  std::vector<BlockId> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return diff.front();
}

/// Block i becomes state i; labels from the first member; asserts totality.
inline KripkeStructure build_quotient(const KripkeStructure& ks, const Partition& p,
                                      std::vector<std::pair<StateId, StateId>> edges) {
  std::vector<Label> labels;
  for (const auto& b : p.blocks()) labels.push_back(ks.label(b.front()));
  KripkeStructure q(block_names(ks, p), ks.aps(), std::move(labels), std::move(edges),
                    p.block_of(ks.initial()));
  if (auto bad = validate(q); !bad.empty()) {
    throw InternalError("quotient is not total at block " + bad.front().subject);
  }
  return q;
}

}  // namespace ksred::detail

#endif  // KSRED_QUOTIENT_UTIL_HPP

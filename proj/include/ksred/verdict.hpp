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

#ifndef KSRED_VERDICT_HPP
#define KSRED_VERDICT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ksred/kripke.hpp"
#include "ksred/partition.hpp"

namespace ksred {

/// Counterexample to a (W)KME check.
///
/// For `label_mismatch`, `pred_a`/`pred_b` are two members of `block_c`
/// with different labels and `block_d` is empty. For `divergence_mismatch`,
/// `block_d` is empty, `pred_b` is an outside predecessor that cannot reach an
/// in-block cycle after entering `block_c`, and `pred_a` is an outside
/// predecessor that can (or, if there is none, a member on such a cycle).
struct Witness {
  enum class Kind { label_mismatch, pbr_mismatch, wpbr_mismatch, divergence_mismatch };
  Kind kind;
  BlockId block_c;
  std::optional<BlockId> block_d;
  StateId pred_a;
  StateId pred_b;
  bool value_a = false;  // Pbr/WPbr (or divergence) value at pred_a
  bool value_b = false;
};

std::string_view to_string(Witness::Kind kind);

struct Verdict {
  std::optional<Witness> witness;
  /// Blocks whose predecessors all lie inside the block (WKME only); their
  /// outgoing quotient edges come from the smallest internal predecessor.
  std::vector<BlockId> internal_only_blocks;

  bool accepted() const noexcept { return !witness.has_value(); }
};

/// One-line human-readable rendering of a witness.
std::string describe(const Witness& w, const Partition& p, const KripkeStructure& ks);

}  // namespace ksred

#endif  // KSRED_VERDICT_HPP

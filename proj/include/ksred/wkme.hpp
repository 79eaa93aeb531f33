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

#ifndef KSRED_WKME_HPP
#define KSRED_WKME_HPP

#include "ksred/kripke.hpp"
#include "ksred/partition.hpp"
#include "ksred/reduce.hpp"
#include "ksred/verdict.hpp"

namespace ksred {

/// 1 iff some successor of `s` in `c` reaches, moving only inside `c`, a
/// state with a successor in `d`.
bool wpbr(const KripkeStructure& ks, StateId s, const StateSet& c, const StateSet& d);

/// Members of `c` lying on a cycle (length >= 1) that stays inside `c`.
StateSet block_divergent(const KripkeStructure& ks, const StateSet& c);

struct WkmeOptions {
  /// Also require that every outside predecessor of a block with an in-block
  /// cycle can reach such a cycle after entering the block. Without it a
  /// quotient self-loop can add stutter traces the original lacks.
  bool divergence_check = true;
};

/// Checks that `p` is a weak KME: blocks are label uniform and, for all
/// distinct blocks C, D, the predecessors of C outside C agree on
/// WPbr(·, C, D). Blocks without outside predecessors pass vacuously and are
/// listed in `Verdict::internal_only_blocks`. Same errors as `is_kme`.
Verdict is_wkme(const KripkeStructure& ks, const Partition& p, const WkmeOptions& opts = {});

/// Quotient with C→D (C ≠ D) iff WPbr from an outside predecessor of C (the
/// smallest internal one for internal-only blocks) and C→C iff C has an
/// in-block cycle. Throws `PreconditionError` if `p` is not a WKME and
/// `InternalError` if the result is not total.
KripkeStructure wkme_quotient(const KripkeStructure& ks, const Partition& p, const WkmeOptions& opts = {});

/// Coarsest divergence-sensitive stutter bisimulation, by signature
/// refinement: a state's signature is its block, whether it can stay in the
/// block forever, and the blocks it can enter after an in-block path.
Partition div_stutter_bisim_partition(const KripkeStructure& ks);

/// A WKME of `ks`. Greedy starts from the divergence-sensitive stutter
/// bisimulation.
Partition wkme_reduce(const KripkeStructure& ks, const ReduceOptions& opts = {},
                      const WkmeOptions& wopts = {});

/// `ks` and its weak quotient by `p` are related by a WKME on their disjoint
/// union that pairs every state with its block.
bool odot_equivalent(const KripkeStructure& ks, const Partition& p, const WkmeOptions& opts = {});
bool odot_related(const KripkeStructure& ks, const Partition& p, const KripkeStructure& quotient,
                  const WkmeOptions& opts = {});

}  // namespace ksred

#endif  // KSRED_WKME_HPP

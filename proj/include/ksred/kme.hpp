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

#ifndef KSRED_KME_HPP
#define KSRED_KME_HPP

#include "ksred/kripke.hpp"
#include "ksred/partition.hpp"
#include "ksred/reduce.hpp"
#include "ksred/verdict.hpp"

namespace ksred {

/// 1 iff some successor of `s` in `c` has a successor in `d`.
bool pbr(const KripkeStructure& ks, StateId s, const StateSet& c, const StateSet& d);

/// Checks that `p` is a Kripke minimization equivalence: blocks are label
/// uniform and, for every pair of blocks C, D, all predecessors of C agree on
/// Pbr(·, C, D). Throws `PreconditionError` if some state has no
/// predecessor (normalize first) and `InvalidArgument` on a size mismatch.
Verdict is_kme(const KripkeStructure& ks, const Partition& p);

/// Quotient with block transitions C→D iff Pbr(s', C, D) = 1 for the
/// predecessors s' of C. Block i of `p` becomes state i. Throws
/// `PreconditionError` if `p` is not a KME.
KripkeStructure kme_quotient(const KripkeStructure& ks, const Partition& p);

/// Coarsest strong bisimulation, by signature refinement from the label
/// partition.
Partition strong_bisim_partition(const KripkeStructure& ks);

/// A KME of `ks` (not unique). Greedy starts from the strong bisimulation.
Partition kme_reduce(const KripkeStructure& ks, const ReduceOptions& opts = {});

/// `ks` and its quotient by `p` are related by a KME on their disjoint
/// union that pairs every state with its block.
bool star_equivalent(const KripkeStructure& ks, const Partition& p);
/// Same check against a caller-supplied quotient whose state i stands for
/// block i of `p`.
bool star_related(const KripkeStructure& ks, const Partition& p, const KripkeStructure& quotient);

/// Partition of `disjoint_union(ks, quotient)` with blocks C ∪ {C}.
Partition union_pairing(const KripkeStructure& ks, const Partition& p, const KripkeStructure& quotient);

/// State names for quotient blocks: singletons keep their name, larger blocks
/// join member names with `_`.
std::vector<std::string> block_names(const KripkeStructure& ks, const Partition& p);

}  // namespace ksred

#endif  // KSRED_KME_HPP

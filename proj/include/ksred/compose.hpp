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

#ifndef KSRED_COMPOSE_HPP
#define KSRED_COMPOSE_HPP

#include <optional>

#include "ksred/kripke.hpp"
#include "ksred/oracles.hpp"
#include "ksred/partition.hpp"
#include "ksred/verdict.hpp"

namespace ksred {

struct ComposeOptions {
  /// Keep only the part reachable from the pair of initial states.
  bool reachable_only = false;
};

/// Lock-step product: state (i, j) has id `i * |S2| + j` (before any
/// reachability restriction), label L1(i) ∪ L2(j), and moves iff both
/// components move. Reserved atoms are renamed per side (`$` becomes `$1`
/// or `$2`, likewise for ⊥) so the result carries no initial marker and no
/// root of its own. States are named `x_y`, or `p<i>_<j>` if that is
/// ambiguous.
KripkeStructure sync_compose(const KripkeStructure& k1, const KripkeStructure& k2, const ComposeOptions& opts = {});

struct CompositionalityResult {
  /// Products A = ks ⊗ k1 and B = (ks/p) ⊗ k1, both normalized.
  std::size_t left_states = 0;
  std::size_t right_states = 0;
  EquivalenceResult trace;
  /// KME check on A ⊎ B pairing (x, t) with ([x], t) and root with root.
  bool strict = false;
  std::optional<Witness> strict_witness;
};

/// Checks that composing with `k1` commutes with KME quotienting, both as
/// trace equivalence of the products and as a pairing KME on their disjoint
/// union. `ks` must have every state with a predecessor. Throws
/// `PreconditionError` if `p` is not a KME of `ks`.
CompositionalityResult compositionality_check(const KripkeStructure& ks, const Partition& p,
                                              const KripkeStructure& k1);

}  // namespace ksred

#endif  // KSRED_COMPOSE_HPP

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

#ifndef KSRED_ORACLES_HPP
#define KSRED_ORACLES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ksred/kripke.hpp"
#include "ksred/ltl.hpp"
#include "ksred/trace.hpp"

namespace ksred {

/// Traces start at the initial state (never at a ⊥ root) and carry only user
/// atoms, plus `$` when `keep_initial_marker` is set.
struct OracleOptions {
  bool keep_initial_marker = false;
};

/// Deterministic automaton over label sets accepting the finite traces of a
/// KS (every state accepting; a missing letter rejects).
///
/// In stutter mode the letters are label changes: a state is the set of
/// states at which the current label run may have been entered, and
/// `divergent` marks states from which the run can last forever.
struct PrefixAutomaton {
  struct Edge {
    Label letter;
    std::uint32_t target;
  };
  std::vector<std::vector<Edge>> delta;  // sorted by letter
  std::vector<StateSet> subsets;         // subsets[0] is the empty start set
  std::vector<bool> divergent;           // stutter mode only
  std::uint32_t initial = 0;

  std::size_t size() const noexcept { return delta.size(); }
  /// Target on `letter`, if any.
  std::optional<std::uint32_t> step(std::uint32_t q, const Label& letter) const;
};

PrefixAutomaton build_prefix_automaton(const KripkeStructure& ks, const OracleOptions& opts = {});
PrefixAutomaton build_stutter_automaton(const KripkeStructure& ks, const OracleOptions& opts = {});

/// Shortest distinguishing finite word. For `prefix`, the word is a finite
/// trace (or block word) of exactly one side; for `divergence`, both sides
/// realize the block word but only one can then stay in its last label forever.
/// `in_first` names the side that has the behaviour.
struct TraceWitness {
  enum class Tag { prefix, divergence };
  std::vector<Label> word;
  Tag tag = Tag::prefix;
  bool in_first = true;
};

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<TraceWitness> witness;
};

/// Infinite-trace equality. For total finite structures the trace set is the
/// safety closure of the finite traces, so comparing prefix languages decides it.
EquivalenceResult trace_equivalent(const KripkeStructure& k1, const KripkeStructure& k2,
                                   const OracleOptions& opts = {});

/// Equality of the stutter closures of the trace sets: same block words and
/// same block words after which the path may stay in one label forever.
EquivalenceResult stutter_trace_equivalent(const KripkeStructure& k1, const KripkeStructure& k2,
                                           const OracleOptions& opts = {});

/// Lassos from the initial state with 1 <= |stem| <= stem_bound and
/// 1 <= |loop| <= loop_bound, ordered by (|stem|, stem, |loop|, loop).
/// Throws `InvalidArgument` if a bound is 0.
std::vector<Lasso> enumerate_lassos(const KripkeStructure& ks, std::size_t stem_bound, std::size_t loop_bound);

struct LtlVerdict {
  bool holds = true;  // relative to the bounds
  std::optional<Lasso> counterexample;
  std::size_t lassos_checked = 0;
};

/// Evaluates `f` on every enumerated lasso; stops at the first failure.
/// Not a complete model checker.
LtlVerdict ltl_bounded_verdict(const KripkeStructure& ks, const LtlFormula& f, std::size_t stem_bound,
                               std::size_t loop_bound, const OracleOptions& opts = {});

}  // namespace ksred

#endif  // KSRED_ORACLES_HPP

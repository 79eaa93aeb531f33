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

#ifndef KSRED_KRIPKE_HPP
#define KSRED_KRIPKE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ksred {

using StateId = std::uint32_t;

/// Sorted, duplicate-free list of state ids.
using StateSet = std::vector<StateId>;

/// Sorted, duplicate-free list of atom names.
using Label = std::vector<std::string>;

/// Label of the artificial predecessor state added by `normalize`.
inline constexpr std::string_view kBottomAtom = "\xE2\x8A\xA5";  // U+22A5
/// Marker atom added to the initial state's label by `normalize`.
inline constexpr std::string_view kInitialAtom = "$";

/// Reserved atoms start with `$` or `⊥`. They never appear in `aps()` and
/// user files may only mention them in `label` lines.
bool is_reserved_atom(std::string_view atom);
/// True for atoms starting with `⊥`; states carrying one are artificial roots.
bool is_bottom_atom(std::string_view atom);
/// Nonempty token over letters, digits, `_` and `'`.
bool is_identifier(std::string_view token);

/// Drops reserved atoms; keeps `$` (exactly) when `keep_initial_marker` is set.
Label project_label(const Label& label, bool keep_initial_marker = false);

/// Sorts and deduplicates.
Label make_label(std::vector<std::string> atoms);
StateSet make_state_set(std::vector<StateId> states);

/// Unchecked, name-based form of a KS as written in a `.ks` file.
struct KripkeDescription {
  std::vector<std::string> aps;
  std::vector<std::string> states;
  std::vector<std::string> initial;  // more than one entry is a violation
  std::vector<std::pair<std::string, std::vector<std::string>>> labels;
  std::vector<std::pair<std::string, std::string>> transitions;
};

struct Violation {
  enum class Kind {
    totality,         // state without successor
    unknown_state,    // transition/label/init names an undeclared state
    duplicate_state,  // state declared twice
    missing_initial,  // no `init` line
    duplicate_initial,
    duplicate_label,  // two `label` lines for one state
    unknown_atom,     // label atom outside `aps`
    reserved_atom,    // reserved name declared in `aps`
    bad_identifier,
  };
  Kind kind;
  std::string subject;

  std::string to_string() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(Violation::Kind kind);

/// Finite state graph with per-state labels and one initial state.
///
/// States are dense ids `0..num_states()-1` in declaration order. The
/// constructor enforces the structural invariants (names unique and
/// well-formed, endpoints in range, label atoms drawn from `aps` or the
/// reserved atoms); totality is reported by `validate` so that non-total
/// inputs can still be inspected.
class KripkeStructure {
 public:
  KripkeStructure(std::vector<std::string> state_names, std::vector<std::string> aps,
                  std::vector<Label> labels, std::vector<std::pair<StateId, StateId>> edges,
                  StateId initial);

  /// Builds from a description; throws `ParseError` listing every violation.
  static KripkeStructure from_description(const KripkeDescription& desc);

  std::size_t num_states() const noexcept { return names_.size(); }
  std::size_t num_transitions() const noexcept;
  StateId initial() const noexcept { return initial_; }

  const std::string& name(StateId s) const { return names_.at(s); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<StateId> find(std::string_view name) const;
  /// Like `find`, but throws `InvalidArgument` for unknown names.
  StateId id(std::string_view name) const;

  const std::vector<std::string>& aps() const noexcept { return aps_; }
  const Label& label(StateId s) const { return labels_.at(s); }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  const StateSet& successors(StateId s) const { return succ_.at(s); }
  const StateSet& predecessors(StateId s) const { return pred_.at(s); }
  bool has_transition(StateId from, StateId to) const;
  std::vector<std::pair<StateId, StateId>> transitions() const;

  bool contains(StateId s) const noexcept { return s < names_.size(); }

  friend bool operator==(const KripkeStructure&, const KripkeStructure&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> aps_;
  std::vector<Label> labels_;
  std::vector<StateSet> succ_;
  std::vector<StateSet> pred_;
  StateId initial_;
  std::unordered_map<std::string, StateId> index_;
};

// Text format ---------------------------------------------------------------

/// Syntax-level parse. Throws `ParseError` with a line number.
KripkeDescription parse_ks_description(std::string_view text);
/// `parse_ks_description` + `validate` + construction.
KripkeStructure parse_ks(std::string_view text);
KripkeStructure load_ks(const std::string& path);
std::string serialize_ks(const KripkeStructure& ks);

/// Empty iff every KS invariant holds.
std::vector<Violation> validate(const KripkeDescription& desc);
std::vector<Violation> validate(const KripkeStructure& ks);

// Normalization -------------------------------------------------------------

struct NormalizeOptions {
  bool add_pred_state = true;
  bool mark_initial = true;
};

struct NormalizeReport {
  bool added_root = false;      // a fresh ⊥ state was created
  bool added_root_edges = false;
  bool marked_initial = false;  // `$` was added
  std::optional<StateId> root;  // the ⊥ state, new or pre-existing
};

/// Adds a self-looping ⊥ root feeding every predecessor-less state and marks
/// the initial state with `$`. Existing ids are preserved; a new root is
/// appended. Idempotent.
KripkeStructure normalize(const KripkeStructure& ks, const NormalizeOptions& opts = {},
                          NormalizeReport* report = nullptr);

/// Inverse view of `normalize`: removes every state whose label carries a ⊥
/// atom and drops all reserved atoms from the remaining labels.
KripkeStructure strip_reserved(const KripkeStructure& ks);

/// First state whose label contains the ⊥ atom itself (renamed variants such
/// as `⊥1` in products do not count), if any.
std::optional<StateId> find_root(const KripkeStructure& ks);

// Graph primitives ----------------------------------------------------------

/// Successors of `s` inside `targets` (`targets` sorted).
StateSet post_in(const KripkeStructure& ks, StateId s, const StateSet& targets);
/// All states with a successor in `targets`.
StateSet pred_of(const KripkeStructure& ks, const StateSet& targets);
/// Throws `InvalidArgument` if `(s,t)` is not a transition.
bool is_stutter_step(const KripkeStructure& ks, StateId s, StateId t);

/// States reachable from the initial state, in BFS order.
std::vector<StateId> reachable_states(const KripkeStructure& ks);

/// Restricts `ks` to `keep` (must be closed under successors to stay total).
KripkeStructure induced_substructure(const KripkeStructure& ks, const std::vector<bool>& keep);

/// States of `b` follow those of `a` (offset `a.num_states()`); names get
/// `l_`/`r_` prefixes; the initial state is `a`'s.
KripkeStructure disjoint_union(const KripkeStructure& a, const KripkeStructure& b);

/// Label- and initial-preserving graph isomorphism (state names ignored).
bool isomorphic(const KripkeStructure& a, const KripkeStructure& b);

}  // namespace ksred

#endif  // KSRED_KRIPKE_HPP

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

#ifndef KSRED_TRACE_HPP
#define KSRED_TRACE_HPP

#include <compare>
#include <string>
#include <vector>

#include "ksred/kripke.hpp"

namespace ksred {

/// Ultimately periodic path `stem · loop^ω`.
struct Lasso {
  std::vector<StateId> stem;
  std::vector<StateId> loop;

  friend bool operator==(const Lasso&, const Lasso&) = default;
  friend auto operator<=>(const Lasso&, const Lasso&) = default;
};

/// Every adjacent pair, including stem-end→loop-start and loop-end→loop-start,
/// is a transition of `ks`; the loop is non-empty.
bool is_lasso_of(const KripkeStructure& ks, const Lasso& lasso);

/// Ultimately periodic word `stem · loop^ω` over label sets.
struct TraceWord {
  std::vector<Label> stem;
  std::vector<Label> loop;

  std::size_t size() const noexcept { return stem.size() + loop.size(); }
  /// Letter at position `i < size()`.
  const Label& at(std::size_t i) const { return i < stem.size() ? stem[i] : loop.at(i - stem.size()); }
  /// Position following `i` (wraps back into the loop).
  std::size_t next(std::size_t i) const { return i + 1 < size() ? i + 1 : stem.size(); }
  /// Letter at position `i` of the infinite word.
  const Label& letter(std::size_t i) const {
    return i < stem.size() ? stem[i] : loop[(i - stem.size()) % loop.size()];
  }

  friend bool operator==(const TraceWord&, const TraceWord&) = default;
  friend auto operator<=>(const TraceWord&, const TraceWord&) = default;
};

/// Trace of a lasso with reserved atoms projected out (`$` optionally kept).
TraceWord trace_of(const KripkeStructure& ks, const Lasso& lasso, bool keep_initial_marker = false);

/// Canonical representative of the stutter class of `w`: no two adjacent
/// letters equal (across the stem/loop seam and around the loop), primitive
/// loop, shortest stem. An eventually constant word gets a one-letter loop.
/// Two words are stutter equivalent iff their normal forms are equal.
TraceWord stutter_normalize(const TraceWord& w);

std::string format_label(const Label& label);
/// `{a b} {} | loop: {b}`
std::string format_word(const TraceWord& w);
/// Finite word, space separated.
std::string format_word(const std::vector<Label>& w);
std::string format_lasso(const Lasso& lasso, const KripkeStructure& ks);

}  // namespace ksred

#endif  // KSRED_TRACE_HPP

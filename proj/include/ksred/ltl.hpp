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

#ifndef KSRED_LTL_HPP
#define KSRED_LTL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ksred/trace.hpp"

namespace ksred {

/// LTL formula over atom names, stored as a node list in postorder (the
/// root is last). Derived operators are desugared when parsing:
/// `false` = !true, `F a` = true U a, `G a` = !F !a, `a R b` = !(!a U !b),
/// `a -> b` = !a | b.
///
/// Syntax: identifiers, `true false ! & | -> X U R F G` and parentheses.
/// Precedence from tightest: unary, U/R (right associative), &, |,
/// -> (right associative).
class LtlFormula {
 public:
  enum class Op { tt, atom, neg, conj, disj, next, until };
  struct Node {
    Op op;
    std::string atom;      // Op::atom only
    std::uint32_t lhs = 0;  // operand index for unary and binary nodes
    std::uint32_t rhs = 0;  // second operand of binary nodes
  };

  /// Throws `ParseError` with the column of the offending token.
  static LtlFormula parse(std::string_view text);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::uint32_t root() const noexcept { return static_cast<std::uint32_t>(nodes_.size() - 1); }
  /// False for the stutter-insensitive fragment.
  bool uses_next() const;
  /// Fully parenthesized core syntax.
  std::string to_string() const;

 private:
  friend class LtlBuilder;
  std::vector<Node> nodes_;
};

/// Truth of `f` at position 0 of the infinite word `w` (non-empty loop).
bool ltl_eval_lasso(const LtlFormula& f, const TraceWord& w);

}  // namespace ksred

#endif  // KSRED_LTL_HPP

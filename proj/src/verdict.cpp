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

#include "ksred/verdict.hpp"

namespace ksred {

std::string_view to_string(Witness::Kind kind) {
  switch (kind) {
    case Witness::Kind::label_mismatch: return "label-mismatch";
    case Witness::Kind::pbr_mismatch: return "pbr-mismatch";
    case Witness::Kind::wpbr_mismatch: return "wpbr-mismatch";
    case Witness::Kind::divergence_mismatch: return "divergence-mismatch";
  }
  return "unknown";
}

std::string describe(const Witness& w, const Partition& p, const KripkeStructure& ks) {
  const std::string c = format_block(p.block(w.block_c), ks);
  const std::string& a = ks.name(w.pred_a);
  const std::string& b = ks.name(w.pred_b);
  switch (w.kind) {
    case Witness::Kind::label_mismatch:
      return "block " + c + " mixes labels of " + a + " and " + b;
    case Witness::Kind::pbr_mismatch:
    case Witness::Kind::wpbr_mismatch: {
      const std::string fn = w.kind == Witness::Kind::pbr_mismatch ? "Pbr" : "WPbr";
      const std::string d = format_block(p.block(*w.block_d), ks);
      return fn + "(" + a + ", C, D) = " + (w.value_a ? "1" : "0") + " but " + fn + "(" + b +
             ", C, D) = " + (w.value_b ? "1" : "0") + " for C = " + c + ", D = " + d;
    }
    case Witness::Kind::divergence_mismatch:
      return "block " + c + " can stay forever via " + a + " but not when entered from " + b;
  }
  return {};
}

}  // namespace ksred

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

#include "ksred/compose.hpp"

#include <set>

#include "ksred/error.hpp"
#include "ksred/kme.hpp"

namespace ksred {

namespace {

Label rename_reserved(const Label& label, const std::string& suffix) {
  std::vector<std::string> out;
  for (const auto& atom : label) out.push_back(is_reserved_atom(atom) ? atom + suffix : atom);
  return make_label(std::move(out));
}

}  // namespace

KripkeStructure sync_compose(const KripkeStructure& k1, const KripkeStructure& k2, const ComposeOptions& opts) {
  const std::size_t n1 = k1.num_states();
  const std::size_t n2 = k2.num_states();
  auto id = [n2](StateId i, StateId j) { return static_cast<StateId>(i * n2 + j); };

  std::vector<std::string> names;
  std::set<std::string> used;
  bool clash = false;
  for (StateId i = 0; i < n1 && !clash; ++i) {
    for (StateId j = 0; j < n2 && !clash; ++j) {
      names.push_back(k1.name(i) + "_" + k2.name(j));
      clash = !used.insert(names.back()).second;
    }
  }
  if (clash) {
    names.clear();
    for (StateId i = 0; i < n1; ++i) {
      for (StateId j = 0; j < n2; ++j) names.push_back("p" + std::to_string(i) + "_" + std::to_string(j));
    }
  }

  std::vector<Label> labels;
  labels.reserve(n1 * n2);
  for (StateId i = 0; i < n1; ++i) {
    const Label left = rename_reserved(k1.label(i), "1");
    for (StateId j = 0; j < n2; ++j) {
      Label both = left;
      const Label right = rename_reserved(k2.label(j), "2");
      both.insert(both.end(), right.begin(), right.end());
      labels.push_back(make_label(std::move(both)));
    }
  }
  std::vector<std::pair<StateId, StateId>> edges;
  for (StateId i = 0; i < n1; ++i) {
    for (StateId j = 0; j < n2; ++j) {
      for (StateId i2 : k1.successors(i)) {
        for (StateId j2 : k2.successors(j)) edges.emplace_back(id(i, j), id(i2, j2));
      }
    }
  }
  std::vector<std::string> aps = k1.aps();
  aps.insert(aps.end(), k2.aps().begin(), k2.aps().end());
  aps = make_label(std::move(aps));

  KripkeStructure product(std::move(names), std::move(aps), std::move(labels), std::move(edges),
                          id(k1.initial(), k2.initial()));
  if (!opts.reachable_only) return product;
  std::vector<bool> keep(product.num_states(), false);
  for (StateId s : reachable_states(product)) keep[s] = true;
  return induced_substructure(product, keep);
}

CompositionalityResult compositionality_check(const KripkeStructure& ks, const Partition& p,
                                              const KripkeStructure& k1) {
  const KripkeStructure quotient = kme_quotient(ks, p);
  NormalizeReport ra, rb;
  const KripkeStructure a = normalize(sync_compose(ks, k1), {}, &ra);
  const KripkeStructure b = normalize(sync_compose(quotient, k1), {}, &rb);

  CompositionalityResult result;
  result.left_states = a.num_states();
  result.right_states = b.num_states();
  result.trace = trace_equivalent(a, b);

  // Pair (x, t) in A with (C, t) in B; ids follow the product layout, with
  // the roots added by normalization appended last.
  const std::size_t n1 = k1.num_states();
  const std::size_t offset = a.num_states();
  std::vector<StateSet> blocks(p.size() * n1);
  for (StateId x = 0; x < ks.num_states(); ++x) {
    for (StateId t = 0; t < n1; ++t) {
      const BlockId c = p.block_of(x);
      blocks[c * n1 + t].push_back(static_cast<StateId>(x * n1 + t));
    }
  }
  for (StateId q = 0; q < quotient.num_states() * n1; ++q) blocks[q].push_back(static_cast<StateId>(offset + q));
  const bool root_a = ra.added_root, root_b = rb.added_root;
  if (root_a && root_b) {
    blocks.push_back({*ra.root, static_cast<StateId>(offset + *rb.root)});
  } else if (root_a) {
    blocks.push_back({*ra.root});
  } else if (root_b) {
    blocks.push_back({static_cast<StateId>(offset + *rb.root)});
  }
  const Verdict v = is_kme(disjoint_union(a, b), Partition(a.num_states() + b.num_states(), std::move(blocks)));
  result.strict = v.accepted();
  result.strict_witness = v.witness;
  return result;
}

}  // namespace ksred

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

#include "ksred/trace.hpp"

#include <algorithm>

#include "ksred/error.hpp"

namespace ksred {

bool is_lasso_of(const KripkeStructure& ks, const Lasso& lasso) {
  if (lasso.loop.empty()) return false;
  std::vector<StateId> seq = lasso.stem;
  seq.insert(seq.end(), lasso.loop.begin(), lasso.loop.end());
  for (StateId s : seq) {
    if (!ks.contains(s)) return false;
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!ks.has_transition(seq[i], seq[i + 1])) return false;
  }
  return ks.has_transition(lasso.loop.back(), lasso.loop.front());
}

TraceWord trace_of(const KripkeStructure& ks, const Lasso& lasso, bool keep_initial_marker) {
  TraceWord w;
  for (StateId s : lasso.stem) w.stem.push_back(project_label(ks.label(s), keep_initial_marker));
  for (StateId s : lasso.loop) w.loop.push_back(project_label(ks.label(s), keep_initial_marker));
  return w;
}

namespace {

std::vector<Label> collapse_runs(const std::vector<Label>& seq) {
  std::vector<Label> out;
  for (const auto& l : seq) {
    if (out.empty() || out.back() != l) out.push_back(l);
  }
  return out;
}

std::size_t primitive_period(const std::vector<Label>& loop) {
  const std::size_t m = loop.size();
  for (std::size_t p = 1; p < m; ++p) {
    if (m % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < m && periodic; ++i) periodic = loop[i] == loop[i - p];
    if (periodic) return p;
  }
  return m;
}

}  // namespace

TraceWord stutter_normalize(const TraceWord& w) {
  if (w.loop.empty()) throw InvalidArgument("trace word needs a non-empty loop");
  const auto& v = w.loop;
  const std::size_t m = v.size();

  TraceWord out;
  bool constant = std::all_of(v.begin(), v.end(), [&](const Label& l) { return l == v.front(); });
  if (constant) {
    auto stem = w.stem;
    stem.push_back(v.front());
    out.stem = collapse_runs(stem);
    out.stem.pop_back();
    out.loop = {v.front()};
    return out;
  }

  // Rotate so the loop starts at a letter change; the skipped prefix joins
  // the stem. Then the loop is cyclically run-free after collapsing.
  std::size_t r = 0;
  while (v[r] == v[(r + m - 1) % m]) ++r;
  auto stem = w.stem;
  stem.insert(stem.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
  std::vector<Label> loop(v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
  loop.insert(loop.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));

  out.stem = collapse_runs(stem);
  out.loop = collapse_runs(loop);
  if (!out.stem.empty() && out.stem.back() == out.loop.front()) out.stem.pop_back();
  out.loop.resize(primitive_period(out.loop));
  // u·x·(y…x)^ω == u·(x y…)^ω
  while (!out.stem.empty() && out.stem.back() == out.loop.back()) {
    std::rotate(out.loop.rbegin(), out.loop.rbegin() + 1, out.loop.rend());
    out.stem.pop_back();
  }
  return out;
}

std::string format_label(const Label& label) {
  std::string out = "{";
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) out += ' ';
    out += label[i];
  }
  return out + "}";
}

std::string format_word(const std::vector<Label>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_label(w[i]);
  }
  return out;
}

std::string format_word(const TraceWord& w) {
  std::string out = format_word(w.stem);
  if (!out.empty()) out += ' ';
  return out + "| loop: " + format_word(w.loop);
}

std::string format_lasso(const Lasso& lasso, const KripkeStructure& ks) {
  std::string out;
  for (StateId s : lasso.stem) out += ks.name(s) + ' ';
  out += "| loop:";
  for (StateId s : lasso.loop) out += ' ' + ks.name(s);
  return out;
}

}  // namespace ksred

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

#include "ksred/partition.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ksred/error.hpp"
#include "text_util.hpp"

namespace ksred {

Partition::Partition(std::size_t num_states, std::vector<StateSet> blocks)
    : blocks_(std::move(blocks)) {
  constexpr auto kUnset = static_cast<BlockId>(-1);
  block_of_.assign(num_states, kUnset);
  for (auto& b : blocks_) {
    if (b.empty()) throw InvalidArgument("empty block");
    b = make_state_set(std::move(b));
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const StateSet& x, const StateSet& y) { return x.front() < y.front(); });
  for (BlockId i = 0; i < blocks_.size(); ++i) {
    for (StateId s : blocks_[i]) {
      if (s >= num_states) throw InvalidArgument("block member out of range");
      if (block_of_[s] != kUnset) throw InvalidArgument("blocks overlap");
      block_of_[s] = i;
    }
  }
  if (std::find(block_of_.begin(), block_of_.end(), kUnset) != block_of_.end()) {
    throw InvalidArgument("blocks do not cover every state");
  }
}

Partition Partition::identity(std::size_t num_states) {
  std::vector<StateSet> blocks;
  blocks.reserve(num_states);
  for (StateId s = 0; s < num_states; ++s) blocks.push_back({s});
  return Partition(num_states, std::move(blocks));
}

Partition Partition::from_block_ids(const std::vector<BlockId>& block_of) {
  std::map<BlockId, StateSet> groups;
  for (StateId s = 0; s < block_of.size(); ++s) groups[block_of[s]].push_back(s);
  std::vector<StateSet> blocks;
  blocks.reserve(groups.size());
  for (auto& [_, members] : groups) blocks.push_back(std::move(members));
  return Partition(block_of.size(), std::move(blocks));
}

Partition Partition::merged(const std::vector<BlockId>& group) const {
  if (group.empty()) return *this;
  std::vector<bool> in_group(blocks_.size(), false);
  for (BlockId b : group) in_group.at(b) = true;
  std::vector<StateSet> blocks;
  StateSet joined;
  for (BlockId b = 0; b < blocks_.size(); ++b) {
    if (in_group[b]) {
      joined.insert(joined.end(), blocks_[b].begin(), blocks_[b].end());
    } else {
      blocks.push_back(blocks_[b]);
    }
  }
  blocks.push_back(std::move(joined));
  return Partition(num_states(), std::move(blocks));
}

Partition Partition::extended(std::size_t n) const {
  if (n < num_states()) throw InvalidArgument("cannot shrink a partition by extension");
  auto blocks = blocks_;
  for (StateId s = static_cast<StateId>(num_states()); s < n; ++s) blocks.push_back({s});
  return Partition(n, std::move(blocks));
}

Partition Partition::restricted(const std::vector<bool>& keep) const {
  if (keep.size() != num_states()) throw InvalidArgument("mask size mismatch");
  std::vector<StateId> remap(num_states(), 0);
  StateId next = 0;
  for (StateId s = 0; s < num_states(); ++s) {
    if (keep[s]) remap[s] = next++;
  }
  std::vector<StateSet> blocks;
  for (const auto& b : blocks_) {
    StateSet kept;
    for (StateId s : b) {
      if (keep[s]) kept.push_back(remap[s]);
    }
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return Partition(next, std::move(blocks));
}

Partition label_partition(const KripkeStructure& ks) {
  std::map<Label, StateSet> groups;
  for (StateId s = 0; s < ks.num_states(); ++s) groups[ks.label(s)].push_back(s);
  std::vector<StateSet> blocks;
  for (auto& [_, members] : groups) blocks.push_back(std::move(members));
  return Partition(ks.num_states(), std::move(blocks));
}

bool respects_labels(const KripkeStructure& ks, const Partition& p) {
  for (const auto& b : p.blocks()) {
    for (StateId s : b) {
      if (ks.label(s) != ks.label(b.front())) return false;
    }
  }
  return true;
}

Partition parse_partition(std::string_view text, const KripkeStructure& ks) {
  std::vector<StateSet> blocks;
  std::vector<std::size_t> seen_line(ks.num_states(), 0);
  std::size_t line_no = 0;

  auto add_block = [&](const std::vector<std::string>& names) {
    if (names.empty()) return;
    StateSet block;
    for (const auto& n : names) {
      auto s = ks.find(n);
      if (!s) throw ParseError("unknown-state '" + n + "'", line_no);
      if (seen_line[*s]) {
        throw ParseError("duplicated-state '" + n + "' (first on line " +
                             std::to_string(seen_line[*s]) + ")",
                         line_no);
      }
      seen_line[*s] = line_no;
      block.push_back(*s);
    }
    blocks.push_back(std::move(block));
  };

  for (const auto& raw : detail::split_lines(text)) {
    ++line_no;
    std::string line(detail::strip_comment(raw));
    if (line.find('{') == std::string::npos && line.find('}') == std::string::npos) {
      add_block(detail::tokenize(line));
      continue;
    }
    std::string current;
    bool open = false;
    for (char c : line) {
      if (c == '{') {
        if (open) throw ParseError("nested '{'", line_no);
        open = true;
        current.clear();
      } else if (c == '}') {
        if (!open) throw ParseError("unbalanced '}'", line_no);
        open = false;
        auto names = detail::tokenize(current);
        if (names.empty()) throw ParseError("empty block", line_no);
        add_block(names);
      } else if (open) {
        current.push_back(c);
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw ParseError("text outside '{...}'", line_no);
      }
    }
    if (open) throw ParseError("unterminated '{'", line_no);
  }

  for (StateId s = 0; s < ks.num_states(); ++s) {
    if (!seen_line[s]) throw ParseError("missing-state '" + ks.name(s) + "'");
  }
  return Partition(ks.num_states(), std::move(blocks));
}

Partition load_partition(const std::string& path, const KripkeStructure& ks) {
  return parse_partition(detail::read_file(path), ks);
}

std::string format_block(const StateSet& block, const KripkeStructure& ks) {
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ' ';
    out += ks.name(block[i]);
  }
  return out + "}";
}

std::string serialize_partition(const Partition& p, const KripkeStructure& ks) {
  std::ostringstream out;
  for (const auto& b : p.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << ks.name(b[i]);
    out << '\n';
  }
  return out.str();
}

std::string format_partition(const Partition& p, const KripkeStructure& ks) {
  std::string out;
  for (const auto& b : p.blocks()) out += format_block(b, ks);
  return out;
}

}  // namespace ksred

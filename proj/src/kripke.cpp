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

#include "ksred/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ksred/error.hpp"
#include "text_util.hpp"

namespace ksred {

bool is_bottom_atom(std::string_view atom) { return atom.starts_with(kBottomAtom); }

bool is_reserved_atom(std::string_view atom) {
  return atom.starts_with(kInitialAtom) || is_bottom_atom(atom);
}

bool is_identifier(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

Label project_label(const Label& label, bool keep_initial_marker) {
  Label out;
  for (const auto& atom : label) {
    if (!is_reserved_atom(atom) || (keep_initial_marker && atom == kInitialAtom)) out.push_back(atom);
  }
  return out;
}

Label make_label(std::vector<std::string> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

StateSet make_state_set(std::vector<StateId> states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return states;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::totality: return "totality";
    case Violation::Kind::unknown_state: return "unknown-state";
    case Violation::Kind::duplicate_state: return "duplicate-state";
    case Violation::Kind::missing_initial: return "missing-initial";
    case Violation::Kind::duplicate_initial: return "duplicate-initial";
    case Violation::Kind::duplicate_label: return "duplicate-label";
    case Violation::Kind::unknown_atom: return "unknown-atom";
    case Violation::Kind::reserved_atom: return "reserved-atom";
    case Violation::Kind::bad_identifier: return "bad-identifier";
  }
  return "unknown";
}

std::string Violation::to_string() const {
  std::string out(ksred::to_string(kind));
  out += "(" + subject + ")";
  return out;
}

// KripkeStructure -------------------------------------------------------------

KripkeStructure::KripkeStructure(std::vector<std::string> state_names, std::vector<std::string> aps,
                                 std::vector<Label> labels,
                                 std::vector<std::pair<StateId, StateId>> edges, StateId initial)
    : names_(std::move(state_names)), aps_(std::move(aps)), labels_(std::move(labels)),
      initial_(initial) {
  if (names_.empty()) throw InvalidArgument("a Kripke structure needs at least one state");
  if (labels_.size() != names_.size()) throw InvalidArgument("one label per state required");
  if (initial_ >= names_.size()) throw InvalidArgument("initial state out of range");

  for (const auto& ap : aps_) {
    if (is_reserved_atom(ap)) throw InvalidArgument("reserved atom '" + ap + "' declared as user atom");
    if (!is_identifier(ap)) throw InvalidArgument("bad atom name '" + ap + "'");
  }
  std::set<std::string_view> ap_set(aps_.begin(), aps_.end());
  if (ap_set.size() != aps_.size()) throw InvalidArgument("duplicate atom in aps");

  for (StateId s = 0; s < names_.size(); ++s) {
    if (!is_identifier(names_[s])) throw InvalidArgument("bad state name '" + names_[s] + "'");
    if (!index_.emplace(names_[s], s).second) {
      throw InvalidArgument("duplicate state '" + names_[s] + "'");
    }
    labels_[s] = make_label(std::move(labels_[s]));
    for (const auto& atom : labels_[s]) {
      if (!is_reserved_atom(atom) && !ap_set.contains(atom)) {
        throw InvalidArgument("atom '" + atom + "' of state '" + names_[s] + "' not in aps");
      }
    }
  }

  succ_.assign(names_.size(), {});
  pred_.assign(names_.size(), {});
  for (auto [from, to] : edges) {
    if (from >= names_.size() || to >= names_.size()) {
      throw InvalidArgument("transition endpoint out of range");
    }
    succ_[from].push_back(to);
    pred_[to].push_back(from);
  }
  for (auto& v : succ_) v = make_state_set(std::move(v));
  for (auto& v : pred_) v = make_state_set(std::move(v));
}

std::size_t KripkeStructure::num_transitions() const noexcept {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

std::optional<StateId> KripkeStructure::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateId KripkeStructure::id(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw InvalidArgument("unknown state '" + std::string(name) + "'");
}

bool KripkeStructure::has_transition(StateId from, StateId to) const {
  const auto& s = succ_.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<StateId, StateId>> KripkeStructure::transitions() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId s = 0; s < succ_.size(); ++s) {
    for (StateId t : succ_[s]) out.emplace_back(s, t);
  }
  return out;
}

KripkeStructure KripkeStructure::from_description(const KripkeDescription& desc) {
  auto violations = validate(desc);
  if (!violations.empty()) {
    std::string msg = "invalid Kripke structure:";
    for (const auto& v : violations) msg += " " + v.to_string();
    throw ParseError(msg);
  }
  std::unordered_map<std::string, StateId> index;
  for (StateId s = 0; s < desc.states.size(); ++s) index.emplace(desc.states[s], s);

  std::vector<Label> labels(desc.states.size());
  for (const auto& [state, atoms] : desc.labels) labels[index.at(state)] = make_label(atoms);

  std::vector<std::pair<StateId, StateId>> edges;
  edges.reserve(desc.transitions.size());
  for (const auto& [from, to] : desc.transitions) edges.emplace_back(index.at(from), index.at(to));

  std::vector<std::string> aps;
  for (const auto& ap : desc.aps) {
    if (std::find(aps.begin(), aps.end(), ap) == aps.end()) aps.push_back(ap);
  }
  return KripkeStructure(desc.states, std::move(aps), std::move(labels), std::move(edges),
                         index.at(desc.initial.front()));
}

// Validation ------------------------------------------------------------------

std::vector<Violation> validate(const KripkeDescription& desc) {
  using K = Violation::Kind;
  std::vector<Violation> out;

  std::set<std::string> aps;
  for (const auto& ap : desc.aps) {
    if (is_reserved_atom(ap)) {
      out.push_back({K::reserved_atom, ap});
    } else if (!is_identifier(ap)) {
      out.push_back({K::bad_identifier, ap});
    } else {
      aps.insert(ap);
    }
  }

  std::set<std::string> states;
  for (const auto& s : desc.states) {
    if (!is_identifier(s)) out.push_back({K::bad_identifier, s});
    if (!states.insert(s).second) out.push_back({K::duplicate_state, s});
  }

  if (desc.initial.empty()) {
    out.push_back({K::missing_initial, ""});
  } else {
    if (desc.initial.size() > 1) out.push_back({K::duplicate_initial, desc.initial[1]});
    if (!states.contains(desc.initial.front())) out.push_back({K::unknown_state, desc.initial.front()});
  }

  std::set<std::string> labelled;
  for (const auto& [state, atoms] : desc.labels) {
    if (!states.contains(state)) out.push_back({K::unknown_state, state});
    if (!labelled.insert(state).second) out.push_back({K::duplicate_label, state});
    for (const auto& atom : atoms) {
      if (is_reserved_atom(atom)) continue;
      if (!aps.contains(atom)) out.push_back({K::unknown_atom, atom});
    }
  }

  std::set<std::string> has_succ;
  for (const auto& [from, to] : desc.transitions) {
    bool ok = true;
    for (const auto* end : {&from, &to}) {
      if (!states.contains(*end)) {
        out.push_back({K::unknown_state, *end});
        ok = false;
      }
    }
    if (ok) has_succ.insert(from);
  }
  for (const auto& s : desc.states) {
    if (!has_succ.contains(s)) out.push_back({K::totality, s});
  }

  // Report each distinct problem once.
  std::vector<Violation> unique;
  for (auto& v : out) {
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(std::move(v));
  }
  return unique;
}

std::vector<Violation> validate(const KripkeStructure& ks) {
  std::vector<Violation> out;
  for (StateId s = 0; s < ks.num_states(); ++s) {
    if (ks.successors(s).empty()) out.push_back({Violation::Kind::totality, ks.name(s)});
  }
  return out;
}

// Text format -----------------------------------------------------------------

KripkeDescription parse_ks_description(std::string_view text) {
  KripkeDescription desc;
  bool seen_aps = false;
  bool seen_states = false;
  std::size_t line_no = 0;
  for (const auto& line : detail::split_lines(text)) {
    ++line_no;
    auto tokens = detail::tokenize(detail::strip_comment(line));
    if (tokens.empty()) continue;
    const std::string keyword = tokens.front();
    std::vector<std::string> args(tokens.begin() + 1, tokens.end());
    if (keyword == "aps") {
      if (seen_aps) throw ParseError("duplicate 'aps' declaration", line_no);
      seen_aps = true;
      desc.aps = std::move(args);
    } else if (keyword == "states") {
      if (seen_states) throw ParseError("duplicate 'states' declaration", line_no);
      if (args.empty()) throw ParseError("'states' needs at least one state", line_no);
      seen_states = true;
      desc.states = std::move(args);
    } else if (keyword == "init") {
      if (args.size() != 1) throw ParseError("'init' takes exactly one state", line_no);
      if (!desc.initial.empty()) throw ParseError("duplicate 'init' declaration", line_no);
      desc.initial.push_back(args.front());
    } else if (keyword == "label") {
      if (args.empty()) throw ParseError("'label' needs a state", line_no);
      std::string state = args.front();
      desc.labels.emplace_back(std::move(state), std::vector<std::string>(args.begin() + 1, args.end()));
    } else if (keyword == "trans") {
      if (args.size() != 2) throw ParseError("'trans' takes exactly two states", line_no);
      desc.transitions.emplace_back(args[0], args[1]);
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line_no);
    }
  }
  if (!seen_states) throw ParseError("missing 'states' declaration");
  return desc;
}

KripkeStructure parse_ks(std::string_view text) {
  return KripkeStructure::from_description(parse_ks_description(text));
}

KripkeStructure load_ks(const std::string& path) { return parse_ks(detail::read_file(path)); }

std::string serialize_ks(const KripkeStructure& ks) {
  std::ostringstream out;
  if (!ks.aps().empty()) {
    out << "aps";
    for (const auto& ap : ks.aps()) out << ' ' << ap;
    out << '\n';
  }
  out << "states";
  for (const auto& n : ks.names()) out << ' ' << n;
  out << '\n';
  out << "init " << ks.name(ks.initial()) << '\n';
  for (StateId s = 0; s < ks.num_states(); ++s) {
    if (ks.label(s).empty()) continue;
    out << "label " << ks.name(s);
    for (const auto& atom : ks.label(s)) out << ' ' << atom;
    out << '\n';
  }
  for (auto [from, to] : ks.transitions()) {
    out << "trans " << ks.name(from) << ' ' << ks.name(to) << '\n';
  }
  return out.str();
}

// Normalization -----------------------------------------------------------------

std::optional<StateId> find_root(const KripkeStructure& ks) {
  for (StateId s = 0; s < ks.num_states(); ++s) {
    const auto& l = ks.label(s);
    if (std::find(l.begin(), l.end(), kBottomAtom) != l.end()) return s;
  }
  return std::nullopt;
}

namespace {

std::string fresh_name(const KripkeStructure& ks, std::string base) {
  while (ks.find(base)) base += '\'';
  return base;
}

}  // namespace

KripkeStructure normalize(const KripkeStructure& ks, const NormalizeOptions& opts,
                          NormalizeReport* report) {
  NormalizeReport rep;
  auto names = ks.names();
  auto labels = ks.labels();
  auto edges = ks.transitions();

  rep.root = find_root(ks);
  if (opts.add_pred_state) {
    std::vector<StateId> orphans;
    for (StateId s = 0; s < ks.num_states(); ++s) {
      if (ks.predecessors(s).empty()) orphans.push_back(s);
    }
    if (!orphans.empty()) {
      if (!rep.root) {
        rep.root = static_cast<StateId>(names.size());
        names.push_back(fresh_name(ks, "s_hat"));
        labels.push_back(Label{std::string(kBottomAtom)});
        edges.emplace_back(*rep.root, *rep.root);
        rep.added_root = true;
      }
      for (StateId s : orphans) {
        if (s != *rep.root) edges.emplace_back(*rep.root, s);
      }
      rep.added_root_edges = true;
    }
  }
  if (opts.mark_initial) {
    auto& l = labels[ks.initial()];
    if (std::find(l.begin(), l.end(), kInitialAtom) == l.end()) {
      l.emplace_back(kInitialAtom);
      rep.marked_initial = true;
    }
  }
  if (report) *report = rep;
  return KripkeStructure(std::move(names), ks.aps(), std::move(labels), std::move(edges), ks.initial());
}

KripkeStructure strip_reserved(const KripkeStructure& ks) {
  std::vector<bool> keep(ks.num_states(), true);
  for (StateId s = 0; s < ks.num_states(); ++s) {
    for (const auto& a : ks.label(s)) {
      if (is_bottom_atom(a)) keep[s] = false;
    }
  }
  auto sub = induced_substructure(ks, keep);
  std::vector<Label> labels;
  labels.reserve(sub.num_states());
  for (const auto& l : sub.labels()) labels.push_back(project_label(l));
  return KripkeStructure(sub.names(), sub.aps(), std::move(labels), sub.transitions(), sub.initial());
}

// Graph primitives ------------------------------------------------------------

StateSet post_in(const KripkeStructure& ks, StateId s, const StateSet& targets) {
  if (!ks.contains(s)) throw InvalidArgument("unknown state id " + std::to_string(s));
  StateSet out;
  std::set_intersection(ks.successors(s).begin(), ks.successors(s).end(), targets.begin(),
                        targets.end(), std::back_inserter(out));
  return out;
}

StateSet pred_of(const KripkeStructure& ks, const StateSet& targets) {
  std::vector<StateId> out;
  for (StateId t : targets) {
    if (!ks.contains(t)) throw InvalidArgument("unknown state id " + std::to_string(t));
    const auto& p = ks.predecessors(t);
    out.insert(out.end(), p.begin(), p.end());
  }
  return make_state_set(std::move(out));
}

bool is_stutter_step(const KripkeStructure& ks, StateId s, StateId t) {
  if (!ks.contains(s) || !ks.contains(t) || !ks.has_transition(s, t)) {
    throw InvalidArgument("not a transition");
  }
  return ks.label(s) == ks.label(t);
}

std::vector<StateId> reachable_states(const KripkeStructure& ks) {
  std::vector<bool> seen(ks.num_states(), false);
  std::vector<StateId> order{ks.initial()};
  seen[ks.initial()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (StateId t : ks.successors(order[i])) {
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

KripkeStructure induced_substructure(const KripkeStructure& ks, const std::vector<bool>& keep) {
  if (keep.size() != ks.num_states()) throw InvalidArgument("mask size mismatch");
  if (!keep[ks.initial()]) throw InvalidArgument("cannot drop the initial state");
  std::vector<StateId> remap(ks.num_states(), 0);
  std::vector<std::string> names;
  std::vector<Label> labels;
  for (StateId s = 0; s < ks.num_states(); ++s) {
    if (!keep[s]) continue;
    remap[s] = static_cast<StateId>(names.size());
    names.push_back(ks.name(s));
    labels.push_back(ks.label(s));
  }
  std::vector<std::pair<StateId, StateId>> edges;
  for (auto [from, to] : ks.transitions()) {
    if (keep[from] && keep[to]) edges.emplace_back(remap[from], remap[to]);
  }
  return KripkeStructure(std::move(names), ks.aps(), std::move(labels), std::move(edges),
                         remap[ks.initial()]);
}

KripkeStructure disjoint_union(const KripkeStructure& a, const KripkeStructure& b) {
  std::vector<std::string> names;
  std::vector<Label> labels;
  for (StateId s = 0; s < a.num_states(); ++s) {
    names.push_back("l_" + a.name(s));
    labels.push_back(a.label(s));
  }
  for (StateId s = 0; s < b.num_states(); ++s) {
    names.push_back("r_" + b.name(s));
    labels.push_back(b.label(s));
  }
  auto aps = a.aps();
  for (const auto& ap : b.aps()) {
    if (std::find(aps.begin(), aps.end(), ap) == aps.end()) aps.push_back(ap);
  }
  auto edges = a.transitions();
  const auto offset = static_cast<StateId>(a.num_states());
  for (auto [from, to] : b.transitions()) edges.emplace_back(from + offset, to + offset);
  return KripkeStructure(std::move(names), std::move(aps), std::move(labels), std::move(edges),
                         a.initial());
}

// Isomorphism -------------------------------------------------------------------

namespace {

struct IsoSearch {
  const KripkeStructure& a;
  const KripkeStructure& b;
  std::vector<StateId> order;  // states of `a` in assignment order
  std::vector<std::optional<StateId>> map_ab;
  std::vector<bool> used_b;

  bool compatible(StateId u, StateId v) const {
    return a.label(u) == b.label(v) && a.successors(u).size() == b.successors(v).size() &&
           a.predecessors(u).size() == b.predecessors(v).size();
  }

  // Edges between `u` and every already-mapped state must agree.
  bool consistent(StateId u, StateId v) const {
    if (a.has_transition(u, u) != b.has_transition(v, v)) return false;
    for (StateId w : a.successors(u)) {
      if (map_ab[w] && !b.has_transition(v, *map_ab[w])) return false;
    }
    for (StateId w : a.predecessors(u)) {
      if (map_ab[w] && !b.has_transition(*map_ab[w], v)) return false;
    }
    std::size_t mapped_succ = 0, mapped_pred = 0;
    for (StateId w : a.successors(u)) mapped_succ += map_ab[w].has_value();
    for (StateId w : a.predecessors(u)) mapped_pred += map_ab[w].has_value();
    std::size_t used_succ = 0, used_pred = 0;
    for (StateId w : b.successors(v)) used_succ += used_b[w] || w == v;
    for (StateId w : b.predecessors(v)) used_pred += used_b[w] || w == v;
    // `u` itself is about to be mapped; count self-loops once on both sides.
    if (a.has_transition(u, u)) {
      ++mapped_succ;
      ++mapped_pred;
    }
    return mapped_succ == used_succ && mapped_pred == used_pred;
  }

  bool extend(std::size_t k) {
    if (k == order.size()) return true;
    StateId u = order[k];
    auto try_candidate = [&](StateId v) {
      if (used_b[v] || !compatible(u, v) || !consistent(u, v)) return false;
      map_ab[u] = v;
      used_b[v] = true;
      if (extend(k + 1)) return true;
      map_ab[u].reset();
      used_b[v] = false;
      return false;
    };
    // Prefer candidates adjacent to an already-mapped predecessor.
    for (StateId p : a.predecessors(u)) {
      if (p != u && map_ab[p]) {
        for (StateId v : b.successors(*map_ab[p])) {
          if (try_candidate(v)) return true;
        }
        return false;
      }
    }
    for (StateId v = 0; v < b.num_states(); ++v) {
      if (try_candidate(v)) return true;
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const KripkeStructure& a, const KripkeStructure& b) {
  if (a.num_states() != b.num_states() || a.num_transitions() != b.num_transitions()) return false;
  using Sig = std::tuple<Label, std::size_t, std::size_t>;
  std::multiset<Sig> sig_a, sig_b;
  for (StateId s = 0; s < a.num_states(); ++s) {
    sig_a.emplace(a.label(s), a.successors(s).size(), a.predecessors(s).size());
    sig_b.emplace(b.label(s), b.successors(s).size(), b.predecessors(s).size());
  }
  if (sig_a != sig_b) return false;

  IsoSearch search{a, b, {}, std::vector<std::optional<StateId>>(a.num_states()),
                   std::vector<bool>(b.num_states(), false)};
  // BFS order from the initial state, then from every remaining state.
  std::vector<bool> seen(a.num_states(), false);
  auto bfs = [&](StateId root) {
    std::deque<StateId> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      search.order.push_back(s);
      for (StateId t : a.successors(s)) {
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  };
  bfs(a.initial());
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (!seen[s]) bfs(s);
  }

  if (!search.compatible(a.initial(), b.initial())) return false;
  if (!search.consistent(a.initial(), b.initial())) return false;
  search.map_ab[a.initial()] = b.initial();
  search.used_b[b.initial()] = true;
  return search.extend(1);
}

}  // namespace ksred

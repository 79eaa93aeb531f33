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

#include "ksred/generate.hpp"

#include <limits>
#include <random>

#include "ksred/error.hpp"

namespace ksred {

namespace {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t m) {
    // Smallest all-ones mask covering m - 1, then reject overshoots.
    std::uint64_t mask = m - 1;
    for (int shift = 1; shift < 64; shift <<= 1) mask |= mask >> shift;
    while (true) {
      const std::uint64_t x = rng_() & mask;
      if (x < m) return x;
    }
  }
  bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

KripkeStructure generate_random(const GenOptions& opts) {
  if (opts.states < 1) throw InvalidArgument("need at least one state");
  if (opts.aps > 26) throw InvalidArgument("at most 26 atoms");
  if (!(opts.density >= 0.0 && opts.density <= 1.0)) throw InvalidArgument("density must lie in [0, 1]");
  if (opts.states > std::numeric_limits<StateId>::max() / 2) throw InvalidArgument("too many states");

  Draws draws(opts.seed);
  std::vector<std::string> names, aps;
  for (std::size_t i = 0; i < opts.states; ++i) names.push_back("s" + std::to_string(i));
  for (std::size_t k = 0; k < opts.aps; ++k) aps.emplace_back(1, static_cast<char>('a' + k));

  std::vector<Label> labels(opts.states);
  for (auto& l : labels) {
    for (const auto& atom : aps) {
      if (draws.chance(0.5)) l.push_back(atom);
    }
  }
  std::vector<std::pair<StateId, StateId>> edges;
  const auto n = static_cast<StateId>(opts.states);
  for (StateId s = 0; s < n; ++s) {
    const auto forced = static_cast<StateId>(draws.below(n));
    for (StateId t = 0; t < n; ++t) {
      if (t == forced || draws.chance(opts.density)) edges.emplace_back(s, t);
    }
  }
  return KripkeStructure(std::move(names), std::move(aps), std::move(labels), std::move(edges), 0);
}

}  // namespace ksred

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

#ifndef KSRED_GENERATE_HPP
#define KSRED_GENERATE_HPP

#include <cstdint>

#include "ksred/kripke.hpp"

namespace ksred {

struct GenOptions {
  std::size_t states = 4;
  std::size_t aps = 1;  // at most 26 (atoms a, b, ...)
  double density = 0.3;
  std::uint64_t seed = 1;
};

/// Random total KS with states s0..s(n-1), s0 initial.
///
/// Draws come from std::mt19937_64 seeded with `seed`, in this order: one
/// draw per (state, atom) deciding membership with probability 1/2; then per
/// state one forced successor drawn uniformly, followed by one draw per other
/// target deciding that edge with probability `density`. A uniform index
/// below m masks the low bits to the next power of two and rejects
/// overshoots; a probability draw compares (x >> 11) * 2^-53 with the
/// threshold. Output is therefore
/// identical on every platform.
KripkeStructure generate_random(const GenOptions& opts);

}  // namespace ksred

#endif  // KSRED_GENERATE_HPP

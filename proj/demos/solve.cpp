// Copyright 2026 The extgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Parses a small game from text, lists its subgame perfect equilibria and
// cross-checks them against exhaustive enumeration.

#include <cstdlib>
#include <iostream>

#include "extgames/extgames.hpp"
#include "extgames/textio/dsl.hpp"

namespace {

constexpr const char* kCentipede = R"(
arena {
  agents A, B;
  choices A {take, pass};
  choices B {take, pass};
  utility A int leq;
  utility B int leq;
}
def a1 = node A {take -> t1, pass -> b1};
def b1 = node B {take -> t2, pass -> a2};
def a2 = node A {take -> t3, pass -> end};
def t1 = leaf {A: 1, B: 0};
def t2 = leaf {A: 0, B: 2};
def t3 = leaf {A: 3, B: 1};
def end = leaf {A: 2, B: 4};
root a1;
)";

}  // namespace

int main() {
  const auto game = extgames::textio::ParseGame(kCentipede);
  const auto spe = extgames::BackwardInduction(game, extgames::TieRule::kAllOptima);
  for (const auto& profile : spe) {
    const auto r = extgames::Uassign(profile, profile.table_size() + 1);
    std::cout << "equilibrium outcome: "
              << extgames::FormatPayoff(game.arena(), *extgames::AssignedPayoff(r))
              << "\n";
  }
  const auto brute = extgames::EnumerateSpeBruteforce(game, 4096);
  const bool same =
      extgames::CanonicalProfileSet(spe) == extgames::CanonicalProfileSet(brute);
  std::cout << "matches exhaustive enumeration: " << (same ? "yes" : "no") << "\n";
  return same ? EXIT_SUCCESS : EXIT_FAILURE;
}

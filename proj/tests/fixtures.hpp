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

// Small hand-built games used across the unit tests.

#ifndef EXTGAMES_TESTS_FIXTURES_HPP_
#define EXTGAMES_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "extgames/extgames.hpp"

namespace extgames::fixtures {

inline Payoff Ints(std::initializer_list<std::int64_t> values) {
  std::vector<Utility> v;
  for (std::int64_t x : values) v.push_back(Utility{x});
  return Payoff(std::move(v));
}

// One agent A with integer utilities and `arity` choices.
inline ArenaPtr SoloArena(std::size_t arity, PrefKind pref = PrefKind::kIntLeq) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < arity; ++i) labels.push_back("c" + std::to_string(i));
  return MakeArena({AgentSpec{"A", ChoiceSpace::Enumerated(labels),
                              UtilityDomain::Integers(pref)}});
}

inline GameSystem LeafGame(ArenaPtr arena, Payoff p) {
  return GameSystem::Census(std::move(arena), {Leaf{std::move(p)}});
}

inline StrategySystem LeafProfile(ArenaPtr arena, Payoff p) {
  return StrategySystem::Census(std::move(arena), {Leaf{std::move(p)}});
}

// A single A-node whose choice i leads to a leaf worth values[i].
inline GameSystem OneNodeGame(std::vector<std::int64_t> values,
                              PrefKind pref = PrefKind::kIntLeq) {
  ArenaPtr arena = SoloArena(values.size(), pref);
  std::vector<GameSystem::View> states;
  std::vector<Edge> next;
  for (std::size_t i = 0; i < values.size(); ++i) next.push_back(Edge{i + 1, 0});
  states.push_back(GameNodeView(AgentId{0}, std::move(next)));
  for (std::int64_t v : values) states.push_back(Leaf{Ints({v})});
  return GameSystem::Census(arena, std::move(states));
}

inline StrategySystem OneNodeProfile(std::vector<std::int64_t> values,
                                     std::size_t chosen,
                                     PrefKind pref = PrefKind::kIntLeq) {
  ArenaPtr arena = SoloArena(values.size(), pref);
  std::vector<StrategySystem::View> states;
  std::vector<Edge> next;
  for (std::size_t i = 0; i < values.size(); ++i) next.push_back(Edge{i + 1, 0});
  states.push_back(StrategyNodeView(AgentId{0}, Choice{chosen}, std::move(next)));
  for (std::int64_t v : values) states.push_back(Leaf{Ints({v})});
  return StrategySystem::Census(arena, std::move(states));
}

// A moves first: `enter` leads to B's node, `exit` to the leaf (3,3). B picks
// `left` for (0,5) or `right` for (9,1).
inline ArenaPtr Depth2Arena() {
  return MakeArena({
      AgentSpec{"A", ChoiceSpace::Enumerated({"enter", "exit"}),
                UtilityDomain::Integers()},
      AgentSpec{"B", ChoiceSpace::Enumerated({"left", "right"}),
                UtilityDomain::Integers()},
  });
}

inline GameSystem Depth2Game() {
  return GameSystem::Census(
      Depth2Arena(),
      {GameNodeView(AgentId{0}, Edges({1, 2})),
       GameNodeView(AgentId{1}, Edges({3, 4})), Leaf{Ints({3, 3})},
       Leaf{Ints({0, 5})}, Leaf{Ints({9, 1})}},
      0, {"a", "b", "exit", "b_left", "b_right"});
}

inline StrategySystem Depth2Profile(Choice a, Choice b) {
  return StrategySystem::Census(
      Depth2Arena(),
      {StrategyNodeView(AgentId{0}, a, Edges({1, 2})),
       StrategyNodeView(AgentId{1}, b, Edges({3, 4})), Leaf{Ints({3, 3})},
       Leaf{Ints({0, 5})}, Leaf{Ints({9, 1})}},
      0, {"a", "b", "exit", "b_left", "b_right"});
}

// A node owned by A whose only choice loops back to itself.
inline StrategySystem SelfLoopProfile() {
  return StrategySystem::Census(
      SoloArena(1), {StrategyNodeView(AgentId{0}, Choice{0}, Edges({0}))});
}

}  // namespace extgames::fixtures

#endif  // EXTGAMES_TESTS_FIXTURES_HPP_

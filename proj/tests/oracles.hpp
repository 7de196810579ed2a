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

// Naive reference implementations. They read census tables directly and
// share no code with the library's analyses, so agreement between the two is
// evidence rather than tautology. All of them assume shift-free censuses.

#ifndef EXTGAMES_TESTS_ORACLES_HPP_
#define EXTGAMES_TESTS_ORACLES_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "extgames/extgames.hpp"

namespace extgames::oracle {

template <class Node>
const Node* NodeAt(const BasicSystem<Node>& s, StateId id) {
  return std::get_if<Node>(&s.table()[id]);
}

template <class Node>
std::vector<StateId> Targets(const BasicSystem<Node>& s, StateId id) {
  std::vector<StateId> out;
  if (const Node* n = NodeAt(s, id)) {
    for (const Edge& e : n->next.table()) out.push_back(e.target);
  }
  return out;
}

// Follows chosen choices, remembering every id. Nullopt on a repeat.
inline std::optional<Payoff> Uassign(const StrategySystem& s, StateId from) {
  std::set<StateId> seen;
  StateId id = from;
  while (const StrategyNode* n = NodeAt(s, id)) {
    if (!seen.insert(id).second) return std::nullopt;
    id = n->next.table()[n->chosen.value].target;
  }
  return std::get<Leaf>(s.table()[id]).payoff;
}

inline std::set<StateId> Reachable(const StrategySystem& s, StateId from) {
  std::set<StateId> seen{from};
  std::vector<StateId> todo{from};
  while (!todo.empty()) {
    StateId id = todo.back();
    todo.pop_back();
    for (StateId t : Targets(s, id)) {
      if (seen.insert(t).second) todo.push_back(t);
    }
  }
  return seen;
}

inline bool AlwaysConvergent(const StrategySystem& s) {
  for (StateId id : Reachable(s, s.root().id)) {
    if (!Uassign(s, id)) return false;
  }
  return true;
}

// Acyclic reachable graph, by recursive colouring.
template <class Node>
bool FiniteGame(const BasicSystem<Node>& g) {
  std::vector<int> color(g.table_size(), 0);
  std::function<bool(StateId)> dfs = [&](StateId id) {
    if (color[id] == 1) return false;
    if (color[id] == 2) return true;
    color[id] = 1;
    for (StateId t : Targets(g, id)) {
      if (!dfs(t)) return false;
    }
    color[id] = 2;
    return true;
  };
  return dfs(g.root().id);
}

// The recursive SPE definition, read literally on a finite profile: a leaf is
// an SPE; a node is one when it is always convergent, the chosen branch is
// preferred to every alternative by the owner, and every subprofile is an SPE.
inline bool SpeFinite(const StrategySystem& s, StateId id) {
  const StrategyNode* n = NodeAt(s, id);
  if (!n) return true;
  if (!AlwaysConvergent(s.RootedAt(StateRef{id, 0}))) return false;
  const auto& next = n->next.table();
  const Payoff chosen = *Uassign(s, next[n->chosen.value].target);
  for (const Edge& e : next) {
    const Payoff alt = *Uassign(s, e.target);
    if (!Pref(s.arena(), n->agent, alt[n->agent], chosen[n->agent])) {
      return false;
    }
    if (!SpeFinite(s, e.target)) return false;
  }
  return true;
}

// Largest relation between census ids that is closed under the bisimulation
// conditions, computed by deleting offending pairs until nothing changes.
template <class Node>
bool Bisim(const BasicSystem<Node>& g1, const BasicSystem<Node>& g2) {
  const std::size_t n1 = g1.table_size(), n2 = g2.table_size();
  std::vector<std::vector<bool>> rel(n1, std::vector<bool>(n2, false));
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const auto& a = g1.table()[i];
      const auto& b = g2.table()[j];
      if (a.index() != b.index()) continue;
      if (const Leaf* la = std::get_if<Leaf>(&a)) {
        rel[i][j] = la->payoff == std::get<Leaf>(b).payoff;
        continue;
      }
      const Node& na = std::get<Node>(a);
      const Node& nb = std::get<Node>(b);
      bool same = true;
      if constexpr (!NodeTraits<Node>::kMultistage) same = na.agent == nb.agent;
      if constexpr (NodeTraits<Node>::kStrategy) same = same && na.chosen == nb.chosen;
      rel[i][j] = same;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        if (!rel[i][j]) continue;
        auto ti = Targets(g1, i);
        auto tj = Targets(g2, j);
        for (std::size_t k = 0; k < ti.size(); ++k) {
          if (!rel[ti[k]][tj[k]]) {
            rel[i][j] = false;
            changed = true;
            break;
          }
        }
      }
    }
  }
  return rel[g1.root().id][g2.root().id];
}

}  // namespace extgames::oracle

#endif  // EXTGAMES_TESTS_ORACLES_HPP_

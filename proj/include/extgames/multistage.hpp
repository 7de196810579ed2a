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

// Multi-stage games: at a node every agent picks a choice simultaneously and
// the joint choice selects the successor. Unfolding and utility assignment
// are the generic ones from core.hpp instantiated at joint-choice keys.
//
// Sequentialize turns each simultaneous move into a chain of ordinary nodes,
// one per agent in a given order; the last pick of the chain resolves the
// joint choice. Later agents see earlier picks (perfect information), so no
// equilibrium notion is claimed to carry over between the two games. Only the
// outcome function is preserved.

#ifndef EXTGAMES_MULTISTAGE_HPP_
#define EXTGAMES_MULTISTAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "extgames/core.hpp"
#include "extgames/system.hpp"

namespace extgames {

inline PrefixTree<MsGameNode> MsUnfold(const MsGameSystem& g,
                                       std::size_t depth,
                                       std::size_t nat_samples = 8) {
  return UnfoldPrefix(g, depth, nat_samples);
}

inline UassignResult<JointChoice> MsUassign(const MsStrategySystem& s,
                                            std::size_t fuel) {
  return Uassign(s, fuel);
}

namespace detail {

// Chain positions inside one multi-stage node: for step i of the order, the
// picks made so far, encoded mixed-radix. Position index = start[i] + code.
struct ChainLayout {
  std::vector<AgentId> order;
  std::vector<std::size_t> start;  // first position of step i
  std::size_t width = 0;           // positions per multi-stage state

  ChainLayout(const ArenaSpec& arena, std::vector<AgentId> agents)
      : order(std::move(agents)) {
    std::size_t prefixes = 1;
    for (AgentId a : order) {
      start.push_back(width);
      width += prefixes;
      prefixes *= arena.agent(a).choices.size();
    }
  }
};

}  // namespace detail

// Sequential presentation of a multi-stage game. `order` must list every
// agent exactly once.
inline GameSystem Sequentialize(const MsGameSystem& g,
                                const std::vector<AgentId>& order) {
  const ArenaSpec& arena = g.arena();
  if (!arena.all_enumerated()) throw NaturalsNotSupported();
  {
    std::set<std::uint32_t> seen;
    for (AgentId a : order) {
      if (a.value >= arena.size() || !seen.insert(a.value).second) {
        throw ConstructionError("order must be a permutation of the agents");
      }
    }
    if (seen.size() != arena.size()) {
      throw ConstructionError("order must be a permutation of the agents");
    }
  }
  auto layout = std::make_shared<const detail::ChainLayout>(arena, order);
  const std::size_t width = layout->width;
  auto ms = g;
  // State id of the sequential game: ms_id * width + chain position.
  auto unfold = [ms, layout, width](StateId id) -> GameSystem::View {
    const StateId ms_id = id / width;
    const std::size_t pos = static_cast<std::size_t>(id % width);
    auto view = ms.Unfold(StateRef{ms_id, 0});
    if (const Leaf* leaf = std::get_if<Leaf>(&view)) return *leaf;
    const auto& node = std::get<MsGameNode>(view);
    const ArenaSpec& arena = ms.arena();
    std::size_t step = 0;
    while (step + 1 < layout->start.size() && layout->start[step + 1] <= pos) {
      ++step;
    }
    const std::size_t code = pos - layout->start[step];
    const AgentId agent = layout->order[step];
    const std::size_t arity = arena.agent(agent).choices.size();
    std::vector<Edge> next;
    for (std::size_t c = 0; c < arity; ++c) {
      const std::size_t child_code = code * arity + c;
      if (step + 1 < layout->order.size()) {
        next.push_back(Edge{ms_id * width + layout->start[step + 1] + child_code, 0});
        continue;
      }
      // Decode the picks in order and resolve the joint choice.
      JointChoice jc(arena.size());
      std::size_t rest = child_code;
      for (std::size_t k = layout->order.size(); k-- > 0;) {
        const std::size_t r = arena.agent(layout->order[k]).choices.size();
        jc[layout->order[k].value] = Choice{rest % r};
        rest /= r;
      }
      Edge e = EdgeFor(arena, node, jc);
      next.push_back(Edge{e.target * width, e.shift});
    }
    return GameNodeView(agent, std::move(next));
  };
  auto namer = [ms, width](StateId id) {
    const std::size_t pos = static_cast<std::size_t>(id % width);
    std::string base = ms.StateName(id / width);
    return pos == 0 ? base : base + "_" + std::to_string(pos);
  };
  if (g.root().id > std::numeric_limits<StateId>::max() / width) {
    throw ConstructionError("state ids too large to sequentialize");
  }
  GameSystem lazy = GameSystem::Programmatic(g.arena_ptr(), unfold,
                                             g.root().id * width, namer);
  lazy = lazy.RootedAt(StateRef{g.root().id * width, g.root().offset});
  if (!g.has_census()) return lazy;

  // Materialize the reachable part as a census.
  std::unordered_map<StateId, StateId> index;
  std::vector<StateId> order_ids{lazy.root().id};
  index[lazy.root().id] = 0;
  for (std::size_t head = 0; head < order_ids.size(); ++head) {
    auto view = lazy.Raw(order_ids[head]);
    if (const auto* node = std::get_if<GameNode>(&view)) {
      for (const Edge& e : node->next.table()) {
        if (index.emplace(e.target, order_ids.size()).second) {
          order_ids.push_back(e.target);
        }
      }
    }
  }
  std::vector<GameSystem::View> table;
  std::vector<std::string> names;
  for (StateId id : order_ids) {
    auto view = lazy.Raw(id);
    names.push_back(namer(id));
    if (auto* node = std::get_if<GameNode>(&view)) {
      std::vector<Edge> next;
      for (const Edge& e : node->next.table()) {
        next.push_back(Edge{index.at(e.target), e.shift});
      }
      table.push_back(GameNodeView(node->agent, std::move(next)));
    } else {
      table.push_back(std::get<Leaf>(view));
    }
  }
  auto census = GameSystem::Census(g.arena_ptr(), std::move(table), 0,
                                   std::move(names));
  return census.RootedAt(StateRef{0, g.root().offset});
}

// Plays the components of `jc` in `order` through a sequentialized node
// chain starting at `from`; returns the state reached after the chain.
inline StateRef PlayChain(const GameSystem& seq, StateRef from,
                          const std::vector<AgentId>& order,
                          const JointChoice& jc) {
  StateRef ref = from;
  for (AgentId a : order) {
    auto view = seq.Unfold(ref);
    const auto& node = std::get<GameNode>(view);
    if (node.agent != a) throw ConstructionError("chain out of order");
    ref = seq.Follow(ref, node, jc[a.value]);
  }
  return ref;
}

}  // namespace extgames

#endif  // EXTGAMES_MULTISTAGE_HPP_

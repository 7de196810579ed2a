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

// Games and strategy profiles are presented as coalgebras: a map from a
// state identifier to one observation (a leaf with its payoff, or a node with
// its owner and successor function). Infinite trees are never materialized;
// analyses unfold on demand.
//
// Two presentations exist behind one type:
//   * census systems: an explicit finite table of states, all choice spaces
//     enumerated. Exact (unbounded) analyses are available.
//   * programmatic systems: a pure function StateId -> view. Only bounded
//     analyses apply, except where a gallery family carries an analytic fact.
//
// A reference into a system is a StateRef = (state id, offset). Edges may
// carry an integer shift that accumulates into the offset, and leaf payoffs
// of integer-valued agents are observed translated by that offset. This lets
// stage-indexed families such as the dollar auction (stop at stage n pays
// -n / 100-n) be presented by finitely many states: the tree shape below a
// reference depends on its id only, the offset merely translates integer
// payoffs. Every shipped preorder on integers is translation invariant, so
// any per-state check performed at one offset holds at all offsets.

#ifndef EXTGAMES_SYSTEM_HPP_
#define EXTGAMES_SYSTEM_HPP_

#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <unordered_map>
#include <vector>

#include "extgames/arena.hpp"
#include "extgames/errors.hpp"

namespace extgames {

using StateId = std::uint64_t;

struct Edge {
  StateId target = 0;
  std::int64_t shift = 0;
  bool operator==(const Edge&) const = default;
};

struct StateRef {
  StateId id = 0;
  std::int64_t offset = 0;
  auto operator<=>(const StateRef&) const = default;
};

struct StateRefHash {
  std::size_t operator()(const StateRef& r) const {
    return std::hash<StateId>()(r.id) * 1000003u ^
           std::hash<std::int64_t>()(r.offset);
  }
};

// One choice per agent, in arena order.
using JointChoice = std::vector<Choice>;

// Successor function of a node: either a finite table indexed by the
// position of the key in the (lexicographic) key order, or a generator for
// infinite spaces.
template <class Key>
class Branch {
 public:
  Branch() = default;

  static Branch Table(std::vector<Edge> edges) {
    Branch b;
    b.table_ = std::make_shared<const std::vector<Edge>>(std::move(edges));
    return b;
  }

  static Branch Generated(std::function<Edge(const Key&)> fn) {
    Branch b;
    b.fn_ = std::make_shared<const std::function<Edge(const Key&)>>(
        std::move(fn));
    return b;
  }

  bool is_table() const { return table_ != nullptr; }
  const std::vector<Edge>& table() const { return *table_; }
  Edge generate(const Key& k) const { return (*fn_)(k); }

 private:
  std::shared_ptr<const std::vector<Edge>> table_;
  std::shared_ptr<const std::function<Edge(const Key&)>> fn_;
};

struct Leaf {
  Payoff payoff;
};

// <|a, next|>
struct GameNode {
  AgentId agent;
  Branch<Choice> next;
};

// <<a, c, next>>
struct StrategyNode {
  AgentId agent;
  Choice chosen;
  Branch<Choice> next;
};

// Multi-stage node: every agent moves at once.
struct MsGameNode {
  Branch<JointChoice> next;
};

struct MsStrategyNode {
  JointChoice chosen;
  Branch<JointChoice> next;
};

template <class Node>
struct NodeTraits;

template <>
struct NodeTraits<GameNode> {
  using Key = Choice;
  static constexpr bool kStrategy = false;
  static constexpr bool kMultistage = false;
};

template <>
struct NodeTraits<StrategyNode> {
  using Key = Choice;
  static constexpr bool kStrategy = true;
  static constexpr bool kMultistage = false;
};

template <>
struct NodeTraits<MsGameNode> {
  using Key = JointChoice;
  static constexpr bool kStrategy = false;
  static constexpr bool kMultistage = true;
};

template <>
struct NodeTraits<MsStrategyNode> {
  using Key = JointChoice;
  static constexpr bool kStrategy = true;
  static constexpr bool kMultistage = true;
};

template <class Node>
using KeyOf = typename NodeTraits<Node>::Key;

// ---------------------------------------------------------------------------
// Key enumeration and lookup.

namespace detail {

inline std::size_t JointArity(const ArenaSpec& arena) {
  std::size_t n = 1;
  for (const auto& a : arena.agents()) n *= a.choices.size();
  return n;
}

// Mixed-radix position of a joint choice, agent 0 most significant.
inline std::size_t JointIndex(const ArenaSpec& arena, const JointChoice& jc) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < arena.size(); ++i) {
    index = index * arena.agents()[i].choices.size() +
            static_cast<std::size_t>(jc[i].value);
  }
  return index;
}

inline JointChoice JointFromIndex(const ArenaSpec& arena, std::size_t index) {
  JointChoice jc(arena.size());
  for (std::size_t i = arena.size(); i-- > 0;) {
    const std::size_t radix = arena.agents()[i].choices.size();
    jc[i] = Choice{index % radix};
    index /= radix;
  }
  return jc;
}

}  // namespace detail

inline std::optional<AgentId> OwnerOf(const GameNode& n) { return n.agent; }
inline std::optional<AgentId> OwnerOf(const StrategyNode& n) {
  return n.agent;
}
inline std::optional<AgentId> OwnerOf(const MsGameNode&) {
  return std::nullopt;
}
inline std::optional<AgentId> OwnerOf(const MsStrategyNode&) {
  return std::nullopt;
}

// Keys of a node in lexicographic order. Naturals spaces contribute their
// first `nat_samples` values and set `*truncated`.
template <class Node>
std::vector<KeyOf<Node>> BranchKeys(const ArenaSpec& arena, const Node& node,
                                    std::size_t nat_samples,
                                    bool* truncated = nullptr) {
  if constexpr (!NodeTraits<Node>::kMultistage) {
    const ChoiceSpace& space = arena.agent(node.agent).choices;
    std::size_t n = space.is_enumerated() ? space.size() : nat_samples;
    if (space.is_naturals() && truncated) *truncated = true;
    std::vector<Choice> keys;
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) keys.push_back(Choice{i});
    return keys;
  } else {
    std::vector<std::size_t> radix;
    for (const auto& a : arena.agents()) {
      if (a.choices.is_naturals()) {
        if (truncated) *truncated = true;
        radix.push_back(nat_samples);
      } else {
        radix.push_back(a.choices.size());
      }
    }
    std::vector<JointChoice> keys;
    std::size_t total = 1;
    for (std::size_t r : radix) total *= r;
    keys.reserve(total);
    for (std::size_t index = 0; index < total; ++index) {
      JointChoice jc(radix.size());
      std::size_t rest = index;
      for (std::size_t i = radix.size(); i-- > 0;) {
        jc[i] = Choice{rest % radix[i]};
        rest /= radix[i];
      }
      keys.push_back(std::move(jc));
    }
    return keys;
  }
}

// True when the node has finitely many branches.
template <class Node>
bool HasFiniteBranching(const ArenaSpec& arena, const Node& node) {
  if constexpr (!NodeTraits<Node>::kMultistage) {
    return arena.agent(node.agent).choices.is_enumerated();
  } else {
    return arena.all_enumerated();
  }
}

template <class Node>
Edge EdgeFor(const ArenaSpec& arena, const Node& node,
             const KeyOf<Node>& key) {
  if (!node.next.is_table()) return node.next.generate(key);
  std::size_t index;
  if constexpr (!NodeTraits<Node>::kMultistage) {
    index = static_cast<std::size_t>(key.value);
  } else {
    index = detail::JointIndex(arena, key);
  }
  const auto& table = node.next.table();
  if (index >= table.size()) throw ConstructionError("branch key out of range");
  return table[index];
}

template <class Key>
std::string FormatKey(const ArenaSpec& arena, std::optional<AgentId> owner,
                      const Key& key) {
  if constexpr (std::is_same_v<Key, Choice>) {
    return arena.agent(*owner).choices.label(key);
  } else {
    std::string out = "(";
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) out += ",";
      out += arena.agents()[i].choices.label(key[i]);
    }
    return out + ")";
  }
}

// Map from state ids to T: a dense vector for small ids, a hash map above.
template <class T>
class IdMap {
 public:
  static constexpr StateId kDenseLimit = StateId{1} << 20;

  T* find(StateId id) {
    if (id < kDenseLimit) {
      if (id >= dense_.size() || !dense_[id]) return nullptr;
      return &*dense_[id];
    }
    auto it = sparse_.find(id);
    return it == sparse_.end() ? nullptr : &it->second;
  }

  T& insert(StateId id, T value) {
    if (id < kDenseLimit) {
      if (id >= dense_.size()) dense_.resize(id + 1);
      dense_[id] = std::move(value);
      return *dense_[id];
    }
    return sparse_.insert_or_assign(id, std::move(value)).first->second;
  }

 private:
  std::vector<std::optional<T>> dense_;
  std::unordered_map<StateId, T> sparse_;
};

// Facts established analytically (outside the decision procedures) for a
// gallery family. Analyses consult them only where they would otherwise
// have to answer Unknown.
struct AnalyticFacts {
  std::optional<bool> finite_history;
  std::string provenance;
};

// ---------------------------------------------------------------------------

template <class Node>
class BasicSystem {
 public:
  using NodeType = Node;
  using Key = KeyOf<Node>;
  using View = std::variant<Leaf, Node>;
  using UnfoldFn = std::function<View(StateId)>;
  using NameFn = std::function<std::string(StateId)>;

  // Explicit finite system; states are 0..states.size()-1. Every node must
  // have enumerated branching with a full table whose targets are in range.
  static BasicSystem Census(ArenaPtr arena, std::vector<View> states,
                            StateId root = 0,
                            std::vector<std::string> names = {}) {
    auto impl = std::make_shared<Impl>();
    impl->arena = std::move(arena);
    for (std::size_t i = 0; i < states.size(); ++i) {
      ValidateView(*impl->arena, states[i], /*census=*/true, states.size(),
                   i);
      if (const Node* n = std::get_if<Node>(&states[i])) {
        for (const Edge& e : n->next.table()) {
          if (e.shift != 0) impl->has_shifts = true;
        }
      }
    }
    if (root >= states.size()) throw ConstructionError("root out of range");
    if (!names.empty() && names.size() != states.size()) {
      throw ConstructionError("one name per state expected");
    }
    impl->table = std::make_shared<const std::vector<View>>(std::move(states));
    impl->names = std::move(names);
    return BasicSystem(std::move(impl), StateRef{root, 0});
  }

  // Lazily unfolded system. `fn` must be pure; equal ids denote equal
  // states (hash-consing), which is what makes lasso detection possible.
  static BasicSystem Programmatic(ArenaPtr arena, UnfoldFn fn, StateId root,
                                  NameFn namer = {}) {
    auto impl = std::make_shared<Impl>();
    impl->arena = std::move(arena);
    impl->fn = std::move(fn);
    impl->namer = std::move(namer);
    return BasicSystem(std::move(impl), StateRef{root, 0});
  }

  const ArenaSpec& arena() const { return *impl_->arena; }
  const ArenaPtr& arena_ptr() const { return impl_->arena; }
  StateRef root() const { return root_; }

  // The same coalgebra observed from another state.
  BasicSystem RootedAt(StateRef ref) const {
    return BasicSystem(impl_, ref);
  }

  bool has_census() const { return impl_->table != nullptr; }
  bool has_shifts() const { return impl_->has_shifts; }

  std::size_t table_size() const {
    if (!has_census()) throw NoCensus();
    return impl_->table->size();
  }

  // Ids reachable from the root, breadth-first in key order.
  std::vector<StateId> CensusIds() const {
    if (!has_census()) throw NoCensus();
    const auto& table = *impl_->table;
    std::vector<char> seen(table.size(), 0);
    std::vector<StateId> order{root_.id};
    seen[root_.id] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      if (const Node* n = std::get_if<Node>(&table[order[head]])) {
        for (const Edge& e : n->next.table()) {
          if (!seen[e.target]) {
            seen[e.target] = 1;
            order.push_back(e.target);
          }
        }
      }
    }
    return order;
  }

  // Number of reachable node (non-leaf) states.
  std::size_t NodeCensusSize() const {
    std::size_t n = 0;
    for (StateId id : CensusIds()) {
      if (std::holds_alternative<Node>(Raw(id))) ++n;
    }
    return n;
  }

  // Observation of a state id with untranslated payoffs.
  View Raw(StateId id) const {
    if (impl_->table) {
      if (id >= impl_->table->size()) {
        throw ConstructionError("state id out of range");
      }
      return (*impl_->table)[id];
    }
    View v = impl_->fn(id);
    ValidateView(*impl_->arena, v, /*census=*/false, 0, id);
    return v;
  }

  View Unfold(StateRef ref) const {
    View v = Raw(ref.id);
    if (ref.offset != 0) {
      if (Leaf* leaf = std::get_if<Leaf>(&v)) {
        leaf->payoff = leaf->payoff.Shifted(arena(), ref.offset);
      }
    }
    return v;
  }

  StateRef Follow(StateRef from, const Node& node, const Key& key) const {
    Edge e = EdgeFor(arena(), node, key);
    return StateRef{e.target, from.offset + e.shift};
  }

  std::string StateName(StateId id) const {
    if (!impl_->names.empty() && id < impl_->names.size()) {
      return impl_->names[id];
    }
    if (impl_->namer) return impl_->namer(id);
    return "s" + std::to_string(id);
  }

  bool has_names() const { return !impl_->names.empty(); }

  const AnalyticFacts& facts() const { return impl_->facts; }

  BasicSystem WithFacts(AnalyticFacts facts) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->facts = std::move(facts);
    return BasicSystem(std::move(impl), root_);
  }

  // Same states over another arena that differs only in preorders.
  BasicSystem WithArena(ArenaPtr arena) const {
    if (arena->size() != impl_->arena->size()) throw ArenaMismatch();
    for (std::size_t i = 0; i < arena->size(); ++i) {
      const auto& a = arena->agents()[i];
      const auto& b = impl_->arena->agents()[i];
      if (a.name != b.name || !(a.choices == b.choices) ||
          a.utility.is_integer() != b.utility.is_integer() ||
          a.utility.labels() != b.utility.labels()) {
        throw ArenaMismatch();
      }
    }
    auto impl = std::make_shared<Impl>(*impl_);
    impl->arena = std::move(arena);
    return BasicSystem(std::move(impl), root_);
  }

  // Census table, for transforms that rebuild systems.
  const std::vector<View>& table() const {
    if (!has_census()) throw NoCensus();
    return *impl_->table;
  }

  const std::vector<std::string>& names() const { return impl_->names; }

  // Programmatic generator, for transforms.
  const UnfoldFn& generator() const { return impl_->fn; }
  const NameFn& namer() const { return impl_->namer; }

 private:
  struct Impl {
    ArenaPtr arena;
    std::shared_ptr<const std::vector<View>> table;
    UnfoldFn fn;
    NameFn namer;
    std::vector<std::string> names;
    AnalyticFacts facts;
    bool has_shifts = false;
  };

  BasicSystem(std::shared_ptr<const Impl> impl, StateRef root)
      : impl_(std::move(impl)), root_(root) {}

  static void ValidateView(const ArenaSpec& arena, const View& v, bool census,
                           std::size_t table_size, StateId where) {
    const std::string at = " (state " + std::to_string(where) + ")";
    if (const Leaf* leaf = std::get_if<Leaf>(&v)) {
      try {
        ValidatePayoff(arena, leaf->payoff);
      } catch (const ConstructionError& e) {
        throw ConstructionError(e.what() + at);
      }
      return;
    }
    const Node& node = std::get<Node>(v);
    if constexpr (!NodeTraits<Node>::kMultistage) {
      if (node.agent.value >= arena.size()) {
        throw ConstructionError("unknown agent" + at);
      }
      if constexpr (NodeTraits<Node>::kStrategy) {
        if (!arena.agent(node.agent).choices.contains(node.chosen)) {
          throw ConstructionError("chosen choice outside the space of agent '" +
                                  arena.agent(node.agent).name + "'" + at);
        }
      }
    } else {
      if constexpr (NodeTraits<Node>::kStrategy) {
        if (node.chosen.size() != arena.size()) {
          throw ConstructionError("joint choice must cover every agent" + at);
        }
        for (std::size_t i = 0; i < arena.size(); ++i) {
          if (!arena.agents()[i].choices.contains(node.chosen[i])) {
            throw ConstructionError("joint choice outside the space of '" +
                                    arena.agents()[i].name + "'" + at);
          }
        }
      }
    }
    const bool finite = HasFiniteBranching(arena, node);
    if (census && !finite) {
      throw ConstructionError(
          "census systems need enumerated choice spaces at every node" + at);
    }
    if (node.next.is_table()) {
      if (!finite) {
        throw ConstructionError("Naturals branching needs a generator" + at);
      }
      std::size_t arity;
      if constexpr (!NodeTraits<Node>::kMultistage) {
        arity = arena.agent(node.agent).choices.size();
      } else {
        arity = detail::JointArity(arena);
      }
      if (node.next.table().size() != arity) {
        throw ConstructionError("branch is not total on the choice space" + at);
      }
      if (census) {
        for (const Edge& e : node.next.table()) {
          if (e.target >= table_size) {
            throw ConstructionError("branch target out of range" + at);
          }
        }
      }
    } else if (census) {
      throw ConstructionError("census nodes need a branch table" + at);
    }
  }

  std::shared_ptr<const Impl> impl_;
  StateRef root_;
};

using GameSystem = BasicSystem<GameNode>;
using StrategySystem = BasicSystem<StrategyNode>;
using MsGameSystem = BasicSystem<MsGameNode>;
using MsStrategySystem = BasicSystem<MsStrategyNode>;

// Small constructors for views.
template <class Node>
typename BasicSystem<Node>::View LeafView(Payoff p) {
  return Leaf{std::move(p)};
}

inline GameSystem::View GameNodeView(AgentId a, std::vector<Edge> next) {
  return GameNode{a, Branch<Choice>::Table(std::move(next))};
}

inline StrategySystem::View StrategyNodeView(AgentId a, Choice c,
                                             std::vector<Edge> next) {
  return StrategyNode{a, c, Branch<Choice>::Table(std::move(next))};
}

// Edges without shifts from plain targets.
inline std::vector<Edge> Edges(std::initializer_list<StateId> targets) {
  std::vector<Edge> out;
  for (StateId t : targets) out.push_back(Edge{t, 0});
  return out;
}

}  // namespace extgames

#endif  // EXTGAMES_SYSTEM_HPP_

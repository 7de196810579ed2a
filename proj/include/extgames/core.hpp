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

// Observation and comparison of game/profile coalgebras: prefix unfolding,
// erasure of chosen choices, bounded and exact bisimulation, and the utility
// assignment along the chosen path.

#ifndef EXTGAMES_CORE_HPP_
#define EXTGAMES_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "extgames/arena.hpp"
#include "extgames/errors.hpp"
#include "extgames/system.hpp"
#include "extgames/verdict.hpp"

namespace extgames {

// ---------------------------------------------------------------------------
// Prefix unfolding

// A finite observation of a coinductive object. Positions strictly above the
// requested depth are expanded; a node at the depth limit becomes a
// Continuation carrying its StateRef so the unfolding can resume there.
template <class Key>
struct PrefixNode {
  enum class Kind { kLeaf, kNode, kContinuation };

  Kind kind = Kind::kContinuation;
  StateRef state;
  Payoff payoff;                  // kLeaf
  std::optional<AgentId> owner;   // kNode of an extensive game/profile
  std::optional<Key> chosen;      // kNode of a profile
  std::vector<std::pair<Key, PrefixNode>> children;
  bool elided = false;            // Naturals branches beyond the sample bound

  bool operator==(const PrefixNode&) const = default;
};

template <class Node>
using PrefixTree = PrefixNode<KeyOf<Node>>;

namespace detail {

template <class Node>
PrefixTree<Node> UnfoldAt(const BasicSystem<Node>& sys, StateRef ref,
                          std::size_t level, std::size_t depth,
                          std::size_t nat_samples) {
  PrefixTree<Node> out;
  out.state = ref;
  auto view = sys.Unfold(ref);
  if (auto* leaf = std::get_if<Leaf>(&view)) {
    out.kind = PrefixTree<Node>::Kind::kLeaf;
    out.payoff = leaf->payoff;
    return out;
  }
  if (level >= depth) {
    out.kind = PrefixTree<Node>::Kind::kContinuation;
    return out;
  }
  const Node& node = std::get<Node>(view);
  out.kind = PrefixTree<Node>::Kind::kNode;
  out.owner = OwnerOf(node);
  if constexpr (NodeTraits<Node>::kStrategy) out.chosen = node.chosen;
  bool truncated = false;
  for (auto& key : BranchKeys(sys.arena(), node, nat_samples, &truncated)) {
    StateRef next = sys.Follow(ref, node, key);
    out.children.emplace_back(
        key, UnfoldAt(sys, next, level + 1, depth, nat_samples));
  }
  out.elided = truncated;
  return out;
}

}  // namespace detail

template <class Node>
PrefixTree<Node> UnfoldPrefix(const BasicSystem<Node>& sys, std::size_t depth,
                              std::size_t nat_samples = 8) {
  return detail::UnfoldAt(sys, sys.root(), 0, depth, nat_samples);
}

// Cuts a prefix tree down to a smaller depth.
template <class Key>
PrefixNode<Key> TruncatePrefix(const PrefixNode<Key>& tree,
                               std::size_t depth) {
  using Kind = typename PrefixNode<Key>::Kind;
  if (tree.kind != Kind::kNode) return tree;
  if (depth == 0) {
    PrefixNode<Key> cont;
    cont.kind = Kind::kContinuation;
    cont.state = tree.state;
    return cont;
  }
  PrefixNode<Key> out = tree;
  for (auto& [key, child] : out.children) {
    child = TruncatePrefix(child, depth - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Erasure

namespace detail {

inline GameSystem::View EraseView(const StrategySystem::View& v) {
  if (const Leaf* leaf = std::get_if<Leaf>(&v)) return *leaf;
  const StrategyNode& n = std::get<StrategyNode>(v);
  return GameNode{n.agent, n.next};
}

inline MsGameSystem::View EraseView(const MsStrategySystem::View& v) {
  if (const Leaf* leaf = std::get_if<Leaf>(&v)) return *leaf;
  return MsGameNode{std::get<MsStrategyNode>(v).next};
}

template <class GameSys, class StratSys>
GameSys EraseSystem(const StratSys& s) {
  GameSys g = [&] {
    if (s.has_census()) {
      std::vector<typename GameSys::View> table;
      table.reserve(s.table().size());
      for (const auto& v : s.table()) table.push_back(EraseView(v));
      return GameSys::Census(s.arena_ptr(), std::move(table), s.root().id,
                             s.names());
    }
    auto fn = s.generator();
    return GameSys::Programmatic(
        s.arena_ptr(), [fn](StateId id) { return EraseView(fn(id)); },
        s.root().id, s.namer());
  }();
  g = g.RootedAt(s.root());
  if (s.facts().finite_history || !s.facts().provenance.empty()) {
    g = g.WithFacts(s.facts());
  }
  return g;
}

}  // namespace detail

// The game underlying a profile: chosen choices erased, states preserved.
inline GameSystem GameOf(const StrategySystem& s) {
  return detail::EraseSystem<GameSystem>(s);
}

inline MsGameSystem GameOf(const MsStrategySystem& s) {
  return detail::EraseSystem<MsGameSystem>(s);
}

// ---------------------------------------------------------------------------
// Local comparison shared by both bisimulation procedures.

namespace detail {

template <class Node>
std::optional<std::string> LocalMismatch(
    const typename BasicSystem<Node>::View& a,
    const typename BasicSystem<Node>::View& b) {
  const Leaf* la = std::get_if<Leaf>(&a);
  const Leaf* lb = std::get_if<Leaf>(&b);
  if ((la == nullptr) != (lb == nullptr)) return "leaf against node";
  if (la) {
    if (!(la->payoff == lb->payoff)) return "leaf payoffs differ";
    return std::nullopt;
  }
  const Node& na = std::get<Node>(a);
  const Node& nb = std::get<Node>(b);
  if (OwnerOf(na) != OwnerOf(nb)) return "nodes owned by different agents";
  if constexpr (NodeTraits<Node>::kStrategy) {
    if (!(na.chosen == nb.chosen)) return "chosen choices differ";
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bounded bisimulation

struct BisimOptions {
  std::size_t nat_samples = 8;
  // Refuse to sample: a Naturals node becomes an UnboundedBranch error.
  bool exhaustive = false;
};

template <class Key>
struct BisimBoundedResult {
  bool equal = true;           // EqualUpTo(depth)
  std::size_t depth = 0;
  std::vector<Key> differ_at;  // DifferAt(path), shortest then lexicographic
  std::string reason;
};

// Compares the depth-`depth` unfoldings of two systems node for node.
template <class Node>
BisimBoundedResult<KeyOf<Node>> BisimBounded(const BasicSystem<Node>& g1,
                                             const BasicSystem<Node>& g2,
                                             std::size_t depth,
                                             BisimOptions options = {}) {
  using Key = KeyOf<Node>;
  if (!(g1.arena() == g2.arena())) throw ArenaMismatch();
  struct Item {
    StateRef a, b;
    std::vector<Key> path;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<StateRef, StateRef>& p) const {
      return StateRefHash()(p.first) * 31u ^ StateRefHash()(p.second);
    }
  };
  std::unordered_set<std::pair<StateRef, StateRef>, PairHash> seen;
  std::deque<Item> queue;
  queue.push_back(Item{g1.root(), g2.root(), {}});
  seen.insert({g1.root(), g2.root()});
  BisimBoundedResult<Key> result;
  result.depth = depth;
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    auto va = g1.Unfold(item.a);
    auto vb = g2.Unfold(item.b);
    const bool at_limit = item.path.size() >= depth;
    if (at_limit) {
      // Both sides are Continuation markers unless one is a leaf.
      const bool leaf_a = std::holds_alternative<Leaf>(va);
      const bool leaf_b = std::holds_alternative<Leaf>(vb);
      if (!leaf_a && !leaf_b) continue;
    }
    if (auto why = detail::LocalMismatch<Node>(va, vb)) {
      result.equal = false;
      result.differ_at = item.path;
      result.reason = *why;
      return result;
    }
    if (at_limit || std::holds_alternative<Leaf>(va)) continue;
    const Node& na = std::get<Node>(va);
    const Node& nb = std::get<Node>(vb);
    if (options.exhaustive && !HasFiniteBranching(g1.arena(), na)) {
      throw UnboundedBranch(
          "Naturals-branching node cannot be compared exhaustively");
    }
    for (auto& key : BranchKeys(g1.arena(), na, options.nat_samples)) {
      StateRef ca = g1.Follow(item.a, na, key);
      StateRef cb = g2.Follow(item.b, nb, key);
      if (!seen.insert({ca, cb}).second) continue;
      std::vector<Key> path = item.path;
      path.push_back(key);
      queue.push_back(Item{ca, cb, std::move(path)});
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Exact bisimulation on census systems

namespace detail {

template <class Node>
struct RefineEntry {
  typename BasicSystem<Node>::View view;
  std::vector<std::size_t> targets;  // entry indices, in key order
};

// Moore-style partition refinement. Initial blocks: leaves by exact payoff,
// nodes by owner (and chosen choice for profiles). Refinement signature: the
// blocks of the branch targets in key order. Returns the block of each entry;
// two entries share a block iff they are bisimilar.
template <class Node>
std::vector<std::size_t> RefineBlocks(const std::vector<RefineEntry<Node>>& entries) {
  std::vector<std::size_t> block(entries.size());
  {
    std::map<std::vector<std::int64_t>, std::size_t> ids;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::vector<std::int64_t> sig;
      if (const Leaf* leaf = std::get_if<Leaf>(&entries[i].view)) {
        sig.push_back(0);
        for (Utility u : leaf->payoff.values()) sig.push_back(u.value);
      } else {
        const Node& n = std::get<Node>(entries[i].view);
        sig.push_back(1);
        auto owner = OwnerOf(n);
        sig.push_back(owner ? static_cast<std::int64_t>(owner->value) : -1);
        if constexpr (NodeTraits<Node>::kStrategy) {
          if constexpr (NodeTraits<Node>::kMultistage) {
            for (Choice c : n.chosen) {
              sig.push_back(static_cast<std::int64_t>(c.value));
            }
          } else {
            sig.push_back(static_cast<std::int64_t>(n.chosen.value));
          }
        }
      }
      block[i] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
  }
  std::size_t blocks = 0;
  for (std::size_t b : block) blocks = std::max(blocks, b + 1);
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::vector<std::size_t> sig{block[i]};
      for (std::size_t t : entries[i].targets) sig.push_back(block[t]);
      next[i] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    const std::size_t count = ids.size();
    block = std::move(next);
    if (count == blocks) break;
    blocks = count;
  }
  return block;
}

template <class Node>
void AppendEntries(const BasicSystem<Node>& g, const std::vector<StateId>& ids,
                   const std::unordered_map<StateId, std::size_t>& index,
                   std::vector<RefineEntry<Node>>& entries) {
  for (StateId id : ids) {
    RefineEntry<Node> e{g.Unfold(StateRef{id, g.root().offset}), {}};
    if (const Node* n = std::get_if<Node>(&e.view)) {
      for (const Edge& edge : n->next.table()) {
        e.targets.push_back(index.at(edge.target));
      }
    }
    entries.push_back(std::move(e));
  }
}

// Refinement over the disjoint union of both censuses.
template <class Node>
bool BisimByRefinement(const BasicSystem<Node>& g1,
                       const BasicSystem<Node>& g2) {
  const std::vector<StateId> c1 = g1.CensusIds();
  const std::vector<StateId> c2 = g2.CensusIds();
  const std::size_t n1 = c1.size();
  std::unordered_map<StateId, std::size_t> index1, index2;
  for (std::size_t i = 0; i < c1.size(); ++i) index1[c1[i]] = i;
  for (std::size_t i = 0; i < c2.size(); ++i) index2[c2[i]] = n1 + i;
  std::vector<RefineEntry<Node>> entries;
  AppendEntries(g1, c1, index1, entries);
  AppendEntries(g2, c2, index2, entries);
  const auto block = RefineBlocks(entries);
  return block[0] == block[n1];
}

// Systems with shifted edges: a reference (id, offset) observes integer
// payoffs translated by the offset, so refinement over ids alone is not
// enough. For deterministic systems the roots are bisimilar iff every pair
// reachable in the synchronous product is locally equal. Reachable triples
// (id1, id2, offset1 - offset2) are explored; a pair of ids from which the
// product can reach two leaves admits at most one offset difference (the
// leaves' integer payoffs pin it), so meeting such a pair again with a new
// difference already refutes bisimilarity. Pairs that cannot reach two
// leaves are insensitive to the difference. The exploration is therefore
// finite.
template <class Node>
bool BisimByProduct(const BasicSystem<Node>& g1, const BasicSystem<Node>& g2) {
  using PairKey = std::pair<StateId, StateId>;
  const auto& arena = g1.arena();
  bool any_integer = false;
  for (const auto& a : arena.agents()) any_integer |= a.utility.is_integer();

  // Synchronous product over ids, ignoring offsets.
  std::map<PairKey, std::vector<PairKey>> preds;
  std::vector<PairKey> order;
  std::map<PairKey, bool> leafpair;
  {
    std::deque<PairKey> queue{{g1.root().id, g2.root().id}};
    leafpair[queue.front()] = false;
    while (!queue.empty()) {
      PairKey p = queue.front();
      queue.pop_front();
      order.push_back(p);
      auto va = g1.Raw(p.first);
      auto vb = g2.Raw(p.second);
      const Node* na = std::get_if<Node>(&va);
      const Node* nb = std::get_if<Node>(&vb);
      if (!na && !nb) leafpair[p] = true;
      if (!na || !nb || OwnerOf(*na) != OwnerOf(*nb)) continue;
      for (auto& key : BranchKeys(arena, *na, 0)) {
        PairKey q{EdgeFor(arena, *na, key).target,
                  EdgeFor(arena, *nb, key).target};
        preds[q].push_back(p);
        if (leafpair.emplace(q, false).second) queue.push_back(q);
      }
    }
  }
  std::map<PairKey, bool> sensitive;
  {
    std::deque<PairKey> queue;
    for (const auto& [p, is_leaf] : leafpair) {
      if (is_leaf && any_integer) {
        sensitive[p] = true;
        queue.push_back(p);
      }
    }
    while (!queue.empty()) {
      PairKey p = queue.front();
      queue.pop_front();
      for (const PairKey& q : preds[p]) {
        if (!sensitive[q]) {
          sensitive[q] = true;
          queue.push_back(q);
        }
      }
    }
  }

  std::map<PairKey, std::int64_t> seen;
  std::deque<std::pair<StateRef, StateRef>> queue{{g1.root(), g2.root()}};
  seen[{g1.root().id, g2.root().id}] = g1.root().offset - g2.root().offset;
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    auto va = g1.Unfold(a);
    auto vb = g2.Unfold(b);
    if (detail::LocalMismatch<Node>(va, vb)) return false;
    if (std::holds_alternative<Leaf>(va)) continue;
    const Node& na = std::get<Node>(va);
    const Node& nb = std::get<Node>(vb);
    for (auto& key : BranchKeys(arena, na, 0)) {
      StateRef ca = g1.Follow(a, na, key);
      StateRef cb = g2.Follow(b, nb, key);
      PairKey p{ca.id, cb.id};
      const std::int64_t diff = ca.offset - cb.offset;
      auto it = seen.find(p);
      if (it == seen.end()) {
        seen.emplace(p, diff);
        queue.push_back({ca, cb});
      } else if (it->second != diff && sensitive[p]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Decides bisimilarity of the roots of two census systems.
template <class Node>
bool BisimExact(const BasicSystem<Node>& g1, const BasicSystem<Node>& g2) {
  if (!g1.has_census() || !g2.has_census()) throw NoCensus();
  if (!(g1.arena() == g2.arena())) throw ArenaMismatch();
  if (g1.has_shifts() || g2.has_shifts()) {
    return detail::BisimByProduct(g1, g2);
  }
  return detail::BisimByRefinement(g1, g2);
}

// Bisimulation classes of the states reachable in a shift-free census: maps
// each reachable id to the first reachable id (breadth-first order) of its
// class, so the root is always its own representative.
template <class Node>
std::unordered_map<StateId, StateId> BisimRepresentatives(
    const BasicSystem<Node>& g) {
  if (!g.has_census()) throw NoCensus();
  if (g.has_shifts()) {
    throw ConstructionError("bisimulation classes need a shift-free census");
  }
  const std::vector<StateId> ids = g.CensusIds();
  std::unordered_map<StateId, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  std::vector<detail::RefineEntry<Node>> entries;
  detail::AppendEntries(g, ids, index, entries);
  const auto block = detail::RefineBlocks(entries);
  std::unordered_map<std::size_t, StateId> first;
  std::unordered_map<StateId, StateId> rep;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    rep[ids[i]] = first.emplace(block[i], ids[i]).first->second;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Chosen path and utility assignment

template <class Key>
struct PathStep {
  StateRef state;
  std::optional<AgentId> agent;
  Key choice;

  bool operator==(const PathStep&) const = default;
};

enum class PathEnd { kLeaf, kLasso, kExhausted };

template <class Key>
struct ChosenPathResult {
  std::vector<PathStep<Key>> steps;
  PathEnd end = PathEnd::kExhausted;
  Payoff payoff;              // kLeaf
  std::size_t loop_start = 0; // kLasso: steps[loop_start] is revisited
  std::int64_t period_shift = 0;  // kLasso: offset drift per period

  std::size_t period() const { return steps.size() - loop_start; }
  std::vector<Key> choices() const {
    std::vector<Key> out;
    for (const auto& s : steps) out.push_back(s.choice);
    return out;
  }
};

// The history induced by following the chosen choice from the root. A lasso
// is reported as soon as a state id repeats: the profile's future depends on
// the id only, so the path cycles forever.
template <class Node>
ChosenPathResult<KeyOf<Node>> ChosenPath(const BasicSystem<Node>& s,
                                         std::size_t fuel) {
  static_assert(NodeTraits<Node>::kStrategy, "ChosenPath needs a profile");
  if (fuel == 0) throw std::invalid_argument("fuel must be positive");
  ChosenPathResult<KeyOf<Node>> out;
  std::unordered_map<StateId, std::size_t> visited;
  StateRef ref = s.root();
  for (std::size_t step = 0; step < fuel; ++step) {
    auto view = s.Unfold(ref);
    if (Leaf* leaf = std::get_if<Leaf>(&view)) {
      out.end = PathEnd::kLeaf;
      out.payoff = leaf->payoff;
      return out;
    }
    auto [it, fresh] = visited.emplace(ref.id, out.steps.size());
    if (!fresh) {
      out.end = PathEnd::kLasso;
      out.loop_start = it->second;
      out.period_shift = ref.offset - out.steps[it->second].state.offset;
      return out;
    }
    const Node& node = std::get<Node>(view);
    out.steps.push_back(PathStep<KeyOf<Node>>{ref, OwnerOf(node), node.chosen});
    ref = s.Follow(ref, node, node.chosen);
  }
  out.end = PathEnd::kExhausted;
  return out;
}

struct Assigned {
  Payoff payoff;
  bool operator==(const Assigned&) const = default;
};

template <class Key>
struct DivergenceDetected {
  std::vector<PathStep<Key>> prefix;  // steps up to and including the loop
  std::size_t loop_start = 0;
  bool operator==(const DivergenceDetected&) const = default;
};

template <class Key>
struct FuelExhausted {
  std::vector<PathStep<Key>> path;
  bool operator==(const FuelExhausted&) const = default;
};

template <class Key>
using UassignResult =
    std::variant<Assigned, DivergenceDetected<Key>, FuelExhausted<Key>>;

// Utility assignment: total thanks to the three-valued result.
template <class Node>
UassignResult<KeyOf<Node>> Uassign(const BasicSystem<Node>& s,
                                   std::size_t fuel) {
  auto path = ChosenPath(s, fuel);
  switch (path.end) {
    case PathEnd::kLeaf: return Assigned{path.payoff};
    case PathEnd::kLasso:
      return DivergenceDetected<KeyOf<Node>>{std::move(path.steps),
                                             path.loop_start};
    case PathEnd::kExhausted:
      return FuelExhausted<KeyOf<Node>>{std::move(path.steps)};
  }
  return FuelExhausted<KeyOf<Node>>{};
}

template <class Key>
const Payoff* AssignedPayoff(const UassignResult<Key>& r) {
  if (const Assigned* a = std::get_if<Assigned>(&r)) return &a->payoff;
  return nullptr;
}

// Canonical one-line rendering, used to compare results byte for byte.
template <class Node>
std::string DescribeUassign(const BasicSystem<Node>& s,
                            const UassignResult<KeyOf<Node>>& r) {
  auto steps = [&](const auto& path) {
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) out += " ";
      out += s.StateName(path[i].state.id);
      if (path[i].state.offset) out += "@" + std::to_string(path[i].state.offset);
      out += ":" + FormatKey(s.arena(), path[i].agent, path[i].choice);
    }
    return out + "]";
  };
  if (const Assigned* a = std::get_if<Assigned>(&r)) {
    return "assigned {" + FormatPayoff(s.arena(), a->payoff) + "}";
  }
  if (const auto* d = std::get_if<DivergenceDetected<KeyOf<Node>>>(&r)) {
    return "divergent " + steps(d->prefix) + " loop@" +
           std::to_string(d->loop_start);
  }
  return "exhausted " +
         steps(std::get<FuelExhausted<KeyOf<Node>>>(r).path);
}

// ---------------------------------------------------------------------------
// Replaying witness paths

// States visited along `path` (root first). Nullopt if the path walks off a
// leaf or uses a key outside the node's space.
template <class Node>
std::optional<std::vector<StateRef>> ReplayPath(
    const BasicSystem<Node>& sys, const std::vector<KeyOf<Node>>& path) {
  std::vector<StateRef> states{sys.root()};
  for (const auto& key : path) {
    auto view = sys.Unfold(states.back());
    const Node* node = std::get_if<Node>(&view);
    if (!node) return std::nullopt;
    if constexpr (!NodeTraits<Node>::kMultistage) {
      if (!sys.arena().agent(node->agent).choices.contains(key)) {
        return std::nullopt;
      }
    }
    states.push_back(sys.Follow(states.back(), *node, key));
  }
  return states;
}

// Memoized transitions of a sequential system for replaying many paths
// through the same states: every state id is unfolded once and every
// (id, choice) edge is computed once.
template <class Node>
class TransitionCache {
  static_assert(!NodeTraits<Node>::kMultistage,
                "TransitionCache needs single-agent choices");

 public:
  explicit TransitionCache(BasicSystem<Node> sys) : sys_(std::move(sys)) {}

  const BasicSystem<Node>& system() const { return sys_; }

  bool IsLeaf(StateId id) { return Get(id).leaf; }

  // Nullopt when `id` is a leaf or `c` is outside the owner's space.
  std::optional<StateRef> Step(StateRef from, Choice c) {
    Entry& e = Get(from.id);
    if (e.leaf) return std::nullopt;
    for (const auto& [value, edge] : e.edges) {
      if (value == c.value) return StateRef{edge.target, from.offset + edge.shift};
    }
    if (!sys_.arena().agent(e.node->agent).choices.contains(c)) {
      return std::nullopt;
    }
    const Edge edge = EdgeFor(sys_.arena(), *e.node, c);
    e.edges.emplace_back(c.value, edge);
    return StateRef{edge.target, from.offset + edge.shift};
  }

 private:
  struct Entry {
    bool leaf = false;
    std::optional<Node> node;
    std::vector<std::pair<std::uint64_t, Edge>> edges;
  };

  Entry& Get(StateId id) {
    if (Entry* e = states_.find(id)) return *e;
    Entry e;
    auto view = sys_.Raw(id);
    if (Node* n = std::get_if<Node>(&view)) {
      e.node = std::move(*n);
    } else {
      e.leaf = true;
    }
    return states_.insert(id, std::move(e));
  }

  BasicSystem<Node> sys_;
  IdMap<Entry> states_;
};

// A Fails witness replays when its path is walkable and, for cycles, the
// last state id equals the id at `loop_start`.
template <class Node>
bool WitnessReplays(const BasicSystem<Node>& sys, const Witness& w) {
  if constexpr (NodeTraits<Node>::kMultistage) {
    return false;
  } else {
    auto states = ReplayPath(sys, w.path);
    if (!states) return false;
    if (w.loop_start) {
      if (*w.loop_start >= states->size() - 1) return false;
      return (*states)[*w.loop_start].id == states->back().id;
    }
    return true;
  }
}

template <class Node>
std::string FormatPath(const BasicSystem<Node>& sys,
                       const std::vector<KeyOf<Node>>& path) {
  std::string out = "[";
  StateRef ref = sys.root();
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto view = sys.Unfold(ref);
    const Node* node = std::get_if<Node>(&view);
    if (i) out += ", ";
    if (!node) {
      out += "?";
      continue;
    }
    out += FormatKey(sys.arena(), OwnerOf(*node), path[i]);
    ref = sys.Follow(ref, *node, path[i]);
  }
  return out + "]";
}

}  // namespace extgames

#endif  // EXTGAMES_CORE_HPP_

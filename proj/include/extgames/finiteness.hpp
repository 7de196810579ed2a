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

// Finiteness and convergence predicates.
//
// On census systems every predicate here is decided exactly: finiteness of
// the unfolded tree and finiteness of all histories both reduce to
// acyclicity of the reachable state graph, and convergence of the chosen
// path reduces to lasso detection. On programmatic systems the same
// procedures run under a budget and answer Unknown when it is exhausted or
// when Naturals branching had to be sampled.

#ifndef EXTGAMES_FINITENESS_HPP_
#define EXTGAMES_FINITENESS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "extgames/core.hpp"
#include "extgames/system.hpp"
#include "extgames/verdict.hpp"

namespace extgames {

namespace detail {

// Witness paths hold plain choices; joint choices are stored by their index
// in the joint key order, and only when every space is enumerated.
template <class Key>
std::vector<Choice> WitnessPath(const ArenaSpec& arena,
                                const std::vector<Key>& path) {
  if constexpr (std::is_same_v<Key, Choice>) {
    return path;
  } else {
    std::vector<Choice> out;
    if (!arena.all_enumerated()) return out;
    for (const Key& k : path) out.push_back(Choice{JointIndex(arena, k)});
    return out;
  }
}

struct ExploreOutcome {
  enum class Kind { kComplete, kCycle, kNaturals, kBudget };
  Kind kind = Kind::kComplete;
  Witness witness;
  std::size_t visited = 0;
  bool sampled = false;  // some Naturals node was only sampled
};

// Depth-first search over state ids in key order. Reports the first back
// edge (cycle) or, when `stop_at_naturals`, the first Naturals node.
template <class Node>
ExploreOutcome ExploreGraph(const BasicSystem<Node>& g, const Limits& limits,
                            bool stop_at_naturals) {
  using Key = KeyOf<Node>;
  ExploreOutcome out;
  const std::size_t budget =
      g.has_census() ? std::max(limits.fuel, g.table_size()) : limits.fuel;
  struct Frame {
    StateRef ref;
    std::optional<Node> node;
    std::vector<Key> keys;
    std::size_t next = 0;
  };
  enum Color : char { kGray = 1, kBlack = 2 };
  std::unordered_map<StateId, char> color;
  std::unordered_map<StateId, std::size_t> stack_pos;
  std::vector<Frame> stack;
  std::vector<Key> path;

  auto push = [&](StateRef ref) -> bool {
    if (++out.visited > budget) return false;
    auto view = g.Unfold(ref);
    Frame f{ref, std::nullopt, {}, 0};
    if (Node* n = std::get_if<Node>(&view)) {
      f.node = *n;
      bool truncated = false;
      f.keys = BranchKeys(g.arena(), *n, limits.nat_samples, &truncated);
      out.sampled |= truncated;
      if (truncated && stop_at_naturals) {
        out.kind = ExploreOutcome::Kind::kNaturals;
        out.witness.path = WitnessPath(g.arena(), path);
        out.witness.reason = "Naturals branching at " + g.StateName(ref.id);
        return false;
      }
    }
    color[ref.id] = kGray;
    stack_pos[ref.id] = stack.size();
    stack.push_back(std::move(f));
    return true;
  };

  if (!push(g.root())) {
    if (out.kind != ExploreOutcome::Kind::kNaturals) {
      out.kind = ExploreOutcome::Kind::kBudget;
    }
    return out;
  }
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next >= top.keys.size()) {
      color[top.ref.id] = kBlack;
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const Key key = top.keys[top.next++];
    StateRef child = g.Follow(top.ref, *top.node, key);
    auto it = color.find(child.id);
    if (it != color.end()) {
      if (it->second == kGray) {
        out.kind = ExploreOutcome::Kind::kCycle;
        path.push_back(key);
        out.witness.path = WitnessPath(g.arena(), path);
        out.witness.loop_start = stack_pos[child.id];
        out.witness.reason = "cycle through " + g.StateName(child.id);
        return out;
      }
      continue;
    }
    path.push_back(key);
    if (!push(child)) {
      if (out.kind != ExploreOutcome::Kind::kNaturals) {
        out.kind = ExploreOutcome::Kind::kBudget;
      }
      return out;
    }
  }
  return out;
}

}  // namespace detail

// Finite: the game unfolds to a finite tree (finitely many positions).
template <class Node>
Verdict IsFiniteGame(const BasicSystem<Node>& g, const Limits& limits = {}) {
  auto out = detail::ExploreGraph(g, limits, /*stop_at_naturals=*/true);
  using K = detail::ExploreOutcome::Kind;
  switch (out.kind) {
    case K::kComplete: return Verdict::Holds(out.visited);
    case K::kCycle:
    case K::kNaturals: return Verdict::Fails(std::move(out.witness), out.visited);
    case K::kBudget:
      return Verdict::Unknown(out.visited, "state budget exhausted");
  }
  return Verdict::Unknown(out.visited);
}

// Every history (root-to-leaf path through any choices) is finite.
template <class Node>
Verdict IsFiniteHistoryGame(const BasicSystem<Node>& g,
                            const Limits& limits = {}) {
  auto out = detail::ExploreGraph(g, limits, /*stop_at_naturals=*/false);
  using K = detail::ExploreOutcome::Kind;
  if (out.kind == K::kCycle) {
    return Verdict::Fails(std::move(out.witness), out.visited);
  }
  if (out.kind == K::kComplete && !out.sampled) return Verdict::Holds(out.visited);
  if (g.facts().finite_history) {
    if (*g.facts().finite_history) {
      return Verdict::Holds(out.visited, "analytic: " + g.facts().provenance);
    }
    Verdict v = Verdict::Unknown(out.visited);
    v.note = "analytic: infinite history, " + g.facts().provenance;
    return v;
  }
  return Verdict::Unknown(out.visited, out.sampled
                                           ? "Naturals branching was sampled"
                                           : "state budget exhausted");
}

// Finitely broad: finitely many profiles share this game. Holds exactly when
// the game unfolds to a finite tree; the count is the product over tree
// positions of their arity.
template <class Node>
Verdict IsFinitelyBroad(const BasicSystem<Node>& g,
                        const Limits& limits = {}) {
  Verdict finite = IsFiniteGame(g, limits);
  if (!finite.holds()) {
    if (finite.fails()) {
      finite.witness.reason =
          "infinitely many profiles: " + finite.witness.reason;
    }
    return finite;
  }
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  bool saturated = false;
  auto mul = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (a != 0 && b > kMax / a) {
      saturated = true;
      return kMax;
    }
    return a * b;
  };
  std::unordered_map<StateId, std::uint64_t> memo;
  std::function<std::uint64_t(StateRef)> count = [&](StateRef ref) {
    if (auto it = memo.find(ref.id); it != memo.end()) return it->second;
    auto view = g.Unfold(ref);
    std::uint64_t c = 1;
    if (const Node* n = std::get_if<Node>(&view)) {
      auto keys = BranchKeys(g.arena(), *n, 0);
      c = keys.size();
      for (const auto& k : keys) c = mul(c, count(g.Follow(ref, *n, k)));
    }
    memo[ref.id] = c;
    return c;
  };
  finite.count = count(g.root());
  finite.count_saturated = saturated;
  return finite;
}

// The chosen path reaches a leaf. Census systems get enough fuel to make the
// answer exact.
template <class Node>
Verdict IsConvergent(const BasicSystem<Node>& s, std::size_t fuel = 10000) {
  if (s.has_census()) fuel = std::max(fuel, s.table_size() + 1);
  auto path = ChosenPath(s, fuel);
  switch (path.end) {
    case PathEnd::kLeaf: return Verdict::Holds(path.steps.size());
    case PathEnd::kLasso: {
      Witness w;
      w.path = path.choices();
      w.loop_start = path.loop_start;
      w.reason = "chosen path cycles with period " +
                 std::to_string(path.period());
      return Verdict::Fails(std::move(w), path.steps.size());
    }
    case PathEnd::kExhausted:
      return Verdict::Unknown(path.steps.size(), "fuel exhausted on chosen path");
  }
  return Verdict::Unknown(0);
}

using LocalCheck = std::function<Verdict(const StrategySystem&)>;

// Always P: P holds at every reachable node state (leaves satisfy it
// unconditionally). A failing witness is the path to the offending node
// followed by P's own witness.
inline Verdict Always(const StrategySystem& s, const LocalCheck& local,
                      const Limits& limits = {}) {
  const std::size_t budget =
      s.has_census() ? std::max(limits.fuel, s.table_size()) : limits.fuel;
  struct Item {
    StateRef ref;
    std::vector<Choice> path;
  };
  std::unordered_map<StateId, bool> seen;
  std::deque<Item> queue{{s.root(), {}}};
  seen[s.root().id] = true;
  bool unknown = false;
  bool truncated = false;
  std::size_t visited = 0;
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (++visited > budget) {
      truncated = true;
      break;
    }
    auto view = s.Unfold(item.ref);
    const StrategyNode* node = std::get_if<StrategyNode>(&view);
    if (!node) continue;
    Verdict v = local(s.RootedAt(item.ref));
    if (v.fails()) {
      Witness w;
      w.path = item.path;
      const std::size_t prefix = w.path.size();
      w.path.insert(w.path.end(), v.witness.path.begin(),
                    v.witness.path.end());
      if (v.witness.loop_start) w.loop_start = prefix + *v.witness.loop_start;
      w.reason = "at " + s.StateName(item.ref.id) + ": " + v.witness.reason;
      return Verdict::Fails(std::move(w), visited);
    }
    if (v.unknown()) unknown = true;
    bool sampled = false;
    for (Choice c : BranchKeys(s.arena(), *node, limits.nat_samples, &sampled)) {
      StateRef next = s.Follow(item.ref, *node, c);
      if (seen.emplace(next.id, true).second) {
        auto path = item.path;
        path.push_back(c);
        queue.push_back(Item{next, std::move(path)});
      }
    }
    truncated |= sampled;
  }
  if (unknown || truncated) {
    return Verdict::Unknown(visited, truncated ? "exploration truncated"
                                               : "local check undecided");
  }
  return Verdict::Holds(visited);
}

// ⇓: every subprofile converges.
inline Verdict IsAlwaysConvergent(const StrategySystem& s,
                                  const Limits& limits = {}) {
  const std::size_t fuel = limits.fuel;
  return Always(
      s, [fuel](const StrategySystem& sub) { return IsConvergent(sub, fuel); },
      limits);
}

// Convergent s implies that uassign(s) yields a payoff. Checked, not assumed.
inline Verdict ExistenceUassignCheck(const StrategySystem& s,
                                     std::size_t fuel = 10000) {
  Verdict conv = IsConvergent(s, fuel);
  if (!conv.holds()) return Verdict::Holds(0, "vacuous: not convergent");
  if (s.has_census()) fuel = std::max(fuel, s.table_size() + 1);
  auto r = Uassign(s, fuel);
  if (AssignedPayoff<Choice>(r)) return Verdict::Holds(conv.fuel_spent);
  Witness w;
  w.reason = "convergent profile without utility assignment";
  return Verdict::Fails(std::move(w));
}

// Profile analogues: the predicates only look at the erased game, choices are
// already validated at construction.
inline Verdict IsFiniteProfile(const StrategySystem& s,
                               const Limits& limits = {}) {
  return IsFiniteGame(GameOf(s), limits);
}

inline Verdict IsFiniteHistoryProfile(const StrategySystem& s,
                                      const Limits& limits = {}) {
  return IsFiniteHistoryGame(GameOf(s), limits);
}

// ---------------------------------------------------------------------------
// Long histories

// Walks `choices` from the root. Returns the number of moves if the walk ends
// exactly on a leaf, nullopt otherwise.
inline std::optional<std::size_t> CompleteHistoryLength(
    const GameSystem& g, const std::vector<Choice>& choices) {
  auto states = ReplayPath(g, choices);
  if (!states) return std::nullopt;
  if (!std::holds_alternative<Leaf>(g.Unfold(states->back()))) {
    return std::nullopt;
  }
  return choices.size();
}

// As above, through a transition cache.
inline std::optional<std::size_t> CompleteHistoryLength(
    TransitionCache<GameNode>& cache, const std::vector<Choice>& choices) {
  StateRef ref = cache.system().root();
  for (Choice c : choices) {
    auto next = cache.Step(ref, c);
    if (!next) return std::nullopt;
    ref = *next;
  }
  if (!cache.IsLeaf(ref.id)) return std::nullopt;
  return choices.size();
}

// Searches for complete histories (ending at a leaf) with more than n moves.
// At a Naturals node the candidates n+1, n, ..., 0 are tried in that order;
// enumerated nodes are tried in key order. Subgames without Naturals nodes
// are solved once (longest complete history, memoized per state id), which
// keeps repeated probes for growing n linear overall.
class HistoryProber {
 public:
  explicit HistoryProber(GameSystem g, std::size_t fuel = 1'000'000)
      : g_(std::move(g)), fuel_(fuel) {}

  std::optional<std::vector<Choice>> LongerThan(std::size_t n) {
    spent_ = 0;
    std::vector<Choice> path;
    std::vector<StateId> on_path;
    if (Search(g_.root(), n, path, on_path)) return path;
    return std::nullopt;
  }

 private:
  struct Best {
    bool has_leaf = false;   // some complete history exists below
    std::size_t length = 0;  // longest complete history below
    Choice first{};
    Edge step;               // edge taken by `first`
  };

  // Longest complete history from a Naturals-free, acyclic region. Nullopt
  // when the region is not such (a Naturals node or cycle below) or when the
  // budget runs out.
  std::optional<Best> Pure(StateRef ref, std::vector<StateId>& on_path) {
    if (const Best* b = pure_.find(ref.id)) return *b;
    if (++spent_ > fuel_) return std::nullopt;
    auto view = g_.Unfold(ref);
    const GameNode* node = std::get_if<GameNode>(&view);
    Best best;
    if (!node) {
      best.has_leaf = true;
      pure_.insert(ref.id, best);
      return best;
    }
    if (!HasFiniteBranching(g_.arena(), *node)) return std::nullopt;
    if (std::find(on_path.begin(), on_path.end(), ref.id) != on_path.end()) {
      return std::nullopt;
    }
    on_path.push_back(ref.id);
    for (Choice c : BranchKeys(g_.arena(), *node, 0)) {
      auto sub = Pure(g_.Follow(ref, *node, c), on_path);
      if (!sub) {
        on_path.pop_back();
        return std::nullopt;
      }
      if (sub->has_leaf && (!best.has_leaf || sub->length + 1 > best.length)) {
        best.has_leaf = true;
        best.length = sub->length + 1;
        best.first = c;
        best.step = EdgeFor(g_.arena(), *node, c);
      }
    }
    on_path.pop_back();
    pure_.insert(ref.id, best);
    return best;
  }

  void AppendPure(StateRef ref, std::vector<Choice>& path) {
    while (true) {
      const Best& b = *pure_.find(ref.id);
      if (b.length == 0) return;
      path.push_back(b.first);
      ref = StateRef{b.step.target, ref.offset + b.step.shift};
    }
  }

  bool Search(StateRef ref, std::size_t n, std::vector<Choice>& path,
              std::vector<StateId>& on_path) {
    if (spent_ > fuel_) return false;
    if (auto best = Pure(ref, on_path)) {
      if (best->has_leaf && path.size() + best->length > n) {
        AppendPure(ref, path);
        return true;
      }
      return false;
    }
    if (spent_ > fuel_) return false;
    if (std::find(on_path.begin(), on_path.end(), ref.id) != on_path.end()) {
      return false;
    }
    auto view = g_.Unfold(ref);
    const GameNode* node = std::get_if<GameNode>(&view);
    if (!node) return path.size() > n;
    std::vector<Choice> candidates;
    if (HasFiniteBranching(g_.arena(), *node)) {
      candidates = BranchKeys(g_.arena(), *node, 0);
    } else {
      for (std::size_t k = n + 2; k-- > 0;) candidates.push_back(Choice{k});
    }
    on_path.push_back(ref.id);
    for (Choice c : candidates) {
      path.push_back(c);
      if (Search(g_.Follow(ref, *node, c), n, path, on_path)) {
        on_path.pop_back();
        return true;
      }
      path.pop_back();
      if (spent_ > fuel_) break;
    }
    on_path.pop_back();
    return false;
  }

  GameSystem g_;
  std::size_t fuel_;
  std::size_t spent_ = 0;
  IdMap<Best> pure_;
};

}  // namespace extgames

#endif  // EXTGAMES_FINITENESS_HPP_

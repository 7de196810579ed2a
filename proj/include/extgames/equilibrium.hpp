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

// Subgame perfect equilibria.
//
// A profile is an SPE when it is always convergent and, at every node, the
// payoff of the chosen branch is pref-above the payoff of *each* alternative
// branch for the owner, recursively in every subprofile. Incomparable
// alternatives (partial preorders) make the check fail.
//
// On a regular (census) profile SPE is a greatest fixpoint: it is the largest
// set X of states such that every state in X satisfies the local condition
// and all its successors are in X. Once ⇓ holds, each utility assignment is a
// fixed payoff computed by uassign, so the local condition at a state no
// longer depends on X. The largest such X is then the set of states from
// which every reachable state satisfies the local condition; the root is in
// it iff every reachable node state does. This is what CheckSpeRegular
// decides. For systems with shifted edges the local condition at a state
// compares payoffs translated by the same offset, and the shipped integer
// preorders are translation invariant, so checking one offset per state id
// suffices.

#ifndef EXTGAMES_EQUILIBRIUM_HPP_
#define EXTGAMES_EQUILIBRIUM_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "extgames/core.hpp"
#include "extgames/finiteness.hpp"
#include "extgames/system.hpp"
#include "extgames/verdict.hpp"

namespace extgames {

enum class TieRule {
  kAllOptima,     // every SPE
  kFirstOptimal,  // first pref-maximal choice (key order) at each node
};

struct SpeAlternative {
  Choice choice;
  StateRef target;
  Payoff payoff;
  bool pref_holds = false;  // pref owner (alternative) (chosen)
};

struct SpeNodeRecord {
  StateRef state;
  std::vector<Choice> path;  // from the root of the checked profile
  AgentId agent;
  Choice chosen;
  StateRef chosen_target;
  Payoff chosen_payoff;
  std::vector<SpeAlternative> alternatives;
};

struct SpeCertificate {
  std::vector<SpeNodeRecord> nodes;
};

struct SpeViolation {
  StateRef state;
  std::vector<Choice> path;
  Choice chosen;
  Choice alternative;
};

struct SpeResult {
  Verdict verdict;
  SpeCertificate certificate;
  std::optional<SpeViolation> violation;
};

namespace detail {

inline std::size_t UassignFuel(const StrategySystem& s, std::size_t fuel) {
  return s.has_census() ? std::max(fuel, s.table_size() + 1) : fuel;
}

// Runs the local condition at every reachable node state (one offset per
// state id) and fills the certificate.
inline SpeResult LocalSpeEverywhere(const StrategySystem& s,
                                    const Limits& limits) {
  SpeResult result;
  const std::size_t fuel = UassignFuel(s, limits.fuel);
  struct Item {
    StateRef ref;
    std::vector<Choice> path;
  };
  std::unordered_map<StateId, bool> seen{{s.root().id, true}};
  std::deque<Item> queue{{s.root(), {}}};
  std::size_t visited = 0;
  auto payoff_of = [&](StateRef ref) -> std::optional<Payoff> {
    auto r = Uassign(s.RootedAt(ref), fuel);
    if (const Payoff* p = AssignedPayoff<Choice>(r)) return *p;
    return std::nullopt;
  };
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    ++visited;
    auto view = s.Unfold(item.ref);
    const StrategyNode* node = std::get_if<StrategyNode>(&view);
    if (!node) continue;
    const auto& arena = s.arena();
    auto keys = BranchKeys(arena, *node, limits.nat_samples);
    if (!HasFiniteBranching(arena, *node)) {
      result.verdict = Verdict::Unknown(visited, "Naturals branching");
      return result;
    }
    SpeNodeRecord rec;
    rec.state = item.ref;
    rec.path = item.path;
    rec.agent = node->agent;
    rec.chosen = node->chosen;
    rec.chosen_target = s.Follow(item.ref, *node, node->chosen);
    auto chosen_payoff = payoff_of(rec.chosen_target);
    if (!chosen_payoff) {
      result.verdict = Verdict::Unknown(visited, "utility assignment undecided");
      return result;
    }
    rec.chosen_payoff = *chosen_payoff;
    const Utility mine = rec.chosen_payoff[node->agent];
    std::optional<Choice> bad;
    for (Choice c : keys) {
      if (c == node->chosen) continue;
      SpeAlternative alt;
      alt.choice = c;
      alt.target = s.Follow(item.ref, *node, c);
      auto p = payoff_of(alt.target);
      if (!p) {
        result.verdict =
            Verdict::Unknown(visited, "utility assignment undecided");
        return result;
      }
      alt.payoff = *p;
      alt.pref_holds = Pref(arena, node->agent, alt.payoff[node->agent], mine);
      if (!alt.pref_holds && !bad) bad = c;
      rec.alternatives.push_back(std::move(alt));
    }
    if (bad) {
      Witness w;
      w.path = item.path;
      w.reason = "at " + s.StateName(item.ref.id) + " agent " +
                 arena.agent(node->agent).name + " prefers '" +
                 arena.agent(node->agent).choices.label(*bad) + "' over '" +
                 arena.agent(node->agent).choices.label(node->chosen) + "'";
      result.verdict = Verdict::Fails(std::move(w), visited);
      result.violation =
          SpeViolation{item.ref, item.path, node->chosen, *bad};
      result.certificate.nodes.push_back(std::move(rec));
      return result;
    }
    for (Choice c : keys) {
      StateRef next = s.Follow(item.ref, *node, c);
      if (seen.emplace(next.id, true).second) {
        auto path = item.path;
        path.push_back(c);
        queue.push_back(Item{next, std::move(path)});
      }
    }
    result.certificate.nodes.push_back(std::move(rec));
  }
  result.verdict = Verdict::Holds(visited);
  return result;
}

}  // namespace detail

// SPE check for profiles whose game is a finite tree.
inline SpeResult CheckSpeFinite(const StrategySystem& s,
                                const Limits& limits = {}) {
  if (!IsFiniteProfile(s, limits).holds()) throw NotFiniteTree();
  return detail::LocalSpeEverywhere(s, limits);
}

// SPE check for regular profiles: ⇓ plus the local condition at every
// reachable state.
inline SpeResult CheckSpeRegular(const StrategySystem& s,
                                 const Limits& limits = {}) {
  if (!s.has_census()) throw NoCensus();
  Verdict conv = IsAlwaysConvergent(s, limits);
  if (!conv.holds()) {
    SpeResult r;
    r.verdict = conv;
    if (conv.fails()) {
      r.verdict.witness.reason = "not always convergent: " + conv.witness.reason;
    }
    return r;
  }
  return detail::LocalSpeEverywhere(s, limits);
}

// Re-runs uassign on every recorded subprofile and re-evaluates each
// preference comparison.
inline bool ReplayCertificate(const StrategySystem& s,
                              const SpeCertificate& cert,
                              std::size_t fuel = 10000) {
  fuel = detail::UassignFuel(s, fuel);
  auto payoff_of = [&](StateRef ref) -> std::optional<Payoff> {
    auto r = Uassign(s.RootedAt(ref), fuel);
    if (const Payoff* p = AssignedPayoff<Choice>(r)) return *p;
    return std::nullopt;
  };
  for (const auto& rec : cert.nodes) {
    auto view = s.Unfold(rec.state);
    const StrategyNode* node = std::get_if<StrategyNode>(&view);
    if (!node || node->agent != rec.agent || node->chosen != rec.chosen) {
      return false;
    }
    if (s.Follow(rec.state, *node, rec.chosen) != rec.chosen_target) {
      return false;
    }
    auto chosen = payoff_of(rec.chosen_target);
    if (!chosen || !(*chosen == rec.chosen_payoff)) return false;
    for (const auto& alt : rec.alternatives) {
      if (s.Follow(rec.state, *node, alt.choice) != alt.target) return false;
      auto p = payoff_of(alt.target);
      if (!p || !(*p == alt.payoff)) return false;
      if (Pref(s.arena(), rec.agent, p->operator[](rec.agent),
               chosen->operator[](rec.agent)) != alt.pref_holds) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Finite trees

// A finite game unfolded into an explicit tree; position 0 is the root and
// positions are in preorder.
struct FiniteTree {
  struct Position {
    StateRef origin;
    bool leaf = false;
    Payoff payoff;
    AgentId agent;
    std::vector<std::size_t> children;  // in key order
    std::string name;
  };
  ArenaPtr arena;
  std::vector<Position> positions;

  std::vector<std::size_t> NodePositions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (!positions[i].leaf) out.push_back(i);
    }
    return out;
  }
};

inline FiniteTree UnfoldFiniteTree(const GameSystem& g,
                                   std::size_t max_positions = 1u << 20) {
  if (!IsFiniteGame(g).holds()) throw NotFiniteTree();
  FiniteTree tree;
  tree.arena = g.arena_ptr();
  std::unordered_map<std::string, std::size_t> name_uses;
  std::function<std::size_t(StateRef)> visit = [&](StateRef ref) {
    if (tree.positions.size() >= max_positions) {
      throw TooBroad("tree has more than " + std::to_string(max_positions) +
                     " positions");
    }
    const std::size_t index = tree.positions.size();
    tree.positions.emplace_back();
    std::string base = g.StateName(ref.id);
    const std::size_t uses = name_uses[base]++;
    tree.positions[index].name =
        uses == 0 ? base : base + "_" + std::to_string(uses);
    tree.positions[index].origin = ref;
    auto view = g.Unfold(ref);
    if (const Leaf* leaf = std::get_if<Leaf>(&view)) {
      tree.positions[index].leaf = true;
      tree.positions[index].payoff = leaf->payoff;
      return index;
    }
    const GameNode& node = std::get<GameNode>(view);
    tree.positions[index].agent = node.agent;
    for (Choice c : BranchKeys(g.arena(), node, 0)) {
      std::size_t child = visit(g.Follow(ref, node, c));
      tree.positions[index].children.push_back(child);
    }
    return index;
  };
  visit(g.root());
  return tree;
}

inline GameSystem GameOnTree(const FiniteTree& tree) {
  std::vector<GameSystem::View> table;
  std::vector<std::string> names;
  for (const auto& p : tree.positions) {
    names.push_back(p.name);
    if (p.leaf) {
      table.push_back(Leaf{p.payoff});
      continue;
    }
    std::vector<Edge> next;
    for (std::size_t c : p.children) next.push_back(Edge{c, 0});
    table.push_back(GameNodeView(p.agent, std::move(next)));
  }
  return GameSystem::Census(tree.arena, std::move(table), 0, std::move(names));
}

// Profile over a finite tree; `choice_at[i]` is used for node position i.
inline StrategySystem ProfileOnTree(const FiniteTree& tree,
                                    const std::vector<Choice>& choice_at) {
  std::vector<StrategySystem::View> table;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < tree.positions.size(); ++i) {
    const auto& p = tree.positions[i];
    names.push_back(p.name);
    if (p.leaf) {
      table.push_back(Leaf{p.payoff});
      continue;
    }
    std::vector<Edge> next;
    for (std::size_t c : p.children) next.push_back(Edge{c, 0});
    table.push_back(StrategyNodeView(p.agent, choice_at.at(i), std::move(next)));
  }
  return StrategySystem::Census(tree.arena, std::move(table), 0,
                                std::move(names));
}

// ---------------------------------------------------------------------------
// Backward induction

namespace detail {

struct PartialProfile {
  std::vector<std::pair<std::size_t, Choice>> choices;
  Payoff payoff;
};

inline bool Dominates(const ArenaSpec& arena, AgentId owner,
                      const std::vector<const Payoff*>& payoffs,
                      std::size_t c) {
  for (std::size_t alt = 0; alt < payoffs.size(); ++alt) {
    if (!Pref(arena, owner, (*payoffs[alt])[owner], (*payoffs[c])[owner])) {
      return false;
    }
  }
  return true;
}

inline std::vector<PartialProfile> SolveAll(const FiniteTree& tree,
                                            std::size_t pos,
                                            std::size_t max_partials) {
  const auto& p = tree.positions[pos];
  if (p.leaf) return {PartialProfile{{}, p.payoff}};
  const auto& arena = *tree.arena;
  std::vector<std::vector<PartialProfile>> sub;
  for (std::size_t child : p.children) {
    sub.push_back(SolveAll(tree, child, max_partials));
  }
  std::vector<PartialProfile> out;
  std::vector<std::size_t> pick(sub.size(), 0);
  while (true) {
    std::vector<const Payoff*> payoffs;
    for (std::size_t c = 0; c < sub.size(); ++c) {
      payoffs.push_back(&sub[c][pick[c]].payoff);
    }
    for (std::size_t c = 0; c < sub.size(); ++c) {
      if (!Dominates(arena, p.agent, payoffs, c)) continue;
      PartialProfile partial;
      for (std::size_t k = 0; k < sub.size(); ++k) {
        const auto& ch = sub[k][pick[k]].choices;
        partial.choices.insert(partial.choices.end(), ch.begin(), ch.end());
      }
      partial.choices.emplace_back(pos, Choice{c});
      partial.payoff = *payoffs[c];
      out.push_back(std::move(partial));
      if (out.size() > max_partials) {
        throw TooBroad("more than " + std::to_string(max_partials) +
                       " equilibria");
      }
    }
    std::size_t k = 0;
    while (k < sub.size() && ++pick[k] == sub[k].size()) pick[k++] = 0;
    if (k == sub.size()) break;
  }
  if (out.empty()) {
    throw NoMaximalChoice("no choice of " + arena.agent(p.agent).name +
                          " dominates all others at " + p.name);
  }
  return out;
}

inline Payoff SolveFirst(const FiniteTree& tree, std::size_t pos,
                         std::vector<Choice>& choice_at) {
  const auto& p = tree.positions[pos];
  if (p.leaf) return p.payoff;
  std::vector<Payoff> values;
  for (std::size_t child : p.children) {
    values.push_back(SolveFirst(tree, child, choice_at));
  }
  std::vector<const Payoff*> payoffs;
  for (const auto& v : values) payoffs.push_back(&v);
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (Dominates(*tree.arena, p.agent, payoffs, c)) {
      choice_at[pos] = Choice{c};
      return values[c];
    }
  }
  throw NoMaximalChoice("no choice of " + tree.arena->agent(p.agent).name +
                        " dominates all others at " + p.name);
}

}  // namespace detail

// Leaf-up solver for finite games. Profiles live on the unfolded tree.
inline std::vector<StrategySystem> BackwardInduction(
    const GameSystem& g, TieRule tie, std::size_t max_profiles = 1u << 16) {
  FiniteTree tree = UnfoldFiniteTree(g);
  if (tie == TieRule::kFirstOptimal) {
    std::vector<Choice> choice_at(tree.positions.size());
    detail::SolveFirst(tree, 0, choice_at);
    return {ProfileOnTree(tree, choice_at)};
  }
  std::vector<StrategySystem> out;
  for (const auto& partial : detail::SolveAll(tree, 0, max_profiles)) {
    std::vector<Choice> choice_at(tree.positions.size());
    for (const auto& [pos, c] : partial.choices) choice_at[pos] = c;
    out.push_back(ProfileOnTree(tree, choice_at));
  }
  return out;
}

// Oracle: every profile of the finite tree, filtered by CheckSpeFinite.
inline std::vector<StrategySystem> EnumerateSpeBruteforce(
    const GameSystem& g, std::uint64_t bound = 4096) {
  Verdict broad = IsFinitelyBroad(g);
  if (!broad.holds()) throw NotFiniteTree();
  if (broad.count_saturated || *broad.count > bound) {
    throw TooBroad("game has more than " + std::to_string(bound) +
                   " strategy profiles");
  }
  FiniteTree tree = UnfoldFiniteTree(g);
  const std::vector<std::size_t> nodes = tree.NodePositions();
  std::vector<Choice> choice_at(tree.positions.size());
  std::vector<StrategySystem> out;
  while (true) {
    StrategySystem s = ProfileOnTree(tree, choice_at);
    if (CheckSpeFinite(s).verdict.holds()) out.push_back(std::move(s));
    std::size_t k = 0;
    while (k < nodes.size()) {
      const std::size_t pos = nodes[k];
      if (++choice_at[pos].value < tree.positions[pos].children.size()) break;
      choice_at[pos] = Choice{0};
      ++k;
    }
    if (k == nodes.size()) break;
  }
  return out;
}

// Serialization of the unfolded tree of a finite profile; two finite profiles
// are bisimilar iff their keys are equal.
inline std::string CanonicalProfileKey(const StrategySystem& s) {
  std::function<std::string(StateRef)> go = [&](StateRef ref) {
    auto view = s.Unfold(ref);
    if (const Leaf* leaf = std::get_if<Leaf>(&view)) {
      std::string out = "L(";
      for (Utility u : leaf->payoff.values()) out += std::to_string(u.value) + ",";
      return out + ")";
    }
    const auto& node = std::get<StrategyNode>(view);
    std::string out = "N" + std::to_string(node.agent.value) + "/" +
                      std::to_string(node.chosen.value) + "(";
    for (Choice c : BranchKeys(s.arena(), node, 0)) {
      out += go(s.Follow(ref, node, c)) + ";";
    }
    return out + ")";
  };
  if (!IsFiniteProfile(s).holds()) throw NotFiniteTree();
  return go(s.root());
}

inline std::set<std::string> CanonicalProfileSet(
    const std::vector<StrategySystem>& profiles) {
  std::set<std::string> out;
  for (const auto& s : profiles) out.insert(CanonicalProfileKey(s));
  return out;
}

}  // namespace extgames

#endif  // EXTGAMES_EQUILIBRIUM_HPP_

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

// Built-in games: the two-agent example with agent-dependent choices and
// utilities, threadlike games and the game with only finite histories but no
// longest one, the dollar auction and the ying-yang game with their
// continue/stop profiles, and a small multi-stage game.

#ifndef EXTGAMES_GALLERY_HPP_
#define EXTGAMES_GALLERY_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "extgames/arena.hpp"
#include "extgames/system.hpp"
#include "extgames/verdict.hpp"

namespace extgames::gallery {

// ---------------------------------------------------------------------------
// Reconstructed constants. The leaf payoffs of the two-agent example and the
// dollar-auction prize are not given numerically anywhere; these are
// placeholders chosen to be consistent with the described utility spaces
// (and, for the dollar auction, to make the escalation witnesses SPE under
// the usual order on integers). Swap them here.

inline constexpr std::int64_t kDollarPrize = 100;

struct Example21Leaf {
  const char* a_utility;  // in {weak, medium, strong}
  std::int64_t b_utility; // natural number
};
inline constexpr Example21Leaf kExample21Blue{"strong", 1};
inline constexpr Example21Leaf kExample21GreenBlack{"weak", 3};
inline constexpr Example21Leaf kExample21GreenDotted{"medium", 2};
inline constexpr Example21Leaf kExample21Red{"medium", 0};

// ---------------------------------------------------------------------------

inline ArenaPtr Example21Arena() {
  return MakeArena({
      AgentSpec{"A", ChoiceSpace::Enumerated({"blue", "green", "red"}),
                UtilityDomain::Ordered({"weak", "medium", "strong"},
                                       {{"weak", "medium"},
                                        {"medium", "strong"}})},
      AgentSpec{"B", ChoiceSpace::Enumerated({"black", "dotted"}),
                UtilityDomain::Integers(PrefKind::kIntLeq)},
  });
}

namespace detail {
inline Payoff Example21Payoff(const ArenaSpec& arena, Example21Leaf leaf) {
  return Payoff({*arena.agents()[0].utility.find(leaf.a_utility),
                 Utility{leaf.b_utility}});
}
}  // namespace detail

// A at the root (blue, green, red); green leads to a B node (black, dotted).
inline GameSystem Example21() {
  ArenaPtr arena = Example21Arena();
  const AgentId a{0}, b{1};
  std::vector<GameSystem::View> states{
      GameNodeView(a, Edges({1, 2, 3})),
      Leaf{detail::Example21Payoff(*arena, kExample21Blue)},
      GameNodeView(b, Edges({4, 5})),
      Leaf{detail::Example21Payoff(*arena, kExample21Red)},
      Leaf{detail::Example21Payoff(*arena, kExample21GreenBlack)},
      Leaf{detail::Example21Payoff(*arena, kExample21GreenDotted)},
  };
  return GameSystem::Census(arena, std::move(states), 0,
                            {"a_root", "blue_leaf", "b_node", "red_leaf",
                             "black_leaf", "dotted_leaf"});
}

// Multi-stage game over the same arena: A and B move at once, each of the 6
// joint choices ends the game.
inline MsGameSystem MsExample21() {
  ArenaPtr arena = Example21Arena();
  const char* a_values[] = {"weak", "medium", "strong"};
  std::vector<MsGameSystem::View> states;
  std::vector<std::string> names{"stage"};
  std::vector<Edge> next;
  for (std::size_t i = 0; i < 6; ++i) {
    next.push_back(Edge{i + 1, 0});
    names.push_back("outcome" + std::to_string(i));
  }
  states.push_back(MsGameNode{Branch<JointChoice>::Table(next)});
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t a_pick = i / 2, b_pick = i % 2;
    states.push_back(Leaf{Payoff(
        {*arena->agents()[0].utility.find(a_values[(a_pick + b_pick) % 3]),
         Utility{static_cast<std::int64_t>(2 * a_pick + b_pick)}})});
  }
  return MsGameSystem::Census(arena, std::move(states), 0, std::move(names));
}

// ---------------------------------------------------------------------------
// Alice/Bob arena: Alice chooses a natural number, Bob has a single choice,
// utilities are the unit type.

inline ArenaPtr AliceBobArena() {
  return MakeArena({
      AgentSpec{"Alice", ChoiceSpace::Naturals(),
                UtilityDomain::Symbolic({"tt"}, PrefKind::kIndifference)},
      AgentSpec{"Bob", ChoiceSpace::Enumerated({"tt"}),
                UtilityDomain::Symbolic({"tt"}, PrefKind::kIndifference)},
  });
}

inline Payoff Triv() { return Payoff({Utility{0}, Utility{0}}); }

// n Bob moves, then the triv leaf. State k is the thread of length k.
inline GameSystem Threadlike(std::size_t n) {
  std::vector<GameSystem::View> states;
  std::vector<std::string> names;
  states.push_back(Leaf{Triv()});
  names.push_back("thread_0");
  for (std::size_t k = 1; k <= n; ++k) {
    states.push_back(GameNodeView(AgentId{1}, Edges({k - 1})));
    names.push_back("thread_" + std::to_string(k));
  }
  return GameSystem::Census(AliceBobArena(), std::move(states), n,
                            std::move(names));
}

inline StrategySystem ThreadlikeProfile(std::size_t n) {
  std::vector<StrategySystem::View> states;
  std::vector<std::string> names;
  states.push_back(Leaf{Triv()});
  names.push_back("thread_0");
  for (std::size_t k = 1; k <= n; ++k) {
    states.push_back(StrategyNodeView(AgentId{1}, Choice{0}, Edges({k - 1})));
    names.push_back("thread_" + std::to_string(k));
  }
  return StrategySystem::Census(AliceBobArena(), std::move(states), n,
                                std::move(names));
}

inline constexpr StateId kWfhRoot = std::numeric_limits<StateId>::max();

// Alice picks n, then the thread of length n is played. Every history is
// finite, yet there is none of maximal length.
inline GameSystem GameWfh() {
  auto unfold = [](StateId id) -> GameSystem::View {
    if (id == kWfhRoot) {
      return GameNode{AgentId{0}, Branch<Choice>::Generated([](Choice n) {
                        return Edge{n.value, 0};
                      })};
    }
    if (id == 0) return Leaf{Triv()};
    return GameNodeView(AgentId{1}, {Edge{id - 1, 0}});
  };
  auto namer = [](StateId id) -> std::string {
    return id == kWfhRoot ? "wfh" : "thread_" + std::to_string(id);
  };
  return GameSystem::Programmatic(AliceBobArena(), unfold, kWfhRoot, namer)
      .WithFacts(AnalyticFacts{
          true,
          "branch n is a thread of n single-choice moves ending in a leaf, "
          "by induction on n"});
}

// Choices of a complete history of n+2 moves in GameWfh: Alice picks n+1,
// then Bob moves n+1 times.
inline std::vector<Choice> GameWfhHistoryLongerThan(std::size_t n) {
  std::vector<Choice> path{Choice{n + 1}};
  path.insert(path.end(), n + 1, Choice{0});
  return path;
}

// ---------------------------------------------------------------------------
// Continue/stop profiles of the two-agent escalation games.

enum class ProfileKind { kAcBc, kAsBc, kAcBs, kAsBs };

inline std::string_view ProfileKindName(ProfileKind k) {
  switch (k) {
    case ProfileKind::kAcBc: return "acbc";
    case ProfileKind::kAsBc: return "asbc";
    case ProfileKind::kAcBs: return "acbs";
    case ProfileKind::kAsBs: return "asbs";
  }
  return "?";
}

inline bool AliceContinues(ProfileKind k) {
  return k == ProfileKind::kAcBc || k == ProfileKind::kAcBs;
}
inline bool BobContinues(ProfileKind k) {
  return k == ProfileKind::kAcBc || k == ProfileKind::kAsBc;
}

// Dollar auction. Agents alternate, Alice at even stages; each may stop or
// continue. Stopping at stage n pays the stopper -n and the other agent
// kDollarPrize - n. Stages are offsets: two node states, each continue edge
// shifting integer payoffs by -1.
inline ArenaPtr DollarArena() {
  return MakeArena({
      AgentSpec{"Alice", ChoiceSpace::Enumerated({"stop", "continue"}),
                UtilityDomain::Integers(PrefKind::kIntLeq)},
      AgentSpec{"Bob", ChoiceSpace::Enumerated({"stop", "continue"}),
                UtilityDomain::Integers(PrefKind::kIntLeq)},
  });
}

inline constexpr Choice kStop{0};
inline constexpr Choice kContinue{1};

namespace detail {

template <class System, class MakeNode>
System DollarSystem(std::size_t stage, MakeNode make_node) {
  std::vector<typename System::View> states{
      make_node(AgentId{0}, std::vector<Edge>{{2, 0}, {1, -1}}),
      make_node(AgentId{1}, std::vector<Edge>{{3, 0}, {0, -1}}),
      Leaf{Payoff({Utility{0}, Utility{kDollarPrize}})},
      Leaf{Payoff({Utility{kDollarPrize}, Utility{0}})},
  };
  const StateId root = stage % 2 == 0 ? 0 : 1;
  auto sys = System::Census(DollarArena(), std::move(states), root,
                            {"alice", "bob", "alice_stopped", "bob_stopped"});
  return sys.RootedAt(StateRef{root, -static_cast<std::int64_t>(stage)});
}

}  // namespace detail

inline GameSystem DollarGame(std::size_t stage = 0) {
  return detail::DollarSystem<GameSystem>(
      stage, [](AgentId a, std::vector<Edge> e) {
        return GameNodeView(a, std::move(e));
      });
}

inline StrategySystem DollarProfile(ProfileKind kind, std::size_t stage = 0) {
  return detail::DollarSystem<StrategySystem>(
      stage, [kind](AgentId a, std::vector<Edge> e) {
        const bool cont = a.value == 0 ? AliceContinues(kind) : BobContinues(kind);
        return StrategyNodeView(a, cont ? kContinue : kStop, std::move(e));
      });
}

// Ying-yang game: A and B alternate forever unless one goes down. Going down
// after A pays (ying, yang); after B, (yang, ying). The utilities are not
// ordered; the preorder defaults to total indifference.
inline ArenaPtr YingYangArena(PrefKind pref = PrefKind::kIndifference) {
  return MakeArena({
      AgentSpec{"A", ChoiceSpace::Enumerated({"down", "right"}),
                UtilityDomain::Symbolic({"ying", "yang"}, pref)},
      AgentSpec{"B", ChoiceSpace::Enumerated({"down", "right"}),
                UtilityDomain::Symbolic({"ying", "yang"}, pref)},
  });
}

inline constexpr Choice kDown{0};
inline constexpr Choice kRight{1};

inline Payoff YingYangAfterA() { return Payoff({Utility{0}, Utility{1}}); }
inline Payoff YingYangAfterB() { return Payoff({Utility{1}, Utility{0}}); }

inline GameSystem YingYangGame(PrefKind pref = PrefKind::kIndifference) {
  std::vector<GameSystem::View> states{
      GameNodeView(AgentId{0}, Edges({2, 1})),
      GameNodeView(AgentId{1}, Edges({3, 0})),
      Leaf{YingYangAfterA()},
      Leaf{YingYangAfterB()},
  };
  return GameSystem::Census(YingYangArena(pref), std::move(states), 0,
                            {"a_turn", "b_turn", "a_down", "b_down"});
}

// The same game presented as a 4-node loop.
inline GameSystem YingYangUnrolled(PrefKind pref = PrefKind::kIndifference) {
  std::vector<GameSystem::View> states{
      GameNodeView(AgentId{0}, Edges({4, 1})),
      GameNodeView(AgentId{1}, Edges({5, 2})),
      GameNodeView(AgentId{0}, Edges({4, 3})),
      GameNodeView(AgentId{1}, Edges({5, 0})),
      Leaf{YingYangAfterA()},
      Leaf{YingYangAfterB()},
  };
  return GameSystem::Census(
      YingYangArena(pref), std::move(states), 0,
      {"a_turn", "b_turn", "a_turn2", "b_turn2", "a_down", "b_down"});
}

// "Continue" is right, "stop" is down.
inline StrategySystem YingYangProfile(ProfileKind kind,
                                      PrefKind pref = PrefKind::kIndifference) {
  std::vector<StrategySystem::View> states{
      StrategyNodeView(AgentId{0}, AliceContinues(kind) ? kRight : kDown,
                       Edges({2, 1})),
      StrategyNodeView(AgentId{1}, BobContinues(kind) ? kRight : kDown,
                       Edges({3, 0})),
      Leaf{YingYangAfterA()},
      Leaf{YingYangAfterB()},
  };
  return StrategySystem::Census(YingYangArena(pref), std::move(states), 0,
                                {"a_turn", "b_turn", "a_down", "b_down"});
}

// ---------------------------------------------------------------------------
// Registry

struct GalleryFact {
  std::string predicate;  // finite | broad | finite-history | convergent |
                          // always-convergent | divergent | spe | escalation
  VerdictKind expected;
  std::string note;
};

using AnySystem = std::variant<GameSystem, StrategySystem, MsGameSystem>;

struct GalleryEntry {
  std::string name;
  std::string description;
  AnySystem system;
  std::vector<GalleryFact> facts;
};

struct GalleryOptions {
  std::size_t stage = 0;                          // dollar auction
  PrefKind yingyang_pref = PrefKind::kIndifference;
};

inline std::vector<std::string> GalleryNames() {
  return {"example-2-1",    "ms-example-2-1", "threadlike-<n>",
          "threadlike-profile-<n>", "game-wfh", "dollar-game",
          "dollar-acbc",    "dollar-asbc",    "dollar-acbs",
          "dollar-asbs",    "yingyang-game",  "yingyang-unrolled",
          "yingyang-acbc",  "yingyang-asbc",  "yingyang-acbs",
          "yingyang-asbs"};
}

inline std::optional<ProfileKind> ParseProfileKind(std::string_view s) {
  for (ProfileKind k : {ProfileKind::kAcBc, ProfileKind::kAsBc,
                        ProfileKind::kAcBs, ProfileKind::kAsBs}) {
    if (s == ProfileKindName(k)) return k;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> ParseSize(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  std::size_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(ch - '0');
  }
  return v;
}

inline std::optional<GalleryEntry> Lookup(std::string_view name,
                                          const GalleryOptions& opt = {}) {
  using V = VerdictKind;
  const V H = V::kHolds, F = V::kFails;
  if (name == "example-2-1") {
    return GalleryEntry{
        std::string(name),
        "A picks blue/green/red with utilities weak<medium<strong; B picks "
        "black/dotted with natural-number utilities (placeholder payoffs)",
        Example21(),
        {{"finite", H, ""}, {"finite-history", H, ""}, {"broad", H, "6 profiles"}}};
  }
  if (name == "ms-example-2-1") {
    return GalleryEntry{std::string(name),
                        "one simultaneous move of A and B over the same "
                        "choices and utilities (placeholder payoffs)",
                        MsExample21(),
                        {}};
  }
  constexpr std::string_view kThreadProfile = "threadlike-profile-";
  constexpr std::string_view kThread = "threadlike-";
  if (name.starts_with(kThreadProfile)) {
    auto n = ParseSize(name.substr(kThreadProfile.size()));
    if (!n) return std::nullopt;
    return GalleryEntry{std::string(name), "the only profile of threadlike-n",
                        ThreadlikeProfile(*n),
                        {{"convergent", H, ""}, {"always-convergent", H, ""},
                         {"spe", H, ""}}};
  }
  if (name.starts_with(kThread)) {
    auto n = ParseSize(name.substr(kThread.size()));
    if (!n) return std::nullopt;
    return GalleryEntry{std::string(name),
                        "n single-choice Bob moves ending in the triv leaf",
                        Threadlike(*n),
                        {{"finite", H, ""}, {"finite-history", H, ""},
                         {"broad", H, "1 profile"}}};
  }
  if (name == "game-wfh") {
    return GalleryEntry{
        std::string(name),
        "Alice picks n in N, then threadlike-n: only finite histories, no "
        "longest one",
        GameWfh(),
        {{"finite", F, "Naturals branching at the root"},
         {"broad", F, "infinitely many profiles"},
         {"finite-history", H, "analytic"}}};
  }
  const std::string stage = " from stage " + std::to_string(opt.stage);
  if (name == "dollar-game") {
    return GalleryEntry{std::string(name), "dollar auction" + stage,
                        DollarGame(opt.stage),
                        {{"finite", F, "cycle"}, {"finite-history", F, "cycle"}}};
  }
  constexpr std::string_view kDollar = "dollar-";
  constexpr std::string_view kYingYang = "yingyang-";
  if (name.starts_with(kDollar)) {
    auto kind = ParseProfileKind(name.substr(kDollar.size()));
    if (!kind) return std::nullopt;
    std::vector<GalleryFact> facts;
    if (*kind == ProfileKind::kAcBc) {
      facts = {{"convergent", F, ""}, {"always-convergent", F, ""},
               {"divergent", H, ""}, {"spe", F, ""}, {"escalation", H, ""}};
    } else if (*kind == ProfileKind::kAsBs) {
      facts = {{"convergent", H, ""}, {"always-convergent", H, ""},
               {"divergent", F, ""}, {"escalation", F, ""}};
    } else {
      facts = {{"always-convergent", H, ""}, {"spe", H, ""},
               {"escalation", F, ""}};
    }
    return GalleryEntry{std::string(name),
                        "dollar auction profile " +
                            std::string(ProfileKindName(*kind)) + stage,
                        DollarProfile(*kind, opt.stage), std::move(facts)};
  }
  if (name == "yingyang-game") {
    return GalleryEntry{std::string(name), "ying-yang game (2-state loop)",
                        YingYangGame(opt.yingyang_pref),
                        {{"finite", F, "cycle"}, {"finite-history", F, "cycle"}}};
  }
  if (name == "yingyang-unrolled") {
    return GalleryEntry{std::string(name), "ying-yang game as a 4-state loop",
                        YingYangUnrolled(opt.yingyang_pref),
                        {{"finite", F, "cycle"}}};
  }
  if (name.starts_with(kYingYang)) {
    auto kind = ParseProfileKind(name.substr(kYingYang.size()));
    if (!kind) return std::nullopt;
    std::vector<GalleryFact> facts;
    if (*kind == ProfileKind::kAcBc) {
      facts = {{"convergent", F, ""}, {"divergent", H, ""},
               {"escalation", H, "under the default preorder"}};
    } else {
      facts = {{"convergent", H, ""}, {"always-convergent", H, ""},
               {"escalation", F, "not divergent"}};
    }
    return GalleryEntry{std::string(name),
                        "ying-yang profile " +
                            std::string(ProfileKindName(*kind)),
                        YingYangProfile(*kind, opt.yingyang_pref),
                        std::move(facts)};
  }
  return std::nullopt;
}

}  // namespace extgames::gallery

#endif  // EXTGAMES_GALLERY_HPP_

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

#include <gtest/gtest.h>

#include "extgames/extgames.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace eg = extgames;
namespace gal = extgames::gallery;
namespace oracle = extgames::oracle;
using namespace extgames::fixtures;
using Kind = eg::PrefixTree<eg::GameNode>::Kind;
using eg::Choice;

// ---------------------------------------------------------------- unfolding

TEST(Unfold, LeafIsItsOwnUnfolding) {
  auto g = LeafGame(SoloArena(1), Ints({4}));
  auto t = eg::UnfoldPrefix(g, 0);
  EXPECT_EQ(t.kind, Kind::kLeaf);
  EXPECT_EQ(t.payoff, Ints({4}));
}

TEST(Unfold, DepthZeroNodeIsContinuation) {
  auto t = eg::UnfoldPrefix(gal::YingYangGame(), 0);
  EXPECT_EQ(t.kind, Kind::kContinuation);
  EXPECT_EQ(t.state.id, 0u);
}

TEST(Unfold, GameWfhFanIsSampled) {
  auto t = eg::UnfoldPrefix(gal::GameWfh(), 1, 8);
  ASSERT_EQ(t.kind, Kind::kNode);
  EXPECT_EQ(t.owner, eg::AgentId{0});
  ASSERT_EQ(t.children.size(), 8u);
  EXPECT_TRUE(t.elided);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(t.children[i].first, Choice{i});
  EXPECT_EQ(t.children[0].second.kind, Kind::kLeaf);
  EXPECT_EQ(t.children[0].second.payoff, gal::Triv());
  EXPECT_EQ(t.children[1].second.kind, Kind::kContinuation);
}

TEST(Unfold, GameWfhBranchKIsAThreadOfKBobMoves) {
  auto t = eg::UnfoldPrefix(gal::GameWfh(), 16, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    const auto* node = &t.children[k].second;
    for (std::size_t step = 0; step < k; ++step) {
      ASSERT_EQ(node->kind, Kind::kNode);
      EXPECT_EQ(node->owner, eg::AgentId{1});
      ASSERT_EQ(node->children.size(), 1u);
      node = &node->children[0].second;
    }
    EXPECT_EQ(node->kind, Kind::kLeaf);
  }
}

TEST(Unfold, YingYangTwoLevels) {
  auto t = eg::UnfoldPrefix(gal::YingYangGame(), 2);
  ASSERT_EQ(t.kind, Kind::kNode);
  EXPECT_EQ(t.owner, eg::AgentId{0});
  EXPECT_EQ(t.children[0].second.kind, Kind::kLeaf);
  EXPECT_EQ(t.children[0].second.payoff, gal::YingYangAfterA());
  const auto& b = t.children[1].second;
  ASSERT_EQ(b.kind, Kind::kNode);
  EXPECT_EQ(b.owner, eg::AgentId{1});
  EXPECT_EQ(b.children[0].second.kind, Kind::kLeaf);
  EXPECT_EQ(b.children[0].second.payoff, gal::YingYangAfterB());
  EXPECT_EQ(b.children[1].second.kind, Kind::kContinuation);
}

TEST(Unfold, DeeperUnfoldingTruncatesToShallower) {
  for (const auto& g : {gal::YingYangGame(), gal::DollarGame(0), Depth2Game(),
                        gal::Example21()}) {
    for (std::size_t d = 0; d < 6; ++d) {
      EXPECT_EQ(eg::TruncatePrefix(eg::UnfoldPrefix(g, d + 1), d),
                eg::UnfoldPrefix(g, d));
    }
  }
}

// ------------------------------------------------------------------ erasure

TEST(GameOf, LeafProfileErasesToLeafGame) {
  auto s = LeafProfile(SoloArena(1), Ints({2}));
  EXPECT_TRUE(eg::BisimExact(eg::GameOf(s), LeafGame(SoloArena(1), Ints({2}))));
}

TEST(GameOf, YingYangProfileErasesToYingYangGame) {
  for (auto kind : {gal::ProfileKind::kAcBc, gal::ProfileKind::kAsBs}) {
    EXPECT_TRUE(eg::BisimExact(eg::GameOf(gal::YingYangProfile(kind)),
                               gal::YingYangGame()));
  }
}

TEST(GameOf, PreservesCensusAndIsStableUnderReerasure) {
  auto s = gal::DollarProfile(gal::ProfileKind::kAcBs, 3);
  auto g = eg::GameOf(s);
  EXPECT_EQ(g.table_size(), s.table_size());
  EXPECT_EQ(g.root(), s.root());
  EXPECT_TRUE(eg::BisimExact(g, gal::DollarGame(3)));
}

// ------------------------------------------------------------ bisimulation

TEST(BisimBounded, ReflexiveAtEveryDepth) {
  for (std::size_t k : {0u, 1u, 5u, 20u}) {
    auto r = eg::BisimBounded(gal::YingYangGame(), gal::YingYangGame(), k);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.depth, k);
  }
}

TEST(BisimBounded, ThreadlikeTwoAgainstThree) {
  auto r = eg::BisimBounded(gal::Threadlike(2), gal::Threadlike(3), 10);
  EXPECT_FALSE(r.equal);
  // Two Bob moves lead to the leaf on one side and to a Bob node on the other.
  EXPECT_EQ(r.differ_at, (std::vector<Choice>{Choice{0}, Choice{0}}));
  EXPECT_EQ(r.reason, "leaf against node");
}

TEST(BisimBounded, DollarStopLeavesDependOnStage) {
  auto r = eg::BisimBounded(gal::DollarGame(0), gal::DollarGame(2), 1);
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.differ_at, (std::vector<Choice>{gal::kStop}));
}

TEST(BisimBounded, LeavesAreObservedAtTheDepthLimit) {
  // Leaves are observed even at the depth limit, so depth 2 already differs.
  EXPECT_TRUE(eg::BisimBounded(gal::Threadlike(2), gal::Threadlike(3), 1).equal);
  EXPECT_FALSE(eg::BisimBounded(gal::Threadlike(2), gal::Threadlike(3), 2).equal);
}

TEST(BisimBounded, ArenaMismatchThrows) {
  EXPECT_THROW(eg::BisimBounded(gal::YingYangGame(), gal::DollarGame(), 3),
               eg::ArenaMismatch);
}

TEST(BisimBounded, ExhaustiveModeRefusesNaturals) {
  eg::BisimOptions opt;
  opt.exhaustive = true;
  EXPECT_THROW(eg::BisimBounded(gal::GameWfh(), gal::GameWfh(), 2, opt),
               eg::UnboundedBranch);
}

TEST(BisimExact, LoopEqualsItsUnrolling) {
  EXPECT_TRUE(eg::BisimExact(gal::YingYangGame(), gal::YingYangUnrolled()));
  EXPECT_TRUE(eg::BisimExact(gal::YingYangGame(), gal::YingYangGame()));
}

TEST(BisimExact, SwappedLeafPayoffsDiffer) {
  auto g = gal::YingYangGame();
  auto table = g.table();
  std::swap(table[2], table[3]);
  auto swapped = eg::GameSystem::Census(g.arena_ptr(), table, 0);
  EXPECT_FALSE(eg::BisimExact(g, swapped));
  EXPECT_TRUE(oracle::Bisim(g, g));
  EXPECT_FALSE(oracle::Bisim(g, swapped));
}

TEST(BisimExact, ShiftedCensusComparesStages) {
  EXPECT_TRUE(eg::BisimExact(gal::DollarGame(2), gal::DollarGame(2)));
  EXPECT_FALSE(eg::BisimExact(gal::DollarGame(0), gal::DollarGame(2)));
  // Stage 2 seen from Alice equals stage 0 after two continue moves.
  auto g0 = gal::DollarGame(0);
  auto node = std::get<eg::GameNode>(g0.Unfold(g0.root()));
  auto b = g0.Follow(g0.root(), node, gal::kContinue);
  auto bnode = std::get<eg::GameNode>(g0.Unfold(b));
  auto a2 = g0.Follow(b, bnode, gal::kContinue);
  EXPECT_TRUE(eg::BisimExact(g0.RootedAt(a2), gal::DollarGame(2)));
}

TEST(BisimExact, ProfilesCompareChosenChoices) {
  auto acbc = gal::YingYangProfile(gal::ProfileKind::kAcBc);
  auto acbs = gal::YingYangProfile(gal::ProfileKind::kAcBs);
  EXPECT_FALSE(eg::BisimExact(acbc, acbs));
  EXPECT_TRUE(eg::BisimExact(eg::GameOf(acbc), eg::GameOf(acbs)));
}

TEST(BisimExact, ProgrammaticSystemsAreRejected) {
  EXPECT_THROW(eg::BisimExact(gal::GameWfh(), gal::GameWfh()), eg::NoCensus);
}

// ----------------------------------------------------- utility assignment

TEST(Uassign, LeafProfile) {
  auto s = LeafProfile(SoloArena(1), Ints({7}));
  auto r = eg::Uassign(s, 1);
  ASSERT_NE(eg::AssignedPayoff(r), nullptr);
  EXPECT_EQ(*eg::AssignedPayoff(r), Ints({7}));
}

TEST(Uassign, YingYangAcBcDiverges) {
  auto s = gal::YingYangProfile(gal::ProfileKind::kAcBc);
  auto r = eg::Uassign(s, 100);
  auto* d = std::get_if<eg::DivergenceDetected<Choice>>(&r);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->prefix.size(), 2u);
  EXPECT_EQ(d->loop_start, 0u);
}

TEST(Uassign, DollarAliceStopsImmediately) {
  auto s = gal::DollarProfile(gal::ProfileKind::kAsBs, 0);
  auto r = eg::Uassign(s, 10);
  ASSERT_NE(eg::AssignedPayoff(r), nullptr);
  EXPECT_EQ(eg::FormatPayoff(s.arena(), *eg::AssignedPayoff(r)), "Alice:0, Bob:100");
}

TEST(Uassign, FuelExhaustionOnLongThread) {
  auto s = gal::ThreadlikeProfile(50);
  auto r = eg::Uassign(s, 10);
  auto* f = std::get_if<eg::FuelExhausted<Choice>>(&r);
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->path.size(), 10u);
  EXPECT_NE(eg::AssignedPayoff(eg::Uassign(s, 51)), nullptr);
}

TEST(Uassign, IsAFunction) {
  for (auto kind : {gal::ProfileKind::kAcBc, gal::ProfileKind::kAsBc}) {
    auto s = gal::DollarProfile(kind, 1);
    EXPECT_EQ(eg::Uassign(s, 50), eg::Uassign(s, 50));
    EXPECT_EQ(eg::DescribeUassign(s, eg::Uassign(s, 50)),
              eg::DescribeUassign(s, eg::Uassign(s, 50)));
  }
}

TEST(Uassign, RejectsZeroFuel) {
  EXPECT_THROW(eg::ChosenPath(SelfLoopProfile(), 0), std::invalid_argument);
}

// ------------------------------------------------------------ chosen path

TEST(ChosenPath, LeafHasEmptyPath) {
  auto p = eg::ChosenPath(LeafProfile(SoloArena(1), Ints({0})), 1);
  EXPECT_TRUE(p.steps.empty());
  EXPECT_EQ(p.end, eg::PathEnd::kLeaf);
}

TEST(ChosenPath, YingYangAcBcLassoBackToRoot) {
  auto s = gal::YingYangProfile(gal::ProfileKind::kAcBc);
  auto p = eg::ChosenPath(s, 10);
  ASSERT_EQ(p.end, eg::PathEnd::kLasso);
  ASSERT_EQ(p.steps.size(), 2u);
  EXPECT_EQ(p.steps[0].agent, eg::AgentId{0});
  EXPECT_EQ(p.steps[0].choice, gal::kRight);
  EXPECT_EQ(p.steps[1].agent, eg::AgentId{1});
  EXPECT_EQ(p.steps[1].choice, gal::kRight);
  EXPECT_EQ(p.loop_start, 0u);
  EXPECT_EQ(p.period(), 2u);
}

TEST(ChosenPath, ThreadlikeProfileTwoBobSteps) {
  auto p = eg::ChosenPath(gal::ThreadlikeProfile(2), 10);
  EXPECT_EQ(p.end, eg::PathEnd::kLeaf);
  ASSERT_EQ(p.steps.size(), 2u);
  for (const auto& step : p.steps) EXPECT_EQ(step.agent, eg::AgentId{1});
  EXPECT_EQ(p.payoff, gal::Triv());
}

TEST(ChosenPath, DollarLassoCarriesStageShift) {
  auto p = eg::ChosenPath(gal::DollarProfile(gal::ProfileKind::kAcBc, 0), 10);
  ASSERT_EQ(p.end, eg::PathEnd::kLasso);
  EXPECT_EQ(p.period(), 2u);
  EXPECT_NE(p.period_shift, 0);
}

TEST(ReplayPath, FollowsAndRejects) {
  auto g = Depth2Game();
  auto states = eg::ReplayPath(g, {Choice{0}, Choice{1}});
  ASSERT_TRUE(states.has_value());
  EXPECT_EQ(states->back().id, 4u);
  EXPECT_FALSE(eg::ReplayPath(g, {Choice{1}, Choice{0}}).has_value());
  EXPECT_FALSE(eg::ReplayPath(g, {Choice{5}}).has_value());
}

TEST(TransitionCache, AgreesWithFollow) {
  auto g = gal::GameWfh();
  eg::TransitionCache<eg::GameNode> cache(g);
  auto child = cache.Step(g.root(), Choice{3});
  ASSERT_TRUE(child.has_value());
  EXPECT_EQ(child->id, 3u);
  auto again = cache.Step(g.root(), Choice{3});
  EXPECT_EQ(child, again);
  EXPECT_TRUE(cache.IsLeaf(0));
  EXPECT_FALSE(cache.Step(eg::StateRef{0, 0}, Choice{0}).has_value());
}

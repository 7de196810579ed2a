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

#include <string>

#include "extgames/extgames.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace eg = extgames;
namespace gen = extgames::testgen;
namespace oracle = extgames::oracle;
namespace tio = extgames::textio;

namespace {

std::string UassignKey(const eg::StrategySystem& s) {
  auto r = eg::Uassign(s, s.table_size() + 1);
  if (const auto* a = std::get_if<eg::Assigned>(&r)) {
    return eg::FormatPayoff(s.arena(), a->payoff);
  }
  return std::holds_alternative<eg::DivergenceDetected<eg::Choice>>(r) ? "divergent"
                                                                        : "exhausted";
}

}  // namespace

// Every predicate is a property of the behaviour, not of the presentation.
TEST(Properties, VerdictsAreInvariantUnderBisimilarCopies) {
  gen::Rng rng(101);
  for (int i = 0; i < 300; ++i) {
    auto s = gen::RandomCensusProfile(rng, 8);
    auto copy = gen::BisimilarCopy(rng, s);
    ASSERT_TRUE(eg::BisimExact(s, copy));
    EXPECT_EQ(UassignKey(s), UassignKey(copy));
    EXPECT_EQ(eg::IsConvergent(s).kind, eg::IsConvergent(copy).kind);
    EXPECT_EQ(eg::IsAlwaysConvergent(s).kind, eg::IsAlwaysConvergent(copy).kind);
    EXPECT_EQ(eg::IsDivergent(s).kind, eg::IsDivergent(copy).kind);
    EXPECT_EQ(eg::CheckSpeRegular(s).verdict.kind, eg::CheckSpeRegular(copy).verdict.kind);
    EXPECT_EQ(eg::CheckEscalation(s).escalates(), eg::CheckEscalation(copy).escalates());
    auto g = eg::GameOf(s), h = eg::GameOf(copy);
    EXPECT_EQ(eg::IsFiniteGame(g).kind, eg::IsFiniteGame(h).kind);
    EXPECT_EQ(eg::IsFinitelyBroad(g).count, eg::IsFinitelyBroad(h).count);
  }
}

// A bounded difference is a genuine difference, and the exact decision
// agrees with the naive greatest-fixpoint oracle.
TEST(Properties, MutationsAreSeenByEveryBisimulationCheck) {
  gen::Rng rng(202);
  for (int i = 0; i < 300; ++i) {
    auto arena = gen::SmallArena(rng);
    auto g = gen::RandomCensusGame(rng, arena, 6);
    auto h = gen::Mutate(rng, g);
    const bool exact = eg::BisimExact(g, h);
    EXPECT_EQ(exact, oracle::Bisim(g, h));
    const std::size_t depth = g.table_size() * h.table_size();
    EXPECT_EQ(eg::BisimBounded(g, h, depth).equal, exact);
    if (!exact) {
      auto r = eg::BisimBounded(g, h, depth);
      EXPECT_LE(r.differ_at.size(), depth);
      EXPECT_FALSE(r.reason.empty());
    }
  }
}

// A regular SPE certificate replays, and a violation names a strictly
// preferred alternative.
TEST(Properties, SpeVerdictsCarryCheckableEvidence) {
  gen::Rng rng(303);
  for (int i = 0; i < 400; ++i) {
    auto s = gen::RandomCensusProfile(rng, 8);
    auto r = eg::CheckSpeRegular(s);
    if (r.verdict.holds()) {
      EXPECT_TRUE(eg::ReplayCertificate(s, r.certificate));
      EXPECT_TRUE(eg::IsAlwaysConvergent(s).holds());
    }
    if (r.violation) {
      ASSERT_TRUE(r.verdict.fails());
      EXPECT_NE(r.violation->chosen, r.violation->alternative);
    }
  }
}

// Backward induction: the first-optimal profile is among all optima, and
// every optimum passes the finite SPE check.
TEST(Properties, BackwardInductionIsSoundAndNested) {
  gen::Rng rng(404);
  for (int i = 0; i < 150; ++i) {
    auto g = gen::RandomFiniteTree(rng, 3);
    auto first = eg::BackwardInduction(g, eg::TieRule::kFirstOptimal);
    auto all = eg::BackwardInduction(g, eg::TieRule::kAllOptima);
    ASSERT_EQ(first.size(), 1u);
    const auto keys = eg::CanonicalProfileSet(all);
    EXPECT_TRUE(keys.count(eg::CanonicalProfileKey(first.front())));
    for (const auto& s : all) EXPECT_TRUE(eg::CheckSpeFinite(s).verdict.holds());
  }
}

// Random documents parse back to their source, and the canonical writer is a
// fixpoint after one round.
TEST(Properties, RandomDocumentsParseToTheirSource) {
  gen::Rng rng(505);
  for (int i = 0; i < 200; ++i) {
    auto doc = gen::RandomDocument(rng);
    auto parsed = tio::ParseAny(doc.text);
    std::visit(
        [&](const auto& src) {
          using System = std::decay_t<decltype(src)>;
          // A document without nodes has no choose lines and reads as a game.
          if (src.NodeCensusSize() > 0) {
            EXPECT_TRUE(std::holds_alternative<System>(parsed)) << doc.text;
          }
          const auto got = tio::Parse<System>(doc.text);
          EXPECT_TRUE(eg::BisimExact(src, got)) << doc.text;
          const std::string canonical = tio::WriteDsl(got);
          EXPECT_EQ(tio::WriteDsl(tio::Parse<System>(canonical)), canonical);
        },
        doc.source);
  }
}

// Unfolding and rendering are pure functions of the system.
TEST(Properties, RenderingIsDeterministic) {
  gen::Rng rng(606);
  for (int i = 0; i < 100; ++i) {
    auto s = gen::RandomCensusProfile(rng, 8);
    EXPECT_EQ(tio::RenderDot(s, 5), tio::RenderDot(s, 5));
    EXPECT_EQ(tio::ExportPrefixJson(s, 5), tio::ExportPrefixJson(s, 5));
    EXPECT_EQ(eg::UnfoldPrefix(s, 5), eg::UnfoldPrefix(s, 5));
  }
}

// Finite games are exactly those whose reachable graph has no cycle.
TEST(Properties, FinitenessMatchesTheCycleOracle) {
  gen::Rng rng(707);
  for (int i = 0; i < 300; ++i) {
    auto g = gen::RandomCensusGame(rng, gen::SmallArena(rng), 10);
    EXPECT_EQ(eg::IsFiniteGame(g).holds(), oracle::FiniteGame(g));
    if (eg::IsFiniteGame(g).holds()) {
      EXPECT_TRUE(eg::IsFiniteHistoryGame(g).holds());
    }
  }
}

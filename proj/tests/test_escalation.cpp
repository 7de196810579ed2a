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
#include "generators.hpp"

namespace eg = extgames;
namespace gal = extgames::gallery;
using namespace extgames::fixtures;
using eg::Choice;
using gal::ProfileKind;

namespace {

const eg::StrategyNode* NodeOf(const eg::StrategySystem& s, eg::StateId id) {
  return std::get_if<eg::StrategyNode>(&s.table()[id]);
}

// The reachable node of `agent` other than the root; the witness censuses
// used here have exactly one.
const eg::StrategyNode* OtherNodeOf(const eg::StrategySystem& s, eg::AgentId agent) {
  for (eg::StateId id : s.CensusIds()) {
    const auto* node = NodeOf(s, id);
    if (node && id != s.root().id && node->agent == agent) return node;
  }
  return nullptr;
}

eg::StrategySystem ProgrammaticLoop() {
  return eg::StrategySystem::Programmatic(SoloArena(1), [](eg::StateId id) {
    return eg::StrategyNodeView(eg::AgentId{0}, Choice{0}, {eg::Edge{id + 1, 0}});
  }, 0);
}

}  // namespace

// --------------------------------------------------------------- divergent

TEST(IsDivergent, YingYangAcBcHasPeriodTwoLasso) {
  auto v = eg::IsDivergent(gal::YingYangProfile(ProfileKind::kAcBc));
  ASSERT_TRUE(v.holds());
  EXPECT_NE(v.note.find("period 2"), std::string::npos);
}

TEST(IsDivergent, DollarBothContinue) {
  EXPECT_TRUE(eg::IsDivergent(gal::DollarProfile(ProfileKind::kAcBc, 0)).holds());
}

TEST(IsDivergent, LeafFails) {
  EXPECT_TRUE(eg::IsDivergent(LeafProfile(SoloArena(1), Ints({0}))).fails());
}

TEST(IsDivergent, ProgrammaticWithoutLassoIsUnknown) {
  EXPECT_TRUE(eg::IsDivergent(ProgrammaticLoop(), 100).unknown());
}

// -------------------------------------------------------------------- good

TEST(IsGood, YingYangAcBcRoot) {
  auto s = gal::YingYangProfile(ProfileKind::kAcBc);
  auto r = eg::IsGood(s);
  ASSERT_TRUE(r.verdict.holds());
  ASSERT_TRUE(r.witness.has_value());
  const auto& w = *r.witness;
  EXPECT_EQ(NodeOf(w, w.root().id)->chosen, gal::kRight);
  // A continues, so B must stop for the profile to converge.
  ASSERT_NE(OtherNodeOf(w, eg::AgentId{1}), nullptr);
  EXPECT_EQ(OtherNodeOf(w, eg::AgentId{1})->chosen, gal::kDown);
  EXPECT_TRUE(eg::CheckSpeRegular(w).verdict.holds());
  EXPECT_TRUE(eg::ReplayCertificate(w, r.certificate));
  EXPECT_TRUE(eg::BisimExact(eg::GameOf(w), eg::GameOf(s)));
}

TEST(IsGood, DollarAliceNodeWitnessIsBobAlwaysStops) {
  for (std::size_t stage : {0u, 2u, 10u}) {
    auto s = gal::DollarProfile(ProfileKind::kAcBc, stage);
    auto r = eg::IsGood(s);
    ASSERT_TRUE(r.verdict.holds()) << stage;
    EXPECT_EQ(NodeOf(*r.witness, r.witness->root().id)->chosen, gal::kContinue);
    ASSERT_NE(OtherNodeOf(*r.witness, eg::AgentId{1}), nullptr);
    EXPECT_EQ(OtherNodeOf(*r.witness, eg::AgentId{1})->chosen, gal::kStop);
    EXPECT_TRUE(eg::ReplayCertificate(*r.witness, r.certificate));
  }
}

TEST(IsGood, DominatedHeadFails) {
  auto r = eg::IsGood(OneNodeProfile({3, 1}, 1));
  EXPECT_TRUE(r.verdict.fails());
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.candidates, 1u);
  EXPECT_TRUE(eg::IsGood(OneNodeProfile({3, 1}, 0)).verdict.holds());
}

TEST(IsGood, LeafIsGood) {
  EXPECT_TRUE(eg::IsGood(LeafProfile(SoloArena(1), Ints({0}))).verdict.holds());
}

TEST(IsGood, NeedsACensus) {
  EXPECT_THROW(eg::IsGood(ProgrammaticLoop()), eg::NoCensus);
}

TEST(IsGood, BoundedMemoryWitnesses) {
  auto s = gal::DollarProfile(ProfileKind::kAcBc, 0);
  for (std::size_t m = 1; m <= 3; ++m) {
    auto r = eg::IsGood(s, eg::WitnessClass::BoundedMemory(m));
    ASSERT_TRUE(r.verdict.holds()) << m;
    EXPECT_EQ(r.witness->table_size(), s.table_size() * m);
    EXPECT_TRUE(eg::BisimExact(eg::GameOf(*r.witness), eg::GameOf(s)));
  }
  EXPECT_THROW(eg::WitnessClass::BoundedMemory(0), std::invalid_argument);
  EXPECT_THROW(eg::WitnessClass::BoundedMemory(4), std::invalid_argument);
}

TEST(IsGood, YingYangIndifferenceEveryHeadIsGood) {
  // The always convergent memoryless profiles are all SPE, so every head
  // choice at every node is good.
  for (auto kind : {ProfileKind::kAcBc, ProfileKind::kAsBc, ProfileKind::kAcBs,
                    ProfileKind::kAsBs}) {
    auto s = gal::YingYangProfile(kind);
    if (eg::IsAlwaysConvergent(s).holds()) {
      EXPECT_TRUE(eg::CheckSpeRegular(s).verdict.holds());
    }
    for (eg::StateId id : {0u, 1u}) {
      EXPECT_TRUE(eg::IsGood(s.RootedAt({id, 0})).verdict.holds());
    }
  }
}

TEST(IsGood, YingYangEqualityOnlyBreaksTheBNode) {
  auto s = gal::YingYangProfile(ProfileKind::kAcBc, eg::PrefKind::kEqualityOnly);
  EXPECT_TRUE(eg::IsGood(s.RootedAt({1, 0})).verdict.fails());
  EXPECT_FALSE(eg::CheckEscalation(s).escalates());
}

TEST(IsGood, InvariantUnderBisimilarPresentations) {
  extgames::testgen::Rng rng(31);
  for (int i = 0; i < 150; ++i) {
    auto s = extgames::testgen::RandomCensusProfile(rng, 6);
    auto copy = extgames::testgen::BisimilarCopy(rng, s);
    ASSERT_TRUE(eg::BisimExact(s, copy));
    EXPECT_EQ(eg::IsGood(s).verdict.kind, eg::IsGood(copy).verdict.kind);
  }
}

// -------------------------------------------------------------- along good

TEST(AlongGood, YingYangAcBcTwoPathStates) {
  auto r = eg::AlongGood(gal::YingYangProfile(ProfileKind::kAcBc));
  ASSERT_TRUE(r.verdict.holds());
  ASSERT_EQ(r.witnesses.size(), 2u);
  EXPECT_EQ(r.witnesses[0].agent, eg::AgentId{0});
  EXPECT_EQ(r.witnesses[1].agent, eg::AgentId{1});
  for (const auto& w : r.witnesses) EXPECT_EQ(w.head, gal::kRight);
}

TEST(AlongGood, DollarBothContinue) {
  EXPECT_TRUE(eg::AlongGood(gal::DollarProfile(ProfileKind::kAcBc, 0)).verdict.holds());
}

TEST(AlongGood, DominatedRootFailsAtTheRoot) {
  auto r = eg::AlongGood(OneNodeProfile({3, 1}, 1));
  ASSERT_TRUE(r.verdict.fails());
  EXPECT_TRUE(r.verdict.witness.path.empty());
  EXPECT_TRUE(r.witnesses.empty());
}

// -------------------------------------------------------------- escalation

TEST(CheckEscalation, YingYangAcBc) {
  auto s = gal::YingYangProfile(ProfileKind::kAcBc);
  auto out = eg::CheckEscalation(s, "yy");
  ASSERT_TRUE(out.escalates()) << out.reason;
  EXPECT_EQ(out.report->profile_id, "yy");
  EXPECT_EQ(out.report->lasso.period(), 2u);
  EXPECT_TRUE(eg::VerifyEscalationReport(s, *out.report));
}

TEST(CheckEscalation, DollarBothContinue) {
  auto s = gal::DollarProfile(ProfileKind::kAcBc, 0);
  auto out = eg::CheckEscalation(s);
  ASSERT_TRUE(out.escalates()) << out.reason;
  EXPECT_TRUE(eg::VerifyEscalationReport(s, *out.report));
  for (const auto& w : out.report->witnesses) EXPECT_EQ(w.head, gal::kContinue);
}

TEST(CheckEscalation, ConvergentProfileDoesNotEscalate) {
  auto out = eg::CheckEscalation(gal::YingYangProfile(ProfileKind::kAsBc));
  EXPECT_FALSE(out.escalates());
  EXPECT_NE(out.reason.find("not divergent"), std::string::npos);
}

TEST(CheckEscalation, DivergentButNotGood) {
  // A loops on `stay` although `leave` pays more.
  auto arena = eg::MakeArena({eg::AgentSpec{
      "A", eg::ChoiceSpace::Enumerated({"stay", "leave"}), eg::UtilityDomain::Integers()}});
  auto s = eg::StrategySystem::Census(
      arena, {eg::StrategyNodeView(eg::AgentId{0}, Choice{0}, eg::Edges({0, 1})),
              eg::Leaf{Ints({1})}});
  auto out = eg::CheckEscalation(s);
  EXPECT_FALSE(out.escalates());
  EXPECT_NE(out.reason.find("not along good"), std::string::npos);
}

TEST(CheckEscalation, NeedsACensus) {
  EXPECT_THROW(eg::CheckEscalation(ProgrammaticLoop()), eg::NoCensus);
}

TEST(VerifyEscalationReport, RejectsTamperedReports) {
  auto s = gal::YingYangProfile(ProfileKind::kAcBc);
  auto report = *eg::CheckEscalation(s).report;
  auto bad = report;
  bad.witnesses.pop_back();
  EXPECT_FALSE(eg::VerifyEscalationReport(s, bad));
  bad = report;
  bad.witnesses[0].head = gal::kDown;
  EXPECT_FALSE(eg::VerifyEscalationReport(s, bad));
  bad = report;
  bad.witnesses[0].witness = gal::YingYangProfile(ProfileKind::kAcBc);
  EXPECT_FALSE(eg::VerifyEscalationReport(s, bad));
  bad = report;
  bad.lasso.loop_start = 1;
  EXPECT_FALSE(eg::VerifyEscalationReport(s, bad));
}

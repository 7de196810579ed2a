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
#include "fixtures.hpp"
#include "generators.hpp"

namespace eg = extgames;
namespace gal = extgames::gallery;
namespace tio = extgames::textio;
using namespace extgames::fixtures;
using gal::ProfileKind;

namespace {

constexpr const char* kMinimal =
    "arena{agents A; choices A{l,r}; utility A int leq} "
    "def root = node A {l->t, r->t}; def t = leaf{A:1}; root root";

constexpr const char* kYingYang = R"(
# two agents pass the turn back and forth
arena {
  agents A, B;
  choices A {down, right};
  choices B {down, right};
  utility A {ying, yang} indifferent;
  utility B {ying, yang} indifferent;
}
def a_turn = node A {down -> a_down, right -> b_turn};
def b_turn = node B {down -> b_down, right -> a_turn};
def a_down = leaf {A: ying, B: yang};
def b_down = leaf {A: yang, B: ying};
root a_turn;
)";

// Parses `text` expecting a ParseError; returns it.
eg::ParseError ParseFailure(const std::string& text, bool profile = false) {
  try {
    if (profile) {
      tio::ParseProfile(text);
    } else {
      tio::ParseGame(text);
    }
  } catch (const eg::ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return eg::ParseError(0, 0, "");
}

}  // namespace

// -------------------------------------------------------------------- parse

TEST(ParseGame, MinimalDocumentIsATwoStateCensus) {
  auto g = tio::ParseGame(kMinimal);
  EXPECT_EQ(g.table_size(), 2u);
  auto t = eg::UnfoldPrefix(g, 2);
  ASSERT_EQ(t.owner, eg::AgentId{0});
  ASSERT_EQ(t.children.size(), 2u);
  for (const auto& [c, child] : t.children) EXPECT_EQ(child.payoff, Ints({1}));
  auto hand = eg::GameSystem::Census(
      SoloArena(2), {eg::GameNodeView(eg::AgentId{0}, eg::Edges({1, 1})),
                     eg::Leaf{Ints({1})}});
  EXPECT_EQ(eg::UnfoldPrefix(hand, 2).children.size(), 2u);
  EXPECT_EQ(eg::UnfoldPrefix(hand, 2).children[0].second.payoff,
            t.children[0].second.payoff);
}

TEST(ParseGame, YingYangDocumentMatchesTheGallery) {
  auto g = tio::ParseGame(kYingYang);
  EXPECT_TRUE(eg::BisimExact(g, gal::YingYangGame()));
  EXPECT_EQ(g.StateName(g.root().id), "a_turn");
}

TEST(ParseGame, SymbolicOrderedUtilities) {
  auto g = tio::ParseGame(R"(
arena {
  agents A;
  choices A {x};
  utility A {lo, mid, hi} order {lo <= mid, mid <= hi};
}
def n = node A {x -> t};
def t = leaf {A: mid};
root n;
)");
  const auto& u = g.arena().agents()[0].utility;
  EXPECT_TRUE(u.pref(*u.find("lo"), *u.find("hi")));
  EXPECT_FALSE(u.pref(*u.find("hi"), *u.find("lo")));
}

TEST(ParseGame, NaturalsChoiceSpacesAreNotExpressibleAsNodes) {
  // A nat space is accepted in the arena, but no node can list all branches.
  auto e = ParseFailure(R"(
arena { agents A; choices A nat; utility A int leq; }
def n = node A {0 -> t};
def t = leaf {A: 0};
root n;
)");
  EXPECT_GT(e.line(), 0u);
}

TEST(ParseProfile, YingYangChooseRightIsAcBc) {
  auto s = tio::ParseProfile(std::string(kYingYang) +
                             "choose a_turn = right;\nchoose b_turn = right;\n");
  EXPECT_TRUE(eg::BisimExact(s, gal::YingYangProfile(ProfileKind::kAcBc)));
  EXPECT_FALSE(eg::BisimExact(s, gal::YingYangProfile(ProfileKind::kAsBc)));
}

TEST(ParseAny, KindFollowsTheDocument) {
  EXPECT_EQ(tio::ParseAny(kYingYang).index(), 0u);
  EXPECT_EQ(tio::ParseAny(std::string(kYingYang) +
                          "choose a_turn = down; choose b_turn = down;")
                .index(),
            1u);
  EXPECT_EQ(tio::ParseAny(eg::textio::WriteDsl(gal::MsExample21())).index(), 2u);
}

// ------------------------------------------------------------------- errors

TEST(ParseErrors, MissingBranchNamesTheNode) {
  auto e = ParseFailure(
      "arena{agents A; choices A{l,r}; utility A int leq}\n"
      "def root = node A {l->t};\ndef t = leaf{A:1};\nroot root;");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(e.message().find("root"), std::string::npos);
  EXPECT_NE(e.message().find("r"), std::string::npos);
}

TEST(ParseErrors, LabelOutsideTheSpace) {
  auto e = ParseFailure(
      "arena{agents A; choices A{l,r}; utility A int leq}\n"
      "def root = node A {l->t, x->t};\ndef t = leaf{A:1};\nroot root;");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(e.message().find("x"), std::string::npos);
}

TEST(ParseErrors, UnknownAgentAndUnknownState) {
  auto agent = ParseFailure(
      "arena{agents A; choices A{l}; utility A int leq}\n"
      "def root = node Z {l->t};\ndef t = leaf{A:1};\nroot root;");
  EXPECT_EQ(agent.line(), 2u);
  auto state = ParseFailure(
      "arena{agents A; choices A{l}; utility A int leq}\n"
      "def root = node A {l->nowhere};\nroot root;");
  EXPECT_EQ(state.line(), 2u);
  EXPECT_NE(state.message().find("nowhere"), std::string::npos);
}

TEST(ParseErrors, DuplicateDefinition) {
  auto e = ParseFailure(
      "arena{agents A; choices A{l}; utility A int leq}\n"
      "def t = leaf{A:1};\ndef t = leaf{A:2};\nroot t;");
  EXPECT_EQ(e.line(), 3u);
}

TEST(ParseErrors, PayoffOutsideTheDomain) {
  auto e = ParseFailure(
      "arena{agents A; choices A{l}; utility A {p, q} indifferent}\n"
      "def t = leaf{A:r};\nroot t;");
  EXPECT_EQ(e.line(), 2u);
}

TEST(ParseErrors, LexicalAndSyntacticPositions) {
  auto lex = ParseFailure("arena{agents A; choices A{l}; utility A int leq}\n  @");
  EXPECT_EQ(lex.line(), 2u);
  EXPECT_EQ(lex.column(), 3u);
  auto syn = ParseFailure("arena{agents A; choices A{l}; utility A int leq}\ndef = leaf{A:1};");
  EXPECT_EQ(syn.line(), 2u);
  EXPECT_EQ(syn.column(), 5u);
}

TEST(ParseErrors, ProfileNeedsEveryChoose) {
  auto e = ParseFailure(std::string(kYingYang) + "choose a_turn = right;\n", true);
  EXPECT_NE(e.message().find("b_turn"), std::string::npos);
}

TEST(ParseErrors, ChooseLabelOutsideTheSpace) {
  auto e = ParseFailure(std::string(kYingYang) +
                            "choose a_turn = left;\nchoose b_turn = right;\n",
                        true);
  EXPECT_NE(e.message().find("left"), std::string::npos);
}

TEST(ParseErrors, GameParserRejectsChooseLines) {
  ParseFailure(std::string(kYingYang) + "choose a_turn = down; choose b_turn = down;");
}

// --------------------------------------------------------------- round trip

TEST(WriteDsl, GalleryCensusSystemsRoundTrip) {
  const gal::AnySystem systems[] = {
      gal::Example21(), gal::MsExample21(), gal::Threadlike(4),
      gal::ThreadlikeProfile(3), gal::YingYangGame(), gal::YingYangUnrolled(),
      gal::YingYangProfile(ProfileKind::kAcBc), gal::YingYangProfile(ProfileKind::kAsBs),
  };
  for (const auto& any : systems) {
    std::visit(
        [](const auto& sys) {
          using System = std::decay_t<decltype(sys)>;
          const std::string text = tio::WriteDsl(sys);
          auto back = tio::Parse<System>(text);
          EXPECT_TRUE(eg::BisimExact(sys, back)) << text;
          EXPECT_EQ(tio::WriteDsl(back), text);
        },
        any);
  }
}

TEST(WriteDsl, RandomProfilesRoundTrip) {
  extgames::testgen::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto s = extgames::testgen::RandomCensusProfile(rng, 6);
    auto back = tio::ParseProfile(tio::WriteDsl(s));
    EXPECT_TRUE(eg::BisimExact(s, back));
  }
}

TEST(WriteDsl, ShiftedSystemsAreRejected) {
  EXPECT_THROW(tio::WriteDsl(gal::DollarGame(0)), eg::ConstructionError);
  EXPECT_THROW(tio::WriteDsl(gal::GameWfh()), eg::NoCensus);
}

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

// Escalation: a divergent profile whose every choice along the play path
// heads some subgame perfect equilibrium.
//
// Good(s) holds when some profile s' over a game bisimilar to game(s), with
// the same choice at the head, is an SPE. Witnesses are searched in a finite
// class: memoryless profiles (one choice per game state, with bisimilar
// states of a shift-free census merged first), or profiles with
// bounded memory m, whose choice may also depend on min(steps taken, m-1).

#ifndef EXTGAMES_ESCALATION_HPP_
#define EXTGAMES_ESCALATION_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "extgames/core.hpp"
#include "extgames/equilibrium.hpp"
#include "extgames/finiteness.hpp"
#include "extgames/system.hpp"
#include "extgames/verdict.hpp"

namespace extgames {

struct WitnessClass {
  std::size_t memory = 1;  // 1 = memoryless

  static WitnessClass Memoryless() { return {1}; }
  static WitnessClass BoundedMemory(std::size_t m) {
    if (m < 1 || m > 3) {
      throw std::invalid_argument("bounded memory must be between 1 and 3");
    }
    return {m};
  }
};

struct GoodResult {
  Verdict verdict;
  std::optional<StrategySystem> witness;
  SpeCertificate certificate;
  std::size_t candidates = 0;  // witness-class members examined
};

// Divergent: the chosen path never reaches a leaf.
inline Verdict IsDivergent(const StrategySystem& s, std::size_t fuel = 10000) {
  if (s.has_census()) fuel = std::max(fuel, s.table_size() + 1);
  auto path = ChosenPath(s, fuel);
  switch (path.end) {
    case PathEnd::kLasso:
      return Verdict::Holds(path.steps.size(),
                            "lasso of period " + std::to_string(path.period()));
    case PathEnd::kLeaf: {
      Witness w;
      w.path = path.choices();
      w.reason = "chosen path reaches a leaf";
      return Verdict::Fails(std::move(w), path.steps.size());
    }
    case PathEnd::kExhausted:
      return Verdict::Unknown(path.steps.size(), "no lasso within fuel");
  }
  return Verdict::Unknown(0);
}

namespace detail {

// Copy of the game of `s` with every state replicated `memory` times; copy j
// of a node moves to copy min(j+1, memory-1) of its targets. Chosen choices
// start as those of `s`.
inline StrategySystem MemoryProduct(const StrategySystem& s,
                                    std::size_t memory) {
  const auto& table = s.table();
  std::vector<StrategySystem::View> out;
  std::vector<std::string> names;
  out.reserve(table.size() * memory);
  for (std::size_t id = 0; id < table.size(); ++id) {
    for (std::size_t j = 0; j < memory; ++j) {
      names.push_back(memory == 1 ? s.StateName(id)
                                  : s.StateName(id) + "_m" + std::to_string(j));
      if (const Leaf* leaf = std::get_if<Leaf>(&table[id])) {
        out.push_back(*leaf);
        continue;
      }
      const auto& node = std::get<StrategyNode>(table[id]);
      const std::size_t nj = std::min(j + 1, memory - 1);
      std::vector<Edge> next;
      for (const Edge& e : node.next.table()) {
        next.push_back(Edge{e.target * memory + nj, e.shift});
      }
      out.push_back(StrategyNodeView(node.agent, node.chosen, std::move(next)));
    }
  }
  auto sys = StrategySystem::Census(s.arena_ptr(), std::move(out),
                                    s.root().id * memory, std::move(names));
  return sys.RootedAt(StateRef{s.root().id * memory, s.root().offset});
}

inline StrategySystem WithChoices(const StrategySystem& base,
                                  const std::vector<StateId>& ids,
                                  const std::vector<Choice>& choices) {
  std::vector<StrategySystem::View> table = base.table();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto& node = std::get<StrategyNode>(table[ids[i]]);
    node.chosen = choices[i];
  }
  auto sys = StrategySystem::Census(base.arena_ptr(), std::move(table),
                                    base.root().id, base.names());
  return sys.RootedAt(base.root());
}

// The residual profile with bisimilar game positions merged, so that a
// memoryless strategy picks one choice per position up to bisimulation and
// the witness class does not depend on how the census presents the game.
// Shifted censuses are returned unchanged. The root stays first and keeps
// its chosen choice.
inline StrategySystem QuotientProfile(const StrategySystem& s) {
  if (s.has_shifts()) return s;
  const auto rep = BisimRepresentatives(GameOf(s));
  std::vector<StateId> reps;
  std::unordered_map<StateId, StateId> new_id;
  for (StateId id : s.CensusIds()) {
    if (rep.at(id) == id) {
      new_id[id] = reps.size();
      reps.push_back(id);
    }
  }
  std::vector<StrategySystem::View> table;
  std::vector<std::string> names;
  for (StateId id : reps) {
    names.push_back(s.StateName(id));
    const auto& view = s.table()[id];
    if (const Leaf* leaf = std::get_if<Leaf>(&view)) {
      table.push_back(*leaf);
      continue;
    }
    const auto& node = std::get<StrategyNode>(view);
    std::vector<Edge> next;
    for (const Edge& e : node.next.table()) {
      next.push_back(Edge{new_id.at(rep.at(e.target)), 0});
    }
    table.push_back(StrategyNodeView(node.agent, node.chosen, std::move(next)));
  }
  return StrategySystem::Census(s.arena_ptr(), std::move(table), 0,
                                std::move(names));
}

}  // namespace detail

// Good: the head choice of `s` heads an SPE from the witness class.
inline GoodResult IsGood(const StrategySystem& s,
                         WitnessClass cls = WitnessClass::Memoryless(),
                         std::size_t max_candidates = 1u << 20) {
  if (!s.has_census()) throw NoCensus();
  GoodResult result;
  auto root_view = s.Unfold(s.root());
  if (std::holds_alternative<Leaf>(root_view)) {
    result.verdict = Verdict::Holds(0, "a leaf is an SPE");
    result.witness = s;
    return result;
  }
  StrategySystem base =
      detail::MemoryProduct(detail::QuotientProfile(s), cls.memory);
  std::vector<StateId> free_ids;
  std::vector<std::size_t> radix;
  for (StateId id : base.CensusIds()) {
    if (id == base.root().id) continue;
    if (const auto* node = std::get_if<StrategyNode>(&base.table()[id])) {
      free_ids.push_back(id);
      radix.push_back(node->next.table().size());
    }
  }
  std::vector<Choice> choices(free_ids.size());
  while (true) {
    if (++result.candidates > max_candidates) {
      throw TooBroad("witness class has more than " +
                     std::to_string(max_candidates) + " members");
    }
    StrategySystem candidate = detail::WithChoices(base, free_ids, choices);
    SpeResult spe = CheckSpeRegular(candidate);
    if (spe.verdict.holds()) {
      result.verdict = Verdict::Holds(result.candidates);
      result.witness = std::move(candidate);
      result.certificate = std::move(spe.certificate);
      return result;
    }
    std::size_t k = 0;
    while (k < choices.size() && ++choices[k].value == radix[k]) {
      choices[k++] = Choice{0};
    }
    if (k == choices.size()) break;
  }
  Witness w;
  w.reason = "no SPE in the witness class heads choice '" +
             s.arena()
                 .agent(std::get<StrategyNode>(root_view).agent)
                 .choices.label(std::get<StrategyNode>(root_view).chosen) +
             "'";
  result.verdict = Verdict::Fails(std::move(w), result.candidates);
  return result;
}

struct GoodWitnessEntry {
  std::size_t path_index = 0;
  StateRef state;
  AgentId agent;
  Choice head;
  StrategySystem witness;
  SpeCertificate certificate;
};

struct AlongGoodResult {
  Verdict verdict;
  std::vector<GoodWitnessEntry> witnesses;
};

// Good at every node state on the chosen path. A lasso visits finitely many
// distinct states, each checked once.
inline AlongGoodResult AlongGood(const StrategySystem& s,
                                 WitnessClass cls = WitnessClass::Memoryless()) {
  if (!s.has_census()) throw NoCensus();
  AlongGoodResult result;
  auto path = ChosenPath(s, s.table_size() + 1);
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& step = path.steps[i];
    GoodResult good = IsGood(s.RootedAt(step.state), cls);
    if (!good.verdict.holds()) {
      Witness w;
      for (std::size_t k = 0; k < i; ++k) w.path.push_back(path.steps[k].choice);
      w.reason = "not good at " + s.StateName(step.state.id) + ": " +
                 good.verdict.witness.reason;
      result.verdict = Verdict::Fails(std::move(w), i + 1);
      return result;
    }
    result.witnesses.push_back(GoodWitnessEntry{i, step.state, *step.agent,
                                                step.choice, *good.witness,
                                                std::move(good.certificate)});
  }
  result.verdict = Verdict::Holds(path.steps.size());
  return result;
}

struct EscalationReport {
  std::string profile_id;
  ChosenPathResult<Choice> lasso;
  std::vector<GoodWitnessEntry> witnesses;
};

struct EscalationOutcome {
  std::optional<EscalationReport> report;
  std::string reason;  // when there is no escalation

  bool escalates() const { return report.has_value(); }
};

// AlongGood and Divergent.
inline EscalationOutcome CheckEscalation(
    const StrategySystem& s, std::string profile_id = "profile",
    WitnessClass cls = WitnessClass::Memoryless()) {
  if (!s.has_census()) throw NoCensus();
  EscalationOutcome out;
  Verdict div = IsDivergent(s);
  if (!div.holds()) {
    out.reason = "not divergent: " + div.witness.reason;
    return out;
  }
  AlongGoodResult along = AlongGood(s, cls);
  if (!along.verdict.holds()) {
    out.reason = "not along good: " + along.verdict.witness.reason;
    return out;
  }
  EscalationReport report;
  report.profile_id = std::move(profile_id);
  report.lasso = ChosenPath(s, s.table_size() + 1);
  report.witnesses = std::move(along.witnesses);
  out.report = std::move(report);
  return out;
}

// Independent re-validation of a report: the lasso, and for every witness the
// game bisimulation, the head choice, SPE-ness and certificate replay.
inline bool VerifyEscalationReport(const StrategySystem& s,
                                   const EscalationReport& report) {
  auto path = ChosenPath(s, s.table_size() + 1);
  if (path.end != PathEnd::kLasso || path.steps != report.lasso.steps ||
      path.loop_start != report.lasso.loop_start) {
    return false;
  }
  if (report.witnesses.size() != path.steps.size()) return false;
  for (const auto& w : report.witnesses) {
    auto view = w.witness.Unfold(w.witness.root());
    const auto* head = std::get_if<StrategyNode>(&view);
    if (!head || head->chosen != w.head || head->agent != w.agent) return false;
    if (!BisimExact(GameOf(w.witness), GameOf(s.RootedAt(w.state)))) {
      return false;
    }
    if (!CheckSpeRegular(w.witness).verdict.holds()) return false;
    if (!ReplayCertificate(w.witness, w.certificate)) return false;
  }
  return true;
}

}  // namespace extgames

#endif  // EXTGAMES_ESCALATION_HPP_

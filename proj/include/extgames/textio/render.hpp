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

// Renderers for depth-bounded unfoldings (ASCII, DOT, JSON) and JSON forms
// of verdicts and escalation reports. Output depends only on the system and
// the bounds. A position is identified by its state name and the labels of
// the path leading to it, e.g. "b_turn@right".

#ifndef EXTGAMES_TEXTIO_RENDER_HPP_
#define EXTGAMES_TEXTIO_RENDER_HPP_

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "extgames/core.hpp"
#include "extgames/escalation.hpp"
#include "extgames/system.hpp"
#include "extgames/verdict.hpp"
#include "json.hpp"

namespace extgames::textio {

using Json = nlohmann::ordered_json;

namespace detail {

template <class Node>
std::string RefName(const BasicSystem<Node>& sys, StateRef ref) {
  std::string name = sys.StateName(ref.id);
  if (ref.offset != 0) name += "[" + std::to_string(ref.offset) + "]";
  return name;
}

template <class Node>
std::string NodeHeader(const BasicSystem<Node>& sys,
                       const PrefixTree<Node>& t) {
  const ArenaSpec& arena = sys.arena();
  std::string out = RefName(sys, t.state);
  using Kind = typename PrefixTree<Node>::Kind;
  switch (t.kind) {
    case Kind::kLeaf:
      return out + " leaf (" + FormatPayoff(arena, t.payoff) + ")";
    case Kind::kContinuation:
      return out + " ...";
    case Kind::kNode:
      break;
  }
  out += t.owner ? " [" + arena.agent(*t.owner).name + "]" : " [all]";
  if (t.chosen) out += " chooses " + FormatKey(arena, t.owner, *t.chosen);
  return out;
}

template <class Node>
void AsciiAt(std::ostream& os, const BasicSystem<Node>& sys,
             const PrefixTree<Node>& t, const std::string& indent) {
  const std::size_t n = t.children.size() + (t.elided ? 1 : 0);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    const auto& [key, child] = t.children[i];
    const bool last = i + 1 == n;
    const bool taken = t.chosen && *t.chosen == key;
    os << indent << (last ? "`-" : "|-") << (taken ? "* " : "- ")
       << FormatKey(sys.arena(), t.owner, key) << ": "
       << NodeHeader(sys, child) << "\n";
    AsciiAt(os, sys, child, indent + (last ? "    " : "|   "));
  }
  if (t.elided) os << indent << "`-- ...\n";
}

inline std::string DotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

template <class Node>
void DotAt(std::ostream& os, const BasicSystem<Node>& sys,
           const PrefixTree<Node>& t, const std::string& path) {
  using Kind = typename PrefixTree<Node>::Kind;
  const ArenaSpec& arena = sys.arena();
  const std::string id = DotEscape(RefName(sys, t.state) + "@" + path);
  switch (t.kind) {
    case Kind::kLeaf:
      os << "  \"" << id << "\" [shape=box, label=\""
         << DotEscape(FormatPayoff(arena, t.payoff)) << "\"];\n";
      return;
    case Kind::kContinuation:
      os << "  \"" << id << "\" [shape=plaintext, label=\""
         << DotEscape(RefName(sys, t.state)) << " ...\"];\n";
      return;
    case Kind::kNode:
      break;
  }
  const std::string owner = t.owner ? arena.agent(*t.owner).name : "all";
  os << "  \"" << id << "\" [shape=ellipse, label=\""
     << DotEscape(RefName(sys, t.state) + "\n" + owner) << "\"];\n";
  for (const auto& [key, child] : t.children) {
    const std::string label = FormatKey(arena, t.owner, key);
    const std::string child_path = path.empty() ? label : path + "/" + label;
    DotAt(os, sys, child, child_path);
    os << "  \"" << id << "\" -> \""
       << DotEscape(RefName(sys, child.state) + "@" + child_path)
       << "\" [label=\"" << DotEscape(label) << "\""
       << (t.chosen && *t.chosen == key ? ", style=bold" : "") << "];\n";
  }
  if (t.elided) {
    const std::string more = DotEscape(RefName(sys, t.state) + "@" + path +
                                       (path.empty() ? "" : "/") + "...");
    os << "  \"" << more << "\" [shape=plaintext, label=\"...\"];\n";
    os << "  \"" << id << "\" -> \"" << more << "\" [style=dashed];\n";
  }
}

template <class Node>
Json JsonAt(const BasicSystem<Node>& sys, const PrefixTree<Node>& t,
            const std::string& path) {
  using Kind = typename PrefixTree<Node>::Kind;
  const ArenaSpec& arena = sys.arena();
  Json j;
  j["id"] = RefName(sys, t.state) + "@" + path;
  j["state"] = sys.StateName(t.state.id);
  if (t.state.offset != 0) j["offset"] = t.state.offset;
  switch (t.kind) {
    case Kind::kLeaf: {
      j["kind"] = "leaf";
      Json payoff = Json::object();
      for (std::size_t a = 0; a < arena.size(); ++a) {
        const AgentSpec& spec = arena.agents()[a];
        const Utility u = t.payoff[AgentId{static_cast<std::uint32_t>(a)}];
        if (spec.utility.is_integer()) {
          payoff[spec.name] = u.value;
        } else {
          payoff[spec.name] = spec.utility.label(u);
        }
      }
      j["payoff"] = std::move(payoff);
      return j;
    }
    case Kind::kContinuation:
      j["kind"] = "continuation";
      return j;
    case Kind::kNode:
      break;
  }
  j["kind"] = "node";
  if (t.owner) j["agent"] = arena.agent(*t.owner).name;
  if (t.chosen) j["chosen"] = FormatKey(arena, t.owner, *t.chosen);
  Json children = Json::array();
  for (const auto& [key, child] : t.children) {
    const std::string label = FormatKey(arena, t.owner, key);
    children.push_back(Json{
        {"choice", label},
        {"subtree",
         JsonAt(sys, child, path.empty() ? label : path + "/" + label)}});
  }
  j["children"] = std::move(children);
  j["elided"] = t.elided;
  return j;
}

}  // namespace detail

template <class Node>
std::string RenderAscii(const BasicSystem<Node>& sys, std::size_t depth,
                        std::size_t nat_samples = 8) {
  auto tree = UnfoldPrefix(sys, depth, nat_samples);
  std::ostringstream os;
  os << detail::NodeHeader(sys, tree) << "\n";
  detail::AsciiAt(os, sys, tree, "");
  return os.str();
}

template <class Node>
std::string RenderDot(const BasicSystem<Node>& sys, std::size_t depth,
                      std::size_t nat_samples = 8) {
  auto tree = UnfoldPrefix(sys, depth, nat_samples);
  std::ostringstream os;
  os << "digraph game {\n  node [fontname=\"Helvetica\"];\n"
        "  edge [fontname=\"Helvetica\"];\n";
  detail::DotAt(os, sys, tree, "");
  os << "}\n";
  return os.str();
}

template <class Node>
Json PrefixJson(const BasicSystem<Node>& sys, std::size_t depth,
                std::size_t nat_samples = 8) {
  return detail::JsonAt(sys, UnfoldPrefix(sys, depth, nat_samples), "");
}

template <class Node>
std::string ExportPrefixJson(const BasicSystem<Node>& sys, std::size_t depth,
                             std::size_t nat_samples = 8) {
  return PrefixJson(sys, depth, nat_samples).dump(2) + "\n";
}

// Choice labels along `path` from the root of `sys`.
template <class Node>
Json PathJson(const BasicSystem<Node>& sys,
              const std::vector<KeyOf<Node>>& path) {
  Json out = Json::array();
  StateRef ref = sys.root();
  for (const auto& key : path) {
    auto view = sys.Unfold(ref);
    const Node* node = std::get_if<Node>(&view);
    if (!node) break;
    out.push_back(FormatKey(sys.arena(), OwnerOf(*node), key));
    ref = sys.Follow(ref, *node, key);
  }
  return out;
}

template <class Node>
Json VerdictJson(const BasicSystem<Node>& sys, const Verdict& v) {
  Json j;
  j["verdict"] = std::string(VerdictName(v.kind));
  j["fuel_spent"] = v.fuel_spent;
  if (!v.note.empty()) j["note"] = v.note;
  if (v.count) {
    j["profile_count"] = *v.count;
    j["count_saturated"] = v.count_saturated;
  }
  if (v.fails()) {
    Json w;
    if constexpr (NodeTraits<Node>::kMultistage) {
      w["path"] = Json::array();
    } else {
      w["path"] = PathJson(sys, v.witness.path);
    }
    if (v.witness.loop_start) w["loop_start"] = *v.witness.loop_start;
    w["reason"] = v.witness.reason;
    j["witness"] = std::move(w);
  }
  return j;
}

inline Json CertificateJson(const StrategySystem& s,
                            const SpeCertificate& cert) {
  const ArenaSpec& arena = s.arena();
  Json nodes = Json::array();
  for (const SpeNodeRecord& r : cert.nodes) {
    Json alts = Json::array();
    for (const SpeAlternative& a : r.alternatives) {
      alts.push_back(Json{{"choice", arena.agent(r.agent).choices.label(a.choice)},
                          {"payoff", FormatPayoff(arena, a.payoff)},
                          {"pref_holds", a.pref_holds}});
    }
    nodes.push_back(Json{
        {"state", detail::RefName(s, r.state)},
        {"agent", arena.agent(r.agent).name},
        {"chosen", arena.agent(r.agent).choices.label(r.chosen)},
        {"chosen_payoff", FormatPayoff(arena, r.chosen_payoff)},
        {"alternatives", std::move(alts)}});
  }
  return nodes;
}

inline Json EscalationJson(const StrategySystem& s,
                           const EscalationReport& report) {
  const ArenaSpec& arena = s.arena();
  Json j;
  j["profile"] = report.profile_id;
  Json lasso;
  Json steps = Json::array();
  for (const auto& step : report.lasso.steps) {
    steps.push_back(Json{{"state", detail::RefName(s, step.state)},
                         {"agent", arena.agent(*step.agent).name},
                         {"choice", arena.agent(*step.agent).choices.label(step.choice)}});
  }
  lasso["steps"] = std::move(steps);
  lasso["loop_start"] = report.lasso.loop_start;
  lasso["period"] = report.lasso.period();
  lasso["period_shift"] = report.lasso.period_shift;
  j["lasso"] = std::move(lasso);
  Json witnesses = Json::array();
  for (const GoodWitnessEntry& w : report.witnesses) {
    Json choices = Json::object();
    for (StateId id : w.witness.CensusIds()) {
      if (const auto* node = std::get_if<StrategyNode>(&w.witness.table()[id])) {
        choices[w.witness.StateName(id)] =
            arena.agent(node->agent).choices.label(node->chosen);
      }
    }
    witnesses.push_back(Json{
        {"path_index", w.path_index},
        {"state", detail::RefName(s, w.state)},
        {"agent", arena.agent(w.agent).name},
        {"head", arena.agent(w.agent).choices.label(w.head)},
        {"witness_choices", std::move(choices)},
        {"certificate", CertificateJson(w.witness, w.certificate)}});
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

inline std::string EscalationText(const StrategySystem& s,
                                  const EscalationReport& report) {
  const ArenaSpec& arena = s.arena();
  std::ostringstream os;
  os << "escalation: " << report.profile_id << "\n";
  os << "lasso: period " << report.lasso.period() << ", loop starts at step "
     << report.lasso.loop_start;
  if (report.lasso.period_shift != 0) {
    os << ", payoff shift " << report.lasso.period_shift << " per period";
  }
  os << "\n";
  for (const GoodWitnessEntry& w : report.witnesses) {
    os << "  step " << w.path_index << " at " << detail::RefName(s, w.state)
       << ": " << arena.agent(w.agent).name << " plays "
       << arena.agent(w.agent).choices.label(w.head)
       << ", heads an SPE with choices {";
    bool first = true;
    for (StateId id : w.witness.CensusIds()) {
      if (const auto* node = std::get_if<StrategyNode>(&w.witness.table()[id])) {
        os << (first ? "" : ", ") << w.witness.StateName(id) << ": "
           << arena.agent(node->agent).choices.label(node->chosen);
        first = false;
      }
    }
    os << "} (" << w.certificate.nodes.size() << " certified nodes)\n";
  }
  return os.str();
}

}  // namespace extgames::textio

#endif  // EXTGAMES_TEXTIO_RENDER_HPP_

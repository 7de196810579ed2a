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

// Game description language (.game files).
//
//   # comment to end of line
//   arena {
//     agents A, B;
//     choices A {l, r};            # or: choices A nat;
//     utility A int leq;           # int: leq | indifferent | equality
//     utility B {x, y} order {x <= y};
//   }                              # symbolic: indifferent | equality | order {..}
//   def start = node A {l -> t, r -> start};
//   def t = leaf {A: 1, B: y};
//   def m = msnode {(l, u) -> t, (l, v) -> t, ...};
//   root start;
//   choose start = r;              # profiles only
//   choose m = (l, v);
//
// Named definitions are a finite system of equations: the parsed system has
// a census whose states are the definitions, in order. Every error carries
// the line and column of the offending token.

#ifndef EXTGAMES_TEXTIO_DSL_HPP_
#define EXTGAMES_TEXTIO_DSL_HPP_

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "extgames/arena.hpp"
#include "extgames/errors.hpp"
#include "extgames/system.hpp"

namespace extgames::textio {

namespace detail {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class Tok { kIdent, kInt, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Pos pos;
};

[[noreturn]] inline void Fail(Pos p, const std::string& msg) {
  throw ParseError(p.line, p.column, msg);
}

inline bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> out;
  Pos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.pos = pos;
    if (IsIdentStart(c)) {
      std::size_t j = i;
      while (j < text.size() && IsIdentChar(text[j])) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(text.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j < text.size() && IsIdentChar(text[j])) {
        Fail(pos, "malformed number");
      }
      t.kind = Tok::kInt;
      t.text = std::string(text.substr(i, j - i));
      if (t.text.size() > 18) Fail(pos, "integer literal too large");
    } else if (text.substr(i, 2) == "->" || text.substr(i, 2) == "<=") {
      t.kind = Tok::kPunct;
      t.text = std::string(text.substr(i, 2));
    } else if (std::string_view("{}(),;:=").find(c) != std::string_view::npos) {
      t.kind = Tok::kPunct;
      t.text = std::string(1, c);
    } else {
      std::string shown = std::isprint(static_cast<unsigned char>(c))
                              ? std::string(1, c)
                              : "\\x" + std::to_string(static_cast<unsigned char>(c));
      Fail(pos, "unexpected character '" + shown + "'");
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = pos;
  out.push_back(end);
  return out;
}

// --- syntax tree -----------------------------------------------------------

struct Name {
  std::string text;
  Pos pos;
};

struct ChoicesDecl {
  Name agent;
  bool naturals = false;
  std::vector<Name> labels;
};

struct UtilityDecl {
  Name agent;
  bool integer = false;
  std::vector<Name> labels;
  Name pref;                                 // leq | indifferent | equality | order
  std::vector<std::pair<Name, Name>> order;  // lower <= upper
};

struct LeafEntry {
  Name agent;
  Name value;
};

struct Arm {
  std::vector<Name> labels;  // one label, or a tuple for msnode
  Name target;
  Pos pos;
};

struct Def {
  enum class Kind { kLeaf, kNode, kMsNode };
  Name name;
  Kind kind = Kind::kLeaf;
  Pos body_pos;
  std::vector<LeafEntry> leaf;
  Name agent;  // kNode
  std::vector<Arm> arms;
};

struct Choose {
  Name state;
  bool tuple = false;
  std::vector<Name> labels;
};

struct Doc {
  std::optional<Pos> arena_pos;
  std::vector<Name> agents;
  std::vector<ChoicesDecl> choices;
  std::vector<UtilityDecl> utilities;
  std::vector<Def> defs;
  std::optional<Name> root;
  std::vector<Choose> chooses;
  Pos end;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Doc Run() {
    Doc doc;
    while (Peek().kind != Tok::kEnd) {
      const Token& t = Peek();
      if (IsWord("arena")) {
        if (doc.arena_pos) Fail(t.pos, "duplicate arena block");
        doc.arena_pos = t.pos;
        Next();
        ParseArena(doc);
      } else if (IsWord("def")) {
        Next();
        doc.defs.push_back(ParseDef());
      } else if (IsWord("root")) {
        if (doc.root) Fail(t.pos, "duplicate root designation");
        Next();
        doc.root = ExpectName("state name");
        Optional(";");
      } else if (IsWord("choose")) {
        Next();
        doc.chooses.push_back(ParseChoose());
      } else {
        Fail(t.pos, "expected 'arena', 'def', 'root' or 'choose', found " +
                        Describe(t));
      }
    }
    doc.end = Peek().pos;
    return doc;
  }

 private:
  const Token& Peek() const { return toks_[i_]; }
  const Token& Next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  bool IsWord(std::string_view w) const {
    return Peek().kind == Tok::kIdent && Peek().text == w;
  }
  bool IsPunct(std::string_view p) const {
    return Peek().kind == Tok::kPunct && Peek().text == p;
  }

  static std::string Describe(const Token& t) {
    if (t.kind == Tok::kEnd) return "end of input";
    return "'" + t.text + "'";
  }

  void Expect(std::string_view p) {
    if (!IsPunct(p)) {
      Fail(Peek().pos, "expected '" + std::string(p) + "', found " +
                           Describe(Peek()));
    }
    Next();
  }

  bool Optional(std::string_view p) {
    if (!IsPunct(p)) return false;
    Next();
    return true;
  }

  void ExpectWord(std::string_view w) {
    if (!IsWord(w)) {
      Fail(Peek().pos,
           "expected '" + std::string(w) + "', found " + Describe(Peek()));
    }
    Next();
  }

  Name ExpectName(std::string_view what) {
    if (Peek().kind != Tok::kIdent) {
      Fail(Peek().pos,
           "expected " + std::string(what) + ", found " + Describe(Peek()));
    }
    const Token& t = Next();
    return Name{t.text, t.pos};
  }

  Name ExpectValue() {
    if (Peek().kind != Tok::kIdent && Peek().kind != Tok::kInt) {
      Fail(Peek().pos, "expected a utility value, found " + Describe(Peek()));
    }
    const Token& t = Next();
    return Name{t.text, t.pos};
  }

  // '{' item (',' item)* '}' ; an empty list is allowed when `allow_empty`.
  template <class F>
  void List(F item, bool allow_empty) {
    Expect("{");
    if (IsPunct("}")) {
      if (!allow_empty) Fail(Peek().pos, "empty list");
      Next();
      return;
    }
    do {
      item();
    } while (Optional(","));
    Expect("}");
  }

  std::vector<Name> NameList(std::string_view what) {
    std::vector<Name> out;
    List([&] { out.push_back(ExpectName(what)); }, false);
    return out;
  }

  void ParseArena(Doc& doc) {
    Expect("{");
    while (!IsPunct("}")) {
      if (Peek().kind == Tok::kEnd) Fail(Peek().pos, "unterminated arena block");
      if (IsWord("agents")) {
        Next();
        do {
          doc.agents.push_back(ExpectName("agent name"));
        } while (Optional(","));
      } else if (IsWord("choices")) {
        Next();
        ChoicesDecl d;
        d.agent = ExpectName("agent name");
        if (IsWord("nat")) {
          Next();
          d.naturals = true;
        } else {
          d.labels = NameList("choice label");
        }
        doc.choices.push_back(std::move(d));
      } else if (IsWord("utility")) {
        Next();
        UtilityDecl d;
        d.agent = ExpectName("agent name");
        if (IsWord("int")) {
          Next();
          d.integer = true;
        } else if (IsPunct("{")) {
          d.labels = NameList("utility label");
        } else {
          Fail(Peek().pos,
               "expected 'int' or a label list, found " + Describe(Peek()));
        }
        d.pref = ExpectName("preference (leq, indifferent, equality, order)");
        if (d.pref.text == "order") {
          List(
              [&] {
                Name lo = ExpectName("utility label");
                Expect("<=");
                Name hi = ExpectName("utility label");
                d.order.emplace_back(lo, hi);
              },
              true);
        }
        doc.utilities.push_back(std::move(d));
      } else {
        Fail(Peek().pos, "expected 'agents', 'choices' or 'utility', found " +
                             Describe(Peek()));
      }
      if (!IsPunct("}")) Expect(";");
    }
    Next();
  }

  Def ParseDef() {
    Def d;
    d.name = ExpectName("state name");
    Expect("=");
    d.body_pos = Peek().pos;
    if (IsWord("leaf")) {
      Next();
      d.kind = Def::Kind::kLeaf;
      List(
          [&] {
            LeafEntry e;
            e.agent = ExpectName("agent name");
            Expect(":");
            e.value = ExpectValue();
            d.leaf.push_back(std::move(e));
          },
          false);
    } else if (IsWord("node")) {
      Next();
      d.kind = Def::Kind::kNode;
      d.agent = ExpectName("agent name");
      List(
          [&] {
            Arm a;
            a.pos = Peek().pos;
            a.labels.push_back(ExpectName("choice label"));
            Expect("->");
            a.target = ExpectName("state name");
            d.arms.push_back(std::move(a));
          },
          false);
    } else if (IsWord("msnode")) {
      Next();
      d.kind = Def::Kind::kMsNode;
      List(
          [&] {
            Arm a;
            a.pos = Peek().pos;
            Expect("(");
            do {
              a.labels.push_back(ExpectName("choice label"));
            } while (Optional(","));
            Expect(")");
            Expect("->");
            a.target = ExpectName("state name");
            d.arms.push_back(std::move(a));
          },
          false);
    } else {
      Fail(Peek().pos,
           "expected 'leaf', 'node' or 'msnode', found " + Describe(Peek()));
    }
    Optional(";");
    return d;
  }

  Choose ParseChoose() {
    Choose c;
    c.state = ExpectName("state name");
    Expect("=");
    if (Optional("(")) {
      c.tuple = true;
      do {
        c.labels.push_back(ExpectName("choice label"));
      } while (Optional(","));
      Expect(")");
    } else {
      c.labels.push_back(ExpectName("choice label"));
    }
    Optional(";");
    return c;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// --- semantic analysis -----------------------------------------------------

inline ArenaPtr BuildArena(const Doc& doc) {
  if (!doc.arena_pos) Fail(Pos{1, 1}, "missing arena block");
  if (doc.agents.empty()) Fail(*doc.arena_pos, "arena declares no agents");
  std::map<std::string, std::size_t> index;
  for (const Name& a : doc.agents) {
    if (!index.emplace(a.text, index.size()).second) {
      Fail(a.pos, "duplicate agent '" + a.text + "'");
    }
  }
  std::vector<std::optional<ChoiceSpace>> spaces(index.size());
  std::vector<std::optional<UtilityDomain>> domains(index.size());
  for (const auto& d : doc.choices) {
    auto it = index.find(d.agent.text);
    if (it == index.end()) Fail(d.agent.pos, "unknown agent '" + d.agent.text + "'");
    if (spaces[it->second]) {
      Fail(d.agent.pos, "choices of agent '" + d.agent.text + "' declared twice");
    }
    if (d.naturals) {
      spaces[it->second] = ChoiceSpace::Naturals();
      continue;
    }
    std::set<std::string> seen;
    std::vector<std::string> labels;
    for (const Name& l : d.labels) {
      if (!seen.insert(l.text).second) {
        Fail(l.pos, "duplicate choice label '" + l.text + "'");
      }
      labels.push_back(l.text);
    }
    spaces[it->second] = ChoiceSpace::Enumerated(std::move(labels));
  }
  for (const auto& d : doc.utilities) {
    auto it = index.find(d.agent.text);
    if (it == index.end()) Fail(d.agent.pos, "unknown agent '" + d.agent.text + "'");
    if (domains[it->second]) {
      Fail(d.agent.pos, "utility of agent '" + d.agent.text + "' declared twice");
    }
    const std::string& p = d.pref.text;
    std::optional<PrefKind> kind;
    if (p == "leq") kind = PrefKind::kIntLeq;
    if (p == "indifferent") kind = PrefKind::kIndifference;
    if (p == "equality") kind = PrefKind::kEqualityOnly;
    if (p == "order") kind = PrefKind::kExplicit;
    if (!kind) Fail(d.pref.pos, "unknown preference '" + p + "'");
    if (d.integer) {
      if (*kind == PrefKind::kExplicit) {
        Fail(d.pref.pos, "'order' needs a symbolic utility domain");
      }
      domains[it->second] = UtilityDomain::Integers(*kind);
      continue;
    }
    if (*kind == PrefKind::kIntLeq) {
      Fail(d.pref.pos, "'leq' needs an integer utility domain");
    }
    std::set<std::string> seen;
    std::vector<std::string> labels;
    for (const Name& l : d.labels) {
      if (!seen.insert(l.text).second) {
        Fail(l.pos, "duplicate utility label '" + l.text + "'");
      }
      labels.push_back(l.text);
    }
    if (*kind != PrefKind::kExplicit) {
      domains[it->second] = UtilityDomain::Symbolic(std::move(labels), *kind);
      continue;
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [lo, hi] : d.order) {
      for (const Name* n : {&lo, &hi}) {
        if (!seen.count(n->text)) {
          Fail(n->pos, "unknown utility label '" + n->text + "'");
        }
      }
      pairs.emplace_back(lo.text, hi.text);
    }
    domains[it->second] = UtilityDomain::Ordered(std::move(labels), pairs);
  }
  std::vector<AgentSpec> agents;
  for (const Name& a : doc.agents) {
    const std::size_t i = index.at(a.text);
    if (!spaces[i]) Fail(a.pos, "no choices declared for agent '" + a.text + "'");
    if (!domains[i]) Fail(a.pos, "no utility declared for agent '" + a.text + "'");
    agents.push_back(AgentSpec{a.text, *spaces[i], *domains[i]});
  }
  return MakeArena(std::move(agents));
}

inline std::optional<std::size_t> FindLabel(const ChoiceSpace& space,
                                            const Name& l) {
  auto c = space.find(l.text);
  if (!c) return std::nullopt;
  return static_cast<std::size_t>(c->value);
}

// Semantic model shared by the four entry points.
struct Model {
  ArenaPtr arena;
  bool multistage = false;
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::vector<std::optional<Payoff>> leaves;
  std::vector<std::optional<AgentId>> owners;  // sequential nodes
  std::vector<std::vector<Edge>> edges;        // nodes, by key index
  StateId root = 0;
  std::vector<std::optional<std::size_t>> chosen;  // key index per node
  bool has_chooses = false;
};

inline Model Analyze(const Doc& doc) {
  Model m;
  m.arena = BuildArena(doc);
  const ArenaSpec& arena = *m.arena;
  std::optional<Def::Kind> node_kind;
  for (const Def& d : doc.defs) {
    if (!m.index.emplace(d.name.text, m.names.size()).second) {
      Fail(d.name.pos, "state '" + d.name.text + "' defined twice");
    }
    m.names.push_back(d.name.text);
    if (d.kind == Def::Kind::kLeaf) continue;
    if (node_kind && *node_kind != d.kind) {
      Fail(d.body_pos, "state '" + d.name.text +
                           "': 'node' and 'msnode' cannot be mixed in one game");
    }
    node_kind = d.kind;
  }
  m.multistage = node_kind == Def::Kind::kMsNode;
  if (m.multistage && !arena.all_enumerated()) {
    Fail(*doc.arena_pos, "multi-stage nodes need enumerated choice spaces");
  }
  const std::size_t n = doc.defs.size();
  m.leaves.resize(n);
  m.owners.resize(n);
  m.edges.resize(n);
  m.chosen.resize(n);
  auto target_of = [&](const Def& d, const Arm& a) -> StateId {
    auto it = m.index.find(a.target.text);
    if (it == m.index.end()) {
      Fail(a.target.pos, "state '" + d.name.text + "': unknown target state '" +
                             a.target.text + "'");
    }
    return it->second;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Def& d = doc.defs[i];
    const std::string who = "state '" + d.name.text + "'";
    if (d.kind == Def::Kind::kLeaf) {
      std::vector<std::optional<Utility>> values(arena.size());
      for (const LeafEntry& e : d.leaf) {
        auto a = arena.find_agent(e.agent.text);
        if (!a) Fail(e.agent.pos, who + ": unknown agent '" + e.agent.text + "'");
        if (values[a->value]) {
          Fail(e.agent.pos, who + ": agent '" + e.agent.text + "' paid twice");
        }
        auto u = arena.agent(*a).utility.find(e.value.text);
        if (!u) {
          Fail(e.value.pos, who + ": '" + e.value.text +
                                "' is not a utility of agent '" + e.agent.text +
                                "'");
        }
        values[a->value] = u;
      }
      std::vector<Utility> payoff;
      for (std::size_t a = 0; a < arena.size(); ++a) {
        if (!values[a]) {
          Fail(d.body_pos, who + ": no payoff for agent '" +
                               arena.agents()[a].name + "'");
        }
        payoff.push_back(*values[a]);
      }
      m.leaves[i] = Payoff(std::move(payoff));
      continue;
    }
    if (d.kind == Def::Kind::kNode) {
      auto a = arena.find_agent(d.agent.text);
      if (!a) Fail(d.agent.pos, who + ": unknown agent '" + d.agent.text + "'");
      const ChoiceSpace& space = arena.agent(*a).choices;
      if (space.is_naturals()) {
        Fail(d.agent.pos, who + ": agent '" + d.agent.text +
                              "' chooses from nat, which a finite branch list "
                              "cannot cover");
      }
      m.owners[i] = *a;
      std::vector<std::optional<StateId>> slots(space.size());
      for (const Arm& arm : d.arms) {
        auto k = FindLabel(space, arm.labels[0]);
        if (!k) {
          Fail(arm.labels[0].pos, who + ": '" + arm.labels[0].text +
                                      "' is not a choice of agent '" +
                                      d.agent.text + "'");
        }
        if (slots[*k]) {
          Fail(arm.pos, who + ": branch '" + arm.labels[0].text + "' given twice");
        }
        slots[*k] = target_of(d, arm);
      }
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (!slots[k]) {
          Fail(d.body_pos, who + ": missing branch for choice '" +
                               space.labels()[k] + "'");
        }
        m.edges[i].push_back(Edge{*slots[k], 0});
      }
      continue;
    }
    std::vector<std::optional<StateId>> slots(
        extgames::detail::JointArity(arena));
    for (const Arm& arm : d.arms) {
      if (arm.labels.size() != arena.size()) {
        Fail(arm.pos, who + ": joint choice needs " +
                          std::to_string(arena.size()) + " components");
      }
      JointChoice jc;
      for (std::size_t a = 0; a < arena.size(); ++a) {
        auto k = FindLabel(arena.agents()[a].choices, arm.labels[a]);
        if (!k) {
          Fail(arm.labels[a].pos, who + ": '" + arm.labels[a].text +
                                      "' is not a choice of agent '" +
                                      arena.agents()[a].name + "'");
        }
        jc.push_back(Choice{*k});
      }
      const std::size_t idx = extgames::detail::JointIndex(arena, jc);
      if (slots[idx]) Fail(arm.pos, who + ": joint choice given twice");
      slots[idx] = target_of(d, arm);
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (!slots[k]) {
        JointChoice jc = extgames::detail::JointFromIndex(arena, k);
        Fail(d.body_pos, who + ": missing branch for joint choice " +
                             FormatKey(arena, std::nullopt, jc));
      }
      m.edges[i].push_back(Edge{*slots[k], 0});
    }
  }
  if (!doc.root) Fail(doc.end, "missing 'root' designation");
  auto r = m.index.find(doc.root->text);
  if (r == m.index.end()) {
    Fail(doc.root->pos, "unknown root state '" + doc.root->text + "'");
  }
  m.root = r->second;

  m.has_chooses = !doc.chooses.empty();
  for (const Choose& c : doc.chooses) {
    auto it = m.index.find(c.state.text);
    if (it == m.index.end()) {
      Fail(c.state.pos, "choose: unknown state '" + c.state.text + "'");
    }
    const std::size_t i = it->second;
    const std::string who = "state '" + c.state.text + "'";
    if (m.leaves[i]) Fail(c.state.pos, "choose: " + who + " is a leaf");
    if (m.chosen[i]) Fail(c.state.pos, "choose: " + who + " chosen twice");
    if (!m.multistage) {
      if (c.tuple) Fail(c.state.pos, "choose: " + who + " needs a single label");
      const AgentSpec& owner = arena.agent(*m.owners[i]);
      auto k = FindLabel(owner.choices, c.labels[0]);
      if (!k) {
        Fail(c.labels[0].pos, "choose: '" + c.labels[0].text +
                                  "' is not a choice of agent '" + owner.name +
                                  "' at " + who);
      }
      m.chosen[i] = *k;
      continue;
    }
    if (!c.tuple || c.labels.size() != arena.size()) {
      Fail(c.state.pos, "choose: " + who + " needs a joint choice of " +
                            std::to_string(arena.size()) + " labels");
    }
    JointChoice jc;
    for (std::size_t a = 0; a < arena.size(); ++a) {
      auto k = FindLabel(arena.agents()[a].choices, c.labels[a]);
      if (!k) {
        Fail(c.labels[a].pos, "choose: '" + c.labels[a].text +
                                  "' is not a choice of agent '" +
                                  arena.agents()[a].name + "'");
      }
      jc.push_back(Choice{*k});
    }
    m.chosen[i] = extgames::detail::JointIndex(arena, jc);
  }
  return m;
}

inline Model AnalyzeText(std::string_view text) {
  return Analyze(Parser(Lex(text)).Run());
}

inline void RequireChooses(const Model& m, const Doc& doc) {
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    if (!m.leaves[i] && !m.chosen[i]) {
      Fail(doc.defs[i].name.pos,
           "profile: no 'choose' line for node '" + m.names[i] + "'");
    }
  }
}

template <class System>
System BuildSystem(const Model& m, const Doc& doc) {
  using Node = typename System::NodeType;
  constexpr bool kStrategy = NodeTraits<Node>::kStrategy;
  constexpr bool kMultistage = NodeTraits<Node>::kMultistage;
  if (kMultistage != m.multistage) {
    Fail(doc.arena_pos.value_or(Pos{}),
         m.multistage ? "document defines a multi-stage game"
                      : "document defines a sequential game");
  }
  if (kStrategy) {
    RequireChooses(m, doc);
  } else if (m.has_chooses) {
    Fail(doc.chooses.front().state.pos,
         "'choose' lines describe a profile, not a game");
  }
  std::vector<typename System::View> table;
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    if (m.leaves[i]) {
      table.push_back(Leaf{*m.leaves[i]});
      continue;
    }
    auto next = Branch<KeyOf<Node>>::Table(m.edges[i]);
    if constexpr (std::is_same_v<Node, GameNode>) {
      table.push_back(GameNode{*m.owners[i], next});
    } else if constexpr (std::is_same_v<Node, StrategyNode>) {
      table.push_back(StrategyNode{*m.owners[i], Choice{*m.chosen[i]}, next});
    } else if constexpr (std::is_same_v<Node, MsGameNode>) {
      table.push_back(MsGameNode{next});
    } else {
      table.push_back(MsStrategyNode{
          extgames::detail::JointFromIndex(*m.arena, *m.chosen[i]), next});
    }
  }
  return System::Census(m.arena, std::move(table), m.root, m.names);
}

template <class System>
System ParseAs(std::string_view text) {
  Doc doc = Parser(Lex(text)).Run();
  Model m = Analyze(doc);
  return BuildSystem<System>(m, doc);
}

}  // namespace detail

// Parses a document as the given system kind. A document whose nodes are
// all unreachable or absent is a valid game and a valid profile.
template <class System>
System Parse(std::string_view text) {
  return detail::ParseAs<System>(text);
}

inline GameSystem ParseGame(std::string_view text) {
  return detail::ParseAs<GameSystem>(text);
}
inline StrategySystem ParseProfile(std::string_view text) {
  return detail::ParseAs<StrategySystem>(text);
}
inline MsGameSystem ParseMsGame(std::string_view text) {
  return detail::ParseAs<MsGameSystem>(text);
}
inline MsStrategySystem ParseMsProfile(std::string_view text) {
  return detail::ParseAs<MsStrategySystem>(text);
}

using AnyParsed =
    std::variant<GameSystem, StrategySystem, MsGameSystem, MsStrategySystem>;

// Kind chosen by the document: msnode definitions make a multi-stage system,
// choose lines make a profile.
inline AnyParsed ParseAny(std::string_view text) {
  detail::Doc doc = detail::Parser(detail::Lex(text)).Run();
  detail::Model m = detail::Analyze(doc);
  if (m.multistage) {
    if (m.has_chooses) return detail::BuildSystem<MsStrategySystem>(m, doc);
    return detail::BuildSystem<MsGameSystem>(m, doc);
  }
  if (m.has_chooses) return detail::BuildSystem<StrategySystem>(m, doc);
  return detail::BuildSystem<GameSystem>(m, doc);
}

// --- canonical writer ------------------------------------------------------

namespace detail {

inline bool IsIdentifier(std::string_view s) {
  if (s.empty() || !IsIdentStart(s[0])) return false;
  for (char c : s) {
    if (!IsIdentChar(c)) return false;
  }
  return true;
}

inline const std::string& RequireIdent(const std::string& s,
                                       std::string_view what) {
  if (!IsIdentifier(s)) {
    throw ConstructionError(std::string(what) + " '" + s +
                            "' is not an identifier");
  }
  return s;
}

inline std::string JoinLabels(const std::vector<std::string>& labels,
                              std::string_view what) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += RequireIdent(labels[i], what);
  }
  return out;
}

inline void WriteArena(std::ostream& os, const ArenaSpec& arena) {
  os << "arena {\n  agents ";
  for (std::size_t i = 0; i < arena.size(); ++i) {
    if (i) os << ", ";
    os << RequireIdent(arena.agents()[i].name, "agent name");
  }
  os << ";\n";
  for (const AgentSpec& a : arena.agents()) {
    os << "  choices " << a.name << " ";
    if (a.choices.is_naturals()) {
      os << "nat;\n";
    } else {
      os << "{" << JoinLabels(a.choices.labels(), "choice label") << "};\n";
    }
  }
  for (const AgentSpec& a : arena.agents()) {
    const UtilityDomain& u = a.utility;
    os << "  utility " << a.name << " ";
    if (u.is_integer()) {
      os << "int";
    } else {
      os << "{" << JoinLabels(u.labels(), "utility label") << "}";
    }
    os << " " << PrefKindName(u.pref_kind());
    if (u.pref_kind() == PrefKind::kExplicit) {
      os << " {";
      bool first = true;
      for (const auto& [lo, hi] : u.relation_pairs()) {
        os << (first ? "" : ", ") << lo << " <= " << hi;
        first = false;
      }
      os << "}";
    }
    os << ";\n";
  }
  os << "}\n";
}

}  // namespace detail

// Canonical text of a census system without payoff shifts: the arena, then
// the reachable states in breadth-first order from the root. State names are
// kept when they are distinct identifiers, otherwise replaced by s<k>.
template <class Node>
std::string WriteDsl(const BasicSystem<Node>& sys) {
  if (!sys.has_census()) {
    throw NoCensus();
  }
  if (sys.has_shifts() || sys.root().offset != 0) {
    throw ConstructionError(
        "systems with payoff shifts are not expressible as documents");
  }
  const ArenaSpec& arena = sys.arena();
  std::vector<StateId> ids = sys.CensusIds();
  std::map<StateId, std::string> name;
  {
    std::set<std::string> used;
    bool keep = true;
    for (StateId id : ids) {
      std::string n = sys.StateName(id);
      if (!detail::IsIdentifier(n) || !used.insert(n).second) keep = false;
    }
    for (std::size_t k = 0; k < ids.size(); ++k) {
      name[ids[k]] = keep ? sys.StateName(ids[k]) : "s" + std::to_string(k);
    }
  }
  std::ostringstream os;
  detail::WriteArena(os, arena);
  std::vector<std::string> chooses;
  for (StateId id : ids) {
    const auto& view = sys.table()[id];
    os << "def " << name[id] << " = ";
    if (const Leaf* leaf = std::get_if<Leaf>(&view)) {
      os << "leaf {";
      for (std::size_t a = 0; a < arena.size(); ++a) {
        if (a) os << ", ";
        os << arena.agents()[a].name << ": "
           << arena.agents()[a].utility.label(leaf->payoff[AgentId{
                  static_cast<std::uint32_t>(a)}]);
      }
      os << "};\n";
      continue;
    }
    const Node& node = std::get<Node>(view);
    const auto& edges = node.next.table();
    if constexpr (!NodeTraits<Node>::kMultistage) {
      const ChoiceSpace& space = arena.agent(node.agent).choices;
      os << "node " << arena.agent(node.agent).name << " {";
      for (std::size_t k = 0; k < edges.size(); ++k) {
        os << (k ? ", " : "") << space.labels()[k] << " -> "
           << name.at(edges[k].target);
      }
      os << "};\n";
      if constexpr (NodeTraits<Node>::kStrategy) {
        chooses.push_back("choose " + name[id] + " = " +
                          space.label(node.chosen) + ";\n");
      }
    } else {
      os << "msnode {";
      for (std::size_t k = 0; k < edges.size(); ++k) {
        JointChoice jc = extgames::detail::JointFromIndex(arena, k);
        os << (k ? ", " : "") << FormatKey(arena, std::nullopt, jc) << " -> "
           << name.at(edges[k].target);
      }
      os << "};\n";
      if constexpr (NodeTraits<Node>::kStrategy) {
        chooses.push_back("choose " + name[id] + " = " +
                          FormatKey(arena, std::nullopt, node.chosen) + ";\n");
      }
    }
  }
  os << "root " << name[sys.root().id] << ";\n";
  for (const std::string& c : chooses) os << c;
  return os.str();
}

}  // namespace extgames::textio

#endif  // EXTGAMES_TEXTIO_DSL_HPP_

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

// Command-line front end. Inputs are .game files ("-" reads stdin) or
// gallery entries written "example:NAME" (or given with --example NAME).
//
// Exit codes: 0 holds / success, 1 fails, 2 unknown or not decidable for
// this input, 64 usage error, 65 parse error.

#ifndef EXTGAMES_CLI_HPP_
#define EXTGAMES_CLI_HPP_

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "extgames/core.hpp"
#include "extgames/equilibrium.hpp"
#include "extgames/escalation.hpp"
#include "extgames/finiteness.hpp"
#include "extgames/gallery.hpp"
#include "extgames/multistage.hpp"
#include "extgames/textio/dsl.hpp"
#include "extgames/textio/render.hpp"

namespace extgames::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Loaded = textio::AnyParsed;
using textio::Json;

struct Options {
  std::string command;
  std::vector<std::string> inputs;
  std::string example;
  std::size_t stage = 0;
  std::size_t fuel = 10000;
  std::size_t depth = 16;
  std::size_t nat_samples = 8;
  std::string tie = "first";
  std::string pref_override;
  std::string format = "text";
  bool exact = false;
  std::size_t memory = 1;
  std::string check_kind;
};

inline int ExitFor(VerdictKind k) {
  switch (k) {
    case VerdictKind::kHolds: return kExitHolds;
    case VerdictKind::kFails: return kExitFails;
    case VerdictKind::kUnknown: return kExitUnknown;
  }
  return kExitUnknown;
}

inline std::optional<PrefKind> ParsePrefKind(const std::string& s) {
  if (s == "leq") return PrefKind::kIntLeq;
  if (s == "indifferent") return PrefKind::kIndifference;
  if (s == "equality") return PrefKind::kEqualityOnly;
  return std::nullopt;
}

inline Loaded FromGallery(const std::string& name, const Options& opt) {
  gallery::GalleryOptions gopt;
  gopt.stage = opt.stage;
  if (!opt.pref_override.empty()) {
    gopt.yingyang_pref = *ParsePrefKind(opt.pref_override);
  }
  auto entry = gallery::Lookup(name, gopt);
  if (!entry) throw UsageError("unknown example '" + name + "'");
  return std::visit([](auto& sys) -> Loaded { return sys; }, entry->system);
}

inline std::string ReadAll(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Loaded LoadInput(const std::string& spec, const Options& opt) {
  Loaded loaded = spec.rfind("example:", 0) == 0
                      ? FromGallery(spec.substr(8), opt)
                      : textio::ParseAny(ReadAll(spec));
  if (opt.pref_override.empty()) return loaded;
  const PrefKind pref = *ParsePrefKind(opt.pref_override);
  return std::visit(
      [&](auto& sys) -> Loaded {
        try {
          return sys.WithArena(
              std::make_shared<const ArenaSpec>(sys.arena().WithPref(pref)));
        } catch (const ConstructionError& e) {
          throw UsageError(std::string("--pref-override: ") + e.what());
        }
      },
      loaded);
}

inline std::string KindName(const Loaded& l) {
  switch (l.index()) {
    case 0: return "game";
    case 1: return "profile";
    case 2: return "ms-game";
    default: return "ms-profile";
  }
}

template <class T>
const T& Expect(const Loaded& l, const std::string& what) {
  if (const T* t = std::get_if<T>(&l)) return *t;
  throw UsageError("this command needs " + what + ", got a " + KindName(l));
}

// One command's result: exit code, human text and the JSON document.
struct Outcome {
  int code = kExitHolds;
  std::string text;
  Json json;
};

inline Outcome VerdictOutcome(const std::string& title, VerdictKind kind,
                              Json j, std::string text) {
  Outcome o;
  o.code = ExitFor(kind);
  o.text = title + ": " + std::string(VerdictName(kind)) +
           (text.empty() ? "" : "\n" + text);
  o.json = std::move(j);
  return o;
}

template <class Node>
std::string VerdictDetails(const BasicSystem<Node>& sys, const Verdict& v) {
  std::string out;
  if (!v.note.empty()) out += "note: " + v.note + "\n";
  if (v.count) {
    out += "profiles: " + std::to_string(*v.count) +
           (v.count_saturated ? "+" : "") + "\n";
  }
  if (v.fails()) {
    if constexpr (!NodeTraits<Node>::kMultistage) {
      out += "witness path: " + FormatPath(sys, v.witness.path);
    } else {
      out += "witness path: []";
    }
    if (v.witness.loop_start) {
      out += " (cycle back to step " + std::to_string(*v.witness.loop_start) + ")";
    }
    out += "\nreason: " + v.witness.reason + "\n";
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

template <class Node>
Outcome CheckOutcome(const std::string& kind, const BasicSystem<Node>& sys,
                     const Verdict& v) {
  Json j = textio::VerdictJson(sys, v);
  j["check"] = kind;
  return VerdictOutcome(kind, v.kind, std::move(j), VerdictDetails(sys, v));
}

inline Outcome RunCheck(const Options& opt, const Loaded& in) {
  const Limits limits{opt.fuel, opt.nat_samples};
  const std::string& k = opt.check_kind;
  if (k == "finite" || k == "broad" || k == "finite-history") {
    return std::visit(
        [&](const auto& sys) {
          Verdict v = k == "finite"  ? IsFiniteGame(sys, limits)
                      : k == "broad" ? IsFinitelyBroad(sys, limits)
                                     : IsFiniteHistoryGame(sys, limits);
          return CheckOutcome(k, sys, v);
        },
        in);
  }
  if (k == "convergent" || k == "always-convergent" || k == "divergent") {
    const auto& s = Expect<StrategySystem>(in, "a profile");
    Verdict v = k == "convergent"          ? IsConvergent(s, opt.fuel)
                : k == "always-convergent" ? IsAlwaysConvergent(s, limits)
                                           : IsDivergent(s, opt.fuel);
    return CheckOutcome(k, s, v);
  }
  throw UsageError("unknown check '" + k +
                   "' (finite, broad, finite-history, convergent, "
                   "always-convergent, divergent)");
}

inline Outcome RunParse(const Loaded& in) {
  return std::visit(
      [&](const auto& sys) {
        Outcome o;
        const ArenaSpec& arena = sys.arena();
        Json agents = Json::array();
        for (const auto& a : arena.agents()) agents.push_back(a.name);
        o.json = Json{{"kind", KindName(in)},
                      {"agents", agents},
                      {"states", sys.table_size()},
                      {"root", sys.StateName(sys.root().id)}};
        std::ostringstream os;
        os << KindName(in) << " with " << arena.size() << " agent(s), "
           << sys.table_size() << " state(s), root "
           << sys.StateName(sys.root().id) << "\n";
        if (sys.has_census() && !sys.has_shifts() && sys.root().offset == 0) {
          os << textio::WriteDsl(sys);
        }
        o.text = os.str();
        if (!o.text.empty() && o.text.back() == '\n') o.text.pop_back();
        return o;
      },
      in);
}

inline Outcome RunRender(const Options& opt, const Loaded& in,
                         const std::string& default_format) {
  const std::string fmt =
      opt.format == "text" && default_format == "dot" ? "dot" : opt.format;
  return std::visit(
      [&](const auto& sys) {
        Outcome o;
        o.json = Json{{"depth", opt.depth},
                      {"tree", textio::PrefixJson(sys, opt.depth, opt.nat_samples)}};
        o.text = fmt == "dot"
                     ? textio::RenderDot(sys, opt.depth, opt.nat_samples)
                     : textio::RenderAscii(sys, opt.depth, opt.nat_samples);
        if (!o.text.empty() && o.text.back() == '\n') o.text.pop_back();
        return o;
      },
      in);
}

inline Outcome RunEq(const Options& opt, const Loaded& a, const Loaded& b) {
  if (a.index() != b.index()) {
    throw UsageError("cannot compare a " + KindName(a) + " with a " + KindName(b));
  }
  return std::visit(
      [&](const auto& x) -> Outcome {
        using Sys = std::decay_t<decltype(x)>;
        const Sys& y = std::get<Sys>(b);
        Outcome o;
        if (opt.exact) {
          const bool eq = BisimExact(x, y);
          o.code = eq ? kExitHolds : kExitFails;
          o.text = eq ? "bisimilar" : "not bisimilar";
          o.json = Json{{"mode", "exact"}, {"equal", eq}};
          return o;
        }
        BisimOptions bo;
        bo.nat_samples = opt.nat_samples;
        auto r = BisimBounded(x, y, opt.depth, bo);
        o.json = Json{{"mode", "bounded"}, {"depth", opt.depth}, {"equal", r.equal}};
        if (r.equal) {
          o.code = kExitHolds;
          o.text = "equal up to depth " + std::to_string(opt.depth);
        } else {
          o.code = kExitFails;
          o.text = "differ at " + FormatPath(x, r.differ_at) + ": " + r.reason;
          o.json["differ_at"] = textio::PathJson(x, r.differ_at);
          o.json["reason"] = r.reason;
        }
        return o;
      },
      a);
}

inline Outcome RunUassign(const Options& opt, const Loaded& in) {
  return std::visit(
      [&](const auto& sys) -> Outcome {
        using Node = typename std::decay_t<decltype(sys)>::NodeType;
        if constexpr (!NodeTraits<Node>::kStrategy) {
          throw UsageError("uassign needs a profile, got a " + KindName(in));
        } else {
          auto r = Uassign(sys, opt.fuel);
          Outcome o;
          o.text = DescribeUassign(sys, r);
          std::string result = "exhausted";
          o.code = kExitUnknown;
          if (const Payoff* p = AssignedPayoff(r)) {
            result = "assigned";
            o.code = kExitHolds;
            o.json["payoff"] = FormatPayoff(sys.arena(), *p);
          } else if (std::holds_alternative<DivergenceDetected<KeyOf<Node>>>(r)) {
            result = "divergent";
            o.code = kExitFails;
          }
          o.json["result"] = result;
          o.json["description"] = o.text;
          return o;
        }
      },
      in);
}

inline Json ProfileChoicesJson(const StrategySystem& s) {
  Json choices = Json::object();
  for (StateId id : s.CensusIds()) {
    if (const auto* node = std::get_if<StrategyNode>(&s.table()[id])) {
      choices[s.StateName(id)] =
          s.arena().agent(node->agent).choices.label(node->chosen);
    }
  }
  return choices;
}

inline Outcome RunSolve(const Options& opt, const Loaded& in) {
  const auto& g = Expect<GameSystem>(in, "a game");
  TieRule tie;
  if (opt.tie == "first") {
    tie = TieRule::kFirstOptimal;
  } else if (opt.tie == "all") {
    tie = TieRule::kAllOptima;
  } else {
    throw UsageError("--tie must be 'first' or 'all'");
  }
  auto profiles = BackwardInduction(g, tie);
  Outcome o;
  Json list = Json::array();
  std::ostringstream os;
  os << profiles.size() << " subgame perfect equilibri"
     << (profiles.size() == 1 ? "um" : "a") << " (tie rule " << opt.tie << ")";
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& s = profiles[i];
    auto r = Uassign(s, s.table_size() + 1);
    const std::string payoff = FormatPayoff(s.arena(), *AssignedPayoff(r));
    Json choices = ProfileChoicesJson(s);
    os << "\n#" << i << " outcome {" << payoff << "}";
    for (const auto& [state, label] : choices.items()) {
      os << " " << state << "=" << label.get<std::string>();
    }
    list.push_back(Json{{"outcome", payoff}, {"choices", std::move(choices)}});
  }
  o.text = os.str();
  o.json = Json{{"tie", opt.tie}, {"profiles", std::move(list)}};
  return o;
}

inline Outcome RunCheckSpe(const Options& opt, const Loaded& in) {
  const auto& s = Expect<StrategySystem>(in, "a profile");
  const Limits limits{opt.fuel, opt.nat_samples};
  SpeResult r = s.has_census() ? CheckSpeRegular(s, limits)
                               : CheckSpeFinite(s, limits);
  Json j = textio::VerdictJson(s, r.verdict);
  std::string text = VerdictDetails(s, r.verdict);
  if (r.verdict.holds()) {
    j["certificate"] = textio::CertificateJson(s, r.certificate);
    j["certificate_replays"] = ReplayCertificate(s, r.certificate, opt.fuel);
    text += (text.empty() ? "" : "\n") + std::string("certificate: ") +
            std::to_string(r.certificate.nodes.size()) + " node(s), replays " +
            (j["certificate_replays"].get<bool>() ? "ok" : "FAILED");
  }
  if (r.violation) {
    const AgentSpec& owner =
        s.arena().agent(std::get<StrategyNode>(s.Unfold(r.violation->state)).agent);
    j["violation"] = Json{{"state", s.StateName(r.violation->state.id)},
                          {"path", textio::PathJson(s, r.violation->path)},
                          {"chosen", owner.choices.label(r.violation->chosen)},
                          {"better", owner.choices.label(r.violation->alternative)}};
  }
  return VerdictOutcome("spe", r.verdict.kind, std::move(j), text);
}

inline Outcome RunEscalation(const Options& opt, const Loaded& in,
                             const std::string& id) {
  const auto& s = Expect<StrategySystem>(in, "a profile");
  WitnessClass cls = opt.memory == 1 ? WitnessClass::Memoryless()
                                     : WitnessClass::BoundedMemory(opt.memory);
  EscalationOutcome e = CheckEscalation(s, id, cls);
  Outcome o;
  if (!e.escalates()) {
    o.code = kExitFails;
    o.text = "no escalation: " + e.reason;
    o.json = Json{{"escalates", false}, {"reason", e.reason}};
    return o;
  }
  const bool verified = VerifyEscalationReport(s, *e.report);
  o.code = verified ? kExitHolds : kExitFails;
  o.text = textio::EscalationText(s, *e.report) + "report verified: " +
           (verified ? "yes" : "NO");
  o.json = Json{{"escalates", true},
                {"verified", verified},
                {"report", textio::EscalationJson(s, *e.report)}};
  return o;
}

inline Outcome RunExamples(const Options& opt) {
  Outcome o;
  std::ostringstream os;
  Json list = Json::array();
  if (opt.inputs.empty() && opt.example.empty()) {
    gallery::GalleryOptions gopt;
    for (const std::string& name : gallery::GalleryNames()) {
      std::string concrete = name;
      if (auto p = concrete.find("<n>"); p != std::string::npos) {
        concrete.replace(p, 3, "3");
      }
      auto entry = gallery::Lookup(concrete, gopt);
      os << name << "\n    " << entry->description << "\n";
      Json facts = Json::array();
      for (const auto& f : entry->facts) {
        os << "    " << f.predicate << ": " << VerdictName(f.expected)
           << (f.note.empty() ? "" : " (" + f.note + ")") << "\n";
        facts.push_back(Json{{"predicate", f.predicate},
                             {"expected", std::string(VerdictName(f.expected))}});
      }
      list.push_back(Json{{"name", name},
                          {"description", entry->description},
                          {"facts", std::move(facts)}});
    }
    o.text = os.str();
    o.text.pop_back();
    o.json = Json{{"examples", std::move(list)}};
    return o;
  }
  const std::string name = opt.example.empty() ? opt.inputs.front() : opt.example;
  gallery::GalleryOptions gopt;
  gopt.stage = opt.stage;
  auto entry = gallery::Lookup(name, gopt);
  if (!entry) throw UsageError("unknown example '" + name + "'");
  std::string body = std::visit(
      [&](const auto& sys) {
        if (sys.has_census() && !sys.has_shifts() && sys.root().offset == 0) {
          return textio::WriteDsl(sys);
        }
        return textio::RenderAscii(sys, std::min<std::size_t>(opt.depth, 4),
                                   opt.nat_samples);
      },
      entry->system);
  o.text = "# " + entry->name + ": " + entry->description + "\n" + body;
  o.text.pop_back();
  o.json = Json{{"name", entry->name}, {"description", entry->description},
                {"text", body}};
  return o;
}

inline int Emit(const Options& opt, Outcome o, std::ostream& out) {
  if (opt.format == "json") {
    Json j;
    j["command"] = opt.command;
    j["exit_code"] = o.code;
    for (auto& [key, value] : o.json.items()) j[key] = value;
    out << j.dump(2) << "\n";
  } else {
    out << o.text << "\n";
  }
  return o.code;
}

inline int RunCli(int argc, const char* const* argv, std::ostream& out,
                  std::ostream& err) {
  Options opt;
  CLI::App app{"Analyses of coinductive extensive games and strategy profiles",
               "extgames"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub, bool inputs) {
    if (inputs) {
      sub->add_option("inputs", opt.inputs,
                      ".game file, '-' for stdin, or example:NAME");
      sub->add_option("--example", opt.example, "gallery entry to use as input");
    }
    sub->add_option("--stage", opt.stage, "dollar auction starting stage");
    sub->add_option("--fuel", opt.fuel, "step budget")->capture_default_str();
    sub->add_option("--depth", opt.depth, "unfolding depth")->capture_default_str();
    sub->add_option("--nat-samples", opt.nat_samples,
                    "branches shown for nat choice spaces")
        ->capture_default_str();
    sub->add_option("--pref-override", opt.pref_override,
                    "replace every preorder: leq, indifferent, equality")
        ->check(CLI::IsMember({"leq", "indifferent", "equality"}));
    sub->add_option("--format", opt.format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
  };

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"parse", "parse a document and print its canonical form"},
      {"unfold", "print the unfolding up to --depth"},
      {"render", "render the unfolding (DOT by default)"},
      {"eq", "bisimulation of two systems (--exact, or bounded by --depth)"},
      {"uassign", "utility assignment of a profile"},
      {"check", "finite | broad | finite-history | convergent | "
                "always-convergent | divergent"},
      {"solve", "subgame perfect equilibria of a finite game"},
      {"check-spe", "is the profile a subgame perfect equilibrium"},
      {"check-escalation", "is the profile an escalation"},
      {"examples", "list gallery entries, or print one"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&opt, name = std::string(s.name)] { opt.command = name; });
    if (std::string(s.name) == "check") {
      sub->add_option("kind", opt.check_kind, "predicate to check")->required();
    }
    if (std::string(s.name) == "eq") {
      sub->add_flag("--exact", opt.exact, "exact decision on census systems");
    }
    if (std::string(s.name) == "solve") {
      sub->add_option("--tie", opt.tie, "first or all")->capture_default_str();
    }
    if (std::string(s.name) == "check-escalation") {
      sub->add_option("--memory", opt.memory,
                      "witness memory: 1 (memoryless) to 3")
          ->check(CLI::Range(1, 3));
    }
    common(sub, true);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (opt.format == "dot" && opt.command != "render" && opt.command != "unfold") {
    err << "usage error: --format dot only applies to unfold and render\n";
    return kExitUsage;
  }

  try {
    if (opt.command == "examples") return Emit(opt, RunExamples(opt), out);
    std::vector<std::string> inputs = opt.inputs;
    if (!opt.example.empty()) inputs.insert(inputs.begin(), "example:" + opt.example);
    const std::size_t want = opt.command == "eq" ? 2 : 1;
    if (inputs.size() != want) {
      throw UsageError(opt.command + " takes " + std::to_string(want) +
                       " input(s), got " + std::to_string(inputs.size()));
    }
    std::vector<Loaded> loaded;
    for (const auto& in : inputs) {
      try {
        loaded.push_back(LoadInput(in, opt));
      } catch (const ParseError& e) {
        err << in << ":" << e.line() << ":" << e.column() << ": " << e.message()
            << "\n";
        return kExitParse;
      }
    }
    const Loaded& in = loaded.front();
    Outcome o;
    if (opt.command == "parse") o = RunParse(in);
    if (opt.command == "unfold") o = RunRender(opt, in, "text");
    if (opt.command == "render") o = RunRender(opt, in, "dot");
    if (opt.command == "eq") o = RunEq(opt, loaded[0], loaded[1]);
    if (opt.command == "uassign") o = RunUassign(opt, in);
    if (opt.command == "check") o = RunCheck(opt, in);
    if (opt.command == "solve") o = RunSolve(opt, in);
    if (opt.command == "check-spe") o = RunCheckSpe(opt, in);
    if (opt.command == "check-escalation") {
      const std::string& id = inputs.front();
      o = RunEscalation(opt, in,
                        id.rfind("example:", 0) == 0 ? id.substr(8) : id);
    }
    return Emit(opt, std::move(o), out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GameError& e) {
    err << "cannot decide: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace extgames::cli

#endif  // EXTGAMES_CLI_HPP_

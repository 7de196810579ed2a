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

// The arena is the ambient signature every game is typed against: a list of
// agents, and for each agent a space of choices and a preordered domain of
// utilities. Choice labels and utility values are plain indices validated
// against the owning agent at construction time, which is how the library
// stands in for the dependent typing `Choice a` / `Utility a`.

#ifndef EXTGAMES_ARENA_HPP_
#define EXTGAMES_ARENA_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "extgames/errors.hpp"

namespace extgames {

struct AgentId {
  std::uint32_t value = 0;
  auto operator<=>(const AgentId&) const = default;
};

// A choice label. For enumerated spaces this is the index of the label in
// the space; for Naturals it is the number itself.
struct Choice {
  std::uint64_t value = 0;
  auto operator<=>(const Choice&) const = default;
};

// A utility value. Integer domains store the integer; symbolic domains
// store the index of the label.
struct Utility {
  std::int64_t value = 0;
  auto operator<=>(const Utility&) const = default;
};

class ChoiceSpace {
 public:
  static ChoiceSpace Enumerated(std::vector<std::string> labels) {
    if (labels.empty()) {
      throw ConstructionError("enumerated choice space must be nonempty");
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
      throw ConstructionError("duplicate choice label");
    }
    ChoiceSpace space;
    space.labels_ = std::move(labels);
    return space;
  }

  static ChoiceSpace Naturals() {
    ChoiceSpace space;
    space.naturals_ = true;
    return space;
  }

  bool is_enumerated() const { return !naturals_; }
  bool is_naturals() const { return naturals_; }

  // Number of labels; only meaningful for enumerated spaces.
  std::size_t size() const { return labels_.size(); }

  bool contains(Choice c) const {
    return naturals_ || c.value < labels_.size();
  }

  std::string label(Choice c) const {
    if (naturals_) return std::to_string(c.value);
    if (c.value >= labels_.size()) {
      throw ConstructionError("choice index out of range");
    }
    return labels_[c.value];
  }

  std::optional<Choice> find(std::string_view text) const {
    if (naturals_) {
      if (text.empty() || text.size() > 19) return std::nullopt;
      std::uint64_t v = 0;
      for (char ch : text) {
        if (ch < '0' || ch > '9') return std::nullopt;
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      }
      return Choice{v};
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == text) return Choice{i};
    }
    return std::nullopt;
  }

  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const ChoiceSpace&) const = default;

 private:
  ChoiceSpace() = default;
  bool naturals_ = false;
  std::vector<std::string> labels_;
};

enum class PrefKind {
  kIntLeq,        // usual order on integers
  kExplicit,      // reflexive-transitive closure of given pairs on labels
  kIndifference,  // every pair related
  kEqualityOnly,  // only reflexive pairs
};

inline std::string_view PrefKindName(PrefKind kind) {
  switch (kind) {
    case PrefKind::kIntLeq: return "leq";
    case PrefKind::kExplicit: return "order";
    case PrefKind::kIndifference: return "indifferent";
    case PrefKind::kEqualityOnly: return "equality";
  }
  return "?";
}

// A set of utility values together with a preorder `pref`.
class UtilityDomain {
 public:
  static UtilityDomain Integers(PrefKind pref = PrefKind::kIntLeq) {
    if (pref == PrefKind::kExplicit) {
      throw ConstructionError(
          "explicit preference relations need a symbolic domain");
    }
    UtilityDomain d;
    d.pref_ = pref;
    return d;
  }

  static UtilityDomain Symbolic(std::vector<std::string> labels,
                                PrefKind pref) {
    if (pref == PrefKind::kIntLeq) {
      throw ConstructionError("'leq' preference needs an integer domain");
    }
    if (pref == PrefKind::kExplicit) {
      return Ordered(std::move(labels), {});
    }
    UtilityDomain d = SymbolicBase(std::move(labels));
    d.pref_ = pref;
    return d;
  }

  // Symbolic domain whose preorder is the reflexive-transitive closure of
  // `pairs` (each pair reads "first is at most second").
  static UtilityDomain Ordered(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>>& pairs) {
    UtilityDomain d = SymbolicBase(std::move(labels));
    d.pref_ = PrefKind::kExplicit;
    const std::size_t n = d.labels_.size();
    d.relation_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i) d.relation_[i * n + i] = true;
    for (const auto& [lo, hi] : pairs) {
      auto a = d.find(lo);
      auto b = d.find(hi);
      if (!a || !b) {
        throw ConstructionError("preference pair mentions unknown label '" +
                                (a ? hi : lo) + "'");
      }
      d.relation_[static_cast<std::size_t>(a->value) * n +
                  static_cast<std::size_t>(b->value)] = true;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!d.relation_[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (d.relation_[k * n + j]) d.relation_[i * n + j] = true;
        }
      }
    }
    d.VerifyPreorder();
    return d;
  }

  bool is_integer() const { return !symbolic_; }
  bool is_symbolic() const { return symbolic_; }
  PrefKind pref_kind() const { return pref_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(Utility u) const {
    if (!symbolic_) return true;
    return u.value >= 0 && static_cast<std::size_t>(u.value) < labels_.size();
  }

  std::string label(Utility u) const {
    if (!symbolic_) return std::to_string(u.value);
    if (!contains(u)) throw ConstructionError("utility value out of domain");
    return labels_[static_cast<std::size_t>(u.value)];
  }

  std::optional<Utility> find(std::string_view text) const {
    if (symbolic_) {
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == text) return Utility{static_cast<std::int64_t>(i)};
      }
      return std::nullopt;
    }
    try {
      std::size_t used = 0;
      std::string s(text);
      long long v = std::stoll(s, &used);
      if (used != s.size()) return std::nullopt;
      return Utility{v};
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  // pref(lower, upper): `upper` is at least as good as `lower`.
  bool pref(Utility lower, Utility upper) const {
    switch (pref_) {
      case PrefKind::kIntLeq: return lower.value <= upper.value;
      case PrefKind::kIndifference: return true;
      case PrefKind::kEqualityOnly: return lower.value == upper.value;
      case PrefKind::kExplicit: {
        const std::size_t n = labels_.size();
        return relation_[static_cast<std::size_t>(lower.value) * n +
                         static_cast<std::size_t>(upper.value)];
      }
    }
    return false;
  }

  // Every pair (a, b) with a ≼ b, for symbolic domains.
  std::vector<std::pair<std::string, std::string>> relation_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && pref(Utility{static_cast<std::int64_t>(i)},
                           Utility{static_cast<std::int64_t>(j)})) {
          out.emplace_back(labels_[i], labels_[j]);
        }
      }
    }
    return out;
  }

  // Same values, different preorder.
  UtilityDomain WithPref(PrefKind pref) const {
    if (symbolic_) return Symbolic(labels_, pref);
    return Integers(pref);
  }

  bool operator==(const UtilityDomain&) const = default;

 private:
  UtilityDomain() = default;

  static UtilityDomain SymbolicBase(std::vector<std::string> labels) {
    if (labels.empty()) {
      throw ConstructionError("symbolic utility domain must be nonempty");
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
      throw ConstructionError("duplicate utility label");
    }
    UtilityDomain d;
    d.symbolic_ = true;
    d.labels_ = std::move(labels);
    return d;
  }

  void VerifyPreorder() const {
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!relation_[i * n + i]) {
        throw ConstructionError("preference is not reflexive");
      }
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (relation_[i * n + j] && relation_[j * n + k] &&
              !relation_[i * n + k]) {
            throw ConstructionError("preference is not transitive");
          }
        }
      }
    }
  }

  bool symbolic_ = false;
  PrefKind pref_ = PrefKind::kIntLeq;
  std::vector<std::string> labels_;
  std::vector<bool> relation_;  // row-major, lower * n + upper
};

struct AgentSpec {
  std::string name;
  ChoiceSpace choices;
  UtilityDomain utility;

  bool operator==(const AgentSpec&) const = default;
};

class ArenaSpec {
 public:
  explicit ArenaSpec(std::vector<AgentSpec> agents)
      : agents_(std::move(agents)) {
    if (agents_.empty()) {
      throw ConstructionError("an arena needs at least one agent");
    }
    std::set<std::string> names;
    for (const auto& a : agents_) {
      if (!names.insert(a.name).second) {
        throw ConstructionError("duplicate agent '" + a.name + "'");
      }
    }
  }

  std::size_t size() const { return agents_.size(); }
  const std::vector<AgentSpec>& agents() const { return agents_; }

  const AgentSpec& agent(AgentId id) const {
    if (id.value >= agents_.size()) {
      throw ConstructionError("unknown agent id " + std::to_string(id.value));
    }
    return agents_[id.value];
  }

  std::optional<AgentId> find_agent(std::string_view name) const {
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      if (agents_[i].name == name) {
        return AgentId{static_cast<std::uint32_t>(i)};
      }
    }
    return std::nullopt;
  }

  bool all_enumerated() const {
    for (const auto& a : agents_) {
      if (!a.choices.is_enumerated()) return false;
    }
    return true;
  }

  // Replace every agent's preorder. Throws when the kind does not fit a
  // domain (e.g. `leq` on a symbolic domain).
  ArenaSpec WithPref(PrefKind pref) const {
    std::vector<AgentSpec> agents = agents_;
    for (auto& a : agents) a.utility = a.utility.WithPref(pref);
    return ArenaSpec(std::move(agents));
  }

  bool operator==(const ArenaSpec&) const = default;

 private:
  std::vector<AgentSpec> agents_;
};

using ArenaPtr = std::shared_ptr<const ArenaSpec>;

inline ArenaPtr MakeArena(std::vector<AgentSpec> agents) {
  return std::make_shared<const ArenaSpec>(std::move(agents));
}

// Total assignment agent -> utility value.
class Payoff {
 public:
  Payoff() = default;
  explicit Payoff(std::vector<Utility> values) : values_(std::move(values)) {}

  Utility operator[](AgentId a) const { return values_.at(a.value); }
  std::size_t size() const { return values_.size(); }
  const std::vector<Utility>& values() const { return values_; }

  // Adds `offset` to every integer-valued component.
  Payoff Shifted(const ArenaSpec& arena, std::int64_t offset) const {
    if (offset == 0) return *this;
    Payoff out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (arena.agents()[i].utility.is_integer()) out.values_[i].value += offset;
    }
    return out;
  }

  auto operator<=>(const Payoff&) const = default;

 private:
  std::vector<Utility> values_;
};

inline void ValidatePayoff(const ArenaSpec& arena, const Payoff& p) {
  if (p.size() != arena.size()) {
    throw ConstructionError("payoff must assign a utility to every agent");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!arena.agents()[i].utility.contains(p.values()[i])) {
      throw ConstructionError("utility value outside the domain of agent '" +
                              arena.agents()[i].name + "'");
    }
  }
}

inline bool Pref(const ArenaSpec& arena, AgentId a, Utility lower,
                 Utility upper) {
  return arena.agent(a).utility.pref(lower, upper);
}

// "A:1, B:yang"
inline std::string FormatPayoff(const ArenaSpec& arena, const Payoff& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += arena.agents()[i].name;
    out += ':';
    out += arena.agents()[i].utility.label(p.values()[i]);
  }
  return out;
}

}  // namespace extgames

#endif  // EXTGAMES_ARENA_HPP_

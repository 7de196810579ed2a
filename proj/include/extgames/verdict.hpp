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

#ifndef EXTGAMES_VERDICT_HPP_
#define EXTGAMES_VERDICT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extgames/arena.hpp"

namespace extgames {

// Unknown sits below Holds/Fails: it only means the budget ran out.
enum class VerdictKind { kUnknown = 0, kHolds = 1, kFails = 2 };

inline std::string_view VerdictName(VerdictKind k) {
  switch (k) {
    case VerdictKind::kHolds: return "holds";
    case VerdictKind::kFails: return "fails";
    case VerdictKind::kUnknown: return "unknown";
  }
  return "?";
}

// A finite, replayable witness: the choices taken from the root. When
// `loop_start` is set, the state reached after the whole path has the same
// id as the state reached after path[0..loop_start), i.e. the path closes a
// cycle.
struct Witness {
  std::vector<Choice> path;
  std::optional<std::size_t> loop_start;
  std::string reason;
};

struct Verdict {
  VerdictKind kind = VerdictKind::kUnknown;
  Witness witness;             // meaningful on Fails
  std::size_t fuel_spent = 0;  // states or steps consumed
  std::string note;            // e.g. provenance of an analytic answer
  std::optional<std::uint64_t> count;  // profile count for finitely-broad
  bool count_saturated = false;

  bool holds() const { return kind == VerdictKind::kHolds; }
  bool fails() const { return kind == VerdictKind::kFails; }
  bool unknown() const { return kind == VerdictKind::kUnknown; }

  static Verdict Holds(std::size_t spent = 0, std::string note = {}) {
    Verdict v;
    v.kind = VerdictKind::kHolds;
    v.fuel_spent = spent;
    v.note = std::move(note);
    return v;
  }

  static Verdict Fails(Witness w, std::size_t spent = 0) {
    Verdict v;
    v.kind = VerdictKind::kFails;
    v.witness = std::move(w);
    v.fuel_spent = spent;
    return v;
  }

  static Verdict Unknown(std::size_t spent, std::string note = {}) {
    Verdict v;
    v.kind = VerdictKind::kUnknown;
    v.fuel_spent = spent;
    v.note = std::move(note);
    return v;
  }
};

// Budgets shared by the bounded analyses.
struct Limits {
  std::size_t fuel = 10000;       // steps or distinct states
  std::size_t nat_samples = 8;    // branches explored at a Naturals node
};

}  // namespace extgames

#endif  // EXTGAMES_VERDICT_HPP_

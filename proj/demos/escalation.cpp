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

// Checks that the dollar auction profile in which both bidders always
// continue is an escalation, and prints the verified report.
//
//   demo_escalation [stage]

#include <cstdlib>
#include <iostream>
#include <string>

#include "extgames/extgames.hpp"
#include "extgames/textio/render.hpp"

int main(int argc, char** argv) {
  namespace gal = extgames::gallery;
  const std::size_t stage = argc > 1 ? std::stoul(argv[1]) : 0;
  const auto profile = gal::DollarProfile(gal::ProfileKind::kAcBc, stage);

  std::cout << extgames::textio::RenderAscii(profile, 3) << "\n";
  const auto outcome = extgames::CheckEscalation(profile, "dollar-acbc");
  if (!outcome.escalates()) {
    std::cout << "no escalation: " << outcome.reason << "\n";
    return EXIT_FAILURE;
  }
  std::cout << extgames::textio::EscalationText(profile, *outcome.report);
  const bool verified = extgames::VerifyEscalationReport(profile, *outcome.report);
  std::cout << "report verified: " << (verified ? "yes" : "no") << "\n";
  return verified ? EXIT_SUCCESS : EXIT_FAILURE;
}

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

// Umbrella header: the whole library.

#ifndef EXTGAMES_EXTGAMES_HPP_
#define EXTGAMES_EXTGAMES_HPP_

#include "extgames/arena.hpp"
#include "extgames/core.hpp"
#include "extgames/equilibrium.hpp"
#include "extgames/errors.hpp"
#include "extgames/escalation.hpp"
#include "extgames/finiteness.hpp"
#include "extgames/gallery.hpp"
#include "extgames/multistage.hpp"
#include "extgames/system.hpp"
#include "extgames/textio/dsl.hpp"
#include "extgames/textio/render.hpp"
#include "extgames/verdict.hpp"

#endif  // EXTGAMES_EXTGAMES_HPP_

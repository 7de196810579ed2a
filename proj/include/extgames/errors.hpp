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

#ifndef EXTGAMES_ERRORS_HPP_
#define EXTGAMES_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace extgames {

// Base of every error raised by the library.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates the arena typing (choice outside the agent's space,
// utility outside the domain, malformed node, ...).
class ConstructionError : public GameError {
 public:
  using GameError::GameError;
};

class ArenaMismatch : public GameError {
 public:
  ArenaMismatch() : GameError("systems are built over different arenas") {}
};

// A Naturals-branching node was met by an analysis that must be exhaustive.
class UnboundedBranch : public GameError {
 public:
  using GameError::GameError;
};

// The analysis needs an explicit finite state census.
class NoCensus : public GameError {
 public:
  NoCensus() : GameError("operation requires a finite-state (census) system") {}
};

class NotFiniteTree : public GameError {
 public:
  NotFiniteTree() : GameError("game does not unfold to a finite tree") {}
};

class NoMaximalChoice : public GameError {
 public:
  using GameError::GameError;
};

class TooBroad : public GameError {
 public:
  using GameError::GameError;
};

class NaturalsNotSupported : public GameError {
 public:
  NaturalsNotSupported()
      : GameError("operation requires enumerated choice spaces") {}
};

// Lexical, syntactic or semantic error in a game document. Lines and
// columns are 1-based.
class ParseError : public GameError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : GameError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                  message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace extgames

#endif  // EXTGAMES_ERRORS_HPP_

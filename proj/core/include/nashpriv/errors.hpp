/*
 * Copyright 2026 The nashpriv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace nashpriv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Structurally invalid game, automaton, preorder or network input.
/// `where` holds a JSON-pointer-like location when the input came from a file.
class InputError : public Error {
  public:
    InputError(const std::string& what, std::string where = {});
    const std::string& where() const noexcept { return where_; }

  private:
    std::string where_;
};

/// A strategy had no decision at a state reached during simulation.
class UndefinedChoice : public Error {
  public:
    using Error::Error;
};

class NonTerminatingInput : public Error {
  public:
    using Error::Error;
};

/// The semi-automaton mentions atomic propositions the game does not have.
class AlphabetMismatch : public Error {
  public:
    using Error::Error;
};

/// A query arrived after the session was closed (p-flag answered or STOP sent).
class ProtocolOrder : public Error {
  public:
    using Error::Error;
};

class MalformedResult : public Error {
  public:
    using Error::Error;
};

/// An exhaustive enumeration would exceed its configured bound.
class TooLarge : public Error {
  public:
    using Error::Error;
};

class EnumerationTooLarge : public TooLarge {
  public:
    using TooLarge::TooLarge;
};

} // namespace nashpriv

/*
 * Copyright 2026 The ksred Authors
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

#ifndef KSRED_ERROR_HPP
#define KSRED_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ksred {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed KS, partition or formula text. `line()` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An argument is outside the domain of the operation (unknown state, bad bound).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The operation requires a property of its input that does not hold, e.g.
/// quotienting by a partition that is not a KME.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search refused because the input exceeds the configured bound.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A result violates an invariant the library asserts on its own output.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ksred

#endif  // KSRED_ERROR_HPP

/*
 * Copyright 2026 The ttdfair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TTDFAIR_ERRORS_HPP
#define TTDFAIR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ttdfair {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (CSV, JSON). Carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a data rule (age bound, duplicate id, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A caller passed an out-of-contract argument (bad window index, shape
/// mismatch, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace ttdfair

#endif  // TTDFAIR_ERRORS_HPP

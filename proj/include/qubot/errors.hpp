// Copyright 2026 The qubot-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUBOT_ERRORS_HPP_
#define QUBOT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qubot {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- numerical / structural errors -----------------------------------------

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotPSDError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

class InvalidProbabilityError : public Error {
 public:
  using Error::Error;
};

class ZeroForgetnessError : public Error {
 public:
  using Error::Error;
};

class DegenerateSteadyStateError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

class NotStabilizedError : public Error {
 public:
  using Error::Error;
};

/// A trajectory sample violated a density-matrix invariant (trace drift,
/// hermiticity defect or negative eigenvalue beyond tolerance).
class InvariantViolatedError : public Error {
 public:
  using Error::Error;
};

// --- configuration errors ---------------------------------------------------

/// Config text could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// A parsed value is out of range or a key is unknown. Carries the key name.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& key, const std::string& what)
      : Error(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qubot

#endif  // QUBOT_ERRORS_HPP_

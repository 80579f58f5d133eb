// Copyright 2026 The advsgm Authors
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

#ifndef ADVSGM_ERRORS_H_
#define ADVSGM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advsgm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 means "not line specific".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Hyperparameters that cannot be honoured for the given graph.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Checkpoint or bundle files that are truncated, corrupt, or of another
// format version.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace advsgm

#endif  // ADVSGM_ERRORS_H_

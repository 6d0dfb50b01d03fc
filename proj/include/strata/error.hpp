// Copyright 2026 The Strata Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace strata {

/// Base class of every error thrown by the library. Messages start with a
/// stable machine-readable tag ("MissingField: bands", "PayloadSizeMismatch:
/// expected 96, got 95", ...) so callers can match on the prefix.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed files, headers, or payloads. The CLI maps this to exit code 3.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Violated numeric preconditions or degenerate inputs. Exit code 4.
class ValueError : public Error {
 public:
  using Error::Error;
};

}  // namespace strata

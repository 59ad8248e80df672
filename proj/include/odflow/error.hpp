// Copyright 2026 The odflow Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace odflow {

// Base of every error thrown by the library. The CLI maps these to exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (coordinates, CSV cells).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value parsed fine but lies outside its domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Input data violates a schema or table invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Inconsistent or unusable configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's precondition (dimension or ordering mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace odflow

// Copyright 2026 The qpgnet Authors
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

namespace qpgnet {

// Every failure raised by the library derives from Error. The CLI maps
// ConfigError to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid bounds, out-of-range parameters, malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Caller combined objects that do not fit together (grid mismatch, wrong lengths).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A spectral feature is too narrow for the sampling step of its grid.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// An input violates a structural requirement (symmetry, orthonormality, unitarity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A decomposition or root search did not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpgnet

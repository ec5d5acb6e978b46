// Copyright 2026 The epsmult Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epsmult {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Saturation (and anything built on it) of the zero ideal.
class UndefinedSaturation : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured point budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// No period up to the search bound reproduces the table exactly.
class NoFitError : public Error {
 public:
  struct Attempt {
    std::size_t period;
    std::vector<std::uint64_t> first_failing_index;  // empty: not enough data
  };

  NoFitError(const std::string& what, std::vector<Attempt> attempts)
      : Error(what), attempts_(std::move(attempts)) {}

  const std::vector<Attempt>& attempts() const { return attempts_; }

 private:
  std::vector<Attempt> attempts_;
};

// A fitted top-degree coefficient depends on the residue class.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace epsmult

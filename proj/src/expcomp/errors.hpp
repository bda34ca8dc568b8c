// Copyright 2026 The expcomp Authors.
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

namespace expcomp {

// Base of every error raised by the toolkit. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A label that is not a member of the set it was looked up in.
class LabelError : public Error {
 public:
  using Error::Error;
};

// Dimensions or spaces that do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Values that violate a precondition (stochasticity, non-finite input, caps).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The LP solver did not reach an optimum where one was required.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Malformed input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace expcomp

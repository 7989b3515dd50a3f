// Copyright 2026 The sodelab Authors
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

namespace sodelab {

/// Matrix or state dimensions do not match the requested qubit layout.
class InvalidShape : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters admit no physical state (e.g. no root of a constraint system).
class InfeasibleParameters : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A closed form was evaluated at a point where its denominator vanishes.
class SingularInput : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Short machine-readable tag for an exception thrown by this library.
std::string error_kind(const std::exception &e);

}  // namespace sodelab

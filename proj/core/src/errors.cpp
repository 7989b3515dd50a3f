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

#include "sodelab/errors.hpp"

#include <filesystem>
#include <ios>

namespace sodelab {

std::string error_kind(const std::exception &e) {
    if (dynamic_cast<const InvalidShape *>(&e)) return "invalid-shape";
    if (dynamic_cast<const InfeasibleParameters *>(&e)) return "infeasible-parameters";
    if (dynamic_cast<const SingularInput *>(&e)) return "singular-input";
    if (dynamic_cast<const std::filesystem::filesystem_error *>(&e)) return "io";
    if (dynamic_cast<const std::ios_base::failure *>(&e)) return "io";
    if (dynamic_cast<const std::invalid_argument *>(&e)) return "invalid-argument";
    if (dynamic_cast<const std::out_of_range *>(&e)) return "invalid-argument";
    if (dynamic_cast<const std::domain_error *>(&e)) return "domain";
    return "internal";
}

}  // namespace sodelab

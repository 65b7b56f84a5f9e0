// Copyright 2026 The pdcsim Authors
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
#include <vector>

namespace pdcsim {

/// An input lies outside the range over which a model is defined.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A caller broke a documented precondition (ordering, mode, ...).
class ContractError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Least-squares fit could not be carried out on the given data.
class FitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Configuration failed validation. Carries every diagnostic found.
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(std::vector<std::string> diagnostics);

    const std::vector<std::string> &diagnostics() const noexcept {
        return diagnostics_;
    }

   private:
    std::vector<std::string> diagnostics_;
};

}  // namespace pdcsim

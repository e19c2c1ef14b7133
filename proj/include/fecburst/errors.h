// Copyright 2026 The fecburst Authors
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

#ifndef FECBURST_ERRORS_H_
#define FECBURST_ERRORS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fecburst {

// Invalid arguments: out-of-range code parameters, probabilities, loss
// vectors.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The requested quantity has no value for these inputs, e.g. a conditional
// expectation over blocks when Q(0) = 1.
class UndefinedQuantityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The computation was refused because its cost exceeds a fixed cap.
// `required` carries the size that would have been needed, when known.
class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& what,
                            std::optional<std::int64_t> required = std::nullopt)
      : std::runtime_error(what), required_(required) {}

  std::optional<std::int64_t> required() const { return required_; }

 private:
  std::optional<std::int64_t> required_;
};

}  // namespace fecburst

#endif  // FECBURST_ERRORS_H_

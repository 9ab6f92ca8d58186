// Copyright 2026 The tadv Authors
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

namespace tadv {

// Shapes that do not fit together (pi vs T_a, d x d blocks, ...).
class StructuralError : public std::invalid_argument {
 public:
  explicit StructuralError(const std::string& message) : std::invalid_argument(message) {}
};

// A request exceeds a search or enumeration guard.
class ResourceError : public std::length_error {
 public:
  explicit ResourceError(const std::string& message) : std::length_error(message) {}
};

// Raw optimizer parameters that cannot be normalized (all-zero blocks).
class DegeneracyError : public std::domain_error {
 public:
  explicit DegeneracyError(const std::string& message) : std::domain_error(message) {}
};

// Embedded reference data failed its checksum or physicality checks.
class DataIntegrityError : public std::runtime_error {
 public:
  explicit DataIntegrityError(const std::string& message) : std::runtime_error(message) {}
};

// A family of operators expected to commute does not.
class NotCommutingError : public std::domain_error {
 public:
  NotCommutingError(const std::string& message, double residual)
      : std::domain_error(message), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace tadv

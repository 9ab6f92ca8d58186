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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tadv {

/// A non-empty string of binary outcomes a_1 a_2 ... a_L.
class Sequence {
 public:
  /// Throws std::invalid_argument when empty or when a label is not 0/1.
  explicit Sequence(std::vector<int> outcomes);

  /// Parses "0001"-style strings.
  static Sequence parse(std::string_view text);

  /// 0...01 of length L (L >= 1).
  static Sequence one_tick(int length);

  int length() const { return static_cast<int>(outcomes_.size()); }
  int operator[](int t) const { return outcomes_[static_cast<size_t>(t)]; }
  const std::vector<std::uint8_t>& outcomes() const { return outcomes_; }

  std::string str() const;

  auto operator<=>(const Sequence&) const = default;

 private:
  std::vector<std::uint8_t> outcomes_;
};

}  // namespace tadv

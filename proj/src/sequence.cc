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

#include "tadv/sequence.h"

#include <stdexcept>

namespace tadv {

Sequence::Sequence(std::vector<int> outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("sequence must be non-empty");
  }
  outcomes_.reserve(outcomes.size());
  for (int a : outcomes) {
    if (a != 0 && a != 1) {
      throw std::invalid_argument("sequence labels must be 0 or 1, got " + std::to_string(a));
    }
    outcomes_.push_back(static_cast<std::uint8_t>(a));
  }
}

Sequence Sequence::parse(std::string_view text) {
  std::vector<int> outcomes;
  outcomes.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("invalid outcome character '" + std::string(1, c) + "' in sequence");
    }
    outcomes.push_back(c - '0');
  }
  return Sequence(std::move(outcomes));
}

Sequence Sequence::one_tick(int length) {
  if (length < 1) {
    throw std::invalid_argument("one-tick sequence needs length >= 1");
  }
  std::vector<int> outcomes(static_cast<size_t>(length), 0);
  outcomes.back() = 1;
  return Sequence(std::move(outcomes));
}

std::string Sequence::str() const {
  std::string s;
  s.reserve(outcomes_.size());
  for (auto a : outcomes_) {
    s.push_back(static_cast<char>('0' + a));
  }
  return s;
}

}  // namespace tadv

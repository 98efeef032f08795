// Copyright 2026 The qnnw Authors
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

#include <stdexcept>
#include <string>

namespace qnnw {

// Malformed input documents (schedule JSON, QASM text, config files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Qubit counts, pair indices or matrix shapes that do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense operations refused above the configured qubit cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace qnnw

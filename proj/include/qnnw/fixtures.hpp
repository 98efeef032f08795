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

// Published trained schedules. Values are copied verbatim (3 significant
// figures) and read as dimensionless, hbar = 1, with total time 1.58.
// data/table2.json and data/table3.json carry the same numbers.

#include "qnnw/hamiltonian.hpp"

namespace qnnw::fixtures {

/// Two-qubit, four-chunk witness schedule.
inline Schedule table2_schedule() {
  return symmetric_schedule(2, {2.49, 2.47, 2.48, 2.49}, {0.0930, 0.116, 0.0954, 0.0833},
                            {0.0382, 0.128, 0.117, 0.0382}, 1.58);
}

/// Seven-qubit fully symmetric schedule.
inline Schedule table3_schedule() {
  return symmetric_schedule(7, {2.49, 2.47, 2.48, 2.51}, {-0.0164, 0.299, 0.0636, -0.0693},
                            {0.0188, 0.0440, 0.0805, 0.00132}, 1.58);
}

}  // namespace qnnw::fixtures

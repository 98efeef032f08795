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

#include "qnnw/circuit.hpp"
#include "qnnw/compiler.hpp"
#include "qnnw/errors.hpp"
#include "qnnw/fixtures.hpp"
#include "qnnw/hamiltonian.hpp"
#include "qnnw/linalg.hpp"
#include "qnnw/parallel.hpp"
#include "qnnw/qasm.hpp"
#include "qnnw/schedule_io.hpp"
#include "qnnw/shots.hpp"
#include "qnnw/state.hpp"
#include "qnnw/trainer.hpp"
#include "qnnw/verify.hpp"
#include "qnnw/witness.hpp"

// Copyright 2026 The taskalloc Authors
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

// Umbrella header for the library. The scenario harness lives under
// taskalloc/harness/ and pulls in nlohmann/json.

#ifndef TASKALLOC_HPP_
#define TASKALLOC_HPP_

#include "taskalloc/consensus_graph.hpp"
#include "taskalloc/core_model.hpp"
#include "taskalloc/dpbrag.hpp"
#include "taskalloc/matrix.hpp"
#include "taskalloc/nash_analysis.hpp"
#include "taskalloc/numeric.hpp"
#include "taskalloc/pbrag.hpp"

#endif  // TASKALLOC_HPP_

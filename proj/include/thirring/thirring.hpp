// Copyright 2026 The thirring Authors
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

#include "thirring/errors.hpp"
#include "thirring/pauli.hpp"
#include "thirring/jordan_wigner.hpp"
#include "thirring/lattice.hpp"
#include "thirring/circuit.hpp"
#include "thirring/noise.hpp"
#include "thirring/sampling.hpp"
#include "thirring/dense.hpp"
#include "thirring/perturbation.hpp"
#include "thirring/reduction.hpp"
#include "thirring/ansatz.hpp"
#include "thirring/optimize.hpp"
#include "thirring/mitigation.hpp"
#include "thirring/vqe.hpp"
#include "thirring/parallel.hpp"
#include "thirring/pipeline.hpp"
#include "thirring/experiment.hpp"

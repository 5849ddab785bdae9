// Copyright 2026 The greedymrf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREEDYMRF_HPP
#define GREEDYMRF_HPP

#include "greedymrf/dataset.hpp"
#include "greedymrf/entropy.hpp"
#include "greedymrf/errors.hpp"
#include "greedymrf/experiment.hpp"
#include "greedymrf/generators.hpp"
#include "greedymrf/graph.hpp"
#include "greedymrf/io.hpp"
#include "greedymrf/ising.hpp"
#include "greedymrf/learner.hpp"
#include "greedymrf/parallel.hpp"
#include "greedymrf/random.hpp"
#include "greedymrf/theory.hpp"

#endif  // GREEDYMRF_HPP

/*
 * Copyright 2026 The miselect Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header.

#pragma once

#include "miselect/classifiers.hpp"
#include "miselect/csv.hpp"
#include "miselect/dataset.hpp"
#include "miselect/discretize.hpp"
#include "miselect/error.hpp"
#include "miselect/evaluation.hpp"
#include "miselect/infotheory.hpp"
#include "miselect/kfold.hpp"
#include "miselect/parallel.hpp"
#include "miselect/report.hpp"
#include "miselect/selectors.hpp"
#include "miselect/stats.hpp"
#include "miselect/synth.hpp"
#include "miselect/tfidf.hpp"
#include "miselect/traces.hpp"
#include "miselect/version.hpp"

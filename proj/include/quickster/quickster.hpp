/*
 Copyright 2026 The Quickster Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

// Umbrella header for the whole library.

#pragma once

#include "quickster/alip.hpp"
#include "quickster/config.hpp"
#include "quickster/experiments.hpp"
#include "quickster/io.hpp"
#include "quickster/leg_length.hpp"
#include "quickster/metrics.hpp"
#include "quickster/rolling_contact.hpp"
#include "quickster/simulator.hpp"
#include "quickster/step_planner.hpp"
#include "quickster/stride_record.hpp"
#include "quickster/types.hpp"
#include "quickster/version.hpp"

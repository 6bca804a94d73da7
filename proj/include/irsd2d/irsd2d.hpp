// SPDX-License-Identifier: Apache-2.0
//
// irsd2d - delay-optimal IRS-assisted D2D cooperative computing
// Copyright (C) 2026 The irsd2d authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Umbrella header.

#ifndef IRSD2D_IRSD2D_HPP
#define IRSD2D_IRSD2D_HPP

#include "baselines.hpp"
#include "beamforming.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "config_io.hpp"
#include "harness.hpp"
#include "optimizer.hpp"
#include "power_bandwidth.hpp"
#include "sdp.hpp"
#include "system_model.hpp"
#include "task_assignment.hpp"

#endif

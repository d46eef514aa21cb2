// Copyright 2026 The glidesim Authors
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

#include <optional>
#include <string>
#include <string_view>

#include "glidesim/common/time.hpp"
#include "glidesim/matchlang/ad.hpp"

namespace glidesim::pool {

enum class SlotStatus { Idle, Claimed, Busy, Retiring };

std::string_view to_string(SlotStatus s);

struct Claim {
    std::string id;
    std::string job_id;
    std::string schedd;
    SimTime since = 0;
    int cpus = 0;
    int gpus = 0;
};

/// A startd slot. `claim` is engaged iff status is Claimed or Busy.
struct SlotState {
    std::string name;
    matchlang::Ad ad{matchlang::AdKind::Slot};
    SlotStatus status = SlotStatus::Idle;
    std::optional<Claim> claim;

    bool consistent() const;
    int cpus() const;
    int gpus() const;
};

/// Mirrors `status` into the ad's `status` attribute ("idle", "busy", ...).
void sync_state_attribute(SlotState& slot);

}  // namespace glidesim::pool

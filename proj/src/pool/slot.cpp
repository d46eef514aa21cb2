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

#include "glidesim/pool/slot.hpp"

#include "glidesim/matchlang/expr.hpp"

namespace glidesim::pool {

std::string_view to_string(SlotStatus s) {
    switch (s) {
        case SlotStatus::Idle: return "IDLE";
        case SlotStatus::Claimed: return "CLAIMED";
        case SlotStatus::Busy: return "BUSY";
        case SlotStatus::Retiring: return "RETIRING";
    }
    return "?";
}

bool SlotState::consistent() const {
    const bool claimed = status == SlotStatus::Claimed || status == SlotStatus::Busy;
    return claimed == claim.has_value();
}

int SlotState::cpus() const { return static_cast<int>(ad.get_integer("cpus").value_or(0)); }

int SlotState::gpus() const { return static_cast<int>(ad.get_integer("gpus").value_or(0)); }

void sync_state_attribute(SlotState& slot) {
    slot.ad.set("status", matchlang::fold_case(to_string(slot.status)));
}

}  // namespace glidesim::pool

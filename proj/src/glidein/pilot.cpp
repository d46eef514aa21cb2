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

#include "glidesim/glidein/pilot.hpp"

#include <algorithm>

namespace glidesim::glidein {

std::string_view to_string(PilotState s) {
    switch (s) {
        case PilotState::Requested: return "REQUESTED";
        case PilotState::CeQueued: return "CE_QUEUED";
        case PilotState::Bootstrapping: return "BOOTSTRAPPING";
        case PilotState::Advertised: return "ADVERTISED";
        case PilotState::Retiring: return "RETIRING";
        case PilotState::Dead: return "DEAD";
    }
    return "?";
}

std::string_view to_string(DeathCause c) {
    switch (c) {
        case DeathCause::None: return "NONE";
        case DeathCause::Walltime: return "WALLTIME";
        case DeathCause::IdleTimeout: return "IDLE_TIMEOUT";
        case DeathCause::Preempted: return "PREEMPTED";
        case DeathCause::CeFailure: return "CE_FAILURE";
        case DeathCause::Withdrawn: return "WITHDRAWN";
    }
    return "?";
}

bool valid_transition(PilotState from, PilotState to) {
    if (from == PilotState::Dead) return false;
    if (to == PilotState::Dead) return true;
    return static_cast<int>(to) == static_cast<int>(from) + 1;
}

void Pilot::transition(PilotState to) {
    if (!valid_transition(state, to)) {
        throw InvalidPilotTransition("pilot " + id + ": " + std::string(to_string(state)) + " -> " +
                                     std::string(to_string(to)));
    }
    state = to;
}

void Pilot::kill(DeathCause c, SimTime now) {
    transition(PilotState::Dead);
    cause = c;
    retired_at = now;
    busy = false;
}

std::optional<pool::SlotState> pilot_bootstrap(Pilot& pilot, const EntryPoint& entry,
                                               const FrontendConfig& frontend, double failure_draw, SimTime now) {
    if (pilot.state != PilotState::Bootstrapping) {
        throw InvalidPilotTransition("pilot " + pilot.id + " is not bootstrapping");
    }
    if (failure_draw < entry.bootstrap_failure) {
        pilot.kill(DeathCause::CeFailure, now);
        return std::nullopt;
    }
    pool::SlotState slot;
    slot.name = "slot_" + pilot.id;
    slot.ad = synthetic_slot_ad(entry, frontend);
    slot.ad.set("name", slot.name);
    slot.ad.set("pilot", pilot.id);
    slot.status = pool::SlotStatus::Idle;
    pool::sync_state_attribute(slot);

    pilot.transition(PilotState::Advertised);
    pilot.slot_name = slot.name;
    pilot.idle_since = now;
    pilot.busy = false;
    return slot;
}

TickResult pilot_tick(Pilot& pilot, const EntryPoint& entry, Duration grace, SimTime now) {
    TickResult r;
    if (pilot.state == PilotState::Advertised) {
        const SimTime started = pilot.started_at.value_or(now);
        const bool walltime = now - started >= entry.shape.max_walltime;
        if (!pilot.busy) {
            if (now - pilot.idle_since >= entry.shape.idle_timeout || walltime) {
                pilot.transition(PilotState::Retiring);
                pilot.kill(walltime ? DeathCause::Walltime : DeathCause::IdleTimeout, now);
                r.died = true;
                r.withdraw_slot = true;
            }
            return r;
        }
        if (!walltime) return r;
        pilot.transition(PilotState::Retiring);
        pilot.retiring_since = now;
        r.started_retiring = true;
        if (grace > 0) return r;
    }
    if (pilot.state == PilotState::Retiring && now - pilot.retiring_since >= grace) {
        r.preempt_job = pilot.busy;
        r.withdraw_slot = true;
        r.died = true;
        pilot.kill(DeathCause::Walltime, now);
    }
    return r;
}

std::optional<SimTime> next_deadline(const Pilot& pilot, const EntryPoint& entry, Duration grace) {
    if (pilot.state == PilotState::Retiring) return pilot.retiring_since + grace;
    if (pilot.state != PilotState::Advertised || !pilot.started_at) return std::nullopt;
    const SimTime wall = *pilot.started_at + entry.shape.max_walltime;
    if (pilot.busy) return wall;
    return std::min(wall, pilot.idle_since + entry.shape.idle_timeout);
}

}  // namespace glidesim::glidein

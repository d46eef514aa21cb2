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
#include <stdexcept>
#include <string>
#include <string_view>

#include "glidesim/common/time.hpp"
#include "glidesim/glidein/entry.hpp"
#include "glidesim/pool/slot.hpp"

namespace glidesim::glidein {

enum class PilotState { Requested, CeQueued, Bootstrapping, Advertised, Retiring, Dead };

/// WITHDRAWN marks a pilot cancelled by the factory before its CE started it.
enum class DeathCause { None, Walltime, IdleTimeout, Preempted, CeFailure, Withdrawn };

std::string_view to_string(PilotState s);
std::string_view to_string(DeathCause c);

/// Forward chain REQUESTED->CE_QUEUED->BOOTSTRAPPING->ADVERTISED->RETIRING->DEAD
/// plus any live state ->DEAD.
bool valid_transition(PilotState from, PilotState to);

class InvalidPilotTransition : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Pilot {
    std::string id;
    std::string entry;
    PilotState state = PilotState::Requested;
    DeathCause cause = DeathCause::None;
    SimTime submitted_at = 0;
    std::optional<SimTime> started_at;
    std::optional<SimTime> retired_at;
    std::string slot_name;
    /// Running a job (slot claimed).
    bool busy = false;
    /// Last moment the slot went idle.
    SimTime idle_since = 0;
    /// When RETIRING began.
    SimTime retiring_since = 0;

    void transition(PilotState to);
    /// Moves to DEAD with `cause`, stamping retired_at.
    void kill(DeathCause cause, SimTime now);
    bool alive() const { return state != PilotState::Dead; }
    /// Not yet started by the CE.
    bool queued() const {
        return state == PilotState::Requested || state == PilotState::CeQueued || state == PilotState::Bootstrapping;
    }
};

/// Pilot startup: the factory config fetch followed by the frontend config fetch.
inline Duration bootstrap_delay(const FactoryConfig& factory, const FrontendConfig& frontend) {
    return factory.config_fetch_delay + frontend.config_fetch_delay;
}

/// Finishes bootstrap of a BOOTSTRAPPING pilot. `failure_draw` in [0, 1) is
/// compared against the entry's failure probability; on failure the pilot dies
/// with CE_FAILURE and no slot is returned. Otherwise the pilot is ADVERTISED
/// and its idle slot is returned.
std::optional<pool::SlotState> pilot_bootstrap(Pilot& pilot, const EntryPoint& entry,
                                               const FrontendConfig& frontend, double failure_draw, SimTime now);

struct TickResult {
    bool died = false;
    /// The running job must be released as preempted.
    bool preempt_job = false;
    /// Withdraw the slot ad from the collector.
    bool withdraw_slot = false;
    bool started_retiring = false;
};

/// Applies the retirement policy to an ADVERTISED or RETIRING pilot:
/// idle for idle_timeout -> DEAD(IDLE_TIMEOUT); walltime reached while idle ->
/// DEAD(WALLTIME); walltime reached while busy -> RETIRING, and after
/// `grace` the job is preempted and the pilot dies (WALLTIME). Other states
/// are left alone.
TickResult pilot_tick(Pilot& pilot, const EntryPoint& entry, Duration grace, SimTime now);

/// Earliest future time pilot_tick could change the pilot, if any.
std::optional<SimTime> next_deadline(const Pilot& pilot, const EntryPoint& entry, Duration grace);

}  // namespace glidesim::glidein

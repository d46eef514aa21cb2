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

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glidesim/pool/accountant.hpp"
#include "glidesim/pool/collector.hpp"
#include "glidesim/pool/job.hpp"
#include "glidesim/pool/negotiator.hpp"
#include "glidesim/pool/slot.hpp"

namespace glidesim::pool {

struct PoolConfig {
    CollectorConfig collector;
    PriorityConfig priority;
};

enum class ClaimOutcome { Claimed, Race };

struct ClaimResult {
    ClaimOutcome outcome;
    std::string claim_id;  // empty on Race
    std::string reason;    // why the race was lost
};

enum class ReleaseReason { Completed, Preempted, PilotRetired };

std::string_view to_string(ReleaseReason r);

struct ReleaseResult {
    std::string job_id;
    std::string slot_name;
    std::string owner;
    Duration elapsed = 0;
    std::int64_t core_seconds = 0;
};

class UnknownClaim : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Central manager plus schedd queues and startd slots of one pool.
class Pool {
public:
    explicit Pool(PoolConfig config = {});

    Collector& collector() { return collector_; }
    const Collector& collector() const { return collector_; }
    const PoolConfig& config() const { return config_; }

    // ---- schedd side ----
    /// Queues a job as IDLE. Throws std::invalid_argument on invalid or duplicate jobs.
    JobState& submit(JobState job, SimTime now);
    JobState& job(const std::string& id);
    const JobState& job(const std::string& id) const;
    const std::map<std::string, JobState>& jobs() const { return jobs_; }
    /// Idle jobs grouped by owner (owner name order), each in submission order.
    std::vector<OwnerQueue> idle_queues() const;
    std::size_t idle_job_count() const;
    /// Marks a negotiated job MATCHED.
    void mark_matched(const std::string& job_id);

    // ---- startd side ----
    /// Adds the slot and advertises its ad to the collector.
    SlotState& add_slot(SlotState slot, SimTime now);
    /// Drops the slot; its ad stays in the collector unless `withdraw_ad`.
    void remove_slot(const std::string& name, bool withdraw_ad);
    SlotState* find_slot(const std::string& name);
    const SlotState* find_slot(const std::string& name) const;
    const std::map<std::string, SlotState>& slots() const { return slots_; }
    /// Slots whose collector ad says idle, in name order. Includes stale ads
    /// of slots that vanished without withdrawing.
    std::vector<const SlotState*> advertised_idle_slots() const;
    /// Heartbeat for every live slot ad.
    void refresh_slot_ads(SimTime now);
    /// Runs collector expiry and forgets stale idle entries. Returns removed ads.
    std::vector<matchlang::Ad> expire(SimTime now);

    // ---- claims ----
    /// Schedd claims a matched slot for a matched job. A slot that is gone or
    /// no longer idle loses the race and the job returns to IDLE.
    ClaimResult claim(const std::string& slot_name, const std::string& job_id, const std::string& schedd,
                      SimTime now);
    /// Tears down a claim. Completed jobs finish; others are requeued IDLE.
    /// PilotRetired also removes the slot. Throws UnknownClaim.
    ReleaseResult release(const std::string& claim_id, ReleaseReason reason, SimTime now);
    bool has_claim(const std::string& claim_id) const { return claims_.contains(claim_id); }

    // ---- accounting ----
    UserRecord& user(const std::string& name);
    const std::map<std::string, UserRecord>& users() const { return users_; }
    /// Applies priority decay for every user up to `now`, using cores in use.
    void decay_priorities(SimTime now);
    /// Claimed slots per owner.
    std::map<std::string, int> running_by_owner() const;
    std::map<std::string, int> running_cores_by_owner() const;

    /// Collector snapshot in the ad text form.
    std::string dump() const { return collector_.dump(); }

private:
    struct ClaimRecord {
        std::string slot_name;
        std::string job_id;
    };

    void set_slot_status(SlotState& slot, SlotStatus status, SimTime now);

    PoolConfig config_;
    Collector collector_;
    std::map<std::string, JobState> jobs_;
    std::map<std::string, std::set<std::pair<std::uint64_t, std::string>>> idle_;
    std::uint64_t next_submit_order_ = 0;
    std::map<std::string, SlotState> slots_;
    std::map<std::string, SlotState> stale_idle_;  // ads of vanished slots still advertised idle
    std::map<std::string, ClaimRecord> claims_;
    std::uint64_t next_claim_ = 1;
    std::map<std::string, UserRecord> users_;
    SimTime last_decay_ = 0;
};

}  // namespace glidesim::pool

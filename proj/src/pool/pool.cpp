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

#include "glidesim/pool/pool.hpp"

#include <cstdio>

#include "glidesim/matchlang/match.hpp"

namespace glidesim::pool {

using matchlang::AdKind;

std::string_view to_string(ReleaseReason r) {
    switch (r) {
        case ReleaseReason::Completed: return "COMPLETED";
        case ReleaseReason::Preempted: return "PREEMPTED";
        case ReleaseReason::PilotRetired: return "PILOT_RETIRED";
    }
    return "?";
}

Pool::Pool(PoolConfig config) : config_(config), collector_(config.collector) {}

JobState& Pool::submit(JobState job, SimTime now) {
    validate_job(job);
    if (jobs_.contains(job.id)) throw std::invalid_argument("duplicate job id " + job.id);
    job.status = JobStatus::Idle;
    job.submit_order = next_submit_order_++;
    job.submitted_at = now;
    user(job.owner);
    idle_[job.owner].emplace(job.submit_order, job.id);
    auto [it, _] = jobs_.emplace(job.id, std::move(job));
    return it->second;
}

JobState& Pool::job(const std::string& id) {
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw std::invalid_argument("unknown job " + id);
    return it->second;
}

const JobState& Pool::job(const std::string& id) const {
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw std::invalid_argument("unknown job " + id);
    return it->second;
}

std::vector<OwnerQueue> Pool::idle_queues() const {
    std::vector<OwnerQueue> out;
    for (const auto& [owner, queue] : idle_) {
        if (queue.empty()) continue;
        OwnerQueue q{owner, {}};
        q.jobs.reserve(queue.size());
        for (const auto& [order, id] : queue) q.jobs.push_back(&jobs_.at(id));
        out.push_back(std::move(q));
    }
    return out;
}

std::size_t Pool::idle_job_count() const {
    std::size_t n = 0;
    for (const auto& [owner, queue] : idle_) n += queue.size();
    return n;
}

void Pool::mark_matched(const std::string& job_id) {
    JobState& j = job(job_id);
    j.transition(JobStatus::Matched);
    idle_[j.owner].erase({j.submit_order, j.id});
}

SlotState& Pool::add_slot(SlotState slot, SimTime now) {
    if (slots_.contains(slot.name)) throw std::invalid_argument("duplicate slot " + slot.name);
    slot.ad.set("name", slot.name);
    sync_state_attribute(slot);
    collector_.advertise(slot.ad, now);
    stale_idle_.erase(slot.name);
    auto [it, _] = slots_.emplace(slot.name, std::move(slot));
    return it->second;
}

void Pool::remove_slot(const std::string& name, bool withdraw_ad) {
    auto it = slots_.find(name);
    if (it == slots_.end()) return;
    if (withdraw_ad) {
        collector_.invalidate(AdKind::Slot, name);
    } else if (const auto* ad = collector_.find(AdKind::Slot, name);
               ad && ad->get_text("status") == std::string("idle")) {
        stale_idle_.insert_or_assign(name, it->second);
    }
    slots_.erase(it);
}

SlotState* Pool::find_slot(const std::string& name) {
    auto it = slots_.find(name);
    return it == slots_.end() ? nullptr : &it->second;
}

const SlotState* Pool::find_slot(const std::string& name) const {
    auto it = slots_.find(name);
    return it == slots_.end() ? nullptr : &it->second;
}

std::vector<const SlotState*> Pool::advertised_idle_slots() const {
    std::vector<const SlotState*> out;
    auto live = slots_.begin();
    auto stale = stale_idle_.begin();
    // Merge the two name-ordered maps.
    while (live != slots_.end() || stale != stale_idle_.end()) {
        const bool take_live = stale == stale_idle_.end() || (live != slots_.end() && live->first < stale->first);
        const SlotState& s = take_live ? (live++)->second : (stale++)->second;
        if (s.status == SlotStatus::Idle) out.push_back(&s);
    }
    return out;
}

void Pool::refresh_slot_ads(SimTime now) {
    for (const auto& [name, slot] : slots_) collector_.refresh(AdKind::Slot, name, now);
}

std::vector<matchlang::Ad> Pool::expire(SimTime now) {
    auto removed = collector_.expire(now);
    for (const auto& ad : removed) {
        if (ad.kind() == AdKind::Slot) {
            if (auto name = ad.get_text("name")) stale_idle_.erase(*name);
        }
    }
    return removed;
}

void Pool::set_slot_status(SlotState& slot, SlotStatus status, SimTime now) {
    slot.status = status;
    sync_state_attribute(slot);
    collector_.advertise(slot.ad, now);
}

ClaimResult Pool::claim(const std::string& slot_name, const std::string& job_id, const std::string& schedd,
                        SimTime now) {
    JobState& j = job(job_id);
    auto lose = [&](std::string why) {
        j.transition(JobStatus::Idle);
        idle_[j.owner].emplace(j.submit_order, j.id);
        return ClaimResult{ClaimOutcome::Race, "", std::move(why)};
    };
    SlotState* slot = find_slot(slot_name);
    if (!slot) return lose("slot gone");
    if (slot->status != SlotStatus::Idle) return lose("slot not idle");
    if (!matchlang::symmetric_match(j.ad, slot->ad)) return lose("no longer matches");

    char buf[32];
    std::snprintf(buf, sizeof buf, "c%08llu", static_cast<unsigned long long>(next_claim_++));
    const std::string claim_id = buf;

    slot->claim = Claim{claim_id, job_id, schedd, now, j.request_cpus(), j.request_gpus()};
    slot->status = SlotStatus::Claimed;
    set_slot_status(*slot, SlotStatus::Busy, now);
    j.transition(JobStatus::Running);
    j.claim_id = claim_id;
    j.slot = slot_name;
    j.started_at = now;
    claims_.emplace(claim_id, ClaimRecord{slot_name, job_id});
    return ClaimResult{ClaimOutcome::Claimed, claim_id, ""};
}

ReleaseResult Pool::release(const std::string& claim_id, ReleaseReason reason, SimTime now) {
    auto it = claims_.find(claim_id);
    if (it == claims_.end()) throw UnknownClaim("unknown claim " + claim_id);
    const ClaimRecord rec = it->second;
    claims_.erase(it);

    JobState& j = job(rec.job_id);
    ReleaseResult out;
    out.job_id = rec.job_id;
    out.slot_name = rec.slot_name;
    out.owner = j.owner;
    out.elapsed = now - j.started_at;
    out.core_seconds = static_cast<std::int64_t>(j.request_cpus()) * out.elapsed;
    user(j.owner).add_usage(out.core_seconds);

    if (reason == ReleaseReason::Completed) {
        j.transition(JobStatus::Completed);
    } else {
        j.transition(JobStatus::Idle);
        idle_[j.owner].emplace(j.submit_order, j.id);
    }
    j.claim_id.clear();
    j.slot.clear();

    if (SlotState* slot = find_slot(rec.slot_name)) {
        slot->claim.reset();
        if (reason == ReleaseReason::PilotRetired) {
            remove_slot(rec.slot_name, true);
        } else {
            set_slot_status(*slot, SlotStatus::Idle, now);
        }
    }
    return out;
}

UserRecord& Pool::user(const std::string& name) {
    auto it = users_.find(name);
    if (it == users_.end()) {
        UserRecord r;
        r.user = name;
        r.real_priority = config_.priority.floor;
        r.half_life = config_.priority.half_life;
        it = users_.emplace(name, std::move(r)).first;
    }
    return it->second;
}

void Pool::decay_priorities(SimTime now) {
    const Duration dt = now - last_decay_;
    if (dt <= 0) return;
    const auto cores = running_cores_by_owner();
    for (auto& [name, rec] : users_) {
        auto c = cores.find(name);
        rec = decay_user_priority(rec, c == cores.end() ? 0.0 : c->second, dt, config_.priority.floor);
    }
    last_decay_ = now;
}

std::map<std::string, int> Pool::running_by_owner() const {
    std::map<std::string, int> out;
    for (const auto& [id, rec] : claims_) ++out[jobs_.at(rec.job_id).owner];
    return out;
}

std::map<std::string, int> Pool::running_cores_by_owner() const {
    std::map<std::string, int> out;
    for (const auto& [id, rec] : claims_) {
        const JobState& j = jobs_.at(rec.job_id);
        out[j.owner] += j.request_cpus();
    }
    return out;
}

}  // namespace glidesim::pool

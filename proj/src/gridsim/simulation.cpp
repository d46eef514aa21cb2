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

#include "glidesim/gridsim/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <queue>
#include <set>
#include <unordered_map>

#include "glidesim/common/rng.hpp"
#include "glidesim/datacache/cache.hpp"
#include "glidesim/glidein/factory.hpp"
#include "glidesim/glidein/frontend.hpp"
#include "glidesim/gridsim/compute_element.hpp"
#include "glidesim/gridsim/execution.hpp"
#include "glidesim/gridsim/workload.hpp"
#include "glidesim/pool/autocluster.hpp"
#include "glidesim/pool/negotiator.hpp"
#include "glidesim/pool/pool.hpp"

namespace glidesim::gridsim {

namespace {

using glidein::DeathCause;
using glidein::Pilot;
using glidein::PilotState;

enum class Ev {
    JobSubmit,
    Negotiate,
    Frontend,
    Expire,
    PilotStart,
    PilotReady,
    PilotTick,
    SitePreempt,
    JobStageDone,
    JobDone,
};

struct Event {
    SimTime time;
    std::uint64_t seq;
    Ev kind;
    std::string subject;  // job or pilot id
    std::string claim;    // for job events
    friend bool operator>(const Event& a, const Event& b) {
        return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
};

std::string str(std::int64_t v) { return std::to_string(v); }

struct StageState {
    const IterativeStages* workload;
    int current;
    int remaining;
};

struct Running {
    Execution exec;
    SimTime started;
    std::string slot;
    std::string pilot;
};

class Simulation {
public:
    Simulation(const Scenario& s, const RunOptions& o)
        : s_(s),
          opt_(o),
          pool_(s.pool),
          factory_(s.entries, s.factory),
          clusters_(observer_ads(s)) {
        for (const auto& site : s.sites) ces_.emplace(site.name, ComputeElement(site.name, site.cores, site.gpus));
        for (const auto& c : s.caches) caches_.emplace_back(c);
        for (const auto& u : s.users) pool_.user(u.name).priority_factor = u.priority_factor;

        trace_.header.scenario = s.name;
        trace_.header.hash = o.scenario_hash;
        trace_.header.seed = o.seed;
        trace_.header.until = o.until;
        for (const auto& site : s.sites) trace_.header.sites.push_back({site.name, site.cores, site.gpus});
    }

    RunResult run() {
        for (const auto& w : s_.workloads) {
            Rng& rng = stream("workload/" + workload_name(w));
            if (const auto* b = std::get_if<IndependentBatch>(&w)) {
                for (auto& spec : generate_batch(*b, s_, rng)) queue_submit(std::move(spec));
            } else {
                const auto& st = std::get<IterativeStages>(w);
                const int first = first_stage(st);
                auto jobs = generate_stage(st, first, st.start, s_, rng);
                stages_[st.name] = StageState{&st, first, static_cast<int>(jobs.size())};
                for (auto& spec : jobs) queue_submit(std::move(spec));
            }
        }
        push(0, Ev::Frontend);
        push(0, Ev::Negotiate);
        push(s_.pool.collector.update_interval, Ev::Expire);

        while (!events_.empty() && events_.top().time <= opt_.until) {
            Event e = events_.top();
            events_.pop();
            now_ = e.time;
            dispatch(e);
        }
        return finish();
    }

private:
    static std::vector<matchlang::Ad> observer_ads(const Scenario& s) {
        std::vector<matchlang::Ad> out;
        for (const auto& e : s.entries) out.push_back(glidein::synthetic_slot_ad(e, s.frontend));
        return out;
    }

    Rng& stream(const std::string& name) {
        auto it = rngs_.find(name);
        if (it == rngs_.end()) it = rngs_.emplace(name, substream(opt_.seed, name)).first;
        return it->second;
    }

    void push(SimTime t, Ev kind, std::string subject = {}, std::string claim = {}) {
        events_.push(Event{t, next_seq_++, kind, std::move(subject), std::move(claim)});
    }

    void record(RecordKind kind, std::vector<Field> fields) { trace_.add(now_, kind, std::move(fields)); }

    void queue_submit(JobSpec spec) {
        const SimTime t = spec.submit_at;
        const std::string id = spec.id;
        specs_.emplace(id, std::move(spec));
        push(t, Ev::JobSubmit, id);
    }

    void dispatch(const Event& e) {
        switch (e.kind) {
            case Ev::JobSubmit: on_submit(e.subject); break;
            case Ev::Negotiate:
                on_negotiate();
                push(now_ + s_.negotiation_interval, Ev::Negotiate);
                break;
            case Ev::Frontend:
                on_frontend();
                push(now_ + s_.frontend_interval, Ev::Frontend);
                break;
            case Ev::Expire:
                on_expire();
                push(now_ + s_.pool.collector.update_interval, Ev::Expire);
                break;
            case Ev::PilotStart: on_pilot_start(e.subject); break;
            case Ev::PilotReady: on_pilot_ready(e.subject); break;
            case Ev::PilotTick: on_pilot_tick(e.subject); break;
            case Ev::SitePreempt: on_site_preempt(e.subject); break;
            case Ev::JobStageDone:
                if (pool_.has_claim(e.claim)) record(RecordKind::JobStageDone, {{"job", e.subject}, {"claim", e.claim}});
                break;
            case Ev::JobDone: on_job_done(e.subject, e.claim); break;
        }
    }

    // ---- jobs ----

    void on_submit(const std::string& id) {
        const JobSpec& spec = specs_.at(id);
        pool::JobState job = make_job_state(spec);
        job.autocluster = clusters_.assign(job.ad);
        pool_.submit(std::move(job), now_);
        record(RecordKind::JobSubmit, {{"job", id},
                                       {"owner", spec.owner},
                                       {"workload", spec.workload},
                                       {"stage", str(spec.stage)},
                                       {"cpus", str(spec.cpus)},
                                       {"gpus", str(spec.gpus)},
                                       {"runtime", str(spec.runtime)}});
    }

    void on_negotiate() {
        ++negotiations_;
        pool_.decay_priorities(now_);
        const auto slots = pool_.advertised_idle_slots();
        const std::size_t idle_jobs = pool_.idle_job_count();
        int matched = 0;
        int races = 0;
        if (!slots.empty() && idle_jobs > 0) {
            const auto queues = pool_.idle_queues();
            const auto matches = pool::negotiate(negotiations_, queues, slots, pool_.users(), pool_.running_by_owner());
            for (const auto& m : matches) {
                ++matched;
                pool_.mark_matched(m.job_id);
                const auto r = pool_.claim(m.slot_name, m.job_id, m.schedd, now_);
                if (r.outcome == pool::ClaimOutcome::Race) {
                    ++races;
                    std::string why = r.reason;
                    for (char& c : why) c = c == ' ' ? '_' : c;
                    record(RecordKind::Notice, {{"what", "claim_race"}, {"job", m.job_id}, {"slot", m.slot_name}, {"reason", why}});
                    continue;
                }
                start_job(m.job_id, m.slot_name, r.claim_id);
            }
        }
        matches_total_ += matched;
        races_total_ += races;
        std::string running;
        for (const auto& [owner, n] : pool_.running_by_owner()) {
            if (!running.empty()) running += ',';
            running += owner + ":" + str(n);
        }
        record(RecordKind::Negotiate, {{"cycle", str(static_cast<std::int64_t>(negotiations_))},
                                       {"idle_jobs", str(static_cast<std::int64_t>(idle_jobs))},
                                       {"idle_slots", str(static_cast<std::int64_t>(slots.size()))},
                                       {"matches", str(matched)},
                                       {"races", str(races)},
                                       {"running", running.empty() ? "-" : running}});
    }

    void start_job(const std::string& job_id, const std::string& slot_name, const std::string& claim) {
        const JobSpec& spec = specs_.at(job_id);
        const pool::SlotState& slot = *pool_.find_slot(slot_name);
        const std::string pilot_id = pilot_of_slot_.at(slot_name);
        Pilot& pilot = factory_.pilot(pilot_id);
        const auto& entry = *factory_.entry(pilot.entry);

        Execution ex = job_execute(spec, slot.gpus(), entry.geo, caches_);
        if (!ex.cache.empty()) used_caches_.insert(ex.cache);
        const SimTime done = now_ + ex.wall();
        record(RecordKind::JobStart, {{"job", job_id},
                                      {"owner", spec.owner},
                                      {"slot", slot_name},
                                      {"site", entry.site},
                                      {"claim", claim},
                                      {"cpus", str(spec.cpus)},
                                      {"gpus", str(ex.gpus)},
                                      {"cache", ex.cache.empty() ? "-" : ex.cache},
                                      {"hits", str(static_cast<std::int64_t>(ex.transfer.block_hits))},
                                      {"misses", str(static_cast<std::int64_t>(ex.transfer.block_misses))},
                                      {"bytes_cache", str(static_cast<std::int64_t>(ex.transfer.bytes_from_cache))},
                                      {"bytes_origin", str(static_cast<std::int64_t>(ex.transfer.bytes_from_origin))},
                                      {"evicted", str(static_cast<std::int64_t>(ex.transfer.evicted_blocks))},
                                      {"stage_s", str(ex.stage)},
                                      {"compute_s", str(ex.compute)}});
        if (!spec.inputs.empty()) push(now_ + ex.stage, Ev::JobStageDone, job_id, claim);
        push(done, Ev::JobDone, job_id, claim);
        running_.insert_or_assign(claim, Running{ex, now_, slot_name, pilot_id});
        ++jobs_started_;

        pilot.busy = true;
        schedule_tick(pilot);
    }

    void record_interval_end(RecordKind kind, const std::string& job_id, const std::string& claim, const Running& run,
                             const std::string& cause) {
        const JobSpec& spec = specs_.at(job_id);
        const auto& entry = *factory_.entry(factory_.pilot(run.pilot).entry);
        std::vector<Field> f{{"job", job_id},
                             {"owner", spec.owner},
                             {"slot", run.slot},
                             {"site", entry.site},
                             {"claim", claim},
                             {"cpus", str(spec.cpus)},
                             {"gpus", str(run.exec.gpus)},
                             {"started", str(run.started)}};
        if (!cause.empty()) f.push_back({"cause", cause});
        if (kind == RecordKind::Preempt) ++preemptions_;
        gpu_seconds_ += static_cast<std::int64_t>(run.exec.gpus) * (now_ - run.started);
        record(kind, std::move(f));
    }

    void on_job_done(const std::string& job_id, const std::string& claim) {
        auto it = running_.find(claim);
        if (it == running_.end() || !pool_.has_claim(claim)) return;  // preempted earlier
        const Running run = it->second;
        running_.erase(it);
        pool_.release(claim, pool::ReleaseReason::Completed, now_);
        record_interval_end(RecordKind::JobDone, job_id, claim, run, "");

        Pilot& pilot = factory_.pilot(run.pilot);
        pilot.busy = false;
        pilot.idle_since = now_;
        if (pilot.state == PilotState::Retiring) {
            pool_.remove_slot(run.slot, true);
            pilot.kill(DeathCause::Walltime, now_);
            pilot_dead(pilot);
        } else {
            schedule_tick(pilot);
        }
        advance_stages(specs_.at(job_id));
    }

    void advance_stages(const JobSpec& spec) {
        auto it = stages_.find(spec.workload);
        if (it == stages_.end() || spec.stage != it->second.current) return;
        StageState& st = it->second;
        if (--st.remaining > 0 || st.current >= last_stage(*st.workload)) return;
        ++st.current;
        auto jobs = generate_stage(*st.workload, st.current, now_, s_, stream("workload/" + st.workload->name));
        st.remaining = static_cast<int>(jobs.size());
        for (auto& j : jobs) {
            const std::string id = j.id;
            specs_.emplace(id, std::move(j));
            on_submit(id);
        }
    }

    /// Ends a running job early; the job goes back to the queue.
    void preempt_running(const std::string& claim, pool::ReleaseReason reason, const std::string& cause) {
        auto it = running_.find(claim);
        if (it == running_.end()) return;
        const Running run = it->second;
        running_.erase(it);
        const auto rel = pool_.release(claim, reason, now_);
        record_interval_end(RecordKind::Preempt, rel.job_id, claim, run, cause);
    }

    // ---- frontend and factory ----

    void on_frontend() {
        ++frontend_cycles_;
        std::vector<const pool::JobState*> idle;
        for (const auto& q : pool_.idle_queues()) idle.insert(idle.end(), q.jobs.begin(), q.jobs.end());

        std::vector<glidein::PilotRequest> requests;
        std::string summary;
        for (const auto& entry : factory_.entries()) {
            const int matchable = idle.empty() ? 0 : glidein::count_matchable(entry, s_.frontend, idle);
            if (matchable == 0) {
                for (const auto& id : factory_.withdraw_unstarted(entry.name, now_)) pilot_dead(factory_.pilot(id));
            }
            const int n = glidein::pressure(entry, matchable, factory_.counts(entry.name), s_.frontend);
            requests.push_back({entry.name, n, frontend_cycles_});
            if (!summary.empty()) summary += ',';
            summary += entry.name + ":" + str(n);
        }
        record(RecordKind::FrontendCycle, {{"cycle", str(static_cast<std::int64_t>(frontend_cycles_))},
                                           {"idle_jobs", str(static_cast<std::int64_t>(idle.size()))},
                                           {"requests", summary.empty() ? "-" : summary}});

        const auto result = factory_.submit(requests, now_);
        for (const auto& d : result.diagnostics) {
            std::string msg = d;
            for (char& c : msg) c = c == ' ' ? '_' : c;
            record(RecordKind::Notice, {{"what", "factory"}, {"detail", msg}});
        }
        for (const auto& id : result.pilots) submit_pilot(factory_.pilot(id));
    }

    void submit_pilot(Pilot& pilot) {
        const auto& entry = *factory_.entry(pilot.entry);
        const SiteConfig& site = *s_.site(entry.site);
        record(RecordKind::PilotSubmit, {{"pilot", pilot.id}, {"entry", entry.name}, {"site", site.name}});
        pilot.transition(PilotState::CeQueued);
        const Duration delay = site.ce_delay ? site.ce_delay->sample_duration(stream("ce/" + site.name))
                                             : default_ce_delay(entry.ce_type);
        auto start = ces_.at(site.name).submit(pilot.id, entry.shape.cpus, entry.shape.gpus, now_ + delay);
        if (start) push(start->at, Ev::PilotStart, start->pilot);
    }

    void on_pilot_start(const std::string& id) {
        Pilot& pilot = factory_.pilot(id);
        if (pilot.state != PilotState::CeQueued) return;  // withdrawn meanwhile
        const auto& entry = *factory_.entry(pilot.entry);
        const SiteConfig& site = *s_.site(entry.site);
        pilot.transition(PilotState::Bootstrapping);
        pilot.started_at = now_;
        record(RecordKind::PilotStart, {{"pilot", id},
                                        {"entry", entry.name},
                                        {"site", site.name},
                                        {"cpus", str(entry.shape.cpus)},
                                        {"gpus", str(entry.shape.gpus)}});
        if (site.opportunistic && site.preemption_rate > 0) {
            const double dt = exponential(stream("preempt/" + site.name), site.preemption_rate / static_cast<double>(kHour));
            push(now_ + std::max<Duration>(1, static_cast<Duration>(std::ceil(dt))), Ev::SitePreempt, id);
        }
        push(now_ + glidein::bootstrap_delay(s_.factory, s_.frontend), Ev::PilotReady, id);
    }

    void on_pilot_ready(const std::string& id) {
        Pilot& pilot = factory_.pilot(id);
        if (pilot.state != PilotState::Bootstrapping) return;
        const auto& entry = *factory_.entry(pilot.entry);
        const double draw = uniform01(stream("bootstrap/" + entry.name));
        auto slot = glidein::pilot_bootstrap(pilot, entry, s_.frontend, draw, now_);
        if (!slot) {
            pilot_dead(pilot);
            return;
        }
        record(RecordKind::Advertise, {{"pilot", id},
                                       {"slot", slot->name},
                                       {"site", entry.site},
                                       {"cpus", str(entry.shape.cpus)},
                                       {"gpus", str(entry.shape.gpus)}});
        pilot_of_slot_[slot->name] = id;
        pool_.add_slot(std::move(*slot), now_);
        schedule_tick(pilot);
    }

    void schedule_tick(const Pilot& pilot) {
        const auto& entry = *factory_.entry(pilot.entry);
        if (auto t = glidein::next_deadline(pilot, entry, s_.frontend.grace_period)) {
            push(std::max(now_, *t), Ev::PilotTick, pilot.id);
        }
    }

    void on_pilot_tick(const std::string& id) {
        Pilot& pilot = factory_.pilot(id);
        const auto& entry = *factory_.entry(pilot.entry);
        const auto deadline = glidein::next_deadline(pilot, entry, s_.frontend.grace_period);
        if (!deadline || now_ < *deadline) return;  // superseded

        const pool::SlotState* slot = pool_.find_slot(pilot.slot_name);
        const std::string claim = slot && slot->claim ? slot->claim->id : std::string();
        const auto r = glidein::pilot_tick(pilot, entry, s_.frontend.grace_period, now_);
        if (r.started_retiring) record(RecordKind::Notice, {{"what", "pilot_retiring"}, {"pilot", id}});
        if (r.preempt_job && !claim.empty()) {
            preempt_running(claim, pool::ReleaseReason::PilotRetired, "walltime");
        } else if (r.withdraw_slot) {
            pool_.remove_slot(pilot.slot_name, true);
        }
        if (r.died) pilot_dead(pilot);
        else schedule_tick(pilot);
    }

    void on_site_preempt(const std::string& id) {
        Pilot& pilot = factory_.pilot(id);
        if (!pilot.alive()) return;
        if (pool_.find_slot(pilot.slot_name)) {
            const pool::SlotState* slot = pool_.find_slot(pilot.slot_name);
            if (slot->claim) preempt_running(slot->claim->id, pool::ReleaseReason::Preempted, "site");
            // The ad stays in the collector until it expires.
            pool_.remove_slot(pilot.slot_name, false);
        }
        pilot.kill(DeathCause::Preempted, now_);
        pilot_dead(pilot);
    }

    /// Bookkeeping for a pilot that just died: trace record and CE capacity.
    void pilot_dead(const Pilot& pilot) {
        const auto& entry = *factory_.entry(pilot.entry);
        record(RecordKind::PilotDead, {{"pilot", pilot.id},
                                       {"entry", entry.name},
                                       {"site", entry.site},
                                       {"cause", std::string(glidein::to_string(pilot.cause))},
                                       {"cpus", str(entry.shape.cpus)},
                                       {"gpus", str(entry.shape.gpus)},
                                       {"started", str(pilot.started_at.value_or(-1))}});
        for (const auto& start : ces_.at(entry.site).release(pilot.id, now_)) push(start.at, Ev::PilotStart, start.pilot);
    }

    void on_expire() {
        pool_.refresh_slot_ads(now_);
        const auto removed = pool_.expire(now_);
        record(RecordKind::Expire, {{"removed", str(static_cast<std::int64_t>(removed.size()))}});
    }

    // ---- wrap-up ----

    RunResult finish() {
        RunResult out;
        std::int64_t completed = 0;
        for (const auto& [id, job] : pool_.jobs()) completed += job.status == pool::JobStatus::Completed ? 1 : 0;
        std::int64_t submitted_pilots = 0, started = 0, advertised = 0, dead = 0;
        std::map<std::string, std::int64_t> deaths;
        for (const auto& [id, p] : factory_.pilots()) {
            ++submitted_pilots;
            started += p.started_at ? 1 : 0;
            advertised += p.slot_name.empty() ? 0 : 1;
            if (!p.alive()) {
                ++dead;
                std::string key = "dead_" + std::string(glidein::to_string(p.cause));
                for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                ++deaths[key];
            }
        }
        std::int64_t core_seconds = 0;
        for (const auto& [name, u] : pool_.users()) {
            out.user_core_seconds[name] = u.accumulated_core_seconds;
            out.user_priority[name] = u.real_priority;
            core_seconds += u.accumulated_core_seconds;
        }
        Summary& s = trace_.summary;
        s.counters = {
            {"jobs_submitted", static_cast<std::int64_t>(pool_.jobs().size())},
            {"jobs_started", jobs_started_},
            {"jobs_completed", completed},
            {"job_preemptions", preemptions_},
            {"pilots_submitted", submitted_pilots},
            {"pilots_started", started},
            {"pilots_advertised", advertised},
            {"pilots_dead", dead},
            {"negotiation_cycles", static_cast<std::int64_t>(negotiations_)},
            {"frontend_cycles", static_cast<std::int64_t>(frontend_cycles_)},
            {"matches", matches_total_},
            {"claim_races", races_total_},
            {"busy_core_seconds", core_seconds},
            {"busy_gpu_seconds", gpu_seconds_},
        };
        for (const auto& [k, v] : deaths) s.counters.emplace_back(k, v);
        for (const auto& c : caches_) {
            if (!used_caches_.contains(c.name())) continue;
            const auto& st = c.stats();
            s.caches.push_back({c.name(), static_cast<std::int64_t>(st.hits), static_cast<std::int64_t>(st.misses),
                                static_cast<std::int64_t>(st.bytes_from_cache),
                                static_cast<std::int64_t>(st.bytes_from_origin), static_cast<std::int64_t>(st.evictions)});
        }
        std::sort(s.caches.begin(), s.caches.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
        out.trace = std::move(trace_);
        return out;
    }

    const Scenario& s_;
    RunOptions opt_;
    pool::Pool pool_;
    glidein::Factory factory_;
    pool::Autoclusterer clusters_;
    std::map<std::string, ComputeElement> ces_;
    std::vector<datacache::CacheNode> caches_;
    std::set<std::string> used_caches_;
    std::map<std::string, Rng> rngs_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    std::uint64_t next_seq_ = 0;
    SimTime now_ = 0;
    Trace trace_;

    std::unordered_map<std::string, JobSpec> specs_;
    std::map<std::string, StageState> stages_;
    std::unordered_map<std::string, Running> running_;  // by claim id
    std::unordered_map<std::string, std::string> pilot_of_slot_;
    std::uint64_t negotiations_ = 0;
    std::uint64_t frontend_cycles_ = 0;
    std::int64_t matches_total_ = 0;
    std::int64_t races_total_ = 0;
    std::int64_t jobs_started_ = 0;
    std::int64_t preemptions_ = 0;
    std::int64_t gpu_seconds_ = 0;
};

}  // namespace

RunResult simulate(const Scenario& scenario, const RunOptions& options) {
    validate(scenario);
    if (options.until <= 0) throw ScenarioError("until must be positive");
    return Simulation(scenario, options).run();
}

}  // namespace glidesim::gridsim

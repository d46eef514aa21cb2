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

#include "glidesim/gridsim/scenario.hpp"

#include <cctype>
#include <set>
#include <type_traits>

namespace glidesim::gridsim {

const std::string& workload_name(const Workload& w) {
    return std::visit([](const auto& x) -> const std::string& { return x.name; }, w);
}

const std::string& workload_owner(const Workload& w) {
    return std::visit([](const auto& x) -> const std::string& { return x.owner; }, w);
}

const SiteConfig* Scenario::site(const std::string& n) const {
    for (const auto& s : sites) {
        if (s.name == n) return &s;
    }
    return nullptr;
}

const FileSpec* Scenario::file(const std::string& id) const {
    for (const auto& f : files) {
        if (f.id == id) return &f;
    }
    return nullptr;
}

Duration default_ce_delay(glidein::CeType t) {
    switch (t) {
        case glidein::CeType::HtcondorCe: return 2 * kMinute;
        case glidein::CeType::ArcCe: return 5 * kMinute;
        case glidein::CeType::CreamCe: return 5 * kMinute;
        case glidein::CeType::Cloud: return 30;
    }
    return 0;
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw ScenarioError(what); }

bool plain_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    }
    return true;
}

void check_name(const std::string& kind, const std::string& name, std::set<std::string>& seen) {
    if (!plain_name(name)) fail(kind + " name '" + name + "' must be non-empty [A-Za-z0-9_.-]");
    if (!seen.insert(name).second) fail("duplicate " + kind + " " + name);
}

void check_template(const Scenario& s, const std::string& where, const JobTemplate& t) {
    if (t.cpus < 1) fail(where + ": cpus must be >= 1");
    if (t.gpus < 0) fail(where + ": gpus must be >= 0");
    if (t.memory_mb < 0) fail(where + ": memory must be >= 0");
    for (const auto& f : t.inputs) {
        if (!s.file(f)) fail(where + ": unknown input file " + f);
    }
    if (t.pick_inputs < 0 || t.pick_inputs > static_cast<int>(t.inputs.size())) {
        fail(where + ": pick_inputs must be in [0, number of inputs]");
    }
    if (t.gpu_speedup && (t.gpu_speedup->first <= 0 || t.gpu_speedup->second <= 0)) {
        fail(where + ": gpu_speedup runtimes must be positive");
    }
    for (const auto& [name, _] : t.attributes) {
        if (!matchlang::valid_attribute_name(name)) fail(where + ": bad attribute name " + name);
    }
}

}  // namespace

void validate(const Scenario& s) {
    if (s.until <= 0) fail("until must be positive");
    if (s.negotiation_interval <= 0) fail("negotiation interval must be positive");
    if (s.frontend_interval <= 0) fail("frontend interval must be positive");
    if (s.pool.collector.update_interval <= 0) fail("collector update interval must be positive");
    if (s.pool.collector.missed_updates_limit < 1) fail("missed updates limit must be >= 1");
    if (s.pool.priority.half_life <= 0) fail("priority half-life must be positive");
    if (!(s.frontend.fraction >= 0)) fail("frontend fraction must be >= 0");
    if (s.frontend.min_idle < 0) fail("frontend min_idle must be >= 0");
    if (s.frontend.config_fetch_delay < 0 || s.factory.config_fetch_delay < 0 || s.frontend.grace_period < 0) {
        fail("delays must be >= 0");
    }
    for (const auto& [name, _] : s.frontend.attributes) {
        if (!matchlang::valid_attribute_name(name)) fail("frontend: bad attribute name " + name);
    }

    std::set<std::string> names;
    for (const auto& site : s.sites) {
        check_name("site", site.name, names);
        if (site.cores < 0 || site.gpus < 0) fail("site " + site.name + ": capacity must be >= 0");
        if (site.preemption_rate < 0) fail("site " + site.name + ": preemption rate must be >= 0");
        if (site.preemption_rate > 0 && !site.opportunistic) {
            fail("site " + site.name + ": preemption needs an opportunistic site");
        }
    }
    names.clear();
    for (const auto& e : s.entries) {
        check_name("entry", e.name, names);
        try {
            glidein::validate_entry(e);
        } catch (const std::invalid_argument& ex) {
            fail(ex.what());
        }
        const SiteConfig* site = s.site(e.site);
        if (!site) fail("entry " + e.name + ": unknown site " + e.site);
        if (e.shape.cpus > site->cores || e.shape.gpus > site->gpus) {
            fail("entry " + e.name + ": pilot shape exceeds site " + site->name + " capacity");
        }
    }
    names.clear();
    for (const auto& u : s.users) {
        check_name("user", u.name, names);
        if (!(u.priority_factor >= 1.0)) fail("user " + u.name + ": priority factor must be >= 1");
    }
    names.clear();
    for (const auto& f : s.files) check_name("file", f.id, names);
    names.clear();
    for (const auto& c : s.caches) {
        check_name("cache", c.name, names);
        if (c.block_size == 0) fail("cache " + c.name + ": block size must be positive");
        if (!(c.bandwidth_bps > 0) || !(c.origin_bandwidth_bps > 0)) fail("cache " + c.name + ": bandwidth must be positive");
    }
    names.clear();
    for (const auto& w : s.workloads) {
        const std::string& wn = workload_name(w);
        check_name("workload", wn, names);
        const std::string& owner = workload_owner(w);
        bool known = false;
        for (const auto& u : s.users) known = known || u.name == owner;
        if (!known) fail("workload " + wn + ": unknown user " + owner);
        if (const auto* b = std::get_if<IndependentBatch>(&w)) {
            if (b->count < 1) fail("workload " + wn + ": count must be >= 1");
            check_template(s, "workload " + wn, b->job);
            if (const auto* u = std::get_if<UniformArrival>(&b->arrival); u && u->end <= u->start) {
                fail("workload " + wn + ": uniform arrival needs end > start");
            }
            if (const auto* p = std::get_if<PoissonArrival>(&b->arrival); p && !(p->rate_per_hour > 0)) {
                fail("workload " + wn + ": poisson rate must be positive");
            }
        } else {
            const auto& st = std::get<IterativeStages>(w);
            if (st.stages < 1 || st.jobs_per_stage < 1) fail("workload " + wn + ": stages and jobs_per_stage must be >= 1");
            check_template(s, "workload " + wn, st.job);
            if (st.stage0) {
                if (st.stage0->first < 1) fail("workload " + wn + ": stage0 jobs must be >= 1");
                check_template(s, "workload " + wn + " stage0", st.stage0->second);
            }
        }
        const bool reads = std::visit([](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, IterativeStages>) {
                return !x.job.inputs.empty() || (x.stage0 && !x.stage0->second.inputs.empty());
            } else {
                return !x.job.inputs.empty();
            }
        }, w);
        if (reads && s.caches.empty()) fail("workload " + wn + ": reads input files but no cache is configured");
    }
}

}  // namespace glidesim::gridsim

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

#include "glidesim/gridsim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "glidesim/gridsim/distribution.hpp"
#include "glidesim/matchlang/parser.hpp"

namespace glidesim::gridsim {

namespace {

std::string job_id(const std::string& workload, int stage, bool staged, int index) {
    char buf[32];
    if (staged) std::snprintf(buf, sizeof buf, ".s%d.%04d", stage, index);
    else std::snprintf(buf, sizeof buf, ".%06d", index);
    return workload + buf;
}

std::vector<datacache::InputFile> pick_inputs(const JobTemplate& t, const Scenario& s, Rng& rng) {
    std::vector<std::size_t> idx(t.inputs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (t.pick_inputs > 0) {
        // Partial Fisher-Yates on our own uniform draws so the choice is
        // identical on every standard library.
        const auto k = static_cast<std::size_t>(t.pick_inputs);
        for (std::size_t i = 0; i < k; ++i) {
            const auto span = idx.size() - i;
            const auto j = i + std::min(span - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(span)));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
    }
    std::vector<datacache::InputFile> out;
    for (auto i : idx) {
        const FileSpec* f = s.file(t.inputs[i]);
        out.push_back({f->id, f->size});
    }
    return out;
}

JobSpec from_template(const JobTemplate& t, const Scenario& s, Rng& rng) {
    JobSpec j;
    j.runtime = t.runtime.sample_duration(rng);
    j.gpu_speedup = t.gpu_speedup;
    j.cpus = t.cpus;
    j.memory_mb = t.memory_mb;
    j.gpus = t.gpus;
    j.container = t.container;
    j.inputs = pick_inputs(t, s, rng);
    j.requirements = t.requirements;
    j.attributes = t.attributes;
    return j;
}

}  // namespace

pool::JobState make_job_state(const JobSpec& spec) {
    pool::JobState job;
    job.id = spec.id;
    job.owner = spec.owner;
    job.schedd = "schedd_" + spec.owner;
    auto& ad = job.ad;
    ad.set("name", spec.id);
    ad.set("owner", spec.owner);
    ad.set("workload", spec.workload);
    ad.set("stage", spec.stage);
    ad.set("requestcpus", spec.cpus);
    ad.set("requestmemory", spec.memory_mb);
    ad.set("requestgpus", spec.gpus);
    ad.set("gpu_accelerated", spec.gpu_speedup.has_value());
    if (!spec.container.empty()) ad.set("container", spec.container);
    for (const auto& [name, value] : spec.attributes) ad.set(name, value);

    std::string fit = "TARGET.cpus >= requestcpus && TARGET.gpus >= requestgpus && TARGET.memory >= requestmemory";
    if (!spec.container.empty()) fit += " && TARGET.has_container == true";
    matchlang::Expr req = matchlang::parse(fit);
    if (spec.requirements) req = req && *spec.requirements;
    ad.set("requirements", req);
    return job;
}

std::vector<JobSpec> generate_batch(const IndependentBatch& b, const Scenario& s, Rng& rng) {
    std::vector<JobSpec> out;
    out.reserve(static_cast<std::size_t>(b.count));
    double poisson_clock = 0.0;
    for (int i = 0; i < b.count; ++i) {
        JobSpec j = from_template(b.job, s, rng);
        j.id = job_id(b.name, 0, false, i);
        j.owner = b.owner;
        j.workload = b.name;
        if (const auto* burst = std::get_if<BurstArrival>(&b.arrival)) {
            j.submit_at = burst->start;
        } else if (const auto* u = std::get_if<UniformArrival>(&b.arrival)) {
            j.submit_at = u->start + (u->end - u->start) * i / b.count;
        } else {
            const auto& p = std::get<PoissonArrival>(b.arrival);
            poisson_clock += exponential(rng, p.rate_per_hour / static_cast<double>(kHour));
            j.submit_at = p.start + static_cast<SimTime>(std::llround(poisson_clock));
        }
        out.push_back(std::move(j));
    }
    return out;
}

int first_stage(const IterativeStages& w) { return w.stage0 ? 0 : 1; }

std::vector<JobSpec> generate_stage(const IterativeStages& w, int stage, SimTime now, const Scenario& s, Rng& rng) {
    const bool zero = stage == 0 && w.stage0;
    const JobTemplate& t = zero ? w.stage0->second : w.job;
    const int n = zero ? w.stage0->first : w.jobs_per_stage;
    std::vector<JobSpec> out;
    for (int i = 0; i < n; ++i) {
        JobSpec j = from_template(t, s, rng);
        j.id = job_id(w.name, stage, true, i);
        j.owner = w.owner;
        j.workload = w.name;
        j.stage = stage;
        j.submit_at = now;
        out.push_back(std::move(j));
    }
    return out;
}

std::pair<Duration, int> compute_time(const JobSpec& spec, int slot_gpus) {
    if (spec.gpu_speedup && slot_gpus >= std::max(1, spec.gpus)) {
        const auto [cpu, gpu] = *spec.gpu_speedup;
        // ceil(runtime * gpu / cpu) in integers.
        const Duration t = (spec.runtime * gpu + cpu - 1) / cpu;
        return {t, std::max(1, spec.gpus)};
    }
    return {spec.runtime, spec.gpus};
}

}  // namespace glidesim::gridsim

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
#include <utility>
#include <vector>

#include "glidesim/common/rng.hpp"
#include "glidesim/datacache/cache.hpp"
#include "glidesim/gridsim/scenario.hpp"
#include "glidesim/pool/job.hpp"

namespace glidesim::gridsim {

/// One concrete job drawn from a workload.
struct JobSpec {
    std::string id;
    std::string owner;
    std::string workload;
    int stage = 0;
    SimTime submit_at = 0;
    /// Compute time on a CPU slot.
    Duration runtime = 0;
    std::optional<std::pair<Duration, Duration>> gpu_speedup;
    int cpus = 1;
    int memory_mb = 0;
    int gpus = 0;
    std::string container;
    std::vector<datacache::InputFile> inputs;
    std::optional<matchlang::Expr> requirements;
    std::vector<std::pair<std::string, matchlang::Expr>> attributes;
};

/// Job ad and IDLE queue record for `spec`. The requirements are the resource
/// fit (cpus, gpus, memory, container support) ANDed with the job's own.
pool::JobState make_job_state(const JobSpec& spec);

/// All jobs of a batch, in submission order.
std::vector<JobSpec> generate_batch(const IndependentBatch& batch, const Scenario& scenario, Rng& rng);

/// Index of the first stage: 0 with a stage-0 CPU stage, else 1.
int first_stage(const IterativeStages& w);
/// Index of the last stage.
inline int last_stage(const IterativeStages& w) { return w.stages; }

/// Jobs of stage `stage`, all submitted at `now`.
std::vector<JobSpec> generate_stage(const IterativeStages& w, int stage, SimTime now, const Scenario& scenario,
                                    Rng& rng);

/// Compute time of `spec` on a slot with `slot_gpus` GPUs, and the GPUs it
/// occupies. A job with a GPU speedup pair runs `runtime * gpu / cpu` (rounded
/// up) when the slot has at least max(1, requested) GPUs.
std::pair<Duration, int> compute_time(const JobSpec& spec, int slot_gpus);

}  // namespace glidesim::gridsim

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

#include "glidesim/gridsim/execution.hpp"

#include <cmath>

namespace glidesim::gridsim {

Execution job_execute(const JobSpec& job, int slot_gpus, GeoPoint slot_geo, std::vector<datacache::CacheNode>& caches) {
    Execution e;
    if (!job.inputs.empty()) {
        auto& cache = caches[datacache::nearest_cache_index(slot_geo, caches)];
        e.cache = cache.name();
        e.transfer = datacache::stage_files(cache, job.inputs);
        e.stage = static_cast<Duration>(std::ceil(e.transfer.duration));
    }
    const auto [compute, gpus] = compute_time(job, slot_gpus);
    e.compute = compute;
    e.gpus = gpus;
    return e;
}

}  // namespace glidesim::gridsim

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

#include <string>
#include <vector>

#include "glidesim/common/geo.hpp"
#include "glidesim/datacache/cache.hpp"
#include "glidesim/gridsim/workload.hpp"

namespace glidesim::gridsim {

struct Execution {
    /// Cache the job read through; empty when it has no inputs.
    std::string cache;
    datacache::TransferResult transfer;
    Duration stage = 0;
    Duration compute = 0;
    int gpus = 0;
    Duration wall() const { return stage + compute; }
};

/// Plans a job on a slot: stage-in through the cache nearest `slot_geo`
/// (updating that cache), then compute. Stage time is the transfer duration
/// rounded up to whole seconds.
Execution job_execute(const JobSpec& job, int slot_gpus, GeoPoint slot_geo, std::vector<datacache::CacheNode>& caches);

}  // namespace glidesim::gridsim

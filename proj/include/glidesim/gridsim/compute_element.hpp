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

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glidesim/common/time.hpp"

namespace glidesim::gridsim {

/// Site gateway with a strict FIFO in front of the site's cores and GPUs.
/// A pilot holds its reservation from the moment it is scheduled to start
/// until release().
class ComputeElement {
public:
    struct Start {
        std::string pilot;
        SimTime at;
        friend bool operator==(const Start&, const Start&) = default;
    };

    ComputeElement(std::string site, int cores, int gpus);

    const std::string& site() const { return site_; }

    /// A pilot whose CE queue delay ends at `ready_at`. Starts at `ready_at`
    /// when nothing is waiting ahead of it and it fits; otherwise it waits.
    std::optional<Start> submit(const std::string& pilot, int cpus, int gpus, SimTime ready_at);

    /// Frees the pilot's reservation (or drops it from the queue) and returns
    /// the queued pilots that now start, at max(now, their ready time).
    std::vector<Start> release(const std::string& pilot, SimTime now);

    int free_cores() const { return free_cores_; }
    int free_gpus() const { return free_gpus_; }
    std::size_t waiting() const { return fifo_.size(); }
    std::size_t holding() const { return reserved_.size(); }

private:
    struct Waiting {
        std::string pilot;
        int cpus;
        int gpus;
        SimTime ready_at;
    };

    bool fits(int cpus, int gpus) const { return cpus <= free_cores_ && gpus <= free_gpus_; }

    std::string site_;
    int free_cores_;
    int free_gpus_;
    std::deque<Waiting> fifo_;
    std::map<std::string, std::pair<int, int>> reserved_;
};

}  // namespace glidesim::gridsim

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

#include "glidesim/gridsim/compute_element.hpp"

#include <algorithm>

namespace glidesim::gridsim {

ComputeElement::ComputeElement(std::string site, int cores, int gpus)
    : site_(std::move(site)), free_cores_(cores), free_gpus_(gpus) {}

std::optional<ComputeElement::Start> ComputeElement::submit(const std::string& pilot, int cpus, int gpus,
                                                            SimTime ready_at) {
    if (fifo_.empty() && fits(cpus, gpus)) {
        free_cores_ -= cpus;
        free_gpus_ -= gpus;
        reserved_.emplace(pilot, std::make_pair(cpus, gpus));
        return Start{pilot, ready_at};
    }
    fifo_.push_back({pilot, cpus, gpus, ready_at});
    return std::nullopt;
}

std::vector<ComputeElement::Start> ComputeElement::release(const std::string& pilot, SimTime now) {
    if (auto it = reserved_.find(pilot); it != reserved_.end()) {
        free_cores_ += it->second.first;
        free_gpus_ += it->second.second;
        reserved_.erase(it);
    } else {
        std::erase_if(fifo_, [&](const Waiting& w) { return w.pilot == pilot; });
    }
    std::vector<Start> started;
    while (!fifo_.empty() && fits(fifo_.front().cpus, fifo_.front().gpus)) {
        Waiting w = std::move(fifo_.front());
        fifo_.pop_front();
        free_cores_ -= w.cpus;
        free_gpus_ -= w.gpus;
        reserved_.emplace(w.pilot, std::make_pair(w.cpus, w.gpus));
        started.push_back({w.pilot, std::max(now, w.ready_at)});
    }
    return started;
}

}  // namespace glidesim::gridsim

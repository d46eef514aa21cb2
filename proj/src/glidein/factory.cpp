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

#include "glidesim/glidein/factory.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace glidesim::glidein {

Factory::Factory(std::vector<EntryPoint> entries, FactoryConfig config)
    : config_(config), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        validate_entry(entries_[i]);
        if (!index_.emplace(entries_[i].name, i).second) {
            throw std::invalid_argument("duplicate entry " + entries_[i].name);
        }
        by_entry_[entries_[i].name];
    }
}

const EntryPoint* Factory::entry(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second];
}

SubmitResult Factory::submit(std::span<const PilotRequest> requests, SimTime now) {
    SubmitResult out;
    for (const PilotRequest& req : requests) {
        if (req.count <= 0) continue;
        const EntryPoint* e = entry(req.entry);
        if (!e) {
            out.diagnostics.push_back("unknown entry " + req.entry);
            continue;
        }
        if (!e->trusted) {
            out.diagnostics.push_back("untrusted entry " + req.entry);
            continue;
        }
        const int headroom = std::max(0, e->max_pilots - counts(e->name).alive);
        int n = req.count;
        if (n > headroom) {
            out.diagnostics.push_back("entry " + e->name + ": request " + std::to_string(n) + " truncated to " +
                                      std::to_string(headroom));
            n = headroom;
        }
        auto& live = by_entry_[e->name];
        std::erase_if(live, [this](const std::string& id) { return !pilots_.at(id).alive(); });
        for (int k = 0; k < n; ++k) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "p%07llu", static_cast<unsigned long long>(next_id_++));
            Pilot p;
            p.id = buf;
            p.entry = e->name;
            p.submitted_at = now;
            live.push_back(p.id);
            out.pilots.push_back(p.id);
            pilots_.emplace(p.id, std::move(p));
        }
    }
    return out;
}

std::vector<std::string> Factory::withdraw_unstarted(const std::string& entry, SimTime now) {
    std::vector<std::string> out;
    auto it = by_entry_.find(entry);
    if (it == by_entry_.end()) return out;
    for (const auto& id : it->second) {
        Pilot& p = pilots_.at(id);
        if (p.state == PilotState::Requested || p.state == PilotState::CeQueued) {
            p.kill(DeathCause::Withdrawn, now);
            out.push_back(id);
        }
    }
    return out;
}

Pilot& Factory::pilot(const std::string& id) {
    auto it = pilots_.find(id);
    if (it == pilots_.end()) throw std::invalid_argument("unknown pilot " + id);
    return it->second;
}

const Pilot& Factory::pilot(const std::string& id) const {
    auto it = pilots_.find(id);
    if (it == pilots_.end()) throw std::invalid_argument("unknown pilot " + id);
    return it->second;
}

PilotCounts Factory::counts(const std::string& entry) const {
    PilotCounts c;
    auto it = by_entry_.find(entry);
    if (it == by_entry_.end()) return c;
    for (const auto& id : it->second) {
        const Pilot& p = pilots_.at(id);
        if (!p.alive()) continue;
        ++c.alive;
        if (p.queued()) ++c.queued;
        else if (p.state == PilotState::Advertised && !p.busy) ++c.idle;
    }
    return c;
}

std::map<std::string, PilotCounts> Factory::all_counts() const {
    std::map<std::string, PilotCounts> out;
    for (const auto& e : entries_) out[e.name] = counts(e.name);
    return out;
}

}  // namespace glidesim::glidein

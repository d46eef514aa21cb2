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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "glidesim/glidein/entry.hpp"
#include "glidesim/glidein/frontend.hpp"
#include "glidesim/glidein/pilot.hpp"

namespace glidesim::glidein {

struct SubmitResult {
    /// New pilots, in creation order.
    std::vector<std::string> pilots;
    /// One line per skipped or truncated request.
    std::vector<std::string> diagnostics;
};

/// Owns the entry list and every pilot it ever created.
class Factory {
public:
    /// Throws std::invalid_argument on invalid or duplicate entries.
    explicit Factory(std::vector<EntryPoint> entries, FactoryConfig config = {});

    const FactoryConfig& config() const { return config_; }
    std::span<const EntryPoint> entries() const { return entries_; }
    const EntryPoint* entry(const std::string& name) const;

    /// Creates REQUESTED pilots. Unknown or untrusted entries are skipped;
    /// counts beyond max_pilots headroom are truncated.
    SubmitResult submit(std::span<const PilotRequest> requests, SimTime now);

    /// Kills every not-yet-started pilot (REQUESTED or CE_QUEUED) at `entry`
    /// with WITHDRAWN. Returns their ids.
    std::vector<std::string> withdraw_unstarted(const std::string& entry, SimTime now);

    Pilot& pilot(const std::string& id);
    const Pilot& pilot(const std::string& id) const;
    const std::map<std::string, Pilot>& pilots() const { return pilots_; }

    PilotCounts counts(const std::string& entry) const;
    std::map<std::string, PilotCounts> all_counts() const;

private:
    FactoryConfig config_;
    std::vector<EntryPoint> entries_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, Pilot> pilots_;
    std::map<std::string, std::vector<std::string>> by_entry_;  // live pilots per entry
    std::uint64_t next_id_ = 1;
};

}  // namespace glidesim::glidein

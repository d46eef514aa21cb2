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
#include <string_view>
#include <utility>
#include <vector>

#include "glidesim/common/geo.hpp"
#include "glidesim/common/time.hpp"
#include "glidesim/matchlang/ad.hpp"
#include "glidesim/matchlang/expr.hpp"

namespace glidesim::glidein {

enum class CeType { HtcondorCe, ArcCe, CreamCe, Cloud };

std::string_view to_string(CeType t);
/// Accepts "HTCONDOR_CE", "ARC_CE", "CREAM_CE", "CLOUD" (any case).
std::optional<CeType> parse_ce_type(std::string_view text);

struct PilotShape {
    int cpus = 8;
    int memory_mb = 16384;
    int gpus = 0;
    Duration max_walltime = 48 * kHour;
    Duration idle_timeout = 20 * kMinute;
};

/// A site gateway the factory can submit pilots to.
struct EntryPoint {
    std::string name;
    std::string site;
    CeType ce_type = CeType::HtcondorCe;
    int max_pilots = 100;
    int max_idle_pilots = 10;
    PilotShape shape;
    /// Which jobs this entry can serve; the job is TARGET.
    matchlang::Expr requirements = matchlang::make_literal(matchlang::Value::boolean(true));
    GeoPoint geo;
    /// Probability that a started pilot fails to bootstrap.
    double bootstrap_failure = 0.0;
    bool trusted = true;
};

/// Throws std::invalid_argument on a violated entry invariant.
void validate_entry(const EntryPoint& entry);

struct FrontendConfig {
    std::string group = "main";
    double fraction = 1.0;
    int min_idle = 1;
    Duration config_fetch_delay = 30;
    /// Time a running job gets once its pilot hits walltime.
    Duration grace_period = 0;
    /// Attributes stamped onto every slot ad (e.g. is_ligo = true).
    std::vector<std::pair<std::string, matchlang::Expr>> attributes;
    /// Extra slot-side requirements, ANDed with the entry's.
    std::optional<matchlang::Expr> slot_requirements;
};

struct FactoryConfig {
    Duration config_fetch_delay = 30;
};

/// Slot ad a pilot at `entry` would advertise. Used for pressure estimation
/// and as the template for real pilot slots.
matchlang::Ad synthetic_slot_ad(const EntryPoint& entry, const FrontendConfig& frontend);

}  // namespace glidesim::glidein

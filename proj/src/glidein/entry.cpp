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

#include "glidesim/glidein/entry.hpp"

#include <stdexcept>

#include "glidesim/matchlang/parser.hpp"

namespace glidesim::glidein {

using matchlang::Ad;
using matchlang::AdKind;
using matchlang::Expr;

std::string_view to_string(CeType t) {
    switch (t) {
        case CeType::HtcondorCe: return "HTCONDOR_CE";
        case CeType::ArcCe: return "ARC_CE";
        case CeType::CreamCe: return "CREAM_CE";
        case CeType::Cloud: return "CLOUD";
    }
    return "?";
}

std::optional<CeType> parse_ce_type(std::string_view text) {
    const std::string t = matchlang::fold_case(text);
    if (t == "htcondor_ce") return CeType::HtcondorCe;
    if (t == "arc_ce") return CeType::ArcCe;
    if (t == "cream_ce") return CeType::CreamCe;
    if (t == "cloud") return CeType::Cloud;
    return std::nullopt;
}

void validate_entry(const EntryPoint& e) {
    auto fail = [&](const std::string& what) { throw std::invalid_argument("entry " + e.name + ": " + what); };
    if (e.name.empty()) throw std::invalid_argument("entry without name");
    if (e.site.empty()) fail("no site");
    if (e.max_pilots < 1) fail("max_pilots must be >= 1");
    if (e.max_idle_pilots < 0 || e.max_idle_pilots > e.max_pilots) fail("max_idle_pilots must be in [0, max_pilots]");
    if (e.shape.cpus <= 0 || e.shape.memory_mb <= 0 || e.shape.gpus < 0) fail("pilot shape resources must be positive");
    if (e.shape.idle_timeout <= 0) fail("idle_timeout must be positive");
    if (e.shape.max_walltime <= e.shape.idle_timeout) fail("max_walltime must exceed idle_timeout");
    if (!(e.bootstrap_failure >= 0.0 && e.bootstrap_failure <= 1.0)) fail("bootstrap_failure must be in [0, 1]");
}

Ad synthetic_slot_ad(const EntryPoint& entry, const FrontendConfig& frontend) {
    Ad ad(AdKind::Slot);
    ad.set("name", "entry_" + entry.name);
    ad.set("entry", entry.name);
    ad.set("site", entry.site);
    ad.set("cetype", std::string(to_string(entry.ce_type)));
    ad.set("cpus", entry.shape.cpus);
    ad.set("memory", entry.shape.memory_mb);
    ad.set("gpus", entry.shape.gpus);
    ad.set("lat", entry.geo.lat);
    ad.set("lon", entry.geo.lon);
    ad.set("has_container", true);
    ad.set("frontend_group", frontend.group);
    for (const auto& [name, value] : frontend.attributes) ad.set(name, value);

    Expr req = matchlang::parse("TARGET.requestcpus <= cpus && TARGET.requestgpus <= gpus");
    req = req && entry.requirements;
    if (frontend.slot_requirements) req = req && *frontend.slot_requirements;
    ad.set("requirements", req);
    return ad;
}

}  // namespace glidesim::glidein

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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "glidesim/common/geo.hpp"
#include "glidesim/common/time.hpp"
#include "glidesim/datacache/cache.hpp"
#include "glidesim/glidein/entry.hpp"
#include "glidesim/gridsim/distribution.hpp"
#include "glidesim/matchlang/expr.hpp"
#include "glidesim/pool/pool.hpp"

namespace glidesim::gridsim {

class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SiteConfig {
    std::string name;
    GeoPoint geo;
    int cores = 0;
    int gpus = 0;
    bool opportunistic = false;
    /// Expected preemptions per pilot-hour (opportunistic sites only).
    double preemption_rate = 0.0;
    /// CE queue delay; the CE type's default when absent.
    std::optional<Distribution> ce_delay;
};

struct UserConfig {
    std::string name;
    double priority_factor = 1.0;
};

struct FileSpec {
    std::string id;
    std::uint64_t size = 0;
};

/// All jobs arrive at `start`.
struct BurstArrival {
    SimTime start = 0;
};
/// Arrival times spread evenly over [start, end).
struct UniformArrival {
    SimTime start = 0;
    SimTime end = 0;
};
/// Poisson arrivals at `rate_per_hour` from `start`.
struct PoissonArrival {
    SimTime start = 0;
    double rate_per_hour = 1.0;
};
using ArrivalProfile = std::variant<BurstArrival, UniformArrival, PoissonArrival>;

/// Resource request and payload description shared by both workload shapes.
struct JobTemplate {
    int cpus = 1;
    int memory_mb = 2048;
    int gpus = 0;
    std::string container;
    /// Extra job requirements ANDed with the resource fit.
    std::optional<matchlang::Expr> requirements;
    /// Attributes copied into every job ad.
    std::vector<std::pair<std::string, matchlang::Expr>> attributes;
    /// Runtime on a CPU slot.
    Distribution runtime;
    /// (cpu_runtime, gpu_runtime): a GPU slot runs the job in
    /// runtime * gpu/cpu.
    std::optional<std::pair<Duration, Duration>> gpu_speedup;
    /// Input file ids from the catalog.
    std::vector<std::string> inputs;
    /// When > 0, each job reads this many files drawn from `inputs`.
    int pick_inputs = 0;
};

struct IndependentBatch {
    std::string name;
    std::string owner;
    int count = 1;
    ArrivalProfile arrival = BurstArrival{};
    JobTemplate job;
};

struct IterativeStages {
    std::string name;
    std::string owner;
    SimTime start = 0;
    int stages = 1;
    int jobs_per_stage = 1;
    JobTemplate job;
    /// Optional leading CPU-only stage (stage 0).
    std::optional<std::pair<int, JobTemplate>> stage0;
};

using Workload = std::variant<IndependentBatch, IterativeStages>;

const std::string& workload_name(const Workload& w);
const std::string& workload_owner(const Workload& w);

struct Scenario {
    std::string name = "scenario";
    std::vector<SiteConfig> sites;
    std::vector<glidein::EntryPoint> entries;
    glidein::FrontendConfig frontend;
    glidein::FactoryConfig factory;
    std::vector<UserConfig> users;
    pool::PoolConfig pool;
    std::vector<Workload> workloads;
    std::vector<datacache::CacheConfig> caches;
    std::vector<FileSpec> files;
    Duration negotiation_interval = 60;
    Duration frontend_interval = 300;
    Duration until = 30 * kDay;
    std::uint64_t seed = 1;

    const SiteConfig* site(const std::string& name) const;
    const FileSpec* file(const std::string& id) const;
};

/// Throws ScenarioError on the first problem found: unresolved names,
/// duplicates, non-positive counts or durations, pilots larger than their site.
void validate(const Scenario& s);

/// Default CE queue delay per CE type.
Duration default_ce_delay(glidein::CeType t);

}  // namespace glidesim::gridsim

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

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "glidesim/gridsim/trace.hpp"
#include "glidesim/metrics/usage.hpp"

namespace fs = std::filesystem;
using namespace glidesim;

namespace {

struct Outcome {
    int status;
    std::string output;
};

Outcome cli(const std::string& args) {
    const std::string cmd = std::string(GLIDESIM_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream b;
    b << in.rdbuf();
    return b.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("glidesim_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir.parent_path());
    return dir;
}

const std::string kScenario = std::string(GLIDESIM_SCENARIO_DIR) + "/stages_preempt.json";

}  // namespace

TEST_CASE("run twice: identical outputs") {
    const auto a = scratch("a");
    const auto b = scratch("b");
    const std::string common = "run --scenario " + kScenario + " --seed 42 --until 3d --bucket-hours 24 --out ";
    auto r = cli(common + a.string());
    CHECK(r.status == 0);
    CHECK(r.output.find("jobs submitted") != std::string::npos);
    r = cli(common + b.string());
    CHECK(r.status == 0);
    for (const char* f : {"trace.log", "report.txt", "usage.csv"}) {
        REQUIRE(fs::exists(a / f));
        CHECK(slurp(a / f) == slurp(b / f));
    }
    const auto trace = gridsim::Trace::parse(slurp(a / "trace.log"));
    CHECK(trace.header.seed == 42);
    CHECK(trace.header.until == 3 * kDay);
}

TEST_CASE("report totals equal trace-derived totals; --report-only is byte-identical") {
    const auto a = scratch("full");
    REQUIRE(cli("--scenario " + kScenario + " --out " + a.string()).status == 0);
    const auto trace = gridsim::Trace::parse(slurp(a / "trace.log"));
    std::int64_t core_seconds = 0;
    for (const auto& iv : metrics::running_intervals(trace)) core_seconds += iv.cpus * (iv.end - iv.start);

    // usage.csv rows sum to the same total
    std::istringstream csv(slurp(a / "usage.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "site,windowStart,coreHours,gpuHours");
    double csv_hours = 0;
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string site, start, core;
        std::getline(row, site, ',');
        std::getline(row, start, ',');
        std::getline(row, core, ',');
        csv_hours += std::stod(core);
    }
    CHECK(csv_hours == doctest::Approx(to_hours(core_seconds)).epsilon(1e-12));
    const auto report = slurp(a / "report.txt");
    char expect[128];
    std::snprintf(expect, sizeof expect, "busy_core_seconds %lld\n", static_cast<long long>(core_seconds));
    CHECK(report.find(expect) != std::string::npos);

    const auto b = scratch("again");
    const auto r = cli("--report-only " + (a / "trace.log").string() + " --out " + b.string());
    CHECK(r.status == 0);
    CHECK(slurp(b / "report.txt") == report);
    CHECK(slurp(b / "usage.csv") == slurp(a / "usage.csv"));
}

TEST_CASE("validation errors exit 1, runtime errors exit 2") {
    const auto out = scratch("err");
    auto r = cli("--scenario /nonexistent/scenario.json --out " + out.string());
    CHECK(r.status == 1);
    CHECK(r.output.find("not found") != std::string::npos);

    const auto bad = scratch("bad_input");
    fs::create_directories(bad);
    std::ofstream(bad / "broken.json") << "{\"sites\": [";
    r = cli("--scenario " + (bad / "broken.json").string() + " --out " + out.string());
    CHECK(r.status == 1);

    std::ofstream(bad / "trace.log") << "not a trace\n";
    r = cli("--report-only " + (bad / "trace.log").string() + " --out " + out.string());
    CHECK(r.status == 1);

    CHECK(cli("--scenario " + kScenario).status == 1);  // no --out
    CHECK(cli("--bogus-flag").status == 1);
    CHECK(cli("--scenario " + kScenario + " --until never --out " + out.string()).status == 1);

    // output path under a regular file cannot be created
    std::ofstream(bad / "file") << "x";
    r = cli("--scenario " + kScenario + " --until 1h --out " + (bad / "file" / "sub").string());
    CHECK(r.status == 2);
}

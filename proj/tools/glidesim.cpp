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

// glidesim command-line driver.
//
//   glidesim [run] --scenario FILE [--seed N] [--until DURATION] [--bucket-hours H] --out DIR
//   glidesim [run] --report-only TRACE [--bucket-hours H] --out DIR
//
// Exit status: 0 success, 1 invalid input, 2 runtime failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "glidesim/gridsim/scenario_io.hpp"
#include "glidesim/gridsim/simulation.hpp"
#include "glidesim/metrics/report.hpp"

namespace fs = std::filesystem;
using namespace glidesim;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit_outputs(const gridsim::Trace& trace, double bucket_hours, const fs::path& out_dir, bool write_trace) {
    const auto report = metrics::make_report(trace, bucket_hours);
    fs::create_directories(out_dir);
    if (write_trace) write_file(out_dir / "trace.log", trace.serialize());
    write_file(out_dir / "report.txt", metrics::format_report(report));
    write_file(out_dir / "usage.csv", metrics::format_usage_csv(report.buckets));

    std::printf("scenario %s (hash %s) seed %llu until %lld\n", trace.header.scenario.c_str(),
                trace.header.hash.c_str(), static_cast<unsigned long long>(trace.header.seed),
                static_cast<long long>(trace.header.until));
    std::printf("jobs submitted %lld, completed %lld, preemptions %lld\n",
                static_cast<long long>(trace.summary.get("jobs_submitted")),
                static_cast<long long>(trace.summary.get("jobs_completed")),
                static_cast<long long>(trace.summary.get("job_preemptions")));
    std::printf("core-hours %s, gpu-hours %s, pilot core-hours %s\n",
                metrics::format_real(to_hours(report.core_seconds)).c_str(),
                metrics::format_real(to_hours(report.gpu_seconds)).c_str(),
                metrics::format_real(to_hours(report.pilot_core_seconds)).c_str());
    std::printf("outputs in %s\n", out_dir.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    // "run" is the only verb; accept it but do not require it.
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    if (!args.empty() && args.back() == "run") args.pop_back();

    CLI::App app{"glidesim: pilot-based grid pool simulator"};
    auto* run = &app;
    std::string scenario_path;
    std::string report_only;
    std::optional<std::uint64_t> seed;
    std::string until_text;
    double bucket_hours = 720.0;
    std::string out_dir;
    auto* scen_opt = run->add_option("--scenario", scenario_path, "Scenario JSON file");
    auto* report_opt = run->add_option("--report-only", report_only, "Stored trace.log to re-report");
    scen_opt->excludes(report_opt);
    run->add_option("--seed", seed, "RNG seed (default: the scenario's)");
    run->add_option("--until", until_text, "Horizon, e.g. 30d (default: the scenario's)");
    run->add_option("--bucket-hours", bucket_hours, "Usage window width in hours")->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (!report_only.empty()) {
            gridsim::Trace trace;
            try {
                trace = gridsim::Trace::parse(read_file(report_only));
            } catch (const gridsim::TraceFormatError& e) {
                throw InputError(report_only + ": " + e.what());
            }
            emit_outputs(trace, bucket_hours, out_dir, false);
            return kOk;
        }
        if (scenario_path.empty()) throw InputError("one of --scenario or --report-only is required");
        if (!fs::exists(scenario_path)) throw InputError("scenario file not found: " + scenario_path);
        const auto loaded = gridsim::load_scenario(scenario_path);
        gridsim::RunOptions opt;
        opt.seed = seed.value_or(loaded.scenario.seed);
        opt.until = until_text.empty() ? loaded.scenario.until : parse_duration(until_text);
        opt.scenario_hash = loaded.hash;
        if (opt.until <= 0) throw InputError("--until must be positive");
        const auto trace = gridsim::run(loaded.scenario, opt);
        emit_outputs(trace, bucket_hours, out_dir, true);
        return kOk;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const gridsim::ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kRuntime;
    }
}

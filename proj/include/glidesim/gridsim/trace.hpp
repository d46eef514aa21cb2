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
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glidesim/common/time.hpp"

namespace glidesim::gridsim {

/// Kinds of trace records. NOTICE carries diagnostics (skipped pilot requests,
/// lost claim races, pilots entering retirement).
enum class RecordKind {
    JobSubmit,
    Negotiate,
    FrontendCycle,
    PilotSubmit,
    PilotStart,
    PilotDead,
    JobStart,
    JobStageDone,
    JobDone,
    Preempt,
    Advertise,
    Expire,
    Notice,
};

std::string_view to_string(RecordKind k);
std::optional<RecordKind> parse_record_kind(std::string_view text);

class TraceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Field {
    std::string key;
    std::string value;
    friend bool operator==(const Field&, const Field&) = default;
};

struct Record {
    SimTime time = 0;
    std::uint64_t seq = 0;
    RecordKind kind = RecordKind::Notice;
    std::vector<Field> fields;

    const std::string* find(std::string_view key) const;
    /// Throws TraceFormatError when the key is missing or not an integer.
    std::int64_t integer(std::string_view key) const;
    const std::string& text(std::string_view key) const;

    friend bool operator==(const Record&, const Record&) = default;
};

struct SiteInfo {
    std::string name;
    int cores = 0;
    int gpus = 0;
    friend bool operator==(const SiteInfo&, const SiteInfo&) = default;
};

struct TraceHeader {
    int version = 1;
    std::string scenario;
    std::string hash;
    std::uint64_t seed = 0;
    SimTime until = 0;
    std::vector<SiteInfo> sites;
    friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct CacheCounters {
    std::string name;
    std::int64_t hits = 0;
    std::int64_t misses = 0;
    std::int64_t bytes_from_cache = 0;
    std::int64_t bytes_from_origin = 0;
    std::int64_t evictions = 0;
    friend bool operator==(const CacheCounters&, const CacheCounters&) = default;
};

/// Footer counters, all derivable from the records.
struct Summary {
    std::vector<std::pair<std::string, std::int64_t>> counters;
    std::vector<CacheCounters> caches;

    std::int64_t get(std::string_view name) const;
    friend bool operator==(const Summary&, const Summary&) = default;
};

/// Append-only event log of one run.
class Trace {
public:
    TraceHeader header;
    Summary summary;

    /// Appends a record stamped with the next sequence number. Field keys and
    /// values must be non-empty and free of whitespace.
    const Record& add(SimTime time, RecordKind kind, std::vector<Field> fields);
    const std::vector<Record>& records() const { return records_; }

    /// Line form: '#' header lines, one "time seq KIND key=value..." line per
    /// record, '#summary'/'#cache' footer lines, then '#end'.
    void write(std::ostream& out) const;
    std::string serialize() const;
    /// Inverse of serialize(). Throws TraceFormatError.
    static Trace parse(std::string_view text);

private:
    std::vector<Record> records_;
};

/// Recomputes the footer from the records alone.
Summary replay_summary(const Trace& trace);

}  // namespace glidesim::gridsim

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

#include "glidesim/gridsim/trace.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace glidesim::gridsim {

namespace {

constexpr std::array<std::string_view, 13> kKindNames = {
    "JOB_SUBMIT", "NEGOTIATE", "FRONTEND_CYCLE", "PILOT_SUBMIT", "PILOT_START", "PILOT_DEAD", "JOB_START",
    "JOB_STAGE_DONE", "JOB_DONE", "PREEMPT", "ADVERTISE", "EXPIRE", "NOTICE",
};

bool plain(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    }
    return true;
}

std::optional<std::int64_t> to_int(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

Field parse_field(std::string_view tok, std::size_t line_no) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == tok.size()) {
        throw TraceFormatError("line " + std::to_string(line_no) + ": bad field '" + std::string(tok) + "'");
    }
    return {std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1))};
}

std::int64_t field_int(const std::vector<Field>& fields, std::string_view key, std::size_t line_no) {
    for (const auto& f : fields) {
        if (f.key == key) {
            if (auto v = to_int(f.value)) return *v;
            break;
        }
    }
    throw TraceFormatError("line " + std::to_string(line_no) + ": missing integer '" + std::string(key) + "'");
}

const std::string& field_text(const std::vector<Field>& fields, std::string_view key, std::size_t line_no) {
    for (const auto& f : fields) {
        if (f.key == key) return f.value;
    }
    throw TraceFormatError("line " + std::to_string(line_no) + ": missing '" + std::string(key) + "'");
}

}  // namespace

std::string_view to_string(RecordKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<RecordKind> parse_record_kind(std::string_view text) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == text) return static_cast<RecordKind>(i);
    }
    return std::nullopt;
}

const std::string* Record::find(std::string_view key) const {
    for (const auto& f : fields) {
        if (f.key == key) return &f.value;
    }
    return nullptr;
}

std::int64_t Record::integer(std::string_view key) const {
    const std::string* v = find(key);
    if (v) {
        if (auto i = to_int(*v)) return *i;
    }
    throw TraceFormatError("record " + std::to_string(seq) + ": no integer field '" + std::string(key) + "'");
}

const std::string& Record::text(std::string_view key) const {
    const std::string* v = find(key);
    if (!v) throw TraceFormatError("record " + std::to_string(seq) + ": no field '" + std::string(key) + "'");
    return *v;
}

std::int64_t Summary::get(std::string_view name) const {
    for (const auto& [k, v] : counters) {
        if (k == name) return v;
    }
    return 0;
}

const Record& Trace::add(SimTime time, RecordKind kind, std::vector<Field> fields) {
    for (const auto& f : fields) {
        if (!plain(f.key) || !plain(f.value) || f.key.find('=') != std::string::npos) {
            throw std::logic_error("trace field '" + f.key + "=" + f.value + "' is not a plain token");
        }
    }
    records_.push_back(Record{time, records_.size(), kind, std::move(fields)});
    return records_.back();
}

void Trace::write(std::ostream& out) const {
    out << "#glidesim-trace " << header.version << '\n';
    out << "#scenario name=" << header.scenario << " hash=" << header.hash << '\n';
    out << "#seed " << header.seed << '\n';
    out << "#until " << header.until << '\n';
    for (const auto& s : header.sites) out << "#site name=" << s.name << " cores=" << s.cores << " gpus=" << s.gpus << '\n';
    for (const auto& r : records_) {
        out << r.time << ' ' << r.seq << ' ' << to_string(r.kind);
        for (const auto& f : r.fields) out << ' ' << f.key << '=' << f.value;
        out << '\n';
    }
    out << "#summary";
    for (const auto& [k, v] : summary.counters) out << ' ' << k << '=' << v;
    out << '\n';
    for (const auto& c : summary.caches) {
        out << "#cache name=" << c.name << " hits=" << c.hits << " misses=" << c.misses
            << " bytes_from_cache=" << c.bytes_from_cache << " bytes_from_origin=" << c.bytes_from_origin
            << " evictions=" << c.evictions << '\n';
    }
    out << "#end\n";
}

std::string Trace::serialize() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

Trace Trace::parse(std::string_view text) {
    Trace t;
    bool saw_magic = false;
    bool saw_end = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;
        if (saw_end) throw TraceFormatError("line " + std::to_string(line_no) + ": content after #end");
        const auto toks = split(line);
        auto fields_from = [&](std::size_t first) {
            std::vector<Field> fs;
            for (std::size_t i = first; i < toks.size(); ++i) fs.push_back(parse_field(toks[i], line_no));
            return fs;
        };
        const std::string_view head = toks.front();
        if (head == "#glidesim-trace") {
            if (toks.size() != 2 || !to_int(toks[1])) throw TraceFormatError("bad trace magic line");
            t.header.version = static_cast<int>(*to_int(toks[1]));
            if (t.header.version != 1) throw TraceFormatError("unsupported trace version " + std::string(toks[1]));
            saw_magic = true;
        } else if (!saw_magic) {
            throw TraceFormatError("not a glidesim trace (missing #glidesim-trace)");
        } else if (head == "#scenario") {
            const auto fs = fields_from(1);
            t.header.scenario = field_text(fs, "name", line_no);
            t.header.hash = field_text(fs, "hash", line_no);
        } else if (head == "#seed" || head == "#until") {
            if (toks.size() != 2 || !to_int(toks[1])) throw TraceFormatError("line " + std::to_string(line_no) + ": bad value");
            if (head == "#seed") t.header.seed = static_cast<std::uint64_t>(*to_int(toks[1]));
            else t.header.until = *to_int(toks[1]);
        } else if (head == "#site") {
            const auto fs = fields_from(1);
            t.header.sites.push_back({field_text(fs, "name", line_no), static_cast<int>(field_int(fs, "cores", line_no)),
                                      static_cast<int>(field_int(fs, "gpus", line_no))});
        } else if (head == "#summary") {
            for (const auto& f : fields_from(1)) {
                auto v = to_int(f.value);
                if (!v) throw TraceFormatError("line " + std::to_string(line_no) + ": bad counter " + f.key);
                t.summary.counters.emplace_back(f.key, *v);
            }
        } else if (head == "#cache") {
            const auto fs = fields_from(1);
            t.summary.caches.push_back({field_text(fs, "name", line_no), field_int(fs, "hits", line_no),
                                        field_int(fs, "misses", line_no), field_int(fs, "bytes_from_cache", line_no),
                                        field_int(fs, "bytes_from_origin", line_no), field_int(fs, "evictions", line_no)});
        } else if (head == "#end") {
            saw_end = true;
        } else if (head.front() == '#') {
            throw TraceFormatError("line " + std::to_string(line_no) + ": unknown directive " + std::string(head));
        } else {
            if (toks.size() < 3) throw TraceFormatError("line " + std::to_string(line_no) + ": short record");
            const auto time = to_int(toks[0]);
            const auto seq = to_int(toks[1]);
            const auto kind = parse_record_kind(toks[2]);
            if (!time || !seq || !kind) throw TraceFormatError("line " + std::to_string(line_no) + ": bad record head");
            if (static_cast<std::uint64_t>(*seq) != t.records_.size()) {
                throw TraceFormatError("line " + std::to_string(line_no) + ": sequence gap");
            }
            t.records_.push_back(Record{*time, static_cast<std::uint64_t>(*seq), *kind, fields_from(3)});
        }
    }
    if (!saw_end) throw TraceFormatError("truncated trace (missing #end)");
    return t;
}

Summary replay_summary(const Trace& trace) {
    std::int64_t submitted = 0, started = 0, completed = 0, preempted = 0;
    std::int64_t pilots_submitted = 0, pilots_started = 0, advertised = 0, pilots_dead = 0;
    std::int64_t negotiations = 0, frontends = 0, matches = 0, races = 0;
    std::int64_t core_seconds = 0, gpu_seconds = 0;
    std::map<std::string, std::int64_t> deaths;
    std::map<std::string, CacheCounters> caches;
    for (const Record& r : trace.records()) {
        switch (r.kind) {
            case RecordKind::JobSubmit: ++submitted; break;
            case RecordKind::JobStart: {
                ++started;
                const std::string& c = r.text("cache");
                if (c != "-") {
                    auto& cc = caches[c];
                    cc.name = c;
                    cc.hits += r.integer("hits");
                    cc.misses += r.integer("misses");
                    cc.bytes_from_cache += r.integer("bytes_cache");
                    cc.bytes_from_origin += r.integer("bytes_origin");
                    cc.evictions += r.integer("evicted");
                }
                break;
            }
            case RecordKind::JobDone:
            case RecordKind::Preempt: {
                (r.kind == RecordKind::JobDone ? completed : preempted) += 1;
                const std::int64_t span = r.time - r.integer("started");
                core_seconds += r.integer("cpus") * span;
                gpu_seconds += r.integer("gpus") * span;
                break;
            }
            case RecordKind::PilotSubmit: ++pilots_submitted; break;
            case RecordKind::PilotStart: ++pilots_started; break;
            case RecordKind::Advertise: ++advertised; break;
            case RecordKind::PilotDead:
                ++pilots_dead;
                ++deaths[r.text("cause")];
                break;
            case RecordKind::Negotiate:
                ++negotiations;
                matches += r.integer("matches");
                races += r.integer("races");
                break;
            case RecordKind::FrontendCycle: ++frontends; break;
            default: break;
        }
    }
    Summary s;
    s.counters = {
        {"jobs_submitted", submitted},
        {"jobs_started", started},
        {"jobs_completed", completed},
        {"job_preemptions", preempted},
        {"pilots_submitted", pilots_submitted},
        {"pilots_started", pilots_started},
        {"pilots_advertised", advertised},
        {"pilots_dead", pilots_dead},
        {"negotiation_cycles", negotiations},
        {"frontend_cycles", frontends},
        {"matches", matches},
        {"claim_races", races},
        {"busy_core_seconds", core_seconds},
        {"busy_gpu_seconds", gpu_seconds},
    };
    for (const auto& [cause, n] : deaths) {
        std::string key = "dead_" + cause;
        for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        s.counters.emplace_back(key, n);
    }
    for (auto& [_, c] : caches) s.caches.push_back(c);
    return s;
}

}  // namespace glidesim::gridsim

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

#include "glidesim/gridsim/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "glidesim/common/rng.hpp"
#include "glidesim/matchlang/parser.hpp"

namespace glidesim::gridsim {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ScenarioError(where + ": " + what);
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [k, _] : j.items()) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        if (!ok) fail(where, "unknown key '" + k + "'");
    }
}

const json& need(const json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing '") + key + "'");
    return *it;
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

int small_int(const json& j, const std::string& where) {
    const auto v = integer(j, where);
    if (v < -1'000'000'000 || v > 1'000'000'000) fail(where, "integer out of range");
    return static_cast<int>(v);
}

bool boolean(const json& j, const std::string& where) {
    if (!j.is_boolean()) fail(where, "expected true or false");
    return j.get<bool>();
}

/// Seconds as a number or a duration string ("30m", "2d").
Duration duration(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) fail(where, "duration must be >= 0");
        return v;
    }
    if (j.is_string()) {
        try {
            return parse_duration(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a duration");
}

double seconds(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    return static_cast<double>(duration(j, where));
}

matchlang::Expr expression(const json& j, const std::string& where) {
    try {
        return matchlang::parse(text(j, where));
    } catch (const matchlang::SyntaxError& e) {
        fail(where, e.what());
    }
}

/// JSON scalars become literals; strings are parsed as expressions.
matchlang::Expr attribute_value(const json& j, const std::string& where) {
    using matchlang::Value;
    if (j.is_boolean()) return matchlang::make_literal(Value::boolean(j.get<bool>()));
    if (j.is_number_integer()) return matchlang::make_literal(Value::integer(j.get<std::int64_t>()));
    if (j.is_number()) return matchlang::make_literal(Value::real(j.get<double>()));
    return expression(j, where);
}

std::vector<std::pair<std::string, matchlang::Expr>> attributes(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    std::vector<std::pair<std::string, matchlang::Expr>> out;
    for (const auto& [k, v] : j.items()) out.emplace_back(k, attribute_value(v, where + "." + k));
    return out;
}

Distribution distribution(const json& j, const std::string& where) {
    const std::string type = text(need(j, where, "type"), where + ".type");
    try {
        if (type == "degenerate") {
            allow_keys(j, where, {"type", "value"});
            return Distribution(Degenerate{seconds(need(j, where, "value"), where + ".value")});
        }
        if (type == "uniform") {
            allow_keys(j, where, {"type", "min", "max"});
            return Distribution(Uniform{seconds(need(j, where, "min"), where + ".min"),
                                        seconds(need(j, where, "max"), where + ".max")});
        }
        if (type == "lognormal") {
            allow_keys(j, where, {"type", "median", "sigma", "min", "max"});
            return Distribution(BoundedLogNormal{seconds(need(j, where, "median"), where + ".median"),
                                    number(need(j, where, "sigma"), where + ".sigma"),
                                    seconds(need(j, where, "min"), where + ".min"),
                                    seconds(need(j, where, "max"), where + ".max")});
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where, "unknown distribution type '" + type + "'");
}

GeoPoint geo(const json& j, const std::string& where) {
    const double lat = number(need(j, where, "lat"), where + ".lat");
    const double lon = number(need(j, where, "lon"), where + ".lon");
    if (lat < -90 || lat > 90 || lon < -180 || lon > 180) fail(where, "coordinates out of range");
    return {lat, lon};
}

SiteConfig site(const json& j, const std::string& where) {
    allow_keys(j, where, {"name", "lat", "lon", "cores", "gpus", "opportunistic", "preemption_rate", "ce_delay"});
    SiteConfig s;
    s.name = text(need(j, where, "name"), where + ".name");
    s.geo = geo(j, where);
    s.cores = small_int(need(j, where, "cores"), where + ".cores");
    if (j.contains("gpus")) s.gpus = small_int(j["gpus"], where + ".gpus");
    if (j.contains("opportunistic")) s.opportunistic = boolean(j["opportunistic"], where + ".opportunistic");
    if (j.contains("preemption_rate")) s.preemption_rate = number(j["preemption_rate"], where + ".preemption_rate");
    if (j.contains("ce_delay")) s.ce_delay = distribution(j["ce_delay"], where + ".ce_delay");
    return s;
}

glidein::EntryPoint entry(const json& j, const std::string& where, const std::vector<SiteConfig>& sites) {
    allow_keys(j, where,
               {"name", "site", "ce_type", "max_pilots", "max_idle_pilots", "pilot", "requirements", "bootstrap_failure",
                "trusted"});
    glidein::EntryPoint e;
    e.name = text(need(j, where, "name"), where + ".name");
    e.site = text(need(j, where, "site"), where + ".site");
    for (const auto& s : sites) {
        if (s.name == e.site) e.geo = s.geo;
    }
    if (j.contains("ce_type")) {
        auto t = glidein::parse_ce_type(text(j["ce_type"], where + ".ce_type"));
        if (!t) fail(where + ".ce_type", "unknown CE type");
        e.ce_type = *t;
    }
    if (j.contains("max_pilots")) e.max_pilots = small_int(j["max_pilots"], where + ".max_pilots");
    if (j.contains("max_idle_pilots")) e.max_idle_pilots = small_int(j["max_idle_pilots"], where + ".max_idle_pilots");
    if (j.contains("pilot")) {
        const json& p = j["pilot"];
        const std::string w = where + ".pilot";
        allow_keys(p, w, {"cpus", "memory", "gpus", "max_walltime", "idle_timeout"});
        if (p.contains("cpus")) e.shape.cpus = small_int(p["cpus"], w + ".cpus");
        if (p.contains("memory")) e.shape.memory_mb = small_int(p["memory"], w + ".memory");
        if (p.contains("gpus")) e.shape.gpus = small_int(p["gpus"], w + ".gpus");
        if (p.contains("max_walltime")) e.shape.max_walltime = duration(p["max_walltime"], w + ".max_walltime");
        if (p.contains("idle_timeout")) e.shape.idle_timeout = duration(p["idle_timeout"], w + ".idle_timeout");
    }
    if (j.contains("requirements")) e.requirements = expression(j["requirements"], where + ".requirements");
    if (j.contains("bootstrap_failure")) e.bootstrap_failure = number(j["bootstrap_failure"], where + ".bootstrap_failure");
    if (j.contains("trusted")) e.trusted = boolean(j["trusted"], where + ".trusted");
    return e;
}

JobTemplate job_template(const json& j, const std::string& where) {
    allow_keys(j, where,
               {"cpus", "memory", "gpus", "container", "requirements", "attributes", "runtime", "gpu_speedup", "inputs",
                "pick_inputs"});
    JobTemplate t;
    if (j.contains("cpus")) t.cpus = small_int(j["cpus"], where + ".cpus");
    if (j.contains("memory")) t.memory_mb = small_int(j["memory"], where + ".memory");
    if (j.contains("gpus")) t.gpus = small_int(j["gpus"], where + ".gpus");
    if (j.contains("container")) t.container = text(j["container"], where + ".container");
    if (j.contains("requirements")) t.requirements = expression(j["requirements"], where + ".requirements");
    if (j.contains("attributes")) t.attributes = attributes(j["attributes"], where + ".attributes");
    t.runtime = distribution(need(j, where, "runtime"), where + ".runtime");
    if (j.contains("gpu_speedup")) {
        const json& g = j["gpu_speedup"];
        allow_keys(g, where + ".gpu_speedup", {"cpu", "gpu"});
        t.gpu_speedup = std::make_pair(duration(need(g, where, "cpu"), where + ".gpu_speedup.cpu"),
                                       duration(need(g, where, "gpu"), where + ".gpu_speedup.gpu"));
    }
    if (j.contains("inputs")) {
        if (!j["inputs"].is_array()) fail(where + ".inputs", "expected a list");
        for (const auto& f : j["inputs"]) t.inputs.push_back(text(f, where + ".inputs"));
    }
    if (j.contains("pick_inputs")) t.pick_inputs = small_int(j["pick_inputs"], where + ".pick_inputs");
    return t;
}

ArrivalProfile arrival(const json& j, const std::string& where) {
    const std::string type = text(need(j, where, "type"), where + ".type");
    if (type == "burst") {
        allow_keys(j, where, {"type", "start"});
        return BurstArrival{j.contains("start") ? duration(j["start"], where + ".start") : 0};
    }
    if (type == "uniform") {
        allow_keys(j, where, {"type", "start", "end"});
        return UniformArrival{j.contains("start") ? duration(j["start"], where + ".start") : 0,
                              duration(need(j, where, "end"), where + ".end")};
    }
    if (type == "poisson") {
        allow_keys(j, where, {"type", "start", "rate_per_hour"});
        return PoissonArrival{j.contains("start") ? duration(j["start"], where + ".start") : 0,
                              number(need(j, where, "rate_per_hour"), where + ".rate_per_hour")};
    }
    fail(where, "unknown arrival type '" + type + "'");
}

Workload workload(const json& j, const std::string& where) {
    const std::string type = text(need(j, where, "type"), where + ".type");
    if (type == "batch") {
        allow_keys(j, where, {"type", "name", "owner", "count", "arrival", "job"});
        IndependentBatch b;
        b.name = text(need(j, where, "name"), where + ".name");
        b.owner = text(need(j, where, "owner"), where + ".owner");
        b.count = small_int(need(j, where, "count"), where + ".count");
        if (j.contains("arrival")) b.arrival = arrival(j["arrival"], where + ".arrival");
        b.job = job_template(need(j, where, "job"), where + ".job");
        return b;
    }
    if (type == "stages") {
        allow_keys(j, where, {"type", "name", "owner", "start", "stages", "jobs_per_stage", "job", "stage0"});
        IterativeStages s;
        s.name = text(need(j, where, "name"), where + ".name");
        s.owner = text(need(j, where, "owner"), where + ".owner");
        if (j.contains("start")) s.start = duration(j["start"], where + ".start");
        s.stages = small_int(need(j, where, "stages"), where + ".stages");
        s.jobs_per_stage = small_int(need(j, where, "jobs_per_stage"), where + ".jobs_per_stage");
        s.job = job_template(need(j, where, "job"), where + ".job");
        if (j.contains("stage0")) {
            const json& z = j["stage0"];
            allow_keys(z, where + ".stage0", {"jobs", "job"});
            s.stage0 = std::make_pair(small_int(need(z, where, "jobs"), where + ".stage0.jobs"),
                                      job_template(need(z, where, "job"), where + ".stage0.job"));
        }
        return s;
    }
    fail(where, "unknown workload type '" + type + "'");
}

datacache::CacheConfig cache(const json& j, const std::string& where) {
    allow_keys(j, where, {"name", "lat", "lon", "capacity", "block_size", "bandwidth", "origin_bandwidth"});
    datacache::CacheConfig c;
    c.name = text(need(j, where, "name"), where + ".name");
    c.geo = geo(j, where);
    const auto cap = integer(need(j, where, "capacity"), where + ".capacity");
    if (cap < 0) fail(where + ".capacity", "must be >= 0");
    c.capacity_bytes = static_cast<std::uint64_t>(cap);
    if (j.contains("block_size")) {
        const auto bs = integer(j["block_size"], where + ".block_size");
        if (bs <= 0) fail(where + ".block_size", "must be positive");
        c.block_size = static_cast<std::uint64_t>(bs);
    }
    if (j.contains("bandwidth")) c.bandwidth_bps = number(j["bandwidth"], where + ".bandwidth");
    if (j.contains("origin_bandwidth")) c.origin_bandwidth_bps = number(j["origin_bandwidth"], where + ".origin_bandwidth");
    return c;
}

template <class F>
void each(const json& root, const char* key, F&& f) {
    if (!root.contains(key)) return;
    const json& list = root[key];
    if (!list.is_array()) fail(key, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) f(list[i], std::string(key) + "[" + std::to_string(i) + "]");
}

}  // namespace

LoadedScenario parse_scenario(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("malformed JSON: ") + e.what());
    }
    allow_keys(root, "scenario",
               {"name", "seed", "until", "intervals", "collector", "priority", "sites", "entries", "frontend", "factory",
                "users", "files", "caches", "workloads"});
    Scenario s;
    if (root.contains("name")) s.name = text(root["name"], "name");
    if (root.contains("seed")) {
        const auto seed = integer(root["seed"], "seed");
        if (seed < 0) fail("seed", "must be >= 0");
        s.seed = static_cast<std::uint64_t>(seed);
    }
    if (root.contains("until")) s.until = duration(root["until"], "until");
    if (root.contains("intervals")) {
        const json& iv = root["intervals"];
        allow_keys(iv, "intervals", {"negotiation", "frontend"});
        if (iv.contains("negotiation")) s.negotiation_interval = duration(iv["negotiation"], "intervals.negotiation");
        if (iv.contains("frontend")) s.frontend_interval = duration(iv["frontend"], "intervals.frontend");
    }
    if (root.contains("collector")) {
        const json& c = root["collector"];
        allow_keys(c, "collector", {"update_interval", "missed_updates_limit"});
        if (c.contains("update_interval")) s.pool.collector.update_interval = duration(c["update_interval"], "collector.update_interval");
        if (c.contains("missed_updates_limit")) {
            s.pool.collector.missed_updates_limit = small_int(c["missed_updates_limit"], "collector.missed_updates_limit");
        }
    }
    if (root.contains("priority")) {
        const json& p = root["priority"];
        allow_keys(p, "priority", {"half_life", "floor"});
        if (p.contains("half_life")) s.pool.priority.half_life = duration(p["half_life"], "priority.half_life");
        if (p.contains("floor")) s.pool.priority.floor = number(p["floor"], "priority.floor");
        if (!(s.pool.priority.floor > 0)) fail("priority.floor", "must be positive");
    }
    each(root, "sites", [&](const json& j, const std::string& w) { s.sites.push_back(site(j, w)); });
    each(root, "entries", [&](const json& j, const std::string& w) { s.entries.push_back(entry(j, w, s.sites)); });
    if (root.contains("frontend")) {
        const json& f = root["frontend"];
        allow_keys(f, "frontend",
                   {"group", "fraction", "min_idle", "config_fetch_delay", "grace_period", "attributes",
                    "slot_requirements"});
        if (f.contains("group")) s.frontend.group = text(f["group"], "frontend.group");
        if (f.contains("fraction")) s.frontend.fraction = number(f["fraction"], "frontend.fraction");
        if (f.contains("min_idle")) s.frontend.min_idle = small_int(f["min_idle"], "frontend.min_idle");
        if (f.contains("config_fetch_delay")) {
            s.frontend.config_fetch_delay = duration(f["config_fetch_delay"], "frontend.config_fetch_delay");
        }
        if (f.contains("grace_period")) s.frontend.grace_period = duration(f["grace_period"], "frontend.grace_period");
        if (f.contains("attributes")) s.frontend.attributes = attributes(f["attributes"], "frontend.attributes");
        if (f.contains("slot_requirements")) {
            s.frontend.slot_requirements = expression(f["slot_requirements"], "frontend.slot_requirements");
        }
    }
    if (root.contains("factory")) {
        const json& f = root["factory"];
        allow_keys(f, "factory", {"config_fetch_delay"});
        if (f.contains("config_fetch_delay")) {
            s.factory.config_fetch_delay = duration(f["config_fetch_delay"], "factory.config_fetch_delay");
        }
    }
    each(root, "users", [&](const json& j, const std::string& w) {
        allow_keys(j, w, {"name", "priority_factor"});
        UserConfig u;
        u.name = text(need(j, w, "name"), w + ".name");
        if (j.contains("priority_factor")) u.priority_factor = number(j["priority_factor"], w + ".priority_factor");
        s.users.push_back(u);
    });
    each(root, "files", [&](const json& j, const std::string& w) {
        allow_keys(j, w, {"id", "size"});
        FileSpec f;
        f.id = text(need(j, w, "id"), w + ".id");
        const auto size = integer(need(j, w, "size"), w + ".size");
        if (size < 0) fail(w + ".size", "must be >= 0");
        f.size = static_cast<std::uint64_t>(size);
        s.files.push_back(f);
    });
    each(root, "caches", [&](const json& j, const std::string& w) { s.caches.push_back(cache(j, w)); });
    each(root, "workloads", [&](const json& j, const std::string& w) { s.workloads.push_back(workload(j, w)); });

    validate(s);

    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(root.dump())));
    return LoadedScenario{std::move(s), hex};
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot read scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace glidesim::gridsim

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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "glidesim/datacache/cache.hpp"
#include "glidesim/datacache/geo.hpp"
#include "datacache_oracles.hpp"

using namespace glidesim;
using namespace glidesim::datacache;
using testing::chord_distance_km;
using testing::ReferenceLru;

namespace {

constexpr std::uint64_t kMiB = 1 << 20;

CacheConfig config(const std::string& name, std::uint64_t capacity, std::uint64_t block = kMiB) {
    CacheConfig c;
    c.name = name;
    c.capacity_bytes = capacity;
    c.block_size = block;
    return c;
}

}  // namespace

TEST_CASE("haversine: known distances") {
    CHECK(haversine_km({0, 0}, {0, 0}) == 0.0);
    CHECK(haversine_km({0, 0}, {0, 180}) == doctest::Approx(std::numbers::pi * 6371.0));
    CHECK(haversine_km({0, 0}, {90, 0}) == doctest::Approx(std::numbers::pi / 2 * 6371.0));
    CHECK(haversine_km({10, 20}, {-30, 40}) == doctest::Approx(haversine_km({-30, 40}, {10, 20})));
}

TEST_CASE("nearest_cache: small cases") {
    std::vector<CacheNode> caches;
    CHECK_THROWS_AS(nearest_cache({0, 0}, caches), std::invalid_argument);
    auto far = config("far", kMiB);
    far.geo = {0, 20};
    auto near = config("near", kMiB);
    near.geo = {0, 10};
    caches.emplace_back(far);
    CHECK(nearest_cache({0, 0}, caches).name() == "far");
    caches.emplace_back(near);
    CHECK(nearest_cache({0, 0}, caches).name() == "near");
    // equidistant: smaller name wins
    auto west = config("alpha", kMiB);
    west.geo = {0, -10};
    caches.emplace_back(west);
    CHECK(nearest_cache({0, 0}, caches).name() == "alpha");
}

TEST_CASE("nearest_cache: brute-force argmin on 1000 random instances") {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
    for (int round = 0; round < 1000; ++round) {
        std::vector<CacheNode> caches;
        const int n = std::uniform_int_distribution<int>(1, 12)(rng);
        for (int i = 0; i < n; ++i) {
            auto c = config("c" + std::to_string(i), kMiB);
            c.geo = {lat(rng), lon(rng)};
            caches.emplace_back(c);
        }
        const GeoPoint job{lat(rng), lon(rng)};
        std::size_t best = 0;
        for (std::size_t i = 1; i < caches.size(); ++i) {
            if (chord_distance_km(job, caches[i].geo()) < chord_distance_km(job, caches[best].geo())) best = i;
        }
        CHECK(nearest_cache_index(job, caches) == best);
    }
}

TEST_CASE("fetch: residency, LRU eviction, partial blocks, pass-through") {
    CacheNode c(config("c", 2 * kMiB));
    auto r = c.fetch("f", 3 * kMiB, 0, kMiB);
    CHECK(r.bytes_from_origin == kMiB);
    r = c.fetch("f", 3 * kMiB, 0, kMiB);
    CHECK(r.bytes_from_origin == 0);
    CHECK(r.bytes_from_cache == kMiB);
    CHECK(r.duration == doctest::Approx(kMiB / 1e9));

    // A, B, C with room for two: A goes.
    CacheNode lru(config("l", 2 * kMiB));
    lru.fetch("a", kMiB, 0, kMiB);
    lru.fetch("b", kMiB, 0, kMiB);
    r = lru.fetch("c", kMiB, 0, kMiB);
    CHECK(r.evicted_blocks == 1);
    CHECK_FALSE(lru.resident({"a", 0}));
    CHECK(lru.resident({"b", 0}));
    CHECK(lru.resident({"c", 0}));

    // Range rounding and the short last block.
    CacheNode p(config("p", 100 * kMiB));
    r = p.fetch("g", 2 * kMiB + 10, kMiB - 1, 2);
    CHECK(r.block_misses == 2);
    CHECK(r.bytes_from_origin == 2 * kMiB);
    r = p.fetch("g", 2 * kMiB + 10, 0, 2 * kMiB + 10);
    CHECK(r.block_hits == 2);
    CHECK(r.block_misses == 1);
    CHECK(r.bytes_from_origin == 10);

    // Zero-length read.
    r = p.fetch("g", 2 * kMiB + 10, 5, 0);
    CHECK(r.duration == 0.0);
    CHECK(r.block_hits + r.block_misses == 0);
    CHECK_THROWS_AS(p.fetch("g", 100, 50, 51), std::invalid_argument);

    // A block bigger than the whole cache is passed through.
    CacheNode tiny(config("t", kMiB / 2));
    r = tiny.fetch("h", kMiB, 0, kMiB);
    CHECK(r.bytes_from_origin == kMiB);
    CHECK(tiny.resident_blocks() == 0);
    r = tiny.fetch("h", kMiB, 0, kMiB);
    CHECK(r.bytes_from_origin == kMiB);
}

TEST_CASE("fetch: equals reference LRU on 10^4 random accesses") {
    std::mt19937_64 rng(77);
    const std::uint64_t block = 4096;
    for (std::uint64_t capacity : {std::uint64_t{3 * 4096}, std::uint64_t{40 * 4096 + 1000}, std::uint64_t{2000}}) {
        CacheNode c(config("c", capacity, block));
        ReferenceLru ref{capacity, block, {}, 0};
        std::vector<std::uint64_t> sizes;
        for (int i = 0; i < 12; ++i) sizes.push_back(std::uniform_int_distribution<std::uint64_t>(1, 9 * block)(rng));
        std::uint64_t hits = 0, misses = 0;
        for (int step = 0; step < 10000; ++step) {
            const int f = std::uniform_int_distribution<int>(0, 11)(rng);
            const std::string file = "f" + std::to_string(f);
            const std::uint64_t size = sizes[static_cast<std::size_t>(f)];
            const std::uint64_t off = std::uniform_int_distribution<std::uint64_t>(0, size - 1)(rng);
            const std::uint64_t len = std::uniform_int_distribution<std::uint64_t>(0, size - off)(rng);
            const auto r = c.fetch(file, size, off, len);
            const auto [h, m] = ref.access(file, size, off, len);
            REQUIRE(r.block_hits == h);
            REQUIRE(r.block_misses == m);
            hits += h;
            misses += m;
        }
        std::vector<BlockKey> expect;
        for (auto it = ref.items.rbegin(); it != ref.items.rend(); ++it) expect.push_back({it->file, it->index});
        CHECK(c.lru_order() == expect);
        CHECK(c.resident_bytes() == ref.used);
        CHECK(c.stats().hits == hits);
        CHECK(c.stats().misses == misses);
    }
}

TEST_CASE("stage_files: empty, additivity, warm beats cold, replayed epoch") {
    const std::vector<InputFile> files{{"x", 5 * kMiB + 3}, {"y", 7 * kMiB}};
    CacheNode empty(config("e", 100 * kMiB));
    CHECK(stage_files(empty, {}).duration == 0.0);

    CacheNode both(config("b", 100 * kMiB));
    CacheNode only_x(config("x", 100 * kMiB));
    CacheNode only_y(config("y", 100 * kMiB));
    const auto sum = stage_files(both, files);
    const auto dx = stage_files(only_x, std::span(files).first(1)).duration;
    const auto dy = stage_files(only_y, std::span(files).last(1)).duration;
    CHECK(sum.duration == doctest::Approx(dx + dy).epsilon(1e-12));

    const auto warm = stage_files(both, files);
    CHECK(warm.duration < sum.duration);
    CHECK(warm.bytes_from_origin == 0);

    // Working set within capacity: second epoch hits every block.
    CacheNode epoch(config("ep", 64 * kMiB));
    std::vector<InputFile> set;
    for (int i = 0; i < 8; ++i) set.push_back({"w" + std::to_string(i), 8 * kMiB});
    const auto first = stage_files(epoch, set);
    CHECK(first.block_hits == 0);
    const auto second = stage_files(epoch, set);
    CHECK(second.block_misses == 0);
    CHECK(second.block_hits == 64);
}

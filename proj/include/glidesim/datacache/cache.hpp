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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "glidesim/common/geo.hpp"

namespace glidesim::datacache {

struct BlockKey {
    std::string file;
    std::uint64_t index = 0;
    friend bool operator==(const BlockKey&, const BlockKey&) = default;
};

struct BlockKeyHash {
    std::size_t operator()(const BlockKey& k) const noexcept {
        return std::hash<std::string>{}(k.file) ^ (std::hash<std::uint64_t>{}(k.index) * 0x9e3779b97f4a7c15ULL);
    }
};

struct TransferResult {
    std::uint64_t bytes_from_cache = 0;
    std::uint64_t bytes_from_origin = 0;
    double duration = 0.0;  // seconds
    std::uint64_t evicted_blocks = 0;
    std::uint64_t block_hits = 0;
    std::uint64_t block_misses = 0;
};

struct CacheStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t bytes_from_cache = 0;
    std::uint64_t bytes_from_origin = 0;
    std::uint64_t evictions = 0;
    double hit_ratio() const { return hits + misses == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(hits + misses); }
};

struct CacheConfig {
    std::string name;
    GeoPoint geo;
    std::uint64_t capacity_bytes = 0;
    std::uint64_t block_size = 1 << 20;
    double bandwidth_bps = 1e9;         // cache -> job, bytes per second
    double origin_bandwidth_bps = 1e8;  // origin -> cache
};

/// Block cache with LRU eviction in front of a single origin.
///
/// Requests are rounded out to whole blocks; the file's last block is only as
/// long as the bytes left in the file. Missing blocks are pulled from the
/// origin and then served, serially:
///
///     duration = miss_bytes / origin_bandwidth + total_bytes / bandwidth
class CacheNode {
public:
    /// Throws std::invalid_argument when block_size or a bandwidth is not positive.
    explicit CacheNode(CacheConfig config);

    const CacheConfig& config() const { return config_; }
    const std::string& name() const { return config_.name; }
    GeoPoint geo() const { return config_.geo; }

    /// Reads [offset, offset + length) of `file`. Throws std::invalid_argument
    /// if the range runs past `file_size`.
    TransferResult fetch(const std::string& file, std::uint64_t file_size, std::uint64_t offset, std::uint64_t length);

    bool resident(const BlockKey& key) const { return stamp_.contains(key); }
    std::uint64_t resident_bytes() const { return used_; }
    std::size_t resident_blocks() const { return stamp_.size(); }
    /// Resident blocks from least to most recently used.
    std::vector<BlockKey> lru_order() const;
    const CacheStats& stats() const { return stats_; }

private:
    void touch(const BlockKey& key);
    void insert(const BlockKey& key, std::uint64_t bytes, TransferResult& r);

    CacheConfig config_;
    std::unordered_map<BlockKey, std::uint64_t, BlockKeyHash> stamp_;
    std::map<std::uint64_t, std::pair<BlockKey, std::uint64_t>> order_;  // stamp -> (block, bytes)
    std::uint64_t clock_ = 0;
    std::uint64_t used_ = 0;
    CacheStats stats_;
};

/// Cache closest to `where` by great-circle distance; ties go to the smaller
/// name. Throws std::invalid_argument when `caches` is empty.
const CacheNode& nearest_cache(GeoPoint where, std::span<const CacheNode> caches);
std::size_t nearest_cache_index(GeoPoint where, std::span<const CacheNode> caches);

struct InputFile {
    std::string id;
    std::uint64_t size = 0;
};

/// Fetches each file whole, in order. Returns the summed transfer.
TransferResult stage_files(CacheNode& cache, std::span<const InputFile> inputs);

}  // namespace glidesim::datacache

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

#include "glidesim/datacache/cache.hpp"

#include <stdexcept>

#include "glidesim/datacache/geo.hpp"

namespace glidesim::datacache {

CacheNode::CacheNode(CacheConfig config) : config_(std::move(config)) {
    if (config_.block_size == 0) throw std::invalid_argument("cache " + config_.name + ": block size must be positive");
    if (!(config_.bandwidth_bps > 0) || !(config_.origin_bandwidth_bps > 0)) {
        throw std::invalid_argument("cache " + config_.name + ": bandwidths must be positive");
    }
}

void CacheNode::touch(const BlockKey& key) {
    auto it = stamp_.find(key);
    auto node = order_.extract(it->second);
    it->second = ++clock_;
    node.key() = it->second;
    order_.insert(std::move(node));
}

void CacheNode::insert(const BlockKey& key, std::uint64_t bytes, TransferResult& r) {
    while (used_ + bytes > config_.capacity_bytes && !order_.empty()) {
        auto victim = order_.begin();
        used_ -= victim->second.second;
        stamp_.erase(victim->second.first);
        order_.erase(victim);
        ++r.evicted_blocks;
    }
    const std::uint64_t s = ++clock_;
    stamp_.emplace(key, s);
    order_.emplace(s, std::make_pair(key, bytes));
    used_ += bytes;
}

TransferResult CacheNode::fetch(const std::string& file, std::uint64_t file_size, std::uint64_t offset,
                                std::uint64_t length) {
    if (offset > file_size || length > file_size - offset) {
        throw std::invalid_argument("fetch past end of " + file);
    }
    TransferResult r;
    if (length == 0) return r;
    const std::uint64_t bs = config_.block_size;
    const std::uint64_t first = offset / bs;
    const std::uint64_t last = (offset + length - 1) / bs;
    for (std::uint64_t b = first; b <= last; ++b) {
        const std::uint64_t bytes = std::min(bs, file_size - b * bs);
        const BlockKey key{file, b};
        if (stamp_.contains(key)) {
            touch(key);
            r.bytes_from_cache += bytes;
            ++r.block_hits;
            continue;
        }
        ++r.block_misses;
        r.bytes_from_origin += bytes;
        if (bytes <= config_.capacity_bytes) insert(key, bytes, r);
    }
    const double total = static_cast<double>(r.bytes_from_cache + r.bytes_from_origin);
    r.duration = static_cast<double>(r.bytes_from_origin) / config_.origin_bandwidth_bps + total / config_.bandwidth_bps;

    stats_.hits += r.block_hits;
    stats_.misses += r.block_misses;
    stats_.bytes_from_cache += r.bytes_from_cache;
    stats_.bytes_from_origin += r.bytes_from_origin;
    stats_.evictions += r.evicted_blocks;
    return r;
}

std::vector<BlockKey> CacheNode::lru_order() const {
    std::vector<BlockKey> out;
    out.reserve(order_.size());
    for (const auto& [s, entry] : order_) out.push_back(entry.first);
    return out;
}

std::size_t nearest_cache_index(GeoPoint where, std::span<const CacheNode> caches) {
    if (caches.empty()) throw std::invalid_argument("no caches to choose from");
    std::size_t best = 0;
    double best_d = haversine_km(where, caches[0].geo());
    for (std::size_t i = 1; i < caches.size(); ++i) {
        const double d = haversine_km(where, caches[i].geo());
        if (d < best_d || (d == best_d && caches[i].name() < caches[best].name())) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

const CacheNode& nearest_cache(GeoPoint where, std::span<const CacheNode> caches) {
    return caches[nearest_cache_index(where, caches)];
}

TransferResult stage_files(CacheNode& cache, std::span<const InputFile> inputs) {
    TransferResult sum;
    for (const InputFile& f : inputs) {
        const TransferResult r = cache.fetch(f.id, f.size, 0, f.size);
        sum.bytes_from_cache += r.bytes_from_cache;
        sum.bytes_from_origin += r.bytes_from_origin;
        sum.duration += r.duration;
        sum.evicted_blocks += r.evicted_blocks;
        sum.block_hits += r.block_hits;
        sum.block_misses += r.block_misses;
    }
    return sum;
}

}  // namespace glidesim::datacache

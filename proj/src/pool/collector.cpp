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

#include "glidesim/pool/collector.hpp"

#include "glidesim/matchlang/evaluate.hpp"

namespace glidesim::pool {

using matchlang::Ad;
using matchlang::AdKind;

void Collector::advertise(Ad ad, SimTime now) {
    auto name = ad.get_text("name");
    if (!name || name->empty()) {
        throw matchlang::InvalidAd("rejected " + std::string(matchlang::kind_name(ad.kind())) +
                                   " ad without a text 'name' attribute");
    }
    Key key{*name, ad.kind()};
    ads_.insert_or_assign(std::move(key), Entry{std::move(ad), now});
}

bool Collector::refresh(AdKind kind, const std::string& name, SimTime now) {
    auto it = ads_.find({name, kind});
    if (it == ads_.end()) return false;
    it->second.last_heard = now;
    return true;
}

bool Collector::invalidate(AdKind kind, const std::string& name) { return ads_.erase({name, kind}) > 0; }

std::vector<Ad> Collector::expire(SimTime now) {
    const Duration limit = static_cast<Duration>(config_.missed_updates_limit) * config_.update_interval;
    std::vector<Ad> removed;
    for (auto it = ads_.begin(); it != ads_.end();) {
        if (now - it->second.last_heard > limit) {
            removed.push_back(std::move(it->second.ad));
            it = ads_.erase(it);
        } else {
            ++it;
        }
    }
    return removed;
}

std::vector<Ad> Collector::query(const matchlang::Expr& constraint) const {
    std::vector<Ad> out;
    for (const auto& [key, entry] : ads_) {
        if (matchlang::evaluate(constraint, entry.ad).is_true()) out.push_back(entry.ad);
    }
    return out;
}

const Ad* Collector::find(AdKind kind, const std::string& name) const {
    auto it = ads_.find({name, kind});
    return it == ads_.end() ? nullptr : &it->second.ad;
}

std::optional<SimTime> Collector::last_heard(AdKind kind, const std::string& name) const {
    auto it = ads_.find({name, kind});
    if (it == ads_.end()) return std::nullopt;
    return it->second.last_heard;
}

std::string Collector::dump() const {
    std::vector<Ad> ads;
    ads.reserve(ads_.size());
    for (const auto& [key, entry] : ads_) ads.push_back(entry.ad);
    return matchlang::write_ads(ads);
}

}  // namespace glidesim::pool

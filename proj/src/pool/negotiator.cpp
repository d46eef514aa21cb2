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

#include "glidesim/pool/negotiator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "glidesim/matchlang/match.hpp"

namespace glidesim::pool {

std::vector<int> largest_remainder(int total, std::span<const double> weights) {
    std::vector<int> seats(weights.size(), 0);
    if (weights.empty() || total <= 0) return seats;
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<double> remainder(weights.size());
    int given = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double exact = static_cast<double>(total) * weights[i] / sum;
        seats[i] = static_cast<int>(std::floor(exact));
        remainder[i] = exact - seats[i];
        given += seats[i];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&remainder](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; given < total; k = (k + 1) % order.size(), ++given) ++seats[order[k]];
    return seats;
}

namespace {

struct MemoKey {
    std::uint64_t cluster;
    std::size_t slot;
    friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.cluster * 0x9e3779b97f4a7c15ULL ^ k.slot);
    }
};

struct Submitter {
    std::string name;
    double effective_priority;
    const OwnerQueue* queue;
    std::vector<bool> matched;
    std::vector<std::uint64_t> clusters;
    int running = 0;
    bool exhausted = false;
};

class Cycle {
public:
    Cycle(std::uint64_t cycle, std::span<const OwnerQueue> queues, std::span<const SlotState* const> slots,
          const std::map<std::string, UserRecord>& users, const std::map<std::string, int>& running)
        : cycle_(cycle), slots_(slots.begin(), slots.end()), taken_(slots.size(), false) {
        std::sort(slots_.begin(), slots_.end(),
                  [](const SlotState* a, const SlotState* b) { return a->name < b->name; });
        // Jobs without a precomputed cluster each get a private id above any real one.
        std::uint64_t private_id = std::uint64_t{1} << 62;
        for (const OwnerQueue& q : queues) {
            if (q.jobs.empty()) continue;
            Submitter s;
            s.name = q.owner;
            auto u = users.find(q.owner);
            s.effective_priority = u != users.end() ? u->second.effective_priority() : UserRecord{}.effective_priority();
            s.queue = &q;
            s.matched.assign(q.jobs.size(), false);
            for (const JobState* j : q.jobs) {
                const std::uint64_t c = j->autocluster ? *j->autocluster : private_id++;
                s.clusters.push_back(c);
                representative_.try_emplace(c, j);
            }
            auto r = running.find(q.owner);
            s.running = r != running.end() ? r->second : 0;
            submitters_.push_back(std::move(s));
        }
        std::sort(submitters_.begin(), submitters_.end(), [](const Submitter& a, const Submitter& b) {
            if (a.effective_priority != b.effective_priority) return a.effective_priority < b.effective_priority;
            return a.name < b.name;
        });
    }

    std::vector<Match> run() {
        for (;;) {
            std::vector<Submitter*> active;
            for (auto& s : submitters_) {
                if (!s.exhausted && has_live_job(s)) active.push_back(&s);
            }
            if (active.empty()) break;

            const int matchable = count_matchable_free_slots(active);
            if (matchable == 0) break;

            std::vector<double> weights;
            int held = 0;
            for (auto* s : active) {
                weights.push_back(1.0 / s->effective_priority);
                held += s->running;
            }
            std::vector<int> quota = largest_remainder(matchable + held, weights);
            int open = 0;
            for (std::size_t i = 0; i < active.size(); ++i) {
                quota[i] = std::max(0, quota[i] - active[i]->running);
                open += quota[i];
            }
            if (open == 0) quota = largest_remainder(matchable, weights);

            bool changed = false;
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (quota[i] == 0) continue;
                const int got = serve(*active[i], quota[i]);
                changed = changed || got > 0;
                if (got < quota[i]) {
                    active[i]->exhausted = true;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        return std::move(matches_);
    }

private:
    bool matches(std::uint64_t cluster, std::size_t slot) {
        const MemoKey key{cluster, slot};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const bool ok = matchlang::symmetric_match(representative_.at(cluster)->ad, slots_[slot]->ad);
        memo_.emplace(key, ok);
        return ok;
    }

    bool has_live_job(const Submitter& s) const {
        for (std::size_t j = 0; j < s.matched.size(); ++j) {
            if (!s.matched[j] && !dead_.contains(s.clusters[j])) return true;
        }
        return false;
    }

    int count_matchable_free_slots(const std::vector<Submitter*>& active) {
        std::vector<std::uint64_t> live;
        std::unordered_set<std::uint64_t> seen;
        for (const auto* s : active) {
            for (std::size_t j = 0; j < s->matched.size(); ++j) {
                const auto c = s->clusters[j];
                if (!s->matched[j] && !dead_.contains(c) && seen.insert(c).second) live.push_back(c);
            }
        }
        int n = 0;
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            if (taken_[k]) continue;
            for (auto c : live) {
                if (matches(c, k)) {
                    ++n;
                    break;
                }
            }
        }
        return n;
    }

    int serve(Submitter& s, int quota) {
        int got = 0;
        for (std::size_t j = 0; j < s.matched.size() && got < quota; ++j) {
            if (s.matched[j]) continue;
            const std::uint64_t c = s.clusters[j];
            if (dead_.contains(c)) continue;

            std::vector<std::size_t> candidates;
            for (std::size_t k = 0; k < slots_.size(); ++k) {
                if (!taken_[k] && matches(c, k)) candidates.push_back(k);
            }
            if (candidates.empty()) {
                dead_.insert(c);
                continue;
            }
            const JobState* job = s.queue->jobs[j];
            std::vector<const matchlang::Ad*> ads;
            ads.reserve(candidates.size());
            for (auto k : candidates) ads.push_back(&slots_[k]->ad);
            const std::size_t best = candidates[matchlang::rank_permutation(job->ad, ads).front()];

            taken_[best] = true;
            s.matched[j] = true;
            ++s.running;
            ++got;
            matches_.push_back(Match{job->id, slots_[best]->name, job->schedd, cycle_});
        }
        return got;
    }

    std::uint64_t cycle_;
    std::vector<const SlotState*> slots_;
    std::vector<bool> taken_;
    std::vector<Submitter> submitters_;
    std::unordered_map<std::uint64_t, const JobState*> representative_;
    std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
    std::unordered_set<std::uint64_t> dead_;
    std::vector<Match> matches_;
};

}  // namespace

std::vector<Match> negotiate(std::uint64_t cycle, std::span<const OwnerQueue> idle_jobs,
                             std::span<const SlotState* const> idle_slots,
                             const std::map<std::string, UserRecord>& users,
                             const std::map<std::string, int>& running) {
    return Cycle(cycle, idle_jobs, idle_slots, users, running).run();
}

}  // namespace glidesim::pool

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
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "glidesim/matchlang/matchlang.hpp"
#include "glidesim/pool/negotiator.hpp"
#include "pool_fixtures.hpp"

using namespace glidesim;
using namespace glidesim::pool;
using testing::make_job;
using testing::make_slot;

namespace {

// Exact proportional shares with integer priorities: seat i is entitled to
// total * (L/p_i) / sum_k (L/p_k). Multiplying through by the denominator keeps
// every comparison in integers.
struct ExactShares {
    std::vector<std::int64_t> numer;  // entitlement * denom
    std::int64_t denom;
};

ExactShares exact_shares(int total, const std::vector<int>& priorities) {
    std::int64_t l = 1;
    for (int p : priorities) l = std::lcm(l, static_cast<std::int64_t>(p));
    std::int64_t w = 0;
    for (int p : priorities) w += l / p;
    ExactShares s{{}, w};
    for (int p : priorities) s.numer.push_back(total * (l / p));
    return s;
}

// Every allocation summing to `total` that minimises the L1 distance to the
// exact shares. Hamilton rounding always lies in this set.
std::set<std::vector<int>> l1_minimisers(int total, const std::vector<int>& priorities) {
    const auto ex = exact_shares(total, priorities);
    std::set<std::vector<int>> best;
    std::int64_t best_cost = -1;
    std::vector<int> a(priorities.size(), 0);
    auto visit = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == a.size()) {
            a[i] = left;
            std::int64_t cost = 0;
            for (std::size_t k = 0; k < a.size(); ++k) cost += std::llabs(a[k] * ex.denom - ex.numer[k]);
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best.clear();
            }
            if (cost == best_cost) best.insert(a);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            a[i] = v;
            self(self, i + 1, left - v);
        }
    };
    visit(visit, 0, total);
    return best;
}

struct Scenario {
    std::vector<JobState> jobs;
    std::vector<SlotState> slots;
    std::map<std::string, UserRecord> users;

    std::vector<OwnerQueue> queues() const {
        std::map<std::string, OwnerQueue> by_owner;
        for (const auto& j : jobs) {
            auto& q = by_owner[j.owner];
            q.owner = j.owner;
            q.jobs.push_back(&j);
        }
        std::vector<OwnerQueue> out;
        for (auto& [_, q] : by_owner) out.push_back(q);
        return out;
    }
    std::vector<const SlotState*> slot_ptrs() const {
        std::vector<const SlotState*> out;
        for (const auto& s : slots) out.push_back(&s);
        return out;
    }
    std::vector<Match> run(const std::map<std::string, int>& running = {}) const {
        const auto q = queues();
        const auto s = slot_ptrs();
        return negotiate(1, q, s, users, running);
    }
    void user(const std::string& name, double prio) {
        UserRecord r;
        r.user = name;
        r.real_priority = prio;
        users[name] = r;
    }
};

std::map<std::string, int> per_owner(const std::vector<Match>& ms, const Scenario& sc) {
    std::map<std::string, std::string> owner;
    for (const auto& j : sc.jobs) owner[j.id] = j.owner;
    std::map<std::string, int> out;
    for (const auto& m : ms) ++out[owner.at(m.job_id)];
    return out;
}

Scenario saturating(int slots, const std::vector<std::pair<std::string, double>>& users, int jobs_each) {
    Scenario sc;
    for (int i = 0; i < slots; ++i) sc.slots.push_back(make_slot("slot" + std::to_string(100 + i)));
    for (const auto& [u, prio] : users) {
        sc.user(u, prio);
        for (int k = 0; k < jobs_each; ++k) sc.jobs.push_back(make_job(u + "." + std::to_string(k), u));
    }
    return sc;
}

}  // namespace

TEST_CASE("largest remainder rounding") {
    const std::vector<double> w{1.0, 0.5};
    CHECK(largest_remainder(9, w) == std::vector<int>{6, 3});
    CHECK(largest_remainder(10, std::vector<double>{1, 1}) == std::vector<int>{5, 5});
    CHECK(largest_remainder(3, std::vector<double>{1, 1}) == std::vector<int>{2, 1});
    CHECK(largest_remainder(0, w) == std::vector<int>{0, 0});
    CHECK(largest_remainder(5, std::vector<double>{}).empty());
}

TEST_CASE("largest remainder lies among exact L1 minimisers") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 4)(rng);
        const int total = std::uniform_int_distribution<int>(0, 20)(rng);
        std::vector<int> prios;
        std::vector<double> weights;
        for (int i = 0; i < n; ++i) {
            prios.push_back(std::uniform_int_distribution<int>(1, 6)(rng));
            weights.push_back(1.0 / prios.back());
        }
        const auto got = largest_remainder(total, weights);
        CHECK(std::accumulate(got.begin(), got.end(), 0) == total);
        CHECK(l1_minimisers(total, prios).contains(got));
    }
}

TEST_CASE("equal priorities split evenly") {
    auto sc = saturating(10, {{"alice", 1.0}, {"bob", 1.0}}, 8);
    const auto m = sc.run();
    CHECK(m.size() == 10);
    const auto c = per_owner(m, sc);
    CHECK(c.at("alice") == 5);
    CHECK(c.at("bob") == 5);
}

TEST_CASE("priority ratio 1:2 on nine slots") {
    auto sc = saturating(9, {{"alice", 1.0}, {"bob", 2.0}}, 20);
    const auto oracle = l1_minimisers(9, {1, 2});
    REQUIRE(oracle.size() == 1);
    const auto c = per_owner(sc.run(), sc);
    CHECK(std::vector<int>{c.at("alice"), c.at("bob")} == *oracle.begin());
    CHECK(c.at("alice") == 6);
}

TEST_CASE("no matching pair yields no matches") {
    Scenario sc;
    sc.slots.push_back(make_slot("s1", 1));
    sc.jobs.push_back(make_job("j1", "u", 4));
    CHECK(sc.run().empty());
}

TEST_CASE("unused share spills to other users") {
    Scenario sc = saturating(10, {{"bob", 1.0}}, 20);
    sc.user("alice", 1.0);
    sc.jobs.push_back(make_job("a0", "alice"));
    sc.jobs.push_back(make_job("a1", "alice"));
    const auto c = per_owner(sc.run(), sc);
    CHECK(c.at("alice") == 2);
    CHECK(c.at("bob") == 8);
}

TEST_CASE("share accounts for slots already held") {
    auto sc = saturating(5, {{"alice", 1.0}, {"bob", 1.0}}, 10);
    const auto c = per_owner(sc.run({{"alice", 5}}), sc);
    CHECK(c.count("alice") == 0);
    CHECK(c.at("bob") == 5);
}

TEST_CASE("users served best priority first, jobs in submission order, best rank") {
    Scenario sc;
    sc.user("zed", 0.5);
    sc.user("amy", 2.0);
    auto big = make_slot("big", 8);
    auto small = make_slot("small", 1);
    sc.slots = {small, big};
    sc.jobs.push_back(make_job("amy.0", "amy"));
    auto z0 = make_job("zed.0", "zed");
    z0.ad.set_expr("rank", "TARGET.cpus");
    sc.jobs.push_back(z0);
    sc.jobs.push_back(make_job("zed.1", "zed"));
    const auto m = sc.run();
    REQUIRE(m.size() == 2);
    CHECK(m[0].job_id == "zed.0");
    CHECK(m[0].slot_name == "big");
    // zed is entitled to 1.6 of 2 slots and rounds up to both.
    CHECK(m[1].job_id == "zed.1");
}

TEST_CASE("random pools: invariants and determinism") {
    std::mt19937_64 rng(11);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int trial = 0; trial < 150; ++trial) {
        Scenario sc;
        const int nslots = pick(0, 12);
        for (int i = 0; i < nslots; ++i) {
            auto s = make_slot("s" + std::to_string(i), pick(1, 4));
            if (pick(0, 3) == 0) s.ad.set_expr("requirements", "TARGET.owner != \"u1\"");
            sc.slots.push_back(s);
        }
        const int nusers = pick(1, 3);
        for (int u = 0; u < nusers; ++u) {
            const std::string name = "u" + std::to_string(u);
            sc.user(name, 0.5 + pick(0, 8) * 0.5);
            const int nj = pick(0, 8);
            for (int k = 0; k < nj; ++k) {
                auto j = make_job(name + "." + std::to_string(k), name, pick(1, 4));
                if (pick(0, 1)) {
                    j.autocluster = static_cast<std::uint64_t>(j.request_cpus()) * 10 + static_cast<std::uint64_t>(u);
                }
                sc.jobs.push_back(j);
            }
        }
        const auto m = sc.run();
        CHECK(m == sc.run());

        std::set<std::string> used_slots, used_jobs;
        std::map<std::string, const JobState*> jobs;
        std::map<std::string, const SlotState*> slots;
        for (const auto& j : sc.jobs) jobs[j.id] = &j;
        for (const auto& s : sc.slots) slots[s.name] = &s;
        for (const auto& x : m) {
            CHECK(used_slots.insert(x.slot_name).second);
            CHECK(used_jobs.insert(x.job_id).second);
            CHECK(matchlang::symmetric_match(jobs.at(x.job_id)->ad, slots.at(x.slot_name)->ad));
        }
        // Fixpoint: nothing left over still matches.
        for (const auto& j : sc.jobs) {
            if (used_jobs.contains(j.id)) continue;
            for (const auto& s : sc.slots) {
                if (used_slots.contains(s.name)) continue;
                CHECK_FALSE(matchlang::symmetric_match(j.ad, s.ad));
            }
        }
    }
}

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

#include "glidesim/gridsim/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace glidesim::gridsim {

namespace {

template <class... F>
struct Overloaded : F... {
    using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

void check_bounds(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0 || hi < lo) {
        throw std::invalid_argument("distribution bounds must be finite with 0 <= lo <= hi");
    }
}

}  // namespace

Distribution::Distribution(Model m) : model_(m) {
    std::visit(Overloaded{
                   [](const Degenerate& d) { check_bounds(d.value, d.value); },
                   [](const Uniform& u) { check_bounds(u.lo, u.hi); },
                   [](const BoundedLogNormal& l) {
                       check_bounds(l.lo, l.hi);
                       if (!(l.median > 0) || !(l.sigma > 0) || !std::isfinite(l.sigma)) {
                           throw std::invalid_argument("lognormal needs median > 0 and sigma > 0");
                       }
                   },
               },
               model_);
}

double Distribution::lower() const {
    return std::visit(Overloaded{[](const Degenerate& d) { return d.value; }, [](const Uniform& u) { return u.lo; },
                                 [](const BoundedLogNormal& l) { return l.lo; }},
                      model_);
}

double Distribution::upper() const {
    return std::visit(Overloaded{[](const Degenerate& d) { return d.value; }, [](const Uniform& u) { return u.hi; },
                                 [](const BoundedLogNormal& l) { return l.hi; }},
                      model_);
}

double standard_normal(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double exponential(Rng& rng, double rate) { return -std::log(1.0 - uniform01(rng)) / rate; }

double Distribution::sample(Rng& rng) const {
    return std::visit(Overloaded{
                          [](const Degenerate& d) { return d.value; },
                          [&rng](const Uniform& u) { return u.lo + (u.hi - u.lo) * uniform01(rng); },
                          [&rng](const BoundedLogNormal& l) {
                              const double mu = std::log(l.median);
                              for (int tries = 0; tries < 1000; ++tries) {
                                  const double x = std::exp(mu + l.sigma * standard_normal(rng));
                                  if (x >= l.lo && x <= l.hi) return x;
                              }
                              // Bounds far in the tail: fall back to the nearer bound.
                              return l.median < l.lo ? l.lo : l.hi;
                          },
                      },
                      model_);
}

Duration Distribution::sample_duration(Rng& rng) const {
    const auto d = static_cast<Duration>(std::llround(sample(rng)));
    const auto lo = static_cast<Duration>(std::ceil(lower()));
    const auto hi = static_cast<Duration>(std::floor(upper()));
    return lo <= hi ? std::clamp(d, lo, hi) : d;
}

std::string Distribution::describe() const {
    char buf[128];
    std::visit(Overloaded{
                   [&](const Degenerate& d) { std::snprintf(buf, sizeof buf, "degenerate(%g)", d.value); },
                   [&](const Uniform& u) { std::snprintf(buf, sizeof buf, "uniform(%g,%g)", u.lo, u.hi); },
                   [&](const BoundedLogNormal& l) {
                       std::snprintf(buf, sizeof buf, "lognormal(median=%g,sigma=%g,%g,%g)", l.median, l.sigma, l.lo,
                                     l.hi);
                   },
               },
               model_);
    return buf;
}

}  // namespace glidesim::gridsim

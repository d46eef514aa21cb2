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

#include <string>
#include <variant>

#include "glidesim/common/rng.hpp"
#include "glidesim/common/time.hpp"

namespace glidesim::gridsim {

struct Degenerate {
    double value = 0.0;
};

struct Uniform {
    double lo = 0.0;
    double hi = 0.0;
};

/// Log-normal with the given median and shape, restricted to [lo, hi] by
/// rejection.
struct BoundedLogNormal {
    double median = 1.0;
    double sigma = 1.0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Scalar distribution over seconds (or any nonnegative quantity).
class Distribution {
public:
    using Model = std::variant<Degenerate, Uniform, BoundedLogNormal>;

    Distribution() : model_(Degenerate{}) {}
    /// Throws std::invalid_argument on non-finite or inverted bounds.
    Distribution(Model m);  // NOLINT(google-explicit-constructor)

    const Model& model() const { return model_; }
    double lower() const;
    double upper() const;
    double sample(Rng& rng) const;
    /// sample() rounded to whole seconds.
    Duration sample_duration(Rng& rng) const;
    std::string describe() const;

private:
    Model model_;
};

/// Standard normal draw (Box-Muller on two uniform01 draws).
double standard_normal(Rng& rng);

/// Exponential draw with the given rate.
double exponential(Rng& rng, double rate);

}  // namespace glidesim::gridsim

// Copyright 2026 The qudit-qss Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace qss {

/// Binomial proportion estimate with its standard error.
struct Proportion {
    std::size_t hits = 0;
    std::size_t trials = 0;

    double rate() const noexcept { return trials == 0 ? 0.0 : static_cast<double>(hits) / trials; }
    double std_error() const noexcept {
        if (trials == 0) return 0.0;
        const double p = rate();
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
    /// Standard error under a hypothesised rate; nonzero even when the sample is all-or-nothing.
    double std_error_at(double p) const noexcept {
        return trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
    Proportion& operator+=(const Proportion& o) noexcept {
        hits += o.hits;
        trials += o.trials;
        return *this;
    }
};

/// Mismatch statistics over eavesdrop-test rounds. With zero test rounds the
/// rate and standard error are reported as 0.
struct DetectionStats {
    std::size_t sifted = 0;
    std::size_t test_rounds = 0;
    std::size_t mismatches = 0;

    double rate() const noexcept {
        return test_rounds == 0 ? 0.0 : static_cast<double>(mismatches) / test_rounds;
    }
    double std_error() const noexcept { return Proportion{mismatches, test_rounds}.std_error(); }

    DetectionStats& operator+=(const DetectionStats& o) noexcept {
        sifted += o.sifted;
        test_rounds += o.test_rounds;
        mismatches += o.mismatches;
        return *this;
    }
};

/// Pearson chi-squared goodness-of-fit p-value of `counts` against the uniform distribution.
inline double uniform_chi_squared_p(std::span<const std::size_t> counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi-squared needs at least two categories");
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    if (total <= 0.0) throw std::invalid_argument("chi-squared over empty sample");
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (auto c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace qss

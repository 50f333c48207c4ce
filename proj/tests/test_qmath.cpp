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

#include "qss/qmath.hpp"
#include "qss/stats.hpp"

#include <catch2/catch.hpp>

#include <cmath>

using namespace qss;

namespace {

StateVector random_state(std::vector<std::size_t> dims, SeededRng& rng) {
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    std::vector<Amp> a(total);
    for (auto& x : a) x = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    return StateVector(std::move(dims), std::move(a)).normalized_copy();
}

}  // namespace

TEST_CASE("state vector construction validates its input", "[qmath]") {
    REQUIRE_THROWS_AS(StateVector({1}, {Amp{1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(StateVector({2, 2}, {Amp{1}, Amp{0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(StateVector({2}, {Amp{1}, Amp{1}}, true), std::invalid_argument);
    REQUIRE_THROWS_AS(StateVector({2}, {Amp{NAN}, Amp{0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(StateVector::canonical({3, 3}, 9), std::out_of_range);
    REQUIRE_THROWS_AS(StateVector({2}, {Amp{0}, Amp{0}}).normalized_copy(), std::domain_error);

    const StateVector single({Amp{0.6}, Amp{0.8}}, true);
    CHECK(single.registers() == 1);
    CHECK(single.dims()[0] == 2);
    CHECK(single.normalized());
}

TEST_CASE("register 0 is the most significant digit", "[qmath]") {
    const auto s = StateVector::canonical({2, 3, 5}, 1 * 15 + 2 * 5 + 4);
    CHECK(s.digits(1 * 15 + 2 * 5 + 4) == std::vector<std::size_t>{1, 2, 4});
    const auto t = tensor({StateVector::canonical({2}, 1), StateVector::canonical({3}, 2), StateVector::canonical({5}, 4)});
    CHECK(std::abs(inner(s, t) - Amp{1}) < kIdentityTol);
}

TEST_CASE("tensor products and partial contractions", "[qmath]") {
    SeededRng rng(7, 0);
    REQUIRE_THROWS_AS(tensor(std::initializer_list<StateVector>{}), std::invalid_argument);

    SECTION("norms multiply") {
        const auto u = random_state({3}, rng), v = random_state({4}, rng), w = random_state({2}, rng);
        const auto t = tensor({u, v, w});
        CHECK(t.size() == 24);
        CHECK(t.norm_squared() == Approx(1.0).margin(1e-12));
    }

    SECTION("contracting a product factor leaves the rest") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto u = random_state({3}, rng), v = random_state({3}, rng), w = random_state({3}, rng);
            const auto t = tensor({u, v, w});
            const auto rest = partial_inner({RegisterBra{1, &v}}, t);
            const auto expect = tensor({u, w});
            REQUIRE(rest.size() == expect.size());
            for (std::size_t i = 0; i < rest.size(); ++i) CHECK(std::abs(rest[i] - expect[i]) < 1e-12);
        }
    }

    SECTION("full contraction equals the inner product") {
        const auto psi = random_state({3, 3}, rng);
        const auto a = random_state({3}, rng), b = random_state({3}, rng);
        const auto r = partial_inner({RegisterBra{0, &a}, RegisterBra{1, &b}}, psi);
        CHECK(std::abs(r[0] - inner(tensor({a, b}), psi)) < 1e-12);
    }

    SECTION("embed undoes contraction on product states") {
        const auto u = random_state({3}, rng), v = random_state({3}, rng);
        const auto t = tensor({u, v});
        const auto rest = partial_inner({RegisterBra{0, &u}}, t);
        const auto back = embed(rest, 0, u);
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(back[i] - t[i]) < 1e-12);
    }

    SECTION("bras must match the register dimension") {
        const auto psi = random_state({3, 3}, rng);
        const auto q = random_state({2}, rng);
        CHECK_THROWS(partial_inner({RegisterBra{0, &q}}, psi));
        CHECK_THROWS(partial_inner({RegisterBra{5, &q}}, psi));
    }
}

TEST_CASE("rng streams are reproducible and independent", "[qmath][rng]") {
    SeededRng a(42, 1), b(42, 1), c(42, 2);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs = differs || x != c.next_u64();
    }
    CHECK(differs);
    REQUIRE_THROWS_AS(a.uniform_int(0), std::invalid_argument);

    std::vector<std::size_t> counts(7, 0);
    SeededRng u(3, 0);
    for (int i = 0; i < 70'000; ++i) ++counts[u.uniform_int(7)];
    CHECK(uniform_chi_squared_p(counts) > 0.001);
}

TEST_CASE("sample_index follows the weights", "[qmath]") {
    SeededRng rng(11, 0);
    const std::vector<double> w{0.1, 0.0, 0.6, 0.3};
    std::vector<std::size_t> counts(4, 0);
    const std::size_t N = 50'000;
    for (std::size_t i = 0; i < N; ++i) ++counts[sample_index(w, rng)];
    CHECK(counts[1] == 0);
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double se = std::sqrt(w[k] * (1 - w[k]) / N);
        CHECK(std::abs(static_cast<double>(counts[k]) / N - w[k]) <= 5 * se + 1e-12);
    }
    CHECK_THROWS(sample_index(std::vector<double>{}, rng));
}

TEST_CASE("Born measurement conserves probability and collapses", "[qmath][born]") {
    SeededRng rng(5, 0);
    const auto psi = random_state({3, 2}, rng);
    std::vector<StateVector> basis;
    for (std::size_t k = 0; k < 3; ++k) basis.push_back(StateVector::canonical({3}, k));

    // Independent marginal: sum |amplitude|^2 over register 1.
    std::vector<double> marginal(3, 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) marginal[i / 2] += std::norm(psi[i]);
    double total = 0.0;
    for (double p : marginal) total += p;
    CHECK(total == Approx(1.0).margin(1e-12));

    std::vector<std::size_t> counts(3, 0);
    const std::size_t N = 30'000;
    for (std::size_t i = 0; i < N; ++i) {
        auto m = born_measure(psi, 0, basis, rng);
        ++counts[m.outcome];
        if (i < 20) {
            CHECK(m.probability == Approx(marginal[m.outcome]).margin(1e-12));
            CHECK(m.collapsed.norm_squared() == Approx(1.0).margin(1e-12));
            const auto again = born_measure(m.collapsed, 0, basis, rng);
            CHECK(again.outcome == m.outcome);
        }
    }
    for (std::size_t k = 0; k < 3; ++k) {
        const double se = std::sqrt(marginal[k] * (1 - marginal[k]) / N);
        CHECK(std::abs(static_cast<double>(counts[k]) / N - marginal[k]) <= 5 * se);
    }
}

TEST_CASE("orthonormality checks", "[qmath]") {
    std::vector<StateVector> good{StateVector::canonical({2}, 0), StateVector::canonical({2}, 1)};
    CHECK(gram_deviation(good) < kIdentityTol);
    REQUIRE_NOTHROW(require_orthonormal_basis(good, 2));
    std::vector<StateVector> bad{StateVector::canonical({2}, 0), StateVector::canonical({2}, 0)};
    CHECK(gram_deviation(bad) == Approx(1.0));
    CHECK_THROWS(require_orthonormal_basis(bad, 2));
    CHECK_THROWS(require_orthonormal_basis(good, 3));
}

TEST_CASE("proportions and chi-squared", "[stats]") {
    Proportion p{30, 100};
    CHECK(p.rate() == Approx(0.3));
    CHECK(p.std_error() == Approx(std::sqrt(0.21 / 100)));
    CHECK(Proportion{}.std_error() == 0.0);
    DetectionStats s{10, 0, 0};
    CHECK(s.rate() == 0.0);
    const std::vector<std::size_t> skewed{1000, 10, 10};
    CHECK(uniform_chi_squared_p(skewed) < 1e-6);
    CHECK_THROWS(uniform_chi_squared_p(std::vector<std::size_t>{5}));
}

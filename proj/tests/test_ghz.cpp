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

#include "qss/attacks.hpp"

#include "oracles.hpp"

#include <catch2/catch.hpp>

#include <set>

using namespace qss;

TEST_CASE("GHZ state layout", "[ghz]") {
    const GhzSpec spec{3, 3};
    const auto g = ghz_state(spec);
    CHECK(g.size() == 27);
    CHECK(g.norm_squared() == Approx(1.0).margin(1e-12));
    for (int j = 0; j < 3; ++j) CHECK(std::abs(g[static_cast<std::size_t>(13 * j)] - 1 / std::sqrt(3.0)) < 1e-15);
    CHECK_THROWS_AS((GhzSpec{31, 6}.dimension()), std::length_error);
    CHECK_THROWS_AS((GhzSpec{3, 1}.dimension()), std::invalid_argument);
}

TEST_CASE("consistency conditions", "[ghz]") {
    const std::vector<int> b{1, 2, 0}, ok{2, 2, 2}, bad{1, 0, 0};
    CHECK(consistent(b, ok, 3).valid());
    CHECK_FALSE(consistent(b, bad, 3).outcome_valid);
    CHECK(complement_label(std::vector<int>{4, 4}, 5) == 2);
    CHECK_THROWS(consistent(b, std::vector<int>{0, 0}, 3));
}

TEST_CASE("lookup tables", "[ghz][lookup]") {
    SECTION("sizes") {
        CHECK(lookup_table(3, 3, BasisKind::MUB).rows.size() == 9);
        CHECK(lookup_table(2, 3, BasisKind::MBB).rows.size() == 4);
        CHECK(lookup_table(5, 4, BasisKind::MUB).rows.size() == 125);
        CHECK_THROWS(lookup_table(4, 3, BasisKind::MUB));
    }
    SECTION("the dealer basis makes the labels sum to zero and rows are distinct") {
        const auto t = lookup_table(5, 3, BasisKind::MUB);
        std::set<std::vector<int>> seen;
        for (const auto& r : t.rows) {
            std::vector<int> full{r.dealer_basis};
            full.insert(full.end(), r.bases.begin(), r.bases.end());
            CHECK(sums_to_zero(full, 5));
            CHECK(t.accepts(full));
            seen.insert(full);
        }
        CHECK(seen.size() == t.rows.size());
        CHECK_FALSE(t.accepts(std::vector<int>{1, 0, 0}));
        CHECK(t.dealer_outcome(std::vector<int>{1, 2}) == 2);
    }
}

TEST_CASE("lookup tables are sound for d up to 7", "[ghz][lookup][property]") {
    // For every row, outcomes that break the outcome rule have zero probability.
    auto sound = [](int d, BasisKind kind) {
        double worst = 0.0, total_min = 2.0;
        for (const auto& r : lookup_table(d, 3, kind).rows) {
            const std::vector<int> bases{r.dealer_basis, r.bases[0], r.bases[1]};
            double total = 0.0;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    for (int c = 0; c < d; ++c) {
                        const double p = oracle::ghz_joint_probability(kind, d, bases, {a, b, c});
                        total += p;
                        if (mod(a + b + c, d) != 0) worst = std::max(worst, p);
                    }
            total_min = std::min(total_min, total);
        }
        CHECK(worst < 1e-12);
        CHECK(total_min == Approx(1.0).margin(1e-12));
    };
    for (int d : {3, 5, 7}) sound(d, BasisKind::MUB);
    for (int d = 2; d <= 7; ++d) sound(d, BasisKind::MBB);
}

TEST_CASE("conditional states", "[ghz]") {
    ConditionalState c;
    c.entries = {{{BasisKind::MUB, 3, 1}, 0}, {{BasisKind::MUB, 3, 1}, 1}, {{BasisKind::MUB, 3, 1}, 2}};
    const auto s = conditional_state(c);
    CHECK(s.norm_squared() == Approx(1.0).margin(1e-12));

    c.entries[2].outcome = 0;
    CHECK_THROWS(conditional_state(c));
    c.entries[2] = {{BasisKind::MBB, 3, 1}, 2};
    CHECK_THROWS(conditional_state(c));
    CHECK_THROWS(conditional_state(ConditionalState{}));

    CHECK(enumerate_conditional_states(3, 3, BasisKind::MUB).size() == 81);
    CHECK(enumerate_labelled_states(3, 3, BasisKind::MUB, false).size() == 9 * 18);
    CHECK_THROWS_AS(enumerate_conditional_states(31, 5, BasisKind::MUB), std::length_error);
}

TEST_CASE("complement basis", "[ghz]") {
    const GhzSpec spec{3, 3};
    const auto perp = vperp_basis(spec);
    REQUIRE(perp.size() == 26);
    std::vector<StateVector> all{ghz_state(spec)};
    for (const auto& v : perp) all.push_back(v.state);
    CHECK(gram_deviation(all) < 1e-12);
    CHECK(std::count_if(perp.begin(), perp.end(), [](const PerpVector& v) { return v.type == 2; }) == 2);
}

TEST_CASE("GHZ uniqueness audit", "[ghz][uniqueness]") {
    struct Case {
        int d, n;
        BasisKind kind;
    };
    const std::vector<Case> cases{{3, 3, BasisKind::MUB}, {3, 3, BasisKind::MBB}, {5, 3, BasisKind::MUB},
                                  {5, 3, BasisKind::MBB}, {3, 4, BasisKind::MUB}, {3, 4, BasisKind::MBB},
                                  {2, 3, BasisKind::MBB}, {4, 3, BasisKind::MBB}};
    for (const auto& c : cases) {
        CAPTURE(c.d, c.n, to_string(c.kind));
        const auto r = verify_uniqueness({c.d, c.n}, c.kind);
        CHECK(r.pass);
        CHECK(r.strict_inequality);
        const double dd = c.d;
        CHECK(std::abs(r.max_type1_overlap - std::pow(dd, -c.n / 2.0)) < 1e-9);
        CHECK(std::abs(r.min_type1_overlap - std::pow(dd, -c.n / 2.0)) < 1e-9);
        CHECK(r.max_type2_overlap < 1e-12);
        CHECK(std::abs(r.min_ghz_overlap - std::pow(dd, (1.0 - c.n) / 2)) < 1e-9);
        CHECK(std::abs(r.max_ghz_overlap - std::pow(dd, (1.0 - c.n) / 2)) < 1e-9);
        CHECK(r.max_ghz_imag < 1e-9);
    }
    CHECK_THROWS(verify_uniqueness({4, 3}, BasisKind::MUB));
    CHECK_THROWS_AS(verify_uniqueness({13, 5}, BasisKind::MUB), std::length_error);
}

TEST_CASE("d = 2 MBB admits states other than GHZ", "[ghz][uniqueness][degenerate]") {
    const auto audit = outsider_probe_audit(2, 3, BasisKind::MBB);
    CHECK(audit.survivors.empty());
    REQUIRE(audit.constraint_nullity);
    CHECK(*audit.constraint_nullity == 4);
    CHECK_FALSE(audit.constructive_unique);

    const auto unique = outsider_probe_audit(3, 3, BasisKind::MUB);
    REQUIRE(unique.constraint_nullity);
    CHECK(*unique.constraint_nullity == 1);
    CHECK(unique.constructive_unique);
}

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

#include "qss/protocol.hpp"

#include <catch2/catch.hpp>

using namespace qss;

namespace {

SessionConfig config(int d, BasisKind kind, Variant v, std::size_t rounds, std::uint64_t seed = kDefaultSeed) {
    SessionConfig c;
    c.d = d;
    c.kind = kind;
    c.variant = v;
    c.rounds = rounds;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("session config validation", "[protocol]") {
    CHECK_NOTHROW(config(3, BasisKind::MUB, Variant::Original, 1).validate());
    CHECK_THROWS_WITH(config(4, BasisKind::MUB, Variant::Original, 1).validate(), Catch::Contains("composite"));
    auto c = config(3, BasisKind::MUB, Variant::Original, 1);
    c.test_fraction = 1.0;
    CHECK_THROWS(c.validate());
    c.test_fraction = 0.5;
    c.n = 1;
    CHECK_THROWS(c.validate());
    c.n = 3;
    c.kind = BasisKind::Fourier;
    CHECK_THROWS(c.validate());
    CHECK(parse_variant("modified") == Variant::Modified);
    CHECK_FALSE(parse_variant("other"));
}

TEST_CASE("honest original session", "[protocol][honest]") {
    for (auto kind : {BasisKind::MUB, BasisKind::MBB}) {
        const int d = 3;
        const auto res = run_session(config(d, kind, Variant::Original, 6000));
        const auto sifted = res.detection.sifted;
        const double frac = static_cast<double>(sifted) / 6000;
        const double se = std::sqrt((1.0 / d) * (1 - 1.0 / d) / 6000);
        CHECK(std::abs(frac - 1.0 / d) <= 5 * se);
        CHECK(res.detection.mismatches == 0);
        CHECK(res.detection.test_rounds > 0);

        const auto guess = reconstruct_secret(res.key, d);
        CHECK(guess == res.key.dealer_key());
        CHECK(res.key.length() == sifted - res.detection.test_rounds);
    }
}

TEST_CASE("announcement hygiene in the original variant", "[protocol][hygiene]") {
    const auto res = run_session(config(5, BasisKind::MUB, Variant::Original, 2000));
    for (const auto& t : res.rounds) {
        REQUIRE(t.announced.bases.size() == 2);
        CHECK(t.announced.bases[0] == t.bases[1]);
        CHECK(t.announced.bases[1] == t.bases[2]);
        CHECK(t.valid == sums_to_zero(t.bases, 5));
        CHECK(t.announced.outcomes.empty() == !t.test);
        CHECK(t.check_passed.has_value() == t.test);
        if (t.test) CHECK(t.valid);
    }
}

TEST_CASE("modified variant chains bases and announces nothing", "[protocol][modified]") {
    for (int d : {2, 3, 4}) {
        const auto res = run_session(config(d, BasisKind::MBB, Variant::Modified, 3000));
        CHECK(res.detection.sifted == 3000);
        CHECK(res.detection.mismatches == 0);
        for (std::size_t r = 0; r < res.rounds.size(); ++r) {
            const auto& t = res.rounds[r];
            CHECK(t.valid);
            CHECK(t.announced.bases.empty());
            CHECK(sums_to_zero(t.bases, d));
            if (r + 1 < res.rounds.size()) CHECK(res.rounds[r + 1].bases == t.outcomes);
        }
        CHECK(reconstruct_secret(res.key, d) == res.key.dealer_key());
    }
}

TEST_CASE("bootstrap labels sum to zero", "[protocol][modified]") {
    auto cfg = config(7, BasisKind::MUB, Variant::Modified, 1);
    cfg.n = 5;
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto rng = bootstrap_rng(s);
        const auto specs = qkd_bootstrap(cfg, rng);
        CHECK(specs.size() == 5);
        CHECK(sums_to_zero(labels_of(specs), 7));
    }
    auto rng = bootstrap_rng(0);
    CHECK_THROWS(qkd_bootstrap(config(3, BasisKind::MUB, Variant::Original, 1), rng));
}

TEST_CASE("dealer outcomes are uniform", "[protocol][born]") {
    const auto res = run_session(config(5, BasisKind::MUB, Variant::Original, 10000));
    std::vector<std::size_t> counts(5, 0);
    for (const auto& t : res.rounds) ++counts[static_cast<std::size_t>(t.outcomes[0])];
    CHECK(uniform_chi_squared_p(counts) > 0.001);
}

TEST_CASE("sessions are reproducible", "[protocol][determinism]") {
    const auto a = run_session(config(3, BasisKind::MUB, Variant::Original, 500, 99));
    const auto b = run_session(config(3, BasisKind::MUB, Variant::Original, 500, 99));
    const auto c = run_session(config(3, BasisKind::MUB, Variant::Original, 500, 100));
    bool same = true, differs = false;
    for (std::size_t i = 0; i < 500; ++i) {
        same = same && a.rounds[i].bases == b.rounds[i].bases && a.rounds[i].outcomes == b.rounds[i].outcomes &&
               a.rounds[i].test == b.rounds[i].test;
        differs = differs || a.rounds[i].outcomes != c.rounds[i].outcomes;
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("post-processing error paths", "[protocol]") {
    SeededRng rng(1, 0);
    CHECK_THROWS(eavesdrop_test(std::vector<RoundTranscript>{}, 3, 0.5, rng));
    RoundTranscript invalid;
    invalid.outcomes = {0, 0, 0};
    CHECK_THROWS(eavesdrop_test(std::vector<RoundTranscript>{invalid}, 3, 0.5, rng));
    CHECK_THROWS(reconstruct_secret(KeyRecord{{{1}}}, 3));
    CHECK_THROWS(reconstruct_secret(KeyRecord{{{1}, {1, 2}, {0}}}, 3));

    ProtocolContext ctx(config(3, BasisKind::MUB, Variant::Original, 1));
    CHECK_THROWS(run_round_with_bases(ctx, 0, {0, 0}, rng));
    CHECK_THROWS(run_session_modified(ctx));
}

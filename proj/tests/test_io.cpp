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

#include "qss/io.hpp"

#include <catch2/catch.hpp>

#include <sstream>

using namespace qss;

TEST_CASE("lookup table JSON", "[io]") {
    const auto j = to_json(lookup_table(3, 3, BasisKind::MUB));
    CHECK(j["d"] == 3);
    CHECK(j["kind"] == "mub");
    REQUIRE(j["rows"].size() == 9);
    CHECK(j["rows"][0]["bases"] == Json::array({0, 0}));
    CHECK(j["rows"][1]["dealer_basis"] == 2);  // B = 0, C = 1
    CHECK(to_json(lookup_table(2, 3, BasisKind::MBB))["rows"].size() == 4);
}

TEST_CASE("transcript lines parse back", "[io]") {
    SessionConfig cfg;
    cfg.rounds = 50;
    const auto res = run_session(cfg);
    std::ostringstream os;
    write_transcript(os, res.rounds);
    std::istringstream is(os.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
        const auto j = Json::parse(line);
        const auto& t = res.rounds[n];
        CHECK(j["round"] == n);
        CHECK(j["bases"] == t.bases);
        CHECK(j["valid"] == t.valid);
        CHECK(j["check_passed"].is_null() == !t.test);
        CHECK_FALSE(j.contains("adversary"));
        ++n;
    }
    CHECK(n == 50);
}

TEST_CASE("summary fields", "[io]") {
    SessionConfig cfg;
    cfg.rounds = 300;
    const auto s = summary_json(run_session(cfg));
    for (auto key : {"config", "sifted_count", "test_count", "detection_rate", "stderr", "key_length"})
        CHECK(s.contains(key));
    CHECK(s["config"]["seed"] == kDefaultSeed);
}

TEST_CASE("benchmark CSV rows", "[io]") {
    const auto row = benchmark_row(BasisKind::MBB, 4, 500, 1);
    const auto line = to_csv(row);
    CHECK(line.rfind("mbb,4,15,32,0.46875,", 0) == 0);
    CHECK(line.substr(line.size() - 6) == ",500,1");
    const std::string header = kBenchmarkHeader;
    CHECK(std::count(line.begin(), line.end(), ',') == std::count(header.begin(), header.end(), ','));
    CHECK(format_real(0.1) == "0.1");
}

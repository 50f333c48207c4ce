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
/**
 * @file
 * Machine-readable exports: lookup tables (JSON), session transcripts (JSON
 * Lines), session summaries (JSON) and detection-rate benchmarks (CSV).
 * Keys are emitted in a fixed order so identical inputs give identical bytes.
 */

#pragma once

#include "qss/attacks.hpp"

#include "json.hpp"

#include <cstdio>
#include <ostream>

namespace qss {

using Json = nlohmann::ordered_json;

inline Json to_json(const LookupTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back(Json{{"bases", r.bases}, {"dealer_basis", r.dealer_basis}, {"outcome_rule", "sum≡0 mod d"}});
    return Json{{"d", t.d}, {"n", t.n}, {"kind", std::string(to_string(t.kind))}, {"rows", std::move(rows)}};
}

inline Json to_json(const RoundTranscript& t) {
    Json j;
    j["round"] = t.round;
    j["bases"] = t.bases;
    j["outcomes"] = t.outcomes;
    j["announced"] = Json{{"bases", t.announced.bases}, {"outcomes", t.announced.outcomes}};
    j["valid"] = t.valid;
    j["test"] = t.test;
    j["check_passed"] = t.check_passed ? Json(*t.check_passed) : Json(nullptr);
    if (t.adversary) {
        const auto& a = *t.adversary;
        j["adversary"] = Json{{"model", a.model},
                              {"guessed_basis", a.guessed_basis ? Json(*a.guessed_basis) : Json(nullptr)},
                              {"inferred_dealer_outcome", a.inferred_dealer_outcome},
                              {"extracted", a.extracted}};
    }
    return j;
}

inline Json to_json(const SessionConfig& c) {
    return Json{{"d", c.d},
                {"n", c.n},
                {"kind", std::string(to_string(c.kind))},
                {"variant", std::string(to_string(c.variant))},
                {"rounds", c.rounds},
                {"test_fraction", c.test_fraction},
                {"seed", c.seed}};
}

inline void write_transcript(std::ostream& os, std::span<const RoundTranscript> rounds) {
    for (const auto& t : rounds) os << to_json(t).dump() << '\n';
}

inline Json summary_json(const SessionResult& s) {
    return Json{{"config", to_json(s.config)},
                {"sifted_count", s.detection.sifted},
                {"test_count", s.detection.test_rounds},
                {"detection_rate", s.detection.rate()},
                {"stderr", s.detection.std_error()},
                {"key_length", s.key.length()}};
}

struct BenchmarkRow {
    BasisKind kind = BasisKind::MUB;
    int d = 0;
    Rational analytic{0};
    double simulated = 0.0;
    double std_error = 0.0;
    std::size_t rounds = 0;
    std::uint64_t seed = 0;
};

/// Closed form plus intercept-resend Monte Carlo for one (kind, d).
inline BenchmarkRow benchmark_row(BasisKind kind, int d, std::size_t rounds, std::uint64_t seed,
                                  double test_fraction = 0.5) {
    SessionConfig cfg;
    cfg.d = d;
    cfg.n = 3;
    cfg.kind = kind;
    cfg.variant = Variant::Original;
    cfg.rounds = rounds;
    cfg.test_fraction = test_fraction;
    cfg.seed = seed;
    const auto report = simulate_intercept_resend(cfg);
    return {kind, d, analytic_detection_rate(d, kind), report.overall.rate(), report.overall.std_error(), rounds, seed};
}

inline constexpr const char* kBenchmarkHeader =
    "kind,d,analytic_rate_num,analytic_rate_den,analytic_rate,simulated_rate,stderr,rounds,seed";

inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string to_csv(const BenchmarkRow& r) {
    return std::string(to_string(r.kind)) + ',' + std::to_string(r.d) + ',' +
           std::to_string(r.analytic.numerator()) + ',' + std::to_string(r.analytic.denominator()) + ',' +
           format_real(to_double(r.analytic)) + ',' + format_real(r.simulated) + ',' + format_real(r.std_error) +
           ',' + std::to_string(r.rounds) + ',' + std::to_string(r.seed);
}

}  // namespace qss

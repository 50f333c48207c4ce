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

// Command-line front end. Exit codes: 0 success, 1 invariant failure,
// 2 invalid arguments, 3 I/O error.

#include "qss/qss.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int d = 3;
    int n = 3;
    std::string kind = "mub";
    std::string variant = "original";
    std::size_t rounds = 10'000;
    double test_fraction = 0.5;
    std::uint64_t seed = qss::kDefaultSeed;
    std::string attack = "none";
    std::string out;
    std::string format;
    std::string d_range = "3..7";
};

qss::BasisKind kind_of(const Options& o) {
    auto k = qss::parse_basis_kind(o.kind);
    if (!k || (*k != qss::BasisKind::MUB && *k != qss::BasisKind::MBB))
        throw UsageError("--kind must be mub or mbb");
    return *k;
}

void require_valid_dimension(int d, qss::BasisKind kind) {
    if (auto check = qss::validate_dimension(d, kind); !check)
        throw UsageError("invalid --d " + std::to_string(d) + " for " + std::string(qss::to_string(kind)) + ": " +
                         check.reason);
}

void require_format(const Options& o, std::initializer_list<std::string_view> allowed) {
    if (o.format.empty()) return;
    for (auto f : allowed)
        if (o.format == f) return;
    throw UsageError("unsupported --format " + o.format);
}

qss::SessionConfig session_config(const Options& o) {
    qss::SessionConfig cfg;
    cfg.kind = kind_of(o);
    require_valid_dimension(o.d, cfg.kind);
    auto v = qss::parse_variant(o.variant);
    if (!v) throw UsageError("--variant must be original or modified");
    cfg.d = o.d;
    cfg.n = o.n;
    cfg.variant = *v;
    cfg.rounds = o.rounds;
    cfg.test_fraction = o.test_fraction;
    cfg.seed = o.seed;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

/// Writes to `path`, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << text;
    f.close();
    if (!f) throw IoError("failed writing " + path);
}

std::string summary_path(const std::string& transcript_path) {
    std::filesystem::path p(transcript_path);
    p.replace_extension(".summary.json");
    return p.string();
}

int cmd_lookup_table(const Options& o) {
    require_format(o, {"json"});
    const auto kind = kind_of(o);
    require_valid_dimension(o.d, kind);
    if (o.n < 2) throw UsageError("--n must be at least 2");
    qss::LookupTable table;
    try {
        table = qss::lookup_table(o.d, o.n, kind);
    } catch (const std::length_error& e) {
        throw UsageError(e.what());
    }
    emit(o.out, qss::to_json(table).dump(2) + "\n");
    return kExitOk;
}

std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("--d-range must look like LO..HI");
    }
}

int cmd_benchmark(const Options& o) {
    require_format(o, {"csv"});
    const auto kind = kind_of(o);
    const auto [lo, hi] = parse_range(o.d_range);
    if (lo < 2 || hi < lo) throw UsageError("--d-range must satisfy 2 <= LO <= HI");
    if (o.rounds == 0) throw UsageError("--rounds must be positive");
    if (!(o.test_fraction > 0.0 && o.test_fraction < 1.0)) throw UsageError("--test-fraction must lie in (0,1)");

    std::ostringstream csv;
    csv << qss::kBenchmarkHeader << '\n';
    for (int d = lo; d <= hi; ++d) {
        if (!qss::validate_dimension(d, kind)) continue;  // MUB rows only at odd primes
        csv << qss::to_csv(qss::benchmark_row(kind, d, o.rounds, o.seed, o.test_fraction)) << '\n';
    }
    emit(o.out, csv.str());
    return kExitOk;
}

int cmd_simulate(const Options& o) {
    require_format(o, {"jsonl", "json"});
    const auto cfg = session_config(o);

    qss::SessionResult session;
    std::optional<qss::Proportion> recovery;
    if (o.attack == "none") {
        session = qss::run_session(cfg);
    } else if (o.attack == "intercept") {
        if (cfg.n != 3 || cfg.variant != qss::Variant::Original)
            throw UsageError("--attack intercept needs --n 3 and --variant original");
        session = qss::simulate_intercept_resend(cfg).session;
    } else if (o.attack == "participant") {
        if (cfg.n != 3) throw UsageError("--attack participant needs --n 3");
        auto report = qss::simulate_participant_attack(cfg);
        recovery = report.recovery;
        session = std::move(report.session);
    } else {
        throw UsageError("--attack must be none, intercept or participant");
    }

    auto summary = qss::summary_json(session);
    summary["attack"] = o.attack;
    if (recovery) {
        summary["recovery_rate"] = recovery->rate();
        summary["recovery_stderr"] = recovery->std_error();
    }
    const std::string summary_text = summary.dump(2) + "\n";

    if (o.format == "json" || o.out.empty()) {
        emit(o.out, summary_text);
        return kExitOk;
    }
    std::ostringstream lines;
    qss::write_transcript(lines, session.rounds);
    emit(o.out, lines.str());
    emit(summary_path(o.out), summary_text);
    return kExitOk;
}

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

std::string fmt(double x) { return qss::format_real(x); }

/// Orthonormality and overlap-law checks over the whole basis family.
std::vector<Check> basis_checks(int d, qss::BasisKind kind) {
    std::vector<Check> out;
    const auto family = qss::basis_family(kind, d);
    double gram = 0.0, law = 0.0;
    for (const auto& b : family) gram = std::max(gram, qss::gram_deviation(b.vectors));
    for (const auto& s : family)
        for (const auto& t : family)
            for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q)
                    law = std::max(law, std::abs(qss::inner(s.vectors[p], t.vectors[q]) -
                                                 qss::analytic_overlap(s.spec, p, t.spec, q)));
    out.push_back({"basis family orthonormal", gram <= qss::kInvariantTol, "max Gram deviation " + fmt(gram)});
    out.push_back({"overlaps match closed form", law <= qss::kIdentityTol, "max deviation " + fmt(law)});
    return out;
}

int cmd_verify(const Options& o) {
    require_format(o, {"text", "json"});
    const auto kind = kind_of(o);
    require_valid_dimension(o.d, kind);
    if (o.n < 2) throw UsageError("--n must be at least 2");

    qss::FakeKeyAudit audit;
    try {
        audit = qss::outsider_probe_audit(o.d, o.n, kind);
    } catch (const std::length_error& e) {
        throw UsageError(std::string("infeasible enumeration: ") + e.what());
    }
    const auto& u = audit.uniqueness;

    std::vector<Check> checks = basis_checks(o.d, kind);
    checks.push_back({"strict inequality |<L|Phi>| < |<L|GHZ>|", u.strict_inequality,
                      "max complement overlap " + fmt(u.max_perp_overlap) + " vs min GHZ overlap " +
                          fmt(u.min_ghz_overlap)});
    checks.push_back({"type-1 overlaps equal d^{-n/2}",
                      std::abs(u.max_type1_overlap - u.expected_type1) <= qss::kInvariantTol &&
                          std::abs(u.min_type1_overlap - u.expected_type1) <= qss::kInvariantTol,
                      fmt(u.min_type1_overlap) + ".." + fmt(u.max_type1_overlap) + " expected " +
                          fmt(u.expected_type1)});
    checks.push_back({"type-2 overlaps vanish", u.max_type2_overlap <= qss::kIdentityTol,
                      "max " + fmt(u.max_type2_overlap)});
    checks.push_back({"<L|j..j> real positive d^{-n/2}", u.max_diagonal_deviation <= qss::kIdentityTol,
                      "max deviation " + fmt(u.max_diagonal_deviation)});
    checks.push_back({"<L|GHZ> equals d^{(1-n)/2}",
                      std::abs(u.min_ghz_overlap - u.expected_ghz) <= qss::kInvariantTol &&
                          std::abs(u.max_ghz_overlap - u.expected_ghz) <= qss::kInvariantTol &&
                          u.max_ghz_imag <= qss::kInvariantTol,
                      "measured " + fmt(u.min_ghz_overlap) + "; d^{(1-n)/2} = " + fmt(u.expected_ghz) +
                          "; d^{1-n/2} = " + fmt(u.printed_ghz_exponent)});
    checks.push_back({"every complement basis vector breaks a constraint", audit.survivors.empty(),
                      std::to_string(audit.survivors.size()) + " of " + std::to_string(audit.candidates) +
                          " survive"});
    if (audit.constraint_nullity) {
        checks.push_back({"GHZ is the only state meeting every constraint", audit.constructive_unique,
                          "constraint null space dimension " + std::to_string(*audit.constraint_nullity)});
    }

    bool all = true;
    for (const auto& c : checks) all = all && c.ok;

    if (o.format == "json") {
        qss::Json j;
        j["d"] = o.d;
        j["n"] = o.n;
        j["kind"] = o.kind;
        j["conditional_states"] = u.conditional_states;
        j["complement_vectors"] = u.perp_vectors;
        j["ghz_overlap_measured"] = u.min_ghz_overlap;
        j["ghz_overlap_d_pow_(1-n)/2"] = u.expected_ghz;
        j["ghz_overlap_d_pow_1-n/2"] = u.printed_ghz_exponent;
        qss::Json arr = qss::Json::array();
        for (const auto& c : checks) arr.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        j["checks"] = std::move(arr);
        j["pass"] = all;
        emit(o.out, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        s << "verify d=" << o.d << " n=" << o.n << " kind=" << o.kind << " (" << u.conditional_states
          << " conditional states, " << u.perp_vectors << " complement vectors)\n";
        for (const auto& c : checks) s << (c.ok ? "  ok    " : "  FAIL  ") << c.name << ": " << c.detail << '\n';
        s << (all ? "PASS\n" : "FAIL\n");
        emit(o.out, s.str());
    }
    return all ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qudit GHZ secret-sharing laboratory"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--d", o.d, "Register dimension");
        sub->add_option("--n", o.n, "Number of parties (dealer included)");
        sub->add_option("--kind", o.kind, "Basis family: mub or mbb");
        sub->add_option("--out", o.out, "Output file (stdout when omitted)");
        sub->add_option("--format", o.format, "Output format");
    };
    auto add_run = [&o](CLI::App* sub) {
        sub->add_option("--rounds", o.rounds, "Protocol rounds");
        sub->add_option("--test-fraction", o.test_fraction, "Fraction of sifted rounds opened for testing");
        sub->add_option("--seed", o.seed, "Master seed");
    };

    auto* lookup = app.add_subcommand("lookup-table", "Write the dealer lookup table as JSON");
    add_common(lookup);

    auto* bench = app.add_subcommand("benchmark-detection", "Intercept-resend detection rates: closed form and Monte Carlo (CSV)");
    add_common(bench);
    add_run(bench);
    bench->add_option("--d-range", o.d_range, "Dimensions LO..HI");

    auto* sim = app.add_subcommand("simulate", "Run a protocol session; JSONL transcript plus JSON summary");
    add_common(sim);
    add_run(sim);
    sim->add_option("--variant", o.variant, "original or modified");
    sim->add_option("--attack", o.attack, "none, intercept or participant");

    auto* verify = app.add_subcommand("verify", "Exhaustive GHZ uniqueness audit and basis invariants");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (lookup->parsed()) return cmd_lookup_table(o);
        if (bench->parsed()) return cmd_benchmark(o);
        if (sim->parsed()) return cmd_simulate(o);
        if (verify->parsed()) return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

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
 * The GHZ secret-sharing protocol over d-level registers.
 *
 * Original variant: every party measures in a random basis, the non-dealers
 * announce their bases, the dealer keeps rounds whose basis labels sum to 0
 * mod d, a random subset of kept rounds is opened to check the outcome sum,
 * and the rest form the key.
 *
 * Modified variant: a trusted setup hands each party a basis label, the
 * labels summing to 0 mod d. Afterwards every party uses its previous
 * outcome as its next basis label, so no bases are ever announced and every
 * round stays valid.
 *
 * Party 0 is the dealer. The classical channel is authenticated, ordered and
 * lossless. Non-dealers publish their announcements simultaneously.
 */

#pragma once

#include "qss/ghz.hpp"
#include "qss/stats.hpp"

#include <map>
#include <optional>

namespace qss {

inline constexpr std::uint64_t kDefaultSeed = 20080917;

enum class Variant { Original, Modified };

inline std::string_view to_string(Variant v) {
    return v == Variant::Original ? "original" : "modified";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
    if (s == "original") return Variant::Original;
    if (s == "modified") return Variant::Modified;
    return std::nullopt;
}

struct SessionConfig {
    int d = 3;
    int n = 3;
    BasisKind kind = BasisKind::MUB;
    Variant variant = Variant::Original;
    std::size_t rounds = 10'000;
    double test_fraction = 0.5;
    std::uint64_t seed = kDefaultSeed;

    void validate() const {
        if (kind != BasisKind::MUB && kind != BasisKind::MBB)
            throw std::invalid_argument("protocol basis kind must be mub or mbb");
        require_dimension(d, kind);
        if (n < 2) throw std::invalid_argument("protocol needs at least 2 parties");
        GhzSpec{d, n}.dimension();
        if (!(test_fraction > 0.0 && test_fraction < 1.0))
            throw std::invalid_argument("test fraction must lie strictly between 0 and 1");
    }
};

/// Stream-id namespaces so every round and phase draws from its own stream.
namespace streams {
inline constexpr std::uint64_t kRound = 1ULL << 56;
inline constexpr std::uint64_t kTest = 2ULL << 56;
inline constexpr std::uint64_t kBootstrap = 3ULL << 56;
inline constexpr std::uint64_t kAdversary = 4ULL << 56;
}  // namespace streams

inline SeededRng round_rng(std::uint64_t seed, std::size_t round) {
    return {seed, streams::kRound | static_cast<std::uint64_t>(round)};
}

/// What went over the public channel in one round.
struct Announcements {
    std::vector<int> bases;     // non-dealer basis labels (Original only)
    std::vector<int> outcomes;  // every party's outcome, opened on test rounds only
};

/// Adversary-side record, present only in attacked sessions.
struct AdversaryNote {
    std::string model;
    std::optional<int> guessed_basis;  // basis the adversary used for the dealer
    int inferred_dealer_outcome = 0;
    bool extracted = false;            // outcome obtained by measurement rather than guessing
};

struct RoundTranscript {
    std::size_t round = 0;
    std::vector<int> bases;     // per-party basis labels, dealer first
    std::vector<int> outcomes;  // per-party reported outcomes
    Announcements announced;
    bool valid = false;
    bool test = false;
    std::optional<bool> check_passed;  // set on test rounds only
    std::optional<AdversaryNote> adversary;
};

/// Per-session constants: the basis family and the GHZ state.
class ProtocolContext {
  public:
    explicit ProtocolContext(SessionConfig cfg) : cfg_(std::move(cfg)) {
        cfg_.validate();
        family_ = basis_family(cfg_.kind, cfg_.d);
        ghz_ = ghz_state({cfg_.d, cfg_.n});
    }

    const SessionConfig& config() const noexcept { return cfg_; }
    const StateVector& ghz() const noexcept { return ghz_; }
    const std::vector<StateVector>& basis(int label) const {
        return family_.at(static_cast<std::size_t>(mod(label, cfg_.d))).vectors;
    }
    BasisSpec spec(int label) const { return {cfg_.kind, cfg_.d, mod(label, cfg_.d)}; }

  private:
    SessionConfig cfg_;
    std::vector<Basis> family_;
    StateVector ghz_;
};

/// Measures every register in turn (dealer first) in the given bases.
inline std::vector<int> measure_all(const ProtocolContext& ctx, StateVector state,
                                    std::span<const int> bases, SeededRng& rng) {
    std::vector<int> outcomes;
    outcomes.reserve(bases.size());
    for (std::size_t reg = 0; reg < bases.size(); ++reg) {
        auto m = born_measure(state, reg, ctx.basis(bases[reg]), rng);
        outcomes.push_back(static_cast<int>(m.outcome));
        state = std::move(m.collapsed);
    }
    return outcomes;
}

/// One honest round with the bases already chosen.
inline RoundTranscript run_round_with_bases(const ProtocolContext& ctx, std::size_t round,
                                            std::vector<int> bases, SeededRng& rng) {
    const auto& cfg = ctx.config();
    if (static_cast<int>(bases.size()) != cfg.n) throw std::invalid_argument("one basis per party required");
    RoundTranscript t;
    t.round = round;
    t.outcomes = measure_all(ctx, ctx.ghz(), bases, rng);
    if (cfg.variant == Variant::Original) {
        t.announced.bases.assign(bases.begin() + 1, bases.end());
        t.valid = sums_to_zero(bases, cfg.d);
    } else {
        t.valid = true;
    }
    t.bases = std::move(bases);
    return t;
}

inline std::vector<int> random_bases(const SessionConfig& cfg, SeededRng& rng) {
    std::vector<int> bases(static_cast<std::size_t>(cfg.n));
    for (auto& b : bases) b = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(cfg.d)));
    return bases;
}

inline RoundTranscript run_round_original(const ProtocolContext& ctx, std::size_t round, SeededRng& rng) {
    if (ctx.config().variant != Variant::Original)
        throw std::invalid_argument("run_round_original needs the original variant");
    return run_round_with_bases(ctx, round, random_bases(ctx.config(), rng), rng);
}

inline RoundTranscript run_round_original(const SessionConfig& cfg, SeededRng& rng) {
    return run_round_original(ProtocolContext(cfg), 0, rng);
}

inline std::vector<RoundTranscript> run_session_original(const ProtocolContext& ctx) {
    const auto& cfg = ctx.config();
    std::vector<RoundTranscript> out;
    out.reserve(cfg.rounds);
    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        auto rng = round_rng(cfg.seed, r);
        out.push_back(run_round_original(ctx, r, rng));
    }
    return out;
}

/// Rounds the dealer keeps, in order.
inline std::vector<RoundTranscript> sift(std::span<const RoundTranscript> transcripts) {
    std::vector<RoundTranscript> out;
    for (const auto& t : transcripts)
        if (t.valid) out.push_back(t);
    return out;
}

struct TestPhase {
    std::vector<RoundTranscript> rounds;
    DetectionStats stats;
};

/**
 * Marks each sifted round as a test round with probability `test_fraction`.
 * Test rounds open every outcome and check that they sum to 0 mod d.
 */
inline TestPhase eavesdrop_test(std::span<const RoundTranscript> sifted, int d, double test_fraction,
                                SeededRng& rng) {
    if (sifted.empty()) throw std::invalid_argument("eavesdrop_test on empty sifted list");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test fraction must lie strictly between 0 and 1");
    TestPhase phase;
    phase.stats.sifted = sifted.size();
    phase.rounds.reserve(sifted.size());
    for (const auto& in : sifted) {
        if (!in.valid) throw std::invalid_argument("eavesdrop_test given an unsifted round");
        RoundTranscript t = in;
        t.test = rng.bernoulli(test_fraction);
        if (t.test) {
            t.announced.outcomes = t.outcomes;
            t.check_passed = sums_to_zero(t.outcomes, d);
            ++phase.stats.test_rounds;
            if (!*t.check_passed) ++phase.stats.mismatches;
        }
        phase.rounds.push_back(std::move(t));
    }
    return phase;
}

/// Per-party outcome sequences over the valid, untested rounds.
struct KeyRecord {
    std::vector<std::vector<int>> party_keys;

    std::size_t length() const noexcept { return party_keys.empty() ? 0 : party_keys.front().size(); }
    const std::vector<int>& dealer_key() const { return party_keys.at(0); }
};

inline KeyRecord make_key_record(std::span<const RoundTranscript> rounds, int n) {
    KeyRecord k;
    k.party_keys.assign(static_cast<std::size_t>(n), {});
    for (const auto& t : rounds) {
        if (!t.valid || t.test) continue;
        for (int i = 0; i < n; ++i) k.party_keys[i].push_back(t.outcomes.at(static_cast<std::size_t>(i)));
    }
    return k;
}

/// The non-dealers' estimate of the dealer key: -(sum of their outcomes) mod d per round.
inline std::vector<int> reconstruct_secret(const KeyRecord& key, int d) {
    if (key.party_keys.size() < 2) throw std::invalid_argument("reconstruct_secret: missing party data");
    const std::size_t len = key.party_keys[1].size();
    for (std::size_t i = 1; i < key.party_keys.size(); ++i)
        if (key.party_keys[i].size() != len)
            throw std::invalid_argument("reconstruct_secret: party key lengths differ");
    std::vector<int> out(len);
    for (std::size_t r = 0; r < len; ++r) {
        long long s = 0;
        for (std::size_t i = 1; i < key.party_keys.size(); ++i) s += key.party_keys[i][r];
        out[r] = mod(-s, d);
    }
    return out;
}

/**
 * Trusted-setup stand-in for per-party key distribution: the dealer draws
 * labels for everyone so that they sum to 0 mod d and delivers each privately.
 * Nothing here is visible to an adversary model.
 */
inline std::vector<BasisSpec> qkd_bootstrap(const SessionConfig& cfg, SeededRng& rng) {
    if (cfg.variant != Variant::Modified) throw std::invalid_argument("qkd_bootstrap needs the modified variant");
    cfg.validate();
    std::vector<int> others(static_cast<std::size_t>(cfg.n - 1));
    for (auto& b : others) b = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(cfg.d)));
    std::vector<BasisSpec> out;
    out.push_back({cfg.kind, cfg.d, complement_label(others, cfg.d)});
    for (int b : others) out.push_back({cfg.kind, cfg.d, b});
    return out;
}

inline std::vector<int> labels_of(std::span<const BasisSpec> specs) {
    std::vector<int> out;
    for (const auto& s : specs) out.push_back(s.label);
    return out;
}

inline SeededRng bootstrap_rng(std::uint64_t seed) { return {seed, streams::kBootstrap}; }

/// Basis chaining: round r+1 uses each party's round-r outcome as its basis label.
inline std::vector<RoundTranscript> run_session_modified(const ProtocolContext& ctx) {
    const auto& cfg = ctx.config();
    if (cfg.variant != Variant::Modified) throw std::invalid_argument("run_session_modified needs the modified variant");
    auto boot = bootstrap_rng(cfg.seed);
    std::vector<int> bases = labels_of(qkd_bootstrap(cfg, boot));
    std::vector<RoundTranscript> out;
    out.reserve(cfg.rounds);
    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        auto rng = round_rng(cfg.seed, r);
        out.push_back(run_round_with_bases(ctx, r, bases, rng));
        bases = out.back().outcomes;
    }
    return out;
}

inline SeededRng test_rng(std::uint64_t seed) { return {seed, streams::kTest}; }

struct SessionResult {
    SessionConfig config;
    std::vector<RoundTranscript> rounds;  // every round, test flags applied
    DetectionStats detection;
    KeyRecord key;
};

/// Sifting, testing and key extraction over a finished list of rounds.
inline SessionResult finish_session(const SessionConfig& cfg, std::vector<RoundTranscript> rounds) {
    SessionResult res;
    res.config = cfg;
    const auto kept = sift(rounds);
    if (!kept.empty()) {
        auto rng = test_rng(cfg.seed);
        auto phase = eavesdrop_test(kept, cfg.d, cfg.test_fraction, rng);
        res.detection = phase.stats;
        std::map<std::size_t, std::size_t> position;
        for (std::size_t i = 0; i < rounds.size(); ++i) position[rounds[i].round] = i;
        for (auto& t : phase.rounds) rounds[position.at(t.round)] = std::move(t);
    }
    res.key = make_key_record(rounds, cfg.n);
    res.rounds = std::move(rounds);
    return res;
}

/// Honest session of either variant.
inline SessionResult run_session(const SessionConfig& cfg) {
    ProtocolContext ctx(cfg);
    auto rounds = cfg.variant == Variant::Original ? run_session_original(ctx) : run_session_modified(ctx);
    return finish_session(cfg, std::move(rounds));
}

}  // namespace qss

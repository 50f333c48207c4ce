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
 * Adversary models against the secret-sharing protocol:
 *
 *  - intercept-resend by a dishonest Charlie holding Bob's particle, both as
 *    closed-form detection rates and as a state-vector Monte Carlo;
 *  - an outsider with an entangled probe, reduced to an audit that no
 *    state orthogonal to GHZ reproduces the GHZ correlations;
 *  - the entanglement-assisted participant who swaps GHZ for two maximally
 *    entangled pairs and reads off the other outcomes once bases are known.
 */

#pragma once

#include "qss/protocol.hpp"

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include <array>

namespace qss {

using Rational = boost::rational<long long>;

// ---------------------------------------------------------------------------
// Closed forms and the weighted-overlap sum behind them.

/// Intercept-resend detection rate: ((d-1)/d)^2 for MUB, (4d^2 - 10d + 6)/d^3 for MBB.
inline Rational analytic_detection_rate(int d, BasisKind kind) {
    require_dimension(d, kind);
    const long long n = d;
    switch (kind) {
        case BasisKind::MUB: return Rational((n - 1) * (n - 1), n * n);
        case BasisKind::MBB: return Rational(4 * n * n - 10 * n + 6, n * n * n);
        default: throw std::invalid_argument("detection rate defined for mub and mbb only");
    }
}

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

/// |<A_a|A'_a'>|^2 (1 - |<A'_a'|A_a>|^2), from the constructed basis vectors.
inline double weighted_error_term(int d, BasisKind kind, int A, int a, int A2, int a2) {
    const auto u = basis_vector({kind, d, mod(A, d)}, a);
    const auto v = basis_vector({kind, d, mod(A2, d)}, a2);
    const double f = std::norm(inner(u, v));
    const double g = std::norm(inner(v, u));
    return f * (1.0 - g);
}

/// Detection rate as the weighted sum over wrong guesses A' != A (weight 1/d each)
/// and guessed outcomes a', for a fixed dealer basis A and outcome a.
inline double weighted_error_sum(int d, BasisKind kind, int A = 0, int a = 0) {
    require_dimension(d, kind);
    double total = 0.0;
    for (int shift = 1; shift < d; ++shift)
        for (int a2 = 0; a2 < d; ++a2) total += weighted_error_term(d, kind, A, a, A + shift, a2) / d;
    return total;
}

/**
 * Integer polynomials modulo x^d - 1, i.e. the group ring Z[Z_d]. Every
 * overlap here is (1/d) times an element of this ring evaluated at a primitive
 * d-th root of unity, so sums of squared overlaps can be carried exactly and
 * only mapped to a number at the end.
 */
class CyclicPoly {
  public:
    explicit CyclicPoly(int d) : c_(static_cast<std::size_t>(d), 0) {}

    int degree_bound() const noexcept { return static_cast<int>(c_.size()); }
    long long operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    void add_monomial(long long k, long long coeff) { c_[static_cast<std::size_t>(mod(k, degree_bound()))] += coeff; }

    /// x^k -> x^{-k}: complex conjugation at a root of unity.
    CyclicPoly conj() const {
        CyclicPoly out(degree_bound());
        for (int k = 0; k < degree_bound(); ++k) out.add_monomial(-k, (*this)[k]);
        return out;
    }

    friend CyclicPoly operator*(const CyclicPoly& x, const CyclicPoly& y) {
        const int d = x.degree_bound();
        CyclicPoly out(d);
        for (int i = 0; i < d; ++i) {
            if (x.c_[i] == 0) continue;
            for (int j = 0; j < d; ++j) out.c_[(i + j) % d] += x.c_[i] * y.c_[j];
        }
        return out;
    }
    CyclicPoly& operator+=(const CyclicPoly& o) {
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    CyclicPoly scaled(long long s) const {
        CyclicPoly out = *this;
        for (auto& v : out.c_) v *= s;
        return out;
    }

    /// Value at zeta = e^{2 pi i / d}, given that the value is rational with
    /// denominator `denominator`. Throws if the reduction mod Phi_d is not constant.
    Rational rational_value(long long denominator) const;

  private:
    std::vector<long long> c_;
};

/// Coefficients (constant term first) of the d-th cyclotomic polynomial.
inline std::vector<long long> cyclotomic_polynomial(int d) {
    // x^d - 1 divided by Phi_k for every proper divisor k of d
    std::vector<long long> num(static_cast<std::size_t>(d) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(d)] = 1;
    for (int k = 1; k < d; ++k) {
        if (d % k != 0) continue;
        const auto den = cyclotomic_polynomial(k);
        const std::size_t dn = den.size() - 1;
        std::vector<long long> quot(num.size() - dn, 0);
        for (std::size_t i = num.size(); i-- > dn;) {
            const long long q = num[i];  // divisor is monic
            quot[i - dn] = q;
            for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= q * den[j];
        }
        num = std::move(quot);
    }
    return num;
}

inline Rational CyclicPoly::rational_value(long long denominator) const {
    const int d = degree_bound();
    const auto phi = cyclotomic_polynomial(d);
    const std::size_t deg = phi.size() - 1;
    std::vector<__int128> r(c_.begin(), c_.end());
    for (std::size_t i = r.size(); i-- > deg;) {
        const __int128 q = r[i];
        if (q == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= q * phi[j];
    }
    for (std::size_t i = 1; i < std::min(deg, r.size()); ++i)
        if (r[i] != 0) throw std::domain_error("cyclotomic value is not rational");
    return Rational(static_cast<long long>(r[0]), denominator);
}

/// Integer phase exponent of amplitude j of basis vector (P, p) of the given kind.
inline long long phase_exponent(BasisKind kind, int d, int P, int p, int j) {
    switch (kind) {
        case BasisKind::MUB: return mub_exponent(d, P, p, j);
        case BasisKind::MBB: return mbb_exponent(d, P, p, j);
        case BasisKind::Fourier: return static_cast<long long>(p) * j;
        default: throw std::invalid_argument("phase exponent undefined for this basis kind");
    }
}

/// d <A_a|A'_a'> as an element of Z[Z_d].
inline CyclicPoly scaled_overlap(BasisKind kind, int d, int A, int a, int A2, int a2) {
    CyclicPoly s(d);
    for (int j = 0; j < d; ++j)
        s.add_monomial(phase_exponent(kind, d, A2, a2, j) - phase_exponent(kind, d, A, a, j), 1);
    return s;
}

/**
 * The weighted error sum in exact arithmetic. With S = d <A_a|A'_a'>,
 * each term is |S|^2 (d^2 - |S|^2) / d^4 and carries weight 1/d, so the
 * accumulated ring element is divided by d^5 at the end.
 */
inline Rational exact_weighted_error_sum(int d, BasisKind kind, int A = 0, int a = 0) {
    require_dimension(d, kind);
    if (kind != BasisKind::MUB && kind != BasisKind::MBB)
        throw std::invalid_argument("weighted error sum defined for mub and mbb only");
    CyclicPoly total(d);
    CyclicPoly d2(d);
    d2.add_monomial(0, static_cast<long long>(d) * d);
    for (int shift = 1; shift < d; ++shift)
        for (int a2 = 0; a2 < d; ++a2) {
            const auto s = scaled_overlap(kind, d, mod(A, d), a, mod(A + shift, d), a2);
            const auto sq = s * s.conj();
            CyclicPoly rest = d2;
            rest += sq.scaled(-1);
            total += sq * rest;
        }
    long long den = 1;
    for (int i = 0; i < 5; ++i) den *= d;
    return total.rational_value(den);
}

// ---------------------------------------------------------------------------
// Intercept-resend Monte Carlo.

struct InterceptReport {
    SessionResult session;
    DetectionStats overall;
    DetectionStats correct_guess;  // test rounds where the adversary guessed the dealer basis
    DetectionStats wrong_guess;
    double max_abort_probability = 0.0;  // mass outside the correlated family
};

/**
 * Per-basis contractions <A_a|GHZ_3> on the dealer register. Entry [A][a] is
 * the unnormalized two-register state left for Bob and Charlie; its squared
 * norm is the probability of dealer outcome a in basis A.
 */
inline std::vector<std::vector<StateVector>> dealer_residuals(const ProtocolContext& ctx) {
    const int d = ctx.config().d;
    std::vector<std::vector<StateVector>> out(static_cast<std::size_t>(d));
    for (int A = 0; A < d; ++A)
        for (const auto& v : ctx.basis(A)) out[A].push_back(partial_inner({RegisterBra{0, &v}}, ctx.ghz()));
    return out;
}

/**
 * Charlie holds Bob's particle and his own. He guesses the dealer basis A',
 * projects the pair onto the family { <A'_a'|GHZ_3> normalized } (orthonormal
 * in span{|jj>}), resends the projected pair state, and everyone continues
 * honestly. The dealer measures first; the rest of the round uses the
 * dealer's cached contractions, which is the same Born rule applied to the
 * three-register state.
 */
inline InterceptReport simulate_intercept_resend(const SessionConfig& cfg) {
    if (cfg.n != 3) throw std::invalid_argument("intercept-resend model needs n = 3");
    if (cfg.variant != Variant::Original) throw std::invalid_argument("intercept-resend model needs the original variant");
    ProtocolContext ctx(cfg);
    const int d = cfg.d;

    const auto residuals = dealer_residuals(ctx);
    std::vector<std::vector<double>> dealer_probs(static_cast<std::size_t>(d));
    std::vector<std::vector<StateVector>> family(static_cast<std::size_t>(d));
    for (int A = 0; A < d; ++A)
        for (const auto& r : residuals[A]) {
            dealer_probs[A].push_back(r.norm_squared());
            family[A].push_back(r.normalized_copy());
        }

    InterceptReport report;
    std::vector<RoundTranscript> rounds;
    rounds.reserve(cfg.rounds);
    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        auto rng = round_rng(cfg.seed, r);
        auto bases = random_bases(cfg, rng);
        const int A = bases[0];
        const auto a = static_cast<int>(sample_index(dealer_probs[A], rng));
        const auto& pair = family[A][a];

        const int guess = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d)));
        std::vector<double> probs;
        double mass = 0.0;
        for (const auto& f : family[guess]) {
            probs.push_back(std::norm(inner(f, pair)));
            mass += probs.back();
        }
        report.max_abort_probability = std::max(report.max_abort_probability, std::abs(1.0 - mass));
        const auto observed = static_cast<int>(sample_index(probs, rng));

        auto resent = family[guess][observed];
        auto mb = born_measure(resent, 0, ctx.basis(bases[1]), rng);
        auto mc = born_measure(mb.collapsed, 1, ctx.basis(bases[2]), rng);

        RoundTranscript t;
        t.round = r;
        t.outcomes = {a, static_cast<int>(mb.outcome), static_cast<int>(mc.outcome)};
        t.announced.bases = {bases[1], bases[2]};
        t.valid = sums_to_zero(bases, d);
        t.bases = std::move(bases);
        t.adversary = AdversaryNote{"intercept", guess, observed, true};
        rounds.push_back(std::move(t));
    }

    report.session = finish_session(cfg, std::move(rounds));
    report.overall = report.session.detection;
    for (const auto& t : report.session.rounds) {
        if (!t.valid) continue;
        auto& bucket = (t.adversary->guessed_basis == t.bases[0]) ? report.correct_guess : report.wrong_guess;
        ++bucket.sifted;
        if (!t.test) continue;
        ++bucket.test_rounds;
        if (!*t.check_passed) ++bucket.mismatches;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Outsider with an entangled probe.

struct FakeKeyAudit {
    int d = 0;
    int n = 0;
    BasisKind kind = BasisKind::MUB;
    std::size_t candidates = 0;          // complement basis vectors examined
    std::size_t violating_states = 0;    // labelled states with valid bases, invalid outcomes
    std::vector<std::size_t> survivors;  // complement vectors that break no constraint
    UniquenessReport uniqueness;

    // Dimension of the space of states with zero amplitude on every
    // valid-basis / invalid-outcome product state. GHZ alone gives 1.
    std::optional<std::size_t> constraint_nullity;
    bool ghz_satisfies_constraints = false;
    bool constructive_unique = false;
    bool pass = false;
};

/// Above this many multiply-adds the constraint-space eigen solve is skipped.
inline constexpr std::size_t kMaxConstraintWork = 400'000'000;

inline FakeKeyAudit outsider_probe_audit(int d, int n, BasisKind kind) {
    const GhzSpec spec{d, n};
    FakeKeyAudit audit;
    audit.d = d;
    audit.n = n;
    audit.kind = kind;
    audit.uniqueness = verify_uniqueness(spec, kind);

    const auto perp = vperp_basis(spec);
    audit.candidates = perp.size();
    std::vector<StateVector> violating;
    for (const auto& c : enumerate_labelled_states(d, n, kind, false)) violating.push_back(product_state(c));
    audit.violating_states = violating.size();

    constexpr double kNonzero = 1e-9;
    for (std::size_t i = 0; i < perp.size(); ++i) {
        const auto& v = perp[i];
        const bool breaks = std::any_of(violating.begin(), violating.end(), [&](const StateVector& w) {
            const double m = v.type == 1 ? std::abs(w[v.canonical_index]) : std::abs(inner(w, v.state));
            return m > kNonzero;
        });
        if (!breaks) audit.survivors.push_back(i);
    }

    const auto ghz = ghz_state(spec);
    double leak = 0.0;
    for (const auto& w : violating) leak += std::norm(inner(w, ghz));
    audit.ghz_satisfies_constraints = leak < kInvariantTol;

    const std::size_t dim = spec.dimension();
    if (violating.size() * dim * dim <= kMaxConstraintWork) {
        Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (const auto& w : violating) {
            Eigen::Map<const Eigen::VectorXcd> col(w.amps().data(), static_cast<Eigen::Index>(dim));
            gram.selfadjointView<Eigen::Lower>().rankUpdate(col);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram.selfadjointView<Eigen::Lower>());
        const auto& eig = solver.eigenvalues();
        const double scale = std::max(1.0, eig.maxCoeff());
        std::size_t nullity = 0;
        for (Eigen::Index i = 0; i < eig.size(); ++i)
            if (eig[i] < kInvariantTol * scale) ++nullity;
        audit.constraint_nullity = nullity;
        audit.constructive_unique = nullity == 1 && audit.ghz_satisfies_constraints;
    }

    audit.pass = audit.uniqueness.pass && audit.survivors.empty();
    return audit;
}

// ---------------------------------------------------------------------------
// Entanglement-assisted participant.

/// (1/d) sum_{j,k} |j>_A |k>_B |j>_C |k>_E: EPR pairs A-C and B-E, registers in A, B, C, E order.
inline StateVector build_participant_attack_state(int d) {
    if (d < 2) throw std::invalid_argument("attack state needs d >= 2");
    const std::size_t D = static_cast<std::size_t>(d);
    std::vector<Amp> amps(D * D * D * D);
    for (std::size_t j = 0; j < D; ++j)
        for (std::size_t k = 0; k < D; ++k) amps[((j * D + k) * D + j) * D + k] = 1.0 / d;
    return {{D, D, D, D}, std::move(amps), true};
}

/// Singular values of the amplitude matrix split after the first `left` registers.
inline std::vector<double> schmidt_coefficients(const StateVector& state, std::size_t left) {
    if (left == 0 || left >= state.registers()) throw std::invalid_argument("schmidt split must leave both sides nonempty");
    std::size_t rows = 1;
    for (std::size_t r = 0; r < left; ++r) rows *= state.dims()[r];
    const std::size_t cols = state.size() / rows;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = state[i * cols + j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

/**
 * Writes the attack state as (1/d) sum_ab |A_a>|B_b> |psi_ab>_CE for the
 * given dealer and Bob bases and returns how far the d^2 vectors psi_ab are
 * from orthonormal, together with the error in rebuilding the state from them.
 */
inline double participant_decomposition_error(int d, const BasisSpec& dealer, const BasisSpec& bob) {
    const auto psi = build_participant_attack_state(d);
    const auto av = basis_vectors(dealer);
    const auto bv = basis_vectors(bob);
    std::vector<StateVector> parts;
    std::vector<Amp> rebuilt(psi.size());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const auto ce = partial_inner({RegisterBra{0, &av[a]}, RegisterBra{1, &bv[b]}}, psi);
            std::vector<Amp> amps(ce.amps().begin(), ce.amps().end());
            for (auto& x : amps) x *= static_cast<double>(d);
            parts.emplace_back(ce.dims(), std::move(amps));
            const auto term = embed(embed(parts.back(), 0, bv[b]), 0, av[a]);
            for (std::size_t i = 0; i < rebuilt.size(); ++i) rebuilt[i] += term[i] / static_cast<double>(d);
        }
    double err = gram_deviation(parts);
    for (std::size_t i = 0; i < rebuilt.size(); ++i) err = std::max(err, std::abs(rebuilt[i] - psi[i]));
    return err;
}

/// Complex-conjugated basis vectors.
inline std::vector<StateVector> conjugate_basis(const BasisSpec& spec) {
    std::vector<StateVector> out;
    for (const auto& v : basis_vectors(spec)) {
        std::vector<Amp> amps(v.amps().begin(), v.amps().end());
        for (auto& x : amps) x = std::conj(x);
        out.emplace_back(std::move(amps), true);
    }
    return out;
}

struct Extraction {
    int a = 0;
    int b = 0;
    bool extracted = false;  // false: bases unknown, labels are uniform guesses
    double probability = 1.0;
};

/**
 * Reads the dealer's and Bob's outcomes off the collapsed C-E pair. C holds
 * the conjugate of the dealer's measured vector and E that of Bob's, so
 * measuring them in the conjugate bases reproduces both outcomes with
 * certainty. Without both basis labels there is nothing to measure against
 * and the adversary guesses.
 */
inline Extraction extract_participant(const StateVector& ce, const std::optional<BasisSpec>& dealer,
                                      const std::optional<BasisSpec>& bob, SeededRng& rng) {
    if (ce.registers() != 2) throw std::invalid_argument("extract_participant expects a two-register C-E state");
    if (!dealer || !bob) {
        const auto d = static_cast<std::uint64_t>(ce.dims()[0]);
        const int a = static_cast<int>(rng.uniform_int(d));
        const int b = static_cast<int>(rng.uniform_int(d));
        return {a, b, false, 1.0 / static_cast<double>(d * d)};
    }
    const auto mc = born_measure(ce, 0, conjugate_basis(*dealer), rng);
    const auto me = born_measure(mc.collapsed, 1, conjugate_basis(*bob), rng);
    return {static_cast<int>(mc.outcome), static_cast<int>(me.outcome), true, mc.probability * me.probability};
}

struct AttackReport {
    Variant variant = Variant::Original;
    std::size_t rounds = 0;
    Proportion recovery;  // valid rounds where the inferred dealer outcome was right
    DetectionStats detection;
    double min_extraction_probability = 1.0;
    std::array<std::vector<std::size_t>, 3> outcome_counts;  // per party, reported outcomes
    SessionResult session;
};

/**
 * Charlie replaces the GHZ source with build_participant_attack_state and
 * keeps C and E. He waits until the bases are public (original variant:
 * Bob's announcement, his own, and the dealer's validity verdict fix the
 * dealer basis as -(B + C)), then extracts both outcomes and reports
 * c = -(a + b) so every test passes. In the modified variant nothing is
 * announced, so he can only guess.
 */
inline AttackReport simulate_participant_attack(const SessionConfig& cfg) {
    if (cfg.n != 3) throw std::invalid_argument("participant attack model needs n = 3");
    ProtocolContext ctx(cfg);
    const int d = cfg.d;
    const auto psi = build_participant_attack_state(d);
    // The A-B-C registers carry the protocol; E is the adversary's ancilla.

    AttackReport report;
    report.variant = cfg.variant;
    report.rounds = cfg.rounds;
    for (auto& c : report.outcome_counts) c.assign(static_cast<std::size_t>(d), 0);

    std::vector<int> chained;
    if (cfg.variant == Variant::Modified) {
        auto boot = bootstrap_rng(cfg.seed);
        chained = labels_of(qkd_bootstrap(cfg, boot));
    }

    std::vector<RoundTranscript> rounds;
    rounds.reserve(cfg.rounds);
    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        auto rng = round_rng(cfg.seed, r);
        auto adv = SeededRng(cfg.seed, streams::kAdversary | r);
        std::vector<int> bases = cfg.variant == Variant::Original ? random_bases(cfg, rng) : chained;

        const auto ma = born_measure(psi, 0, ctx.basis(bases[0]), rng);
        const auto mb = born_measure(ma.collapsed, 1, ctx.basis(bases[1]), rng);
        const int a = static_cast<int>(ma.outcome);
        const int b = static_cast<int>(mb.outcome);

        RoundTranscript t;
        t.round = r;
        std::optional<BasisSpec> dealer_view, bob_view;
        if (cfg.variant == Variant::Original) {
            t.announced.bases = {bases[1], bases[2]};
            t.valid = sums_to_zero(bases, d);
            if (t.valid) {
                const std::array<int, 2> announced{bases[1], bases[2]};
                dealer_view = ctx.spec(complement_label(announced, d));
                bob_view = ctx.spec(bases[1]);
            }
        } else {
            t.valid = true;
        }

        const auto& va = ctx.basis(bases[0])[static_cast<std::size_t>(a)];
        const auto& vb = ctx.basis(bases[1])[static_cast<std::size_t>(b)];
        const auto ce = partial_inner({RegisterBra{0, &va}, RegisterBra{1, &vb}}, mb.collapsed).normalized_copy();
        const auto ex = extract_participant(ce, dealer_view, bob_view, adv);
        if (ex.extracted) report.min_extraction_probability = std::min(report.min_extraction_probability, ex.probability);
        const std::array<int, 2> known{ex.a, ex.b};
        const int c = complement_label(known, d);

        t.outcomes = {a, b, c};
        t.adversary = AdversaryNote{"participant",
                                    dealer_view ? std::optional<int>(dealer_view->label) : std::nullopt,
                                    ex.a, ex.extracted};
        if (t.valid) {
            ++report.recovery.trials;
            if (ex.a == a) ++report.recovery.hits;
        }
        for (int i = 0; i < 3; ++i) ++report.outcome_counts[i][static_cast<std::size_t>(t.outcomes[i])];
        if (cfg.variant == Variant::Modified) chained = t.outcomes;
        t.bases = std::move(bases);
        rounds.push_back(std::move(t));
    }

    report.session = finish_session(cfg, std::move(rounds));
    report.detection = report.session.detection;
    return report;
}

}  // namespace qss

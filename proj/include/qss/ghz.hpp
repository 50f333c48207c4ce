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
 * d-level n-party GHZ states and the algebra around them: the two modular
 * consistency conditions, the dealer lookup table, conditional product
 * states, the orthogonal complement of GHZ, and an exhaustive audit that no
 * complement vector mimics GHZ on the conditional states.
 */

#pragma once

#include "qss/bases.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qss {

/// Largest dense register space we will allocate.
inline constexpr std::size_t kMaxDenseAmplitudes = std::size_t{1} << 24;
/// Cap on exhaustive (basis tuple x outcome tuple) enumeration.
inline constexpr std::size_t kMaxEnumeration = 1'000'000;

struct GhzSpec {
    int d = 3;
    int n = 3;

    /// d^n, throwing std::length_error past kMaxDenseAmplitudes.
    std::size_t dimension() const {
        if (d < 2) throw std::invalid_argument("GHZ dimension must be >= 2");
        if (n < 2) throw std::invalid_argument("GHZ party count must be >= 2");
        std::size_t total = 1;
        for (int i = 0; i < n; ++i) {
            if (total > kMaxDenseAmplitudes / static_cast<std::size_t>(d))
                throw std::length_error("GHZ state of d^n amplitudes is too large");
            total *= static_cast<std::size_t>(d);
        }
        return total;
    }

    std::vector<std::size_t> dims() const {
        return std::vector<std::size_t>(static_cast<std::size_t>(n), static_cast<std::size_t>(d));
    }

    /// Flat index of |j j ... j>.
    std::size_t diagonal_index(int j) const {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(j);
        return idx;
    }
};

/// (1/sqrt d) sum_j |j j ... j>.
inline StateVector ghz_state(const GhzSpec& spec) {
    const std::size_t total = spec.dimension();
    std::vector<Amp> amps(total);
    const double a = 1.0 / std::sqrt(static_cast<double>(spec.d));
    for (int j = 0; j < spec.d; ++j) amps[spec.diagonal_index(j)] = a;
    return {spec.dims(), std::move(amps), true};
}

struct Consistency {
    bool basis_valid = false;    // sum of basis labels = 0 mod d
    bool outcome_valid = false;  // sum of outcome labels = 0 mod d
    bool valid() const noexcept { return basis_valid && outcome_valid; }
};

inline bool sums_to_zero(std::span<const int> labels, int d) {
    long long s = 0;
    for (int v : labels) s += v;
    return mod(s, d) == 0;
}

inline Consistency consistent(std::span<const int> bases, std::span<const int> outcomes, int d) {
    if (bases.size() != outcomes.size())
        throw std::invalid_argument("consistent: basis and outcome lists differ in length");
    return {sums_to_zero(bases, d), sums_to_zero(outcomes, d)};
}

/// The dealer's label implied by everyone else's: -(sum) mod d.
inline int complement_label(std::span<const int> others, int d) {
    long long s = 0;
    for (int v : others) s += v;
    return mod(-s, d);
}

struct LookupRow {
    std::vector<int> bases;  // non-dealer bases B, C, ..., Omega
    int dealer_basis = 0;    // A = -(B + C + ... + Omega) mod d
};

struct LookupTable {
    int d = 0;
    int n = 0;
    BasisKind kind = BasisKind::MUB;
    std::vector<LookupRow> rows;

    /// Dealer outcome a = -(b + c + ... + omega) mod d.
    int dealer_outcome(std::span<const int> others) const { return complement_label(others, d); }

    /// Whether a full basis tuple (dealer first) is an entry of the table.
    bool accepts(std::span<const int> bases) const {
        if (static_cast<int>(bases.size()) != n) return false;
        const auto others = bases.subspan(1);
        return std::any_of(rows.begin(), rows.end(), [&](const LookupRow& r) {
            return r.dealer_basis == bases[0] && std::equal(r.bases.begin(), r.bases.end(), others.begin());
        });
    }
};

/// Calls f(tuple) for every tuple in Z_d^len, last position fastest.
template <typename F>
void for_each_tuple(int d, int len, F&& f) {
    std::vector<int> t(static_cast<std::size_t>(len), 0);
    while (true) {
        f(std::span<const int>(t));
        int i = len - 1;
        while (i >= 0 && ++t[i] == d) t[i--] = 0;
        if (i < 0) return;
    }
}

inline std::size_t checked_power(int d, int e) {
    std::size_t total = 1;
    for (int i = 0; i < e; ++i) {
        if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(d))
            throw std::length_error("enumeration size overflow");
        total *= static_cast<std::size_t>(d);
    }
    return total;
}

inline LookupTable lookup_table(int d, int n, BasisKind kind) {
    require_dimension(d, kind);
    if (n < 2) throw std::invalid_argument("lookup table needs at least 2 parties");
    if (checked_power(d, n - 1) > kMaxEnumeration) throw std::length_error("lookup table too large");
    LookupTable table{d, n, kind, {}};
    for_each_tuple(d, n - 1, [&](std::span<const int> others) {
        table.rows.push_back({std::vector<int>(others.begin(), others.end()), complement_label(others, d)});
    });
    return table;
}

struct PartyLabel {
    BasisSpec basis;
    int outcome = 0;
};

/// Product state |A_a>|B_b>...|Omega_omega>, one entry per party in party order.
struct ConditionalState {
    std::vector<PartyLabel> entries;

    std::vector<int> basis_labels() const {
        std::vector<int> out;
        for (const auto& e : entries) out.push_back(e.basis.label);
        return out;
    }
    std::vector<int> outcome_labels() const {
        std::vector<int> out;
        for (const auto& e : entries) out.push_back(e.outcome);
        return out;
    }
};

inline StateVector product_state(const ConditionalState& c) {
    if (c.entries.empty()) throw std::invalid_argument("conditional state has no parties");
    std::vector<StateVector> parts;
    parts.reserve(c.entries.size());
    for (const auto& e : c.entries) parts.push_back(basis_vector(e.basis, e.outcome));
    return tensor(parts);
}

/// Tensor product of the entries; rejects labels that break either condition.
inline StateVector conditional_state(const ConditionalState& c) {
    if (c.entries.empty()) throw std::invalid_argument("conditional state has no parties");
    const auto& first = c.entries.front().basis;
    for (const auto& e : c.entries)
        if (e.basis.kind != first.kind || e.basis.d != first.d)
            throw std::invalid_argument("conditional state mixes basis kinds or dimensions");
    const auto bases = c.basis_labels();
    const auto outcomes = c.outcome_labels();
    if (!consistent(bases, outcomes, first.d).valid())
        throw std::invalid_argument("conditional state labels are inconsistent");
    return product_state(c);
}

/**
 * Every labelled product state whose bases satisfy the basis condition,
 * grouped by basis tuple. With `consistent_outcomes` the outcomes satisfy
 * the outcome condition (the conditional states); otherwise they violate it.
 */
inline std::vector<ConditionalState> enumerate_labelled_states(int d, int n, BasisKind kind,
                                                               bool consistent_outcomes) {
    require_dimension(d, kind);
    const std::size_t per_tuple = consistent_outcomes ? checked_power(d, n - 1)
                                                      : checked_power(d, n) - checked_power(d, n - 1);
    if (checked_power(d, n - 1) * per_tuple > kMaxEnumeration)
        throw std::length_error("conditional-state enumeration too large");
    std::vector<ConditionalState> out;
    for_each_tuple(d, n - 1, [&](std::span<const int> other_bases) {
        const int dealer_basis = complement_label(other_bases, d);
        for_each_tuple(d, n, [&](std::span<const int> outcomes) {
            if (sums_to_zero(outcomes, d) != consistent_outcomes) return;
            ConditionalState c;
            c.entries.push_back({{kind, d, dealer_basis}, outcomes[0]});
            for (int i = 1; i < n; ++i)
                c.entries.push_back({{kind, d, other_bases[i - 1]}, outcomes[i]});
            out.push_back(std::move(c));
        });
    });
    return out;
}

inline std::vector<ConditionalState> enumerate_conditional_states(int d, int n, BasisKind kind) {
    return enumerate_labelled_states(d, n, kind, true);
}

struct PerpVector {
    StateVector state;
    int type = 1;  // 1: off-diagonal canonical string, 2: traceless diagonal combination
    std::size_t canonical_index = 0;  // type 1 only
};

/**
 * Orthonormal basis of the complement of GHZ: the d^n - d canonical strings
 * that are not all-equal, then d - 1 diagonal vectors with Fourier
 * coefficients c_j = e^{2 pi i k j / d} / sqrt d for k = 1..d-1.
 */
inline std::vector<PerpVector> vperp_basis(const GhzSpec& spec) {
    const std::size_t total = spec.dimension();
    std::vector<bool> diagonal(total, false);
    for (int j = 0; j < spec.d; ++j) diagonal[spec.diagonal_index(j)] = true;

    std::vector<PerpVector> out;
    out.reserve(total - 1);
    for (std::size_t i = 0; i < total; ++i)
        if (!diagonal[i]) out.push_back({StateVector::canonical(spec.dims(), i), 1, i});

    const double s = 1.0 / std::sqrt(static_cast<double>(spec.d));
    for (int k = 1; k < spec.d; ++k) {
        std::vector<Amp> amps(total);
        for (int j = 0; j < spec.d; ++j)
            amps[spec.diagonal_index(j)] = s * root_of_unity(spec.d, static_cast<long long>(k) * j);
        out.push_back({StateVector(spec.dims(), std::move(amps), true), 2, 0});
    }
    return out;
}

struct UniquenessReport {
    int d = 0;
    int n = 0;
    BasisKind kind = BasisKind::MUB;
    std::size_t conditional_states = 0;
    std::size_t perp_vectors = 0;

    double max_type1_overlap = 0.0;
    double min_type1_overlap = std::numeric_limits<double>::infinity();
    double max_type2_overlap = 0.0;
    double max_perp_overlap = 0.0;

    // <Lambda|GHZ> over all conditional states
    double min_ghz_overlap = std::numeric_limits<double>::infinity();
    double max_ghz_overlap = 0.0;
    double max_ghz_imag = 0.0;
    // phases of <Lambda|j..j> deviate from real positive d^{-n/2} by at most this
    double max_diagonal_deviation = 0.0;

    double expected_type1 = 0.0;       // d^{-n/2}
    double expected_ghz = 0.0;         // d^{(1-n)/2}, from direct contraction
    double printed_ghz_exponent = 0.0; // d^{1-n/2}, the other reading; reported only

    bool strict_inequality = false;  // |<L|Phi>| < |<L|GHZ>| for every pair
    bool pass = false;
};

/// Rough count of complex multiply-adds verify_uniqueness will perform.
inline std::size_t uniqueness_work(const GhzSpec& spec) {
    const std::size_t dim = spec.dimension();
    const std::size_t lambdas = checked_power(spec.d, spec.n - 1) * checked_power(spec.d, spec.n - 1);
    return lambdas * dim * (spec.d + 1);
}

/**
 * Exhaustive check of |<L|Phi>| < |<L|GHZ>| over every conditional state L
 * and every vector Phi of vperp_basis. Type-1 complement vectors are
 * canonical strings, so their overlap is read off the dense L directly;
 * type-2 and GHZ overlaps are full inner products.
 */
inline UniquenessReport verify_uniqueness(const GhzSpec& spec, BasisKind kind) {
    require_dimension(spec.d, kind);
    if (kind != BasisKind::MUB && kind != BasisKind::MBB)
        throw std::invalid_argument("uniqueness audit needs MUB or MBB bases");
    if (checked_power(spec.d, spec.n - 1) * checked_power(spec.d, spec.n - 1) > kMaxEnumeration ||
        uniqueness_work(spec) > std::size_t{2'000'000'000})
        throw std::length_error("uniqueness enumeration infeasible");

    UniquenessReport r;
    r.d = spec.d;
    r.n = spec.n;
    r.kind = kind;
    const double dd = spec.d;
    r.expected_type1 = std::pow(dd, -spec.n / 2.0);
    r.expected_ghz = std::pow(dd, (1.0 - spec.n) / 2.0);
    r.printed_ghz_exponent = std::pow(dd, 1.0 - spec.n / 2.0);

    const auto ghz = ghz_state(spec);
    const auto perp = vperp_basis(spec);
    r.perp_vectors = perp.size();
    std::vector<bool> diagonal(spec.dimension(), false);
    for (int j = 0; j < spec.d; ++j) diagonal[spec.diagonal_index(j)] = true;

    bool strict = true;
    for (const auto& c : enumerate_conditional_states(spec.d, spec.n, kind)) {
        const auto lambda = conditional_state(c);
        ++r.conditional_states;

        const Amp g = inner(lambda, ghz);
        const double gmag = std::abs(g);
        r.min_ghz_overlap = std::min(r.min_ghz_overlap, gmag);
        r.max_ghz_overlap = std::max(r.max_ghz_overlap, gmag);
        r.max_ghz_imag = std::max(r.max_ghz_imag, std::abs(g.imag()));

        for (int j = 0; j < spec.d; ++j) {
            const Amp diag = std::conj(lambda[spec.diagonal_index(j)]);
            r.max_diagonal_deviation = std::max(r.max_diagonal_deviation, std::abs(diag - r.expected_type1));
        }

        for (std::size_t i = 0; i < lambda.size(); ++i) {
            if (diagonal[i]) continue;
            const double m = std::abs(lambda[i]);
            r.max_type1_overlap = std::max(r.max_type1_overlap, m);
            r.min_type1_overlap = std::min(r.min_type1_overlap, m);
            if (!(m < gmag)) strict = false;
        }
        for (const auto& v : perp) {
            if (v.type != 2) continue;
            const double m = std::abs(inner(lambda, v.state));
            r.max_type2_overlap = std::max(r.max_type2_overlap, m);
            if (!(m < gmag)) strict = false;
        }
    }
    r.max_perp_overlap = std::max(r.max_type1_overlap, r.max_type2_overlap);
    r.strict_inequality = strict;
    r.pass = strict && r.conditional_states > 0;
    return r;
}

}  // namespace qss

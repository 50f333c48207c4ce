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
 * Measurement-basis families for d-level registers: canonical, Fourier,
 * quadratic-phase mutually unbiased bases (odd prime d) and the mutually
 * biased family built by re-phasing the |0> component of the Fourier basis.
 */

#pragma once

#include "qss/qmath.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qss {

enum class BasisKind { Canonical, Fourier, MUB, MBB };

inline std::string_view to_string(BasisKind k) {
    switch (k) {
        case BasisKind::Canonical: return "canonical";
        case BasisKind::Fourier: return "fourier";
        case BasisKind::MUB: return "mub";
        case BasisKind::MBB: return "mbb";
    }
    return "?";
}

inline std::optional<BasisKind> parse_basis_kind(std::string_view s) {
    if (s == "canonical") return BasisKind::Canonical;
    if (s == "fourier") return BasisKind::Fourier;
    if (s == "mub") return BasisKind::MUB;
    if (s == "mbb") return BasisKind::MBB;
    return std::nullopt;
}

/// One orthonormal basis. `label` is the basis index P reduced mod d; it is 0
/// for the canonical and Fourier bases.
struct BasisSpec {
    BasisKind kind = BasisKind::MUB;
    int d = 3;
    int label = 0;

    bool operator==(const BasisSpec&) const = default;
};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

struct DimensionCheck {
    bool ok = true;
    std::string reason;
    explicit operator bool() const noexcept { return ok; }
};

/// MUB needs an odd prime; everything else needs d >= 2.
inline DimensionCheck validate_dimension(int d, BasisKind kind) {
    if (d < 2) return {false, "dimension must be at least 2"};
    if (kind != BasisKind::MUB) return {};
    if (d == 2) return {false, "even"};
    if (is_prime(d)) return {};
    int p = 2;
    while (d % p != 0) ++p;
    int rest = d;
    while (rest % p == 0) rest /= p;
    if (rest == 1 && p != 2) return {false, "prime power unsupported"};
    return {false, "composite"};
}

inline void require_dimension(int d, BasisKind kind) {
    if (auto check = validate_dimension(d, kind); !check)
        throw std::invalid_argument("invalid dimension " + std::to_string(d) + " for " +
                                    std::string(to_string(kind)) + ": " + check.reason);
}

namespace detail {

inline void require_label(int value, int d, const char* what) {
    if (value < 0 || value >= d)
        throw std::out_of_range(std::string(what) + " label out of range");
}

/// (1/sqrt d) sum_j e^{i phi e(j)} |j>, with integer phase exponents e(j).
inline StateVector phase_vector(int d, const std::vector<long long>& exponents) {
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<Amp> amps(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) amps[j] = s * root_of_unity(d, exponents[j]);
    return StateVector(std::move(amps), true);
}

}  // namespace detail

/// |u_k>_F = (1/sqrt d) sum_j e^{i k j phi} |j>, phi = 2 pi / d.
inline StateVector fourier_vector(int d, int k) {
    require_dimension(d, BasisKind::Fourier);
    detail::require_label(k, d, "fourier");
    std::vector<long long> e(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) e[j] = static_cast<long long>(k) * j;
    return detail::phase_vector(d, e);
}

/// Integer phase exponent of amplitude j of MUB vector |P_p>: P j^2 + p j.
inline long long mub_exponent(int d, int P, int p, int j) {
    return mod(static_cast<long long>(P) * j * j + static_cast<long long>(p) * j, d);
}

/// Quadratic-phase MUB vector. P may be given in 1..d (or 0..d-1); it is used mod d.
inline StateVector mub_vector(int d, int P, int p) {
    require_dimension(d, BasisKind::MUB);
    if (P < 0 || P > d) throw std::out_of_range("mub basis label out of range");
    detail::require_label(p, d, "mub outcome");
    std::vector<long long> e(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) e[j] = mub_exponent(d, P % d, p, j);
    return detail::phase_vector(d, e);
}

/// Phase exponent of amplitude j of MBB vector |P_p>: P at j = 0, p j elsewhere.
inline long long mbb_exponent(int d, int P, int p, int j) {
    return j == 0 ? mod(P, d) : mod(static_cast<long long>(p) * j, d);
}

/**
 * Biased-basis vector |u_p>_F + (1/sqrt d)(e^{i P phi} - 1)|0>. Only the j = 0
 * amplitude differs from the Fourier vector, and it keeps modulus 1/sqrt d,
 * so the result is a unit vector.
 */
inline StateVector mbb_vector(int d, int P, int p) {
    require_dimension(d, BasisKind::MBB);
    detail::require_label(P, d, "mbb basis");
    detail::require_label(p, d, "mbb outcome");
    std::vector<long long> e(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) e[j] = mbb_exponent(d, P, p, j);
    return detail::phase_vector(d, e);
}

/// Vector `outcome` of the basis described by `spec`.
inline StateVector basis_vector(const BasisSpec& spec, int outcome) {
    switch (spec.kind) {
        case BasisKind::Canonical:
            require_dimension(spec.d, spec.kind);
            detail::require_label(outcome, spec.d, "canonical outcome");
            return StateVector::canonical({static_cast<std::size_t>(spec.d)},
                                          static_cast<std::size_t>(outcome));
        case BasisKind::Fourier: return fourier_vector(spec.d, outcome);
        case BasisKind::MUB: return mub_vector(spec.d, mod(spec.label, spec.d), outcome);
        case BasisKind::MBB: return mbb_vector(spec.d, mod(spec.label, spec.d), outcome);
    }
    throw std::invalid_argument("unknown basis kind");
}

inline std::vector<StateVector> basis_vectors(const BasisSpec& spec) {
    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(spec.d));
    for (int p = 0; p < spec.d; ++p) out.push_back(basis_vector(spec, p));
    return out;
}

struct Basis {
    BasisSpec spec;
    std::vector<StateVector> vectors;
};

/// The d labelled bases used by the protocol: P = 0..d-1 for both MUB and
/// MBB (MUB label d is stored as 0). Canonical and Fourier yield one basis.
inline std::vector<Basis> basis_family(BasisKind kind, int d) {
    require_dimension(d, kind);
    std::vector<Basis> out;
    if (kind == BasisKind::Canonical || kind == BasisKind::Fourier) {
        BasisSpec s{kind, d, 0};
        out.push_back({s, basis_vectors(s)});
        return out;
    }
    for (int P = 0; P < d; ++P) {
        BasisSpec s{kind, d, P};
        out.push_back({s, basis_vectors(s)});
    }
    return out;
}

/// Legendre symbol (a | p) for odd prime p via Euler's criterion.
inline int legendre(long long a, int p) {
    a = mod(a, p);
    if (a == 0) return 0;
    long long result = 1, base = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;
}

inline long long mod_inverse(long long a, int p) {
    long long t = 0, nt = 1, r = p, nr = mod(a, p);
    while (nr != 0) {
        const long long q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw std::domain_error("no modular inverse");
    return mod(t, p);
}

/**
 * Closed-form <P_p | P'_p'>.
 *
 * MUB: with a = P'-P and b = p'-p, completing the square in the quadratic
 * Gauss sum gives (1/sqrt d) (a|d) eps_d e^{-i phi b^2 (4a)^{-1}}, where
 * eps_d = 1 for d = 1 mod 4 and i for d = 3 mod 4. For a = 0 it is delta_pp'.
 * MBB: delta_pp' + (1/d)(e^{i(P'-P)phi} - 1).
 */
inline Amp analytic_overlap(const BasisSpec& s, int p, const BasisSpec& t, int q) {
    if (s.kind != t.kind) throw std::invalid_argument("analytic_overlap: mixed basis kinds");
    if (s.d != t.d) throw std::invalid_argument("analytic_overlap: mixed dimensions");
    const int d = s.d;
    require_dimension(d, s.kind);
    detail::require_label(p, d, "outcome");
    detail::require_label(q, d, "outcome");
    const int a = mod(t.label - s.label, d);
    const int b = mod(q - p, d);
    switch (s.kind) {
        case BasisKind::MUB: {
            if (a == 0) return p == q ? Amp{1.0} : Amp{0.0};
            const Amp eps = (d % 4 == 1) ? Amp{1.0} : Amp{0.0, 1.0};
            const long long shift = static_cast<long long>(b) * b % d * mod_inverse(4LL * a, d);
            return (legendre(a, d) / std::sqrt(static_cast<double>(d))) * eps *
                   root_of_unity(d, -shift);
        }
        case BasisKind::MBB:
            return (p == q ? 1.0 : 0.0) + (root_of_unity(d, a) - 1.0) / static_cast<double>(d);
        default:
            throw std::invalid_argument("analytic_overlap: kind must be MUB or MBB");
    }
}

}  // namespace qss

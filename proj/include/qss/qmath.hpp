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
 * Dense complex linear algebra over tensor products of d-level registers:
 * state vectors, Kronecker products, full and partial inner products, and
 * reproducible Born-rule sampling.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qss {

using Amp = std::complex<double>;

/// Tolerance for state-level invariants (normalization, orthonormality).
inline constexpr double kInvariantTol = 1e-9;
/// Tolerance for algebraic identities between two computation routes.
inline constexpr double kIdentityTol = 1e-12;

/// e^{2 pi i k / d}, with k reduced mod d first so large exponents keep precision.
inline Amp root_of_unity(int d, long long k) {
    long long r = k % d;
    if (r < 0) r += d;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / d;
    return std::polar(1.0, angle);
}

inline int mod(long long x, int d) {
    long long r = x % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

/**
 * Amplitude vector over registers of the given dimensions. Register 0 is the
 * most significant digit of the flat index, so |j k l> sits at j*d1*d2 + k*d2 + l.
 */
class StateVector {
  public:
    StateVector() = default;

    StateVector(std::vector<std::size_t> dims, std::vector<Amp> amps,
                bool normalized = false)
        : dims_(std::move(dims)), amps_(std::move(amps)), normalized_(normalized) {
        std::size_t total = 1;
        for (auto d : dims_) {
            if (d < 2) throw std::invalid_argument("register dimension must be >= 2");
            total *= d;
        }
        if (total != amps_.size())
            throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                        " does not match product of dims " +
                                        std::to_string(total));
        for (const auto& a : amps_)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw std::invalid_argument("non-finite amplitude");
        if (normalized_ && std::abs(norm_squared() - 1.0) > kInvariantTol)
            throw std::invalid_argument("state flagged normalized has norm^2 " +
                                        std::to_string(norm_squared()));
    }

    /// Single-register state.
    explicit StateVector(std::vector<Amp> amps, bool normalized = false) {
        const std::size_t n = amps.size();
        *this = StateVector(std::vector<std::size_t>{n}, std::move(amps), normalized);
    }

    /// Canonical basis state |index> over the given registers.
    static StateVector canonical(std::vector<std::size_t> dims, std::size_t index) {
        std::size_t total = 1;
        for (auto d : dims) total *= d;
        if (index >= total) throw std::out_of_range("canonical index out of range");
        std::vector<Amp> amps(total);
        amps[index] = 1.0;
        return {std::move(dims), std::move(amps), true};
    }

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::span<const Amp> amps() const noexcept { return amps_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::size_t registers() const noexcept { return dims_.size(); }
    bool normalized() const noexcept { return normalized_; }
    const Amp& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    /// Returns the normalized copy; throws on a zero vector.
    StateVector normalized_copy() const {
        const double n2 = norm_squared();
        if (n2 <= 0.0) throw std::domain_error("cannot normalize zero-norm state");
        const double inv = 1.0 / std::sqrt(n2);
        std::vector<Amp> out(amps_);
        for (auto& a : out) a *= inv;
        return {dims_, std::move(out), true};
    }

    /// Digits of a flat index, register 0 first.
    std::vector<std::size_t> digits(std::size_t index) const {
        std::vector<std::size_t> out(dims_.size());
        for (std::size_t r = dims_.size(); r-- > 0;) {
            out[r] = index % dims_[r];
            index /= dims_[r];
        }
        return out;
    }

  private:
    std::vector<std::size_t> dims_;
    std::vector<Amp> amps_;
    bool normalized_ = false;
};

/**
 * Counter-based generator: draw i of stream (seed, stream) is a pure function
 * of (seed, stream, i). Distinct stream ids give independent sequences, so
 * each Monte Carlo round can own a stream and rounds may run in any order.
 */
class SeededRng {
  public:
    SeededRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream), key_(mix(mix(seed) ^ (stream * 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64() noexcept {
        return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n); rejection keeps it unbiased.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_int over empty range");
        const std::uint64_t limit = (~0ULL) - ((~0ULL) % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Child generator on a derived stream; the parent is not advanced.
    SeededRng split(std::uint64_t sub) const {
        return {seed_, mix(stream_ ^ mix(sub + 0x632BE59BD9B4E019ULL))};
    }

  private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Kronecker product in the given order. Every part must be normalized.
inline StateVector tensor(std::span<const StateVector> parts) {
    if (parts.empty()) throw std::invalid_argument("tensor of empty list");
    std::vector<std::size_t> dims;
    std::vector<Amp> amps{Amp{1.0}};
    for (const auto& part : parts) {
        if (std::abs(part.norm_squared() - 1.0) > kInvariantTol)
            throw std::invalid_argument("tensor factor is not normalized");
        dims.insert(dims.end(), part.dims().begin(), part.dims().end());
        std::vector<Amp> next;
        next.reserve(amps.size() * part.size());
        for (const auto& a : amps)
            for (const auto& b : part.amps()) next.push_back(a * b);
        amps = std::move(next);
    }
    return {std::move(dims), std::move(amps), true};
}

inline StateVector tensor(std::initializer_list<StateVector> parts) {
    return tensor(std::span<const StateVector>(parts.begin(), parts.size()));
}

/// <bra|ket> = sum conj(bra_i) ket_i.
inline Amp inner(const StateVector& bra, const StateVector& ket) {
    if (bra.dims() != ket.dims()) throw std::invalid_argument("inner: dimension mismatch");
    Amp s{0.0};
    const auto b = bra.amps();
    const auto k = ket.amps();
    for (std::size_t i = 0; i < b.size(); ++i) s += std::conj(b[i]) * k[i];
    return s;
}

struct RegisterBra {
    std::size_t reg;
    const StateVector* bra;
};

/**
 * Contracts single-register bras against chosen registers of a state.
 *
 * Returns the unnormalized residual on the untouched registers (in their
 * original order). Its squared norm is the joint probability of those bra
 * outcomes when `state` is normalized. Contracting every register leaves a
 * zero-register state with one amplitude.
 */
inline StateVector partial_inner(std::span<const RegisterBra> bras, const StateVector& state) {
    const auto& dims = state.dims();
    std::vector<const StateVector*> at(dims.size(), nullptr);
    for (const auto& [reg, bra] : bras) {
        if (reg >= dims.size()) throw std::out_of_range("partial_inner: register index out of range");
        if (at[reg] != nullptr) throw std::invalid_argument("partial_inner: duplicate register index");
        if (bra->registers() != 1 || bra->size() != dims[reg])
            throw std::invalid_argument("partial_inner: bra dimension mismatch");
        at[reg] = bra;
    }

    std::vector<std::size_t> rest_dims;
    for (std::size_t r = 0; r < dims.size(); ++r)
        if (at[r] == nullptr) rest_dims.push_back(dims[r]);
    std::size_t rest_size = 1;
    for (auto d : rest_dims) rest_size *= d;

    std::vector<Amp> out(rest_size);
    std::vector<std::size_t> digit(dims.size(), 0);
    const auto amps = state.amps();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (amps[i] != Amp{0.0}) {
            Amp factor{1.0};
            std::size_t rest_index = 0;
            for (std::size_t r = 0; r < dims.size(); ++r) {
                if (at[r] != nullptr) {
                    factor *= std::conj((*at[r])[digit[r]]);
                } else {
                    rest_index = rest_index * dims[r] + digit[r];
                }
            }
            out[rest_index] += factor * amps[i];
        }
        // advance the mixed-radix counter, last register fastest
        for (std::size_t r = dims.size(); r-- > 0;) {
            if (++digit[r] < dims[r]) break;
            digit[r] = 0;
        }
    }
    return {std::move(rest_dims), std::move(out), false};
}

inline StateVector partial_inner(std::initializer_list<RegisterBra> bras, const StateVector& state) {
    return partial_inner(std::span<const RegisterBra>(bras.begin(), bras.size()), state);
}

/// Inserts a single-register vector at position `reg` of a residual state.
inline StateVector embed(const StateVector& residual, std::size_t reg, const StateVector& v) {
    if (v.registers() != 1) throw std::invalid_argument("embed: vector must be single-register");
    if (reg > residual.registers()) throw std::out_of_range("embed: register index out of range");
    std::vector<std::size_t> dims = residual.dims();
    dims.insert(dims.begin() + static_cast<std::ptrdiff_t>(reg), v.size());

    std::size_t inner_block = 1;  // product of residual dims after reg
    for (std::size_t r = reg; r < residual.registers(); ++r) inner_block *= residual.dims()[r];
    const std::size_t outer = residual.size() / inner_block;

    std::vector<Amp> amps(residual.size() * v.size());
    std::size_t out = 0;
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t k = 0; k < v.size(); ++k)
            for (std::size_t i = 0; i < inner_block; ++i)
                amps[out++] = residual[o * inner_block + i] * v[k];
    return {std::move(dims), std::move(amps), false};
}

/// Largest deviation of the Gram matrix of `basis` from the identity.
inline double gram_deviation(std::span<const StateVector> basis) {
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            const Amp g = inner(basis[i], basis[j]);
            worst = std::max(worst, std::abs(g - Amp{i == j ? 1.0 : 0.0}));
        }
    return worst;
}

/// Throws unless `basis` is an orthonormal basis of a single d-level register.
inline void require_orthonormal_basis(std::span<const StateVector> basis, std::size_t dim) {
    if (basis.size() != dim) throw std::invalid_argument("basis is not complete for this register");
    for (const auto& v : basis)
        if (v.registers() != 1 || v.size() != dim)
            throw std::invalid_argument("basis vector has wrong dimension");
    if (gram_deviation(basis) > kInvariantTol) throw std::invalid_argument("basis is not orthonormal");
}

struct Measurement {
    std::size_t outcome;
    double probability;
    StateVector collapsed;
};

/// Samples index k with probability weights[k] / sum(weights), by inverse CDF in ascending order.
inline std::size_t sample_index(std::span<const double> weights, SeededRng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::domain_error("cannot sample from zero total weight");
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k];
        if (u < acc) return k;
    }
    // u landed in the rounding gap at the top; take the last nonzero weight
    for (std::size_t k = weights.size(); k-- > 0;)
        if (weights[k] > 0.0) return k;
    return weights.size() - 1;
}

/**
 * Projective measurement of one register in an orthonormal basis.
 *
 * Outcome probabilities are the squared norms of the partial contractions,
 * enumerated in ascending outcome order and sampled by inverse CDF. The
 * collapsed state is the normalized residual with the measured basis vector
 * put back on the measured register.
 */
inline Measurement born_measure(const StateVector& state, std::size_t reg,
                                std::span<const StateVector> basis, SeededRng& rng) {
    if (reg >= state.registers()) throw std::out_of_range("born_measure: register index out of range");
    require_orthonormal_basis(basis, state.dims()[reg]);
    const double total = state.norm_squared();
    if (total <= 0.0) throw std::domain_error("born_measure: zero-norm state");

    std::vector<StateVector> residuals;
    std::vector<double> probs;
    residuals.reserve(basis.size());
    probs.reserve(basis.size());
    for (const auto& b : basis) {
        residuals.push_back(partial_inner({RegisterBra{reg, &b}}, state));
        probs.push_back(residuals.back().norm_squared() / total);
    }
    const std::size_t k = sample_index(probs, rng);
    const double n = std::sqrt(residuals[k].norm_squared());
    std::vector<Amp> scaled(residuals[k].amps().begin(), residuals[k].amps().end());
    for (auto& a : scaled) a /= n;
    StateVector unit_residual(residuals[k].dims(), std::move(scaled), false);
    auto collapsed = embed(unit_residual, reg, basis[k]);
    return {k, probs[k], StateVector(collapsed.dims(),
                                     std::vector<Amp>(collapsed.amps().begin(), collapsed.amps().end()),
                                     true)};
}

}  // namespace qss

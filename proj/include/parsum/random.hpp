#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "parsum/errors.hpp"
#include "parsum/linalg.hpp"
#include "parsum/matrix.hpp"

namespace parsum {

using Engine = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based sub-seed for (stream, index); independent of evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    return mix64(mix64(seed ^ mix64(stream)) + index);
}

// Distributions are spelled out rather than taken from <random> so that a
// recorded seed yields the same matrices under every standard library.

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Standard normal by Box-Muller (one draw per call).
inline double standard_normal(Engine& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double log_uniform(Engine& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Haar-distributed orthogonal matrix: Q factor of a Gaussian matrix, with
/// columns signed so that diag(R) > 0.
inline Matrix<double> random_orthogonal(Engine& rng, std::size_t n) {
    Matrix<double> q(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = standard_normal(rng);
    // modified Gram-Schmidt on columns
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double r = 0.0;
            for (std::size_t i = 0; i < n; ++i) r += q(i, k) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= r * q(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) throw NonConvergence("random_orthogonal: degenerate Gaussian draw");
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

/// Q diag(lambda) Q^T with Q Haar-orthogonal and lambda log-uniform in [lo, hi].
inline SymMatrix<double> random_pd(Engine& rng, std::size_t n, double lo, double hi) {
    if (!(lo > 0.0 && lo < hi)) throw ParamError("random_pd: need 0 < lo < hi");
    const Matrix<double> q = random_orthogonal(rng, n);
    std::vector<double> lambda(n);
    for (auto& l : lambda) l = log_uniform(rng, lo, hi);
    return from_spectrum(q, lambda);
}

/// Positive semidefinite matrix of the given rank (rank may be 0).
inline SymMatrix<double> random_psd(Engine& rng, std::size_t n, std::size_t rank, double lo, double hi) {
    if (rank > n) throw ParamError("random_psd: rank exceeds dimension");
    const Matrix<double> q = random_orthogonal(rng, n);
    std::vector<double> lambda(n, 0.0);
    for (std::size_t k = 0; k < rank; ++k) lambda[k] = log_uniform(rng, lo, hi);
    return from_spectrum(q, lambda);
}

/// Entries i.i.d. uniform in [lo, hi).
inline Matrix<double> random_general(Engine& rng, std::size_t n, double lo, double hi) {
    Matrix<double> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(rng, lo, hi);
    return m;
}

inline Vector<double> random_vector(Engine& rng, std::size_t n) {
    Vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = standard_normal(rng);
    return v;
}

/// Orthogonal projection onto the span of `rank` random orthonormal vectors.
inline SymMatrix<double> random_projection(Engine& rng, std::size_t n, std::size_t rank) {
    if (rank > n) throw ParamError("random_projection: rank exceeds dimension");
    const Matrix<double> q = random_orthogonal(rng, n);
    std::vector<double> ones(n, 0.0);
    for (std::size_t k = 0; k < rank; ++k) ones[k] = 1.0;
    return from_spectrum(q, ones);
}

} // namespace parsum

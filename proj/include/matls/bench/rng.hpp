#pragma once

#include <cstdint>
#include <string_view>

#include "matls/linalg.hpp"

namespace matls::bench {

/// SplitMix64 output mixing (finalizer only, no state increment).
std::uint64_t mix64(std::uint64_t z);

/// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a64(std::string_view s);

/// Deterministic counter-based generator used by every experiment. One
/// independent stream per (seed, trial, purpose):
///
///   state0 = mix64(seed) ^ mix64(trial + 0x9E3779B97F4A7C15) ^ fnv1a64(purpose)
///
/// after which the stream is plain SplitMix64 (state += 0x9E3779B97F4A7C15,
/// output = mix64(state)). Uniform doubles take the top 53 bits; Gaussians
/// come from the Box-Muller transform of two uniforms. The derivation is
/// spelled out in the README so other implementations can reproduce the
/// exact streams.
class Rng {
public:
    static Rng stream(std::uint64_t seed, std::uint64_t trial, std::string_view purpose);

    std::uint64_t next_u64();

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform();

    /// Standard normal via Box-Muller; the second value of each pair is
    /// cached.
    double gaussian();

    /// Uniform index in [0, n).
    std::size_t uniform_index(std::size_t n);

    /// Matrix of iid standard normals.
    Mat gaussian_mat(std::size_t rows, std::size_t cols);

private:
    explicit Rng(std::uint64_t state) : state_(state) {}

    std::uint64_t state_;
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace matls::bench

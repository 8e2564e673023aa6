// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace stochwave {

//! splitmix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/*!
 * Counter-based random stream keyed by (master seed, path index, substream).
 *
 * The n-th raw output is mix64(key + n * gamma) with a key-dependent odd
 * gamma, so any stream is a pure function of its key and position: paths
 * can be sampled in any order or in parallel and still reproduce bit for
 * bit. Satisfies UniformRandomBitGenerator; the distributions are the
 * standard library ones.
 */
class RngStream {
public:
    using result_type = std::uint64_t;

    //! Substream ids used by the solver.
    static constexpr std::uint64_t kNoise = 0;
    static constexpr std::uint64_t kInitialData = 1;

    RngStream(std::uint64_t master_seed, std::uint64_t path_index,
              std::uint64_t substream = kNoise) noexcept
    {
        std::uint64_t k = mix64(master_seed + 0x9e3779b97f4a7c15ULL);
        k = mix64(k ^ (path_index + 0x632be59bd9b4e019ULL));
        k = mix64(k ^ (substream + 0x85157af5ULL));
        state_ = k;
        gamma_ = mix64(k + 0xd1b54a32d192ed03ULL) | 1ULL;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        state_ += gamma_;
        return mix64(state_);
    }

    double normal() { return normal_(*this); }

    double uniform(double a, double b)
    {
        return std::uniform_real_distribution<double>(a, b)(*this);
    }

    std::uint64_t poisson(double mean)
    {
        if (mean <= 0)
            return 0;
        return std::poisson_distribution<std::uint64_t>(mean)(*this);
    }

private:
    std::uint64_t state_;
    std::uint64_t gamma_;
    std::normal_distribution<double> normal_;
};

//! FNV-1a over the bit patterns of a sequence of doubles.
class StreamHash {
public:
    void update(std::span<const double> values) noexcept
    {
        for (double v : values)
        {
            auto bits = std::bit_cast<std::uint64_t>(v);
            for (int b = 0; b < 8; ++b)
            {
                h_ ^= (bits >> (8 * b)) & 0xffU;
                h_ *= 0x100000001b3ULL;
            }
        }
    }

    std::uint64_t value() const noexcept { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace stochwave

// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace mtcap {

// Philox 4x32-10 counter-based generator (Salmon et al., SC'11).  Every
// (seed, stream tag, trial) triple addresses an independent substream, so
// Monte-Carlo trials can be evaluated in any order, on any number of
// threads, and still consume exactly the same random numbers.
struct Philox4x32 {
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    static constexpr std::uint32_t kMultA = 0xD2511F53u;
    static constexpr std::uint32_t kMultB = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 2> key,
                                              std::array<std::uint32_t, 4> ctr) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kMultA) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kMultB) * ctr[2];
            const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
            const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        return ctr;
    }
};

// Stream tags keep the draws for unrelated purposes decoupled; the attempt
// index is folded in so that every transmission attempt sees fresh marks.
enum class StreamPurpose : std::uint32_t {
    receiver_field = 1,
    interferer_field = 2,
    interferer_marks = 3,
    desired_marks = 4,
    rate_gains = 5,
    probe = 6,
    solver = 7,
};

inline std::uint32_t stream_tag(StreamPurpose purpose, std::uint32_t attempt = 0) {
    return (static_cast<std::uint32_t>(purpose) << 16) | (attempt & 0xFFFFu);
}

class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint32_t tag, std::uint64_t trial)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          base_{0u, std::uint32_t(trial), std::uint32_t(trial >> 32), tag} {}

    RandomStream(std::uint64_t seed, StreamPurpose purpose, std::uint32_t attempt,
                 std::uint64_t trial)
        : RandomStream(seed, stream_tag(purpose, attempt), trial) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            auto ctr = base_;
            ctr[0] = block_index_++;
            buf_ = Philox4x32::block(key_, ctr);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on the open interval (0,1); never returns an exact 0 or 1.
    double uniform() {
        const std::uint64_t bits = next_u64() >> 11;
        return (double(bits) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double exponential() { return -std::log(uniform()); }

    // Gamma(shape m, scale theta) for integer m as a sum of exponentials.
    double gamma_int(int m, double theta) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += exponential();
        return acc * theta;
    }

    // Exact Poisson sampling via exponential interarrivals.  Means beyond
    // kSplit are split into independent halves to bound the loop length.
    std::uint64_t poisson(double mean) {
        static constexpr double kSplit = 1024.0;
        std::uint64_t total = 0;
        while (mean > kSplit) {
            total += poisson_small(mean / 2.0);
            mean /= 2.0;
        }
        return total + poisson_small(mean);
    }

    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925287 * u2;
        cached_normal_ = radius * std::sin(angle);
        have_cached_normal_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        std::uint64_t count = 0;
        double acc = exponential();
        while (acc <= mean) {
            ++count;
            acc += exponential();
        }
        return count;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> base_;
    std::array<std::uint32_t, 4> buf_{};
    std::uint32_t block_index_ = 0;
    int pos_ = 4;
    double cached_normal_ = 0.0;
    bool have_cached_normal_ = false;
};

} // namespace mtcap

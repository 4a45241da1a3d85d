// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/rng.hpp"

using namespace mtcap;

TEST_CASE("philox 4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 distribution (kat_vectors).
    auto zero = Philox4x32::block({0u, 0u}, {0u, 0u, 0u, 0u});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    auto ones = Philox4x32::block({0xffffffffu, 0xffffffffu},
                                  {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);

    auto pi = Philox4x32::block({0xa4093822u, 0x299f31d0u},
                                {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
    RandomStream a(42, StreamPurpose::desired_marks, 1, 7);
    RandomStream b(42, StreamPurpose::desired_marks, 1, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());

    RandomStream c(42, StreamPurpose::desired_marks, 1, 8);
    RandomStream d(42, StreamPurpose::desired_marks, 2, 7);
    RandomStream e(43, StreamPurpose::desired_marks, 1, 7);
    RandomStream base(42, StreamPurpose::desired_marks, 1, 7);
    bool all_equal_c = true, all_equal_d = true, all_equal_e = true;
    for (int i = 0; i < 16; ++i) {
        const std::uint32_t v = base.next_u32();
        all_equal_c &= (c.next_u32() == v);
        all_equal_d &= (d.next_u32() == v);
        all_equal_e &= (e.next_u32() == v);
    }
    CHECK_FALSE(all_equal_c);
    CHECK_FALSE(all_equal_d);
    CHECK_FALSE(all_equal_e);
}

TEST_CASE("uniform moments and open range") {
    RandomStream rng(1, StreamPurpose::probe, 0, 0);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    bool in_range = true;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        in_range &= (u > 0.0 && u < 1.0);
        sum += u;
        sum_sq += u * u;
    }
    CHECK(in_range);
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.005));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("poisson sampling matches mean and dispersion across magnitudes") {
    RandomStream rng(3, StreamPurpose::probe, 0, 1);
    for (double mean : {0.5, 12.0, 300.0, 3000.0}) {
        const int n = mean > 100.0 ? 2000 : 20000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = double(rng.poisson(mean));
            sum += v;
            sum_sq += v * v;
        }
        const double m1 = sum / n;
        const double var = sum_sq / n - m1 * m1;
        CHECK(m1 == doctest::Approx(mean).epsilon(0.05));
        CHECK(var / m1 == doctest::Approx(1.0).epsilon(0.12));
    }
}

TEST_CASE("gamma_int has the requested mean and variance") {
    RandomStream rng(5, StreamPurpose::probe, 0, 2);
    const int n = 200000;
    const int m = 4;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = rng.gamma_int(m, 1.0 / m);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sum_sq / n - mean * mean == doctest::Approx(0.25).epsilon(0.03));
}

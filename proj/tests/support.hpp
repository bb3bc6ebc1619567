#pragma once

// Shared randomness and tensor builders for the test suites. The generator is
// pinned to mt19937_64 bit streams so expectations are reproducible across
// platforms and standard-library versions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "shgeff/tensor.hpp"
#include "shgeff/vec.hpp"

namespace testsupport {

constexpr double kPi = 3.14159265358979323846;

inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline shgeff::Vec3 random_unit(std::mt19937_64& rng) {
    for (;;) {
        const double u1 = std::max(uniform01(rng), 0x1.0p-60);
        const double u2 = uniform01(rng);
        const double u3 = std::max(uniform01(rng), 0x1.0p-60);
        const double u4 = uniform01(rng);
        const double r1 = std::sqrt(-2.0 * std::log(u1));
        const double r2 = std::sqrt(-2.0 * std::log(u3));
        const shgeff::Vec3 g{r1 * std::cos(2.0 * kPi * u2), r1 * std::sin(2.0 * kPi * u2),
                             r2 * std::cos(2.0 * kPi * u4)};
        const double n = shgeff::norm(g);
        if (n > 1e-8) return shgeff::scaled(g, 1.0 / n);
    }
}

// 1-based component write, physics convention.
inline void set1(std::array<double, 27>& e, int i, int j, int k, double v) {
    e[size_t((i - 1) * 3 + (j - 1)) * 3 + size_t(k - 1)] = v;
}

inline shgeff::Tensor3 random_general(std::mt19937_64& rng) {
    std::array<double, 27> e{};
    for (double& x : e) x = uniform(rng, -1.0, 1.0);
    return shgeff::Tensor3(e);
}

inline shgeff::Tensor3 random_piezo(std::mt19937_64& rng) {
    std::array<double, 18> d{};
    for (double& x : d) x = uniform(rng, -1.0, 1.0);
    return shgeff::from_voigt(shgeff::VoigtMatrix(d));
}

inline shgeff::Tensor3 random_kleinman(std::mt19937_64& rng) {
    // 10 independent fully symmetric components, one per index multiset.
    static constexpr int kMultisets[10][3] = {
        {0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 1}, {0, 1, 2},
        {0, 2, 2}, {1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}};
    std::array<double, 27> e{};
    for (const auto& ms : kMultisets) {
        const double v = uniform(rng, -1.0, 1.0);
        int idx[3] = {ms[0], ms[1], ms[2]};
        std::sort(idx, idx + 3);
        do {
            e[size_t(idx[0] * 3 + idx[1]) * 3 + size_t(idx[2])] = v;
        } while (std::next_permutation(idx, idx + 3));
    }
    return shgeff::Tensor3(e);
}

using Mat3 = std::array<double, 9>;  // row-major

// Rodrigues rotation about a random axis by a random angle.
inline Mat3 random_rotation(std::mt19937_64& rng) {
    const shgeff::Vec3 k = random_unit(rng);
    const double ang = uniform(rng, 0.0, 2.0 * kPi);
    const double c = std::cos(ang), s = std::sin(ang), C = 1.0 - c;
    return {c + k[0] * k[0] * C,        k[0] * k[1] * C - k[2] * s, k[0] * k[2] * C + k[1] * s,
            k[1] * k[0] * C + k[2] * s, c + k[1] * k[1] * C,        k[1] * k[2] * C - k[0] * s,
            k[2] * k[0] * C - k[1] * s, k[2] * k[1] * C + k[0] * s, c + k[2] * k[2] * C};
}

inline shgeff::Tensor3 rotate(const shgeff::Tensor3& t, const Mat3& r) {
    std::array<double, 27> e{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0.0;
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                        for (int rr = 0; rr < 3; ++rr)
                            s += r[i * 3 + p] * r[j * 3 + q] * r[k * 3 + rr] * t(p, q, rr);
                e[size_t(i * 3 + j) * 3 + size_t(k)] = s;
            }
    return shgeff::Tensor3(e);
}

inline shgeff::Tensor3 scale_tensor(const shgeff::Tensor3& t, double c) {
    std::array<double, 27> e = t.data();
    for (double& x : e) x *= c;
    return shgeff::Tensor3(e);
}

}  // namespace testsupport

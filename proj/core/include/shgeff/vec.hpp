#pragma once

#include <array>
#include <cmath>

namespace shgeff {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& u, const Vec3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 scaled(const Vec3& v, double c) { return {c * v[0], c * v[1], c * v[2]}; }

inline Vec3 sub(const Vec3& u, const Vec3& v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}

inline Vec3 negated(const Vec3& v) { return {-v[0], -v[1], -v[2]}; }

// Unit vector along v; caller guarantees norm(v) > 0.
inline Vec3 normalized(const Vec3& v) { return scaled(v, 1.0 / norm(v)); }

inline bool is_finite(const Vec3& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

}  // namespace shgeff

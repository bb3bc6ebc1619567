#include "shgeff/tensor.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "shgeff/errors.hpp"

namespace shgeff {

const char* to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::General: return "general";
        case SymmetryClass::PiezoType: return "piezo-type";
        case SymmetryClass::Kleinman: return "kleinman";
    }
    return "?";
}

Tensor3::Tensor3(const std::array<double, 27>& entries) : e_(entries) {
    for (double v : e_)
        if (!std::isfinite(v))
            throw std::invalid_argument("Tensor3: entries must be finite");
}

VoigtMatrix::VoigtMatrix(const std::array<double, 18>& entries) : d_(entries) {
    for (double v : d_)
        if (!std::isfinite(v))
            throw std::invalid_argument("VoigtMatrix: entries must be finite");
}

int voigt_index(int j, int k) {
    if (j == k) return j;                  // 11->0, 22->1, 33->2
    int s = j + k;                         // {1,2}->3, {0,2}->4, {0,1}->5
    if (s == 3) return 3;
    return s == 2 ? 4 : 5;
}

Tensor3 from_voigt(const VoigtMatrix& d) {
    std::array<double, 27> e{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                e[(i * 3 + j) * 3 + k] = d(i, voigt_index(j, k));
    return Tensor3(e);
}

VoigtMatrix to_voigt(const Tensor3& t, double tol) {
    double worst = 0.0;
    int wi = 0, wj = 0, wk = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k) {
                double gap = std::abs(t(i, j, k) - t(i, k, j));
                if (gap > worst) {
                    worst = gap;
                    wi = i; wj = j; wk = k;
                }
            }
    if (worst > tol)
        throw symmetry_error(
            "to_voigt: tensor is not symmetric in its last two indices; worst "
            "violation |T(" + std::to_string(wi + 1) + "," + std::to_string(wj + 1) + "," +
                std::to_string(wk + 1) + ") - T(" + std::to_string(wi + 1) + "," +
                std::to_string(wk + 1) + "," + std::to_string(wj + 1) + ")| = " +
                std::to_string(worst),
            wi + 1, wj + 1, wk + 1);

    std::array<double, 18> d{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = j; k < 3; ++k)
                d[i * 6 + voigt_index(j, k)] = t(i, j, k);  // j<=k representative: bit-exact round trip
    return VoigtMatrix(d);
}

namespace {

// All six permutations of an index triple.
constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

bool is_piezo(const Tensor3& t, double tol) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k)
                if (std::abs(t(i, j, k) - t(i, k, j)) > tol) return false;
    return true;
}

bool is_kleinman(const Tensor3& t, double tol) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                int idx[3] = {i, j, k};
                double ref = t(i, j, k);
                for (const auto& p : kPerm) {
                    double v = t(idx[p[0]], idx[p[1]], idx[p[2]]);
                    if (std::abs(v - ref) > tol) return false;
                }
            }
    return true;
}

}  // namespace

SymmetryClass classify_symmetry(const Tensor3& t, double tol) {
    if (tol < 0) throw std::invalid_argument("classify_symmetry: tol must be >= 0");
    if (is_kleinman(t, tol)) return SymmetryClass::Kleinman;
    if (is_piezo(t, tol)) return SymmetryClass::PiezoType;
    return SymmetryClass::General;
}

double contract3(const Tensor3& t, const Vec3& u, const Vec3& v, const Vec3& w) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (u[i] == 0.0) continue;
        double si = 0.0;
        for (int j = 0; j < 3; ++j) {
            double sj = 0.0;
            for (int k = 0; k < 3; ++k) sj += t(i, j, k) * w[k];
            si += sj * v[j];
        }
        s += si * u[i];
    }
    return s;
}

double contract_xyy(const Tensor3& t, const Vec3& x, const Vec3& y) {
    return contract3(t, x, y, y);
}

Vec3 contract_yy(const Tensor3& t, const Vec3& y) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += t(i, j, k) * y[j] * y[k];
        r[i] = s;
    }
    return r;
}

Vec3 contract_xy(const Tensor3& t, const Vec3& x, const Vec3& y) {
    Vec3 r{};
    for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += t(i, j, k) * x[i] * y[j];
        r[k] = s;
    }
    return r;
}

double frobenius_norm(const Tensor3& t) {
    double s = 0.0;
    for (double v : t.data()) s += v * v;
    return std::sqrt(s);
}

namespace {

void require_in_plane(const Vec3& a, const char* who) {
    if (a[2] != 0.0)
        throw std::invalid_argument(std::string(who) + ": a must satisfy a3 = 0");
}

}  // namespace

QForms q_forms(const Tensor3& t, const Vec3& a) {
    require_in_plane(a, "q_forms");
    const double a1 = a[0], a2 = a[1];
    QForms q;
    q.q1 = t(0, 0, 0) * a1 * a1 + (t(0, 0, 1) + t(0, 1, 0)) * a1 * a2 + t(0, 1, 1) * a2 * a2;
    q.q2 = t(1, 0, 0) * a1 * a1 + (t(1, 0, 1) + t(1, 1, 0)) * a1 * a2 + t(1, 1, 1) * a2 * a2;
    q.q3 = t(2, 0, 0) * a1 * a1 + (t(2, 0, 1) + t(2, 1, 0)) * a1 * a2 + t(2, 1, 1) * a2 * a2;
    return q;
}

RForms r_forms(const Tensor3& t, const Vec3& a) {
    require_in_plane(a, "r_forms");
    const double a1 = a[0], a2 = a[1];
    RForms r;
    // Grouping of T(a,b,b) by powers of z for b = (a2*z1, -a1*z1, z2); the
    // -2*T_212 contribution rides the a1*a2^2 monomial (T_212 enters via the
    // cross terms b1*b2 of the z1^2 block, which carry a1*a2^2 after the
    // a-substitution).
    r.r11 = (t(0, 0, 0) - 2.0 * t(1, 0, 1)) * a1 * a2 * a2 +
            (t(1, 1, 1) - 2.0 * t(0, 0, 1)) * a1 * a1 * a2 +
            t(0, 1, 1) * a1 * a1 * a1 + t(1, 0, 0) * a2 * a2 * a2;
    r.r12 = (t(0, 0, 2) - t(1, 1, 2)) * a1 * a2 - t(0, 1, 2) * a1 * a1 + t(1, 0, 2) * a2 * a2;
    r.r22 = t(0, 2, 2) * a1 + t(1, 2, 2) * a2;
    return r;
}

}  // namespace shgeff

#pragma once

#include <array>
#include <string>

#include "shgeff/vec.hpp"

namespace shgeff {

// Symmetry classification of a rank-3 susceptibility tensor, ordered from
// least to most specific.
//   General   - no index symmetry assumed
//   PiezoType - symmetric in the last two indices, T(i,j,k) = T(i,k,j)
//   Kleinman  - invariant under all six index permutations
enum class SymmetryClass { General, PiezoType, Kleinman };

const char* to_string(SymmetryClass c);

// Dense real 3x3x3 tensor. Indices are 0-based in code; documentation and
// file formats use the 1-based physics convention T_ijk. Immutable after
// construction; construction rejects non-finite entries.
class Tensor3 {
public:
    Tensor3() : e_{} {}
    explicit Tensor3(const std::array<double, 27>& entries);

    double operator()(int i, int j, int k) const { return e_[(i * 3 + j) * 3 + k]; }
    const std::array<double, 27>& data() const { return e_; }

private:
    std::array<double, 27> e_;
};

// Contracted (Voigt) 3x6 representation of a tensor symmetric in its last
// two indices. Pair index l (0-based 0..5) encodes (j,k) as
// 11->0, 22->1, 33->2, {23}->3, {13}->4, {12}->5.
class VoigtMatrix {
public:
    VoigtMatrix() : d_{} {}
    explicit VoigtMatrix(const std::array<double, 18>& entries);

    double operator()(int i, int l) const { return d_[i * 6 + l]; }
    const std::array<double, 18>& data() const { return d_; }

private:
    std::array<double, 18> d_;
};

// Pair index for 0-based (j,k); order-insensitive.
int voigt_index(int j, int k);

constexpr double kSymmetryTol = 1e-12;  // absolute, on entries

Tensor3 from_voigt(const VoigtMatrix& d);

// Throws symmetry_error naming the worst offending component (1-based) when
// t is not PiezoType within tol.
VoigtMatrix to_voigt(const Tensor3& t, double tol = kSymmetryTol);

// Most specific class satisfied within the absolute tolerance.
SymmetryClass classify_symmetry(const Tensor3& t, double tol = kSymmetryTol);

// Trilinear contraction sum_{ijk} T(i,j,k) u_i v_j w_k.
double contract3(const Tensor3& t, const Vec3& u, const Vec3& v, const Vec3& w);

// sum_{ijk} T(i,j,k) x_i y_j y_k
double contract_xyy(const Tensor3& t, const Vec3& x, const Vec3& y);

// Component i = sum_{jk} T(i,j,k) y_j y_k
Vec3 contract_yy(const Tensor3& t, const Vec3& y);

// Component k = sum_{ij} T(i,j,k) x_i y_j
Vec3 contract_xy(const Tensor3& t, const Vec3& x, const Vec3& y);

double frobenius_norm(const Tensor3& t);

// Quadratic forms of the in-plane o-wave polarization a = (a1, a2, 0):
// q_i = sum_{j,k in {1,2}} T(i,j,k) a_j a_k.
struct QForms {
    double q1, q2, q3;
};

// Requires a[2] == 0 (throws std::invalid_argument otherwise).
QForms q_forms(const Tensor3& t, const Vec3& a);

// Cubic/linear coefficient forms of the reduced type-I ee-o objective:
// with b = (a2*z1, -a1*z1, z2), the contraction T(a,b,b) equals
// z1^2*r11 + 2*z1*z2*r12 + z2^2*r22 for tensors symmetric in the last two
// indices.
struct RForms {
    double r11, r12, r22;
};

// Requires a[2] == 0 (throws std::invalid_argument otherwise).
RForms r_forms(const Tensor3& t, const Vec3& a);

}  // namespace shgeff

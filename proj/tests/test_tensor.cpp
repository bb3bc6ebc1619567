#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "shgeff/errors.hpp"
#include "shgeff/shg.hpp"
#include "shgeff/tensor.hpp"
#include "support.hpp"

using namespace shgeff;
using namespace testsupport;

TEST_CASE("Tensor3 rejects non-finite entries") {
    std::array<double, 27> e{};
    e[13] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Tensor3{e}, std::invalid_argument);
    e[13] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Tensor3{e}, std::invalid_argument);
}

TEST_CASE("voigt_index pair mapping") {
    CHECK(voigt_index(0, 0) == 0);
    CHECK(voigt_index(1, 1) == 1);
    CHECK(voigt_index(2, 2) == 2);
    CHECK(voigt_index(1, 2) == 3);
    CHECK(voigt_index(2, 1) == 3);
    CHECK(voigt_index(0, 2) == 4);
    CHECK(voigt_index(2, 0) == 4);
    CHECK(voigt_index(0, 1) == 5);
    CHECK(voigt_index(1, 0) == 5);
}

TEST_CASE("Voigt round trip is bit-exact on random symmetric tensors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 18> d{};
        for (double& x : d) x = uniform(rng, -1.0, 1.0);
        const VoigtMatrix in(d);
        const VoigtMatrix back = to_voigt(from_voigt(in));
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 6; ++l) CHECK(back(i, l) == in(i, l));
    }
}

TEST_CASE("from_voigt expands the pair index to both orderings") {
    std::array<double, 18> d{};
    d[0 * 6 + 3] = 2.5;  // (i=1, l=4) -> T(1,2,3) = T(1,3,2)
    const Tensor3 t = from_voigt(VoigtMatrix(d));
    CHECK(t(0, 1, 2) == 2.5);
    CHECK(t(0, 2, 1) == 2.5);
    CHECK(t(0, 0, 0) == 0.0);
}

TEST_CASE("to_voigt names the worst asymmetric component") {
    std::array<double, 27> e{};
    set1(e, 2, 1, 3, 1.0);
    set1(e, 2, 3, 1, 0.25);  // |T(2,1,3) - T(2,3,1)| = 0.75
    set1(e, 1, 1, 2, 1.0);
    set1(e, 1, 2, 1, 0.9);  // smaller violation elsewhere
    try {
        to_voigt(Tensor3(e));
        FAIL("expected symmetry_error");
    } catch (const symmetry_error& err) {
        CHECK(err.i() == 2);
        CHECK(err.j() == 1);
        CHECK(err.k() == 3);
    }
}

TEST_CASE("classify_symmetry finds the most specific class") {
    std::mt19937_64 rng(12);
    CHECK(classify_symmetry(Tensor3{}) == SymmetryClass::Kleinman);  // zero tensor
    CHECK(classify_symmetry(random_kleinman(rng)) == SymmetryClass::Kleinman);
    CHECK(classify_symmetry(random_piezo(rng)) == SymmetryClass::PiezoType);
    CHECK(classify_symmetry(random_general(rng)) == SymmetryClass::General);

    // Just past the tolerance flips the class.
    std::array<double, 27> e{};
    set1(e, 1, 2, 3, 1.0);
    set1(e, 1, 3, 2, 1.0 + 10 * kSymmetryTol);
    CHECK(classify_symmetry(Tensor3(e)) == SymmetryClass::General);
    set1(e, 1, 3, 2, 1.0 + 0.1 * kSymmetryTol);
    CHECK(classify_symmetry(Tensor3(e)) == SymmetryClass::PiezoType);
}

TEST_CASE("contraction helpers agree with the full trilinear sum") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const Tensor3 t = random_general(rng);
        const Vec3 x = random_unit(rng), y = random_unit(rng), w = random_unit(rng);
        const double full = contract3(t, x, y, y);
        CHECK(std::abs(contract_xyy(t, x, y) - full) <= 1e-13);
        CHECK(std::abs(dot(contract_yy(t, y), x) - full) <= 1e-13);
        CHECK(std::abs(dot(contract_xy(t, x, y), w) - contract3(t, x, y, w)) <= 1e-13);
    }
}

TEST_CASE("contract3 is multilinear") {
    std::mt19937_64 rng(14);
    const Tensor3 t = random_general(rng);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec3 u = random_unit(rng), u2 = random_unit(rng);
        const Vec3 v = random_unit(rng), w = random_unit(rng);
        const double alpha = uniform(rng, -2.0, 2.0), beta = uniform(rng, -2.0, 2.0);
        const Vec3 mix{alpha * u[0] + beta * u2[0], alpha * u[1] + beta * u2[1],
                       alpha * u[2] + beta * u2[2]};
        const double lhs = contract3(t, mix, v, w);
        const double rhs = alpha * contract3(t, u, v, w) + beta * contract3(t, u2, v, w);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("frobenius_norm on known tensors") {
    CHECK(frobenius_norm(Tensor3{}) == 0.0);
    std::array<double, 27> e{};
    const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& p : perms) set1(e, p[0], p[1], p[2], 1.0);
    CHECK(frobenius_norm(Tensor3(e)) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
}

TEST_CASE("q_forms identity reproduces the oo-e contraction for any tensor") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const Tensor3 t = random_general(rng);
        const double theta = uniform(rng, 0.0, kPi), phi = uniform(rng, 0.0, 2.0 * kPi);
        const Vec3 a = o_polarization(phi);
        const QForms q = q_forms(t, a);
        const double z1 = std::cos(theta), z2 = std::sin(theta);
        const double via_q = z1 * (a[1] * q.q1 - a[0] * q.q2) + z2 * q.q3;
        const double direct = chi_eff(t, PhaseMatchType::OO_E, {theta, phi});
        CHECK(std::abs(via_q - direct) <= 1e-13 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("q_forms and r_forms require an in-plane polarization") {
    const Tensor3 t{};
    CHECK_THROWS_AS(q_forms(t, Vec3{0.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(r_forms(t, Vec3{0.6, 0.0, 0.8}), std::invalid_argument);
}

TEST_CASE("r_forms identity reproduces the ee-o contraction for symmetric tensors") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 50; ++trial) {
        const Tensor3 t = random_piezo(rng);
        const double theta = uniform(rng, 0.0, kPi), phi = uniform(rng, 0.0, 2.0 * kPi);
        const Vec3 a = o_polarization(phi);
        const RForms r = r_forms(t, a);
        const double z1 = std::cos(theta), z2 = std::sin(theta);
        const double via_r = z1 * z1 * r.r11 + 2.0 * z1 * z2 * r.r12 + z2 * z2 * r.r22;
        const double direct = chi_eff(t, PhaseMatchType::EE_O, {theta, phi});
        CHECK(std::abs(via_r - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("r11 groups the -2*T(2,1,2) coefficient with a1*a2^2") {
    // With only T(2,1,2) = T(2,2,1) = 1 the ee-o coefficient vanishes
    // identically at a = (1, 0, 0); attaching the -2*T(2,1,2) term to a1^3
    // would instead give -2 at z = (1, 0).
    std::array<double, 27> e{};
    set1(e, 2, 1, 2, 1.0);
    set1(e, 2, 2, 1, 1.0);
    const Tensor3 t(e);
    const RForms r = r_forms(t, Vec3{1.0, 0.0, 0.0});
    CHECK(r.r11 == 0.0);
    CHECK(r.r12 == 0.0);
    CHECK(r.r22 == 0.0);
    CHECK(chi_eff(t, PhaseMatchType::EE_O, {0.0, kPi / 2.0}) == doctest::Approx(0.0));
}

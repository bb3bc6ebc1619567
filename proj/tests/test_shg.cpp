#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "shgeff/crystal.hpp"
#include "shgeff/errors.hpp"
#include "shgeff/shg.hpp"
#include "support.hpp"

using namespace shgeff;
using namespace testsupport;

TEST_CASE("canonical_angles folds onto theta in [0,pi], phi in [0,2pi)") {
    const AngleSet a = canonical_angles(4.0, 1.0);  // theta > pi
    CHECK(a.theta == doctest::Approx(2.0 * kPi - 4.0).epsilon(1e-15));
    CHECK(a.phi == doctest::Approx(1.0 + kPi).epsilon(1e-15));
    const AngleSet b = canonical_angles(-0.5, -0.5);
    CHECK(b.theta >= 0.0);
    CHECK(b.theta <= kPi);
    CHECK(b.phi >= 0.0);
    CHECK(b.phi < 2.0 * kPi);

    // The fold preserves |chi_eff| for every configuration.
    std::mt19937_64 rng(21);
    const Tensor3 t = random_general(rng);
    for (int trial = 0; trial < 50; ++trial) {
        const double theta = uniform(rng, -8.0, 8.0), phi = uniform(rng, -8.0, 8.0);
        const AngleSet c = canonical_angles(theta, phi);
        for (PhaseMatchType pm : {PhaseMatchType::OO_E, PhaseMatchType::EE_O,
                                  PhaseMatchType::OE_E, PhaseMatchType::EO_O}) {
            const double v1 = std::abs(chi_eff(t, pm, {theta, phi}));
            const double v2 = std::abs(chi_eff(t, pm, c));
            CHECK(std::abs(v1 - v2) <= 1e-12);
        }
    }
}

TEST_CASE("polarization pair invariants hold to 1e-14") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 1000; ++trial) {
        const double theta = uniform(rng, 0.0, kPi), phi = uniform(rng, 0.0, 2.0 * kPi);
        const PolarizationPair p = polarization_pair({theta, phi});
        CHECK(std::abs(norm(p.a) - 1.0) <= 1e-14);
        CHECK(std::abs(norm(p.b) - 1.0) <= 1e-14);
        CHECK(p.a[2] == 0.0);
        CHECK(std::abs(dot(p.a, p.b)) <= 1e-14);
        // b = (a2*z1, -a1*z1, z2)
        const double z1 = std::cos(theta), z2 = std::sin(theta);
        CHECK(std::abs(p.b[0] - p.a[1] * z1) <= 1e-15);
        CHECK(std::abs(p.b[1] + p.a[0] * z1) <= 1e-15);
        CHECK(std::abs(p.b[2] - z2) <= 1e-15);
    }
}

TEST_CASE("chi_eff known values for the chi14 tensor") {
    const Tensor3 t = build_crystal("-42m", {{"chi14", 1.0}});
    // theta = pi/2: b = (0,0,1); a = (sin phi, -cos phi, 0);
    // T(b,a,a) = 2*a1*a2 = -sin(2*phi).
    CHECK(chi_eff(t, PhaseMatchType::OO_E, {kPi / 2.0, kPi / 4.0}) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(chi_eff(t, PhaseMatchType::OO_E, {kPi / 2.0, 3.0 * kPi / 4.0}) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chi_eff(t, PhaseMatchType::OO_E, {kPi / 2.0, 0.0}) ==
          doctest::Approx(0.0));
}

TEST_CASE("chi_eff parity under (theta,phi) -> (pi-theta, phi+pi)") {
    // The map sends a -> -a and b -> +b, so configurations with two o-wave
    // slots are even and those with one are odd.
    std::mt19937_64 rng(23);
    const Tensor3 t = random_general(rng);
    for (int trial = 0; trial < 100; ++trial) {
        const double theta = uniform(rng, 0.0, kPi), phi = uniform(rng, 0.0, 2.0 * kPi);
        const AngleSet orig{theta, phi};
        const AngleSet mapped{kPi - theta, phi + kPi};
        CHECK(std::abs(chi_eff(t, PhaseMatchType::OO_E, mapped) -
                       chi_eff(t, PhaseMatchType::OO_E, orig)) <= 1e-14);
        CHECK(std::abs(chi_eff(t, PhaseMatchType::EO_O, mapped) -
                       chi_eff(t, PhaseMatchType::EO_O, orig)) <= 1e-14);
        CHECK(std::abs(chi_eff(t, PhaseMatchType::EE_O, mapped) +
                       chi_eff(t, PhaseMatchType::EE_O, orig)) <= 1e-14);
        CHECK(std::abs(chi_eff(t, PhaseMatchType::OE_E, mapped) +
                       chi_eff(t, PhaseMatchType::OE_E, orig)) <= 1e-14);
    }
}

TEST_CASE("eig2_max solves the symmetric 2x2 eigenproblem") {
    const Eig2 e = eig2_max(2.0, 0.0, -1.0);
    CHECK(e.lambda == 2.0);
    CHECK(e.v1 == 1.0);
    CHECK(e.v2 == 0.0);

    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const double m11 = uniform(rng, -2.0, 2.0);
        const double m12 = uniform(rng, -2.0, 2.0);
        const double m22 = uniform(rng, -2.0, 2.0);
        const Eig2 r = eig2_max(m11, m12, m22);
        CHECK(r.lambda >= std::max(m11, m22) - 1e-14);
        CHECK(std::abs(r.v1 * r.v1 + r.v2 * r.v2 - 1.0) <= 1e-14);
        CHECK(std::abs(m11 * r.v1 + m12 * r.v2 - r.lambda * r.v1) <= 1e-13);
        CHECK(std::abs(m12 * r.v1 + m22 * r.v2 - r.lambda * r.v2) <= 1e-13);
        CHECK((r.v1 > 0.0 || (r.v1 == 0.0 && r.v2 > 0.0)));
    }
}

TEST_CASE("d_eff1 reproduces closed-form class values") {
    SolverOptions opts;
    CHECK(d_eff1(build_crystal("-42m", {{"chi14", 1.0}}), opts).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d_eff1(build_crystal("4mm", {{"chi15", 1.0}, {"chi33", 2.0}}), opts).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d_eff1(build_crystal("-62m", {{"chi22", 1.0}}), opts).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d_eff1(build_crystal("6", {{"chi11", 3.0}, {"chi22", 4.0}}), opts).value ==
          doctest::Approx(5.0).epsilon(1e-12));
    const std::map<std::string, double> p4{{"chi14", 3.0}, {"chi15", 4.0}};
    CHECK(d_eff1(build_crystal("4", p4, Variant::PaperLiteral), opts).value ==
          doctest::Approx(5.0).epsilon(1e-12));
    CHECK(d_eff1(build_crystal("4", p4, Variant::Symmetrized), opts).value ==
          doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("d_eff1 returns self-consistent optimum data") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const Tensor3 t = random_general(rng);
        const OptResult r = d_eff1(t);
        CHECK(std::abs(std::abs(r.chi_at_angles) - r.value) <= 1e-10);
        CHECK(std::abs(norm(r.a_star) - 1.0) <= 1e-14);
        CHECK(r.a_star[2] == 0.0);
        CHECK(std::abs(r.z1_star * r.z1_star + r.z2_star * r.z2_star - 1.0) <= 1e-12);
        CHECK(r.angles_star.theta >= 0.0);
        CHECK(r.angles_star.theta <= kPi);
    }
}

TEST_CASE("d_eff2 reproduces closed-form class values") {
    SolverOptions opts;
    CHECK(d_eff2(build_crystal("-42m", {{"chi14", 1.0}}), opts).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d_eff2(build_crystal("-62m", {{"chi22", 1.0}}), opts).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d_eff2(build_crystal("6", {{"chi11", 1.0}, {"chi22", 1.0}}), opts).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(d_eff2(build_crystal("6", {{"chi11", 3.0}, {"chi22", 4.0}}), opts).value ==
          doctest::Approx(5.0).epsilon(1e-12));
    const std::map<std::string, double> p4{{"chi14", 3.0}, {"chi15", 4.0}};
    CHECK(d_eff2(build_crystal("4", p4, Variant::Symmetrized), opts).value ==
          doctest::Approx(5.0).epsilon(1e-12));

    const OptResult zero2 = d_eff2(build_crystal("4mm", {{"chi15", 1.0}, {"chi33", 2.0}}), opts);
    CHECK(zero2.value == 0.0);
    CHECK(zero2.degenerate);
}

TEST_CASE("d_eff2 rejects tensors without last-two-index symmetry") {
    const Tensor3 lit =
        build_crystal("4", {{"chi14", 1.0}, {"chi15", 1.0}}, Variant::PaperLiteral);
    CHECK_THROWS_AS(d_eff2(lit), symmetry_error);
}

TEST_CASE("d_eff2 optimum reproduces its value through chi_eff") {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 20; ++trial) {
        const Tensor3 t = random_piezo(rng);
        const OptResult r = d_eff2(t);
        CHECK(std::abs(r.chi_at_angles - r.value) <= 1e-10);
        CHECK(r.angles_star.theta >= 0.0);
        CHECK(r.angles_star.theta <= kPi);
    }
}

TEST_CASE("zero tensor gives degenerate optima with canonical geometry") {
    const Tensor3 zero{};
    const OptResult r1 = d_eff1(zero);
    CHECK(r1.value == 0.0);
    CHECK(r1.degenerate);
    CHECK(r1.z1_star == 1.0);
    CHECK(r1.z2_star == 0.0);
    CHECK(r1.angles_star.theta == doctest::Approx(kPi / 2.0));
    CHECK(r1.angles_star.phi == 0.0);
    const OptResult r2 = d_eff2(zero);
    CHECK(r2.value == 0.0);
    CHECK(r2.degenerate);
    CHECK(r2.angles_star.phi == 0.0);
}

TEST_CASE("d_eff solvers are absolutely homogeneous in the tensor") {
    std::mt19937_64 rng(27);
    for (double c : {3.0, -2.0, 0.25}) {
        const Tensor3 t = random_piezo(rng);
        const Tensor3 ct = scale_tensor(t, c);
        CHECK(std::abs(d_eff1(ct).value - std::abs(c) * d_eff1(t).value) <=
              1e-11 * std::max(1.0, std::abs(c)));
        CHECK(std::abs(d_eff2(ct).value - std::abs(c) * d_eff2(t).value) <=
              1e-11 * std::max(1.0, std::abs(c)));
    }
}

TEST_CASE("angle_scan grid layout and argmax") {
    const Tensor3 t = build_crystal("-42m", {{"chi14", 1.0}});
    const ScanGrid g = angle_scan(t, PhaseMatchType::OO_E, 19, 36);
    CHECK(g.values.size() == 19u * 36u);
    CHECK(g.theta(0) == 0.0);
    CHECK(g.theta(18) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(g.phi(0) == 0.0);
    CHECK(g.phi(35) == doctest::Approx(35.0 / 36.0 * 2.0 * kPi).epsilon(1e-15));

    // Values are the raw chi_eff samples, theta-major.
    std::mt19937_64 rng(28);
    for (int trial = 0; trial < 40; ++trial) {
        const int it = int(uniform01(rng) * 19), ip = int(uniform01(rng) * 36);
        CHECK(g.at(it, ip) ==
              doctest::Approx(chi_eff(t, PhaseMatchType::OO_E, {g.theta(it), g.phi(ip)}))
                  .epsilon(1e-15));
    }

    // The grid maximum is a feasible-subset lower bound for d_eff1.
    const double d1 = d_eff1(t).value;
    CHECK(std::abs(g.argmax_value) <= d1 + 1e-12);
    for (double v : g.values) CHECK(std::abs(v) <= std::abs(g.argmax_value) + 1e-15);

    CHECK_THROWS_AS(angle_scan(t, PhaseMatchType::OO_E, 1, 36), std::invalid_argument);
}

TEST_CASE("write_csv emits the pinned format") {
    const Tensor3 zero{};
    const ScanGrid g = angle_scan(zero, PhaseMatchType::EE_O, 3, 4);
    std::ostringstream os;
    write_csv(g, os);
    const std::string body = os.str();
    CHECK(body.substr(0, 16) == "theta,phi,value\n");
    CHECK(body.back() == '\n');
    CHECK(body.find('\r') == std::string::npos);
    size_t rows = 0;
    for (char ch : body)
        if (ch == '\n') ++rows;
    CHECK(rows == 1u + 3u * 4u);

    // %.17g digits survive a strtod round trip.
    const Tensor3 t = build_crystal("6", {{"chi11", 1.0}, {"chi22", 2.0}});
    const ScanGrid g2 = angle_scan(t, PhaseMatchType::OO_E, 4, 5);
    std::ostringstream os2;
    write_csv(g2, os2);
    std::istringstream in(os2.str());
    std::string line;
    std::getline(in, line);  // header
    for (int it = 0; it < 4; ++it)
        for (int ip = 0; ip < 5; ++ip) {
            REQUIRE(std::getline(in, line));
            const size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
            REQUIRE(c1 != std::string::npos);
            REQUIRE(c2 != std::string::npos);
            CHECK(std::stod(line.substr(0, c1)) == g2.theta(it));
            CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == g2.phi(ip));
            CHECK(std::stod(line.substr(c2 + 1)) == g2.at(it, ip));
        }
}

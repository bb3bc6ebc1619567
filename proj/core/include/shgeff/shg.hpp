#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shgeff/tensor.hpp"
#include "shgeff/vec.hpp"

namespace shgeff {

// Propagation geometry inside a uniaxial crystal: theta is the angle between
// the wavevector and the optic axis (x3), phi the azimuth of the wavevector
// projection measured from the x1-axis.
struct AngleSet {
    double theta = 0.0;
    double phi = 0.0;
};

// Maps (theta, phi) to the representative with theta in [0, pi] and
// phi in [0, 2*pi) that describes the same propagation direction
// (theta > pi folds via (theta, phi) -> (2*pi - theta, phi + pi)). The fold
// preserves |chi_eff|; the o/e polarization vectors may flip sign.
AngleSet canonical_angles(double theta, double phi);

// The four phase-matching configurations: fundamental polarizations ->
// harmonic polarization. OO_E and EE_O are type I, OE_E and EO_O type II.
enum class PhaseMatchType { OO_E, EE_O, OE_E, EO_O };

const char* to_string(PhaseMatchType pm);
std::optional<PhaseMatchType> parse_phase_match(std::string_view s);

// Ordinary-wave unit polarization a = (sin phi, -cos phi, 0).
Vec3 o_polarization(double phi);

// Extraordinary-wave unit polarization
// b = (-cos theta * cos phi, -cos theta * sin phi, sin theta)
//   = (a2*z1, -a1*z1, z2) with z1 = cos theta, z2 = sin theta.
Vec3 e_polarization(double theta, double phi);

struct PolarizationPair {
    Vec3 a;  // o-wave, unit, third component 0
    Vec3 b;  // e-wave, unit, orthogonal to a
    AngleSet angles;
};

PolarizationPair polarization_pair(const AngleSet& angles);

// Effective SHG coefficient for the given configuration:
//   OO_E -> T(b,a,a), EE_O -> T(a,b,b), OE_E -> T(b,a,b), EO_O -> T(a,b,a).
double chi_eff(const Tensor3& t, PhaseMatchType pm, const AngleSet& angles);

// Largest eigenvalue and a unit eigenvector of the symmetric 2x2 matrix
// [[m11, m12], [m12, m22]]:
//   lambda = (m11 + m22)/2 + sqrt(((m11 - m22)/2)^2 + m12^2).
// Eigenvector sign convention: first nonzero component positive.
struct Eig2 {
    double lambda;
    double v1, v2;
};

Eig2 eig2_max(double m11, double m12, double m22);

struct SolverOptions {
    int grid_points = 3600;    // azimuth pre-scan resolution over [0, 2*pi)
    double refine_tol = 1e-12; // golden-section interval width target
    double verify_tol = 1e-10; // |chi_eff(angles*) - value| self-check bound
};

struct OptResult {
    double value = 0.0;        // maximum of the reduced objective
    Vec3 a_star{};             // optimal o-wave polarization, a3 = 0
    double z1_star = 1.0;      // cos(theta) at the optimum
    double z2_star = 0.0;      // sin(theta) at the optimum
    AngleSet angles_star{};    // canonical angles reproducing |value|
    double chi_at_angles = 0.0;// signed chi_eff at angles_star
    long evaluations = 0;      // objective evaluations spent
    bool degenerate = false;   // zero objective everywhere
    std::string method;
};

// Largest |chi_eff| over all angles for the oo-e configuration, computed by
// the reduced one-variable model: value = max over unit (a1, a2) of
// sqrt((a2*q1 - a1*q2)^2 + q3^2), with the optimal z recovered as
// (a2*q1 - a1*q2, q3) / value. Always succeeds; a zero objective yields
// value 0, z* = (1, 0), theta* = pi/2 and the degenerate flag.
OptResult d_eff1(const Tensor3& t, const SolverOptions& opts = {});

// Largest chi_eff over all angles for the ee-o configuration, computed by
// the reduced one-variable model: value = max over unit (a1, a2) of the top
// eigenvalue of [[r11, r12], [r12, r22]]; z* is the corresponding
// eigenvector. Requires last-two-index symmetry (throws symmetry_error for
// General tensors; use the grid oracle for those).
OptResult d_eff2(const Tensor3& t, const SolverOptions& opts = {});

// Tabulation of chi_eff over a uniform angle mesh: theta takes n_theta
// points spanning [0, pi] inclusive, phi takes n_phi points spanning
// [0, 2*pi) half-open. values is theta-major (row it, column ip).
struct ScanGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> values;
    int argmax_itheta = 0;  // argmax of |value|, ties -> lowest linear index
    int argmax_iphi = 0;
    double argmax_value = 0.0;  // signed value at the argmax

    double theta(int it) const;
    double phi(int ip) const;
    double at(int it, int ip) const { return values[size_t(it) * n_phi + ip]; }
};

// Requires n_theta >= 2 and n_phi >= 2 (throws std::invalid_argument).
ScanGrid angle_scan(const Tensor3& t, PhaseMatchType pm, int n_theta, int n_phi);

// CSV serialization: header "theta,phi,value", one row per grid node in
// theta-major order, %.17g decimals, LF endings, trailing newline.
void write_csv(const ScanGrid& grid, std::ostream& os);

}  // namespace shgeff

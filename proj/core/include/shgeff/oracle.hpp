#pragma once

#include "shgeff/ceigen.hpp"
#include "shgeff/shg.hpp"
#include "shgeff/tensor.hpp"
#include "shgeff/vec.hpp"

namespace shgeff {

// Brute-force ground-truth maximizers. These evaluate the objectives straight
// from definition-level contractions of the polarization vectors — never via
// the Q/R-form shortcuts — so a defect in the reduced solvers cannot validate
// itself. Grids use step h = range/n starting at 0 in both coordinates, so
// doubling n yields a nested grid and the coarse maximum is monotone in n.

struct DeffOracleResult {
    double value = 0.0;        // refined max of |chi_eff|
    AngleSet argmax{};         // canonical angles attaining value
    double coarse_value = 0.0; // best grid node before refinement
    int grid_n = 0;
    long evaluations = 0;
};

struct CeigOracleResult {
    double value = 0.0;        // refined max of lambda_of_y
    Vec3 y{0.0, 0.0, 1.0};     // maximizing unit vector
    Vec3 x{1.0, 0.0, 0.0};     // T(.,y,y)/||T(.,y,y)|| (e1 for zero contraction)
    double coarse_value = 0.0;
    int grid_n = 0;
    long evaluations = 0;
};

// Max of |chi_eff(t, pm, theta, phi)| over an n x n grid (theta_i = i*pi/n,
// phi_j = 2*pi*j/n), then derivative-free coordinate-descent refinement with
// step halving from the grid spacing down to 1e-10 per coordinate.
// Requires n >= 16 (throws std::invalid_argument).
DeffOracleResult grid_max_deff(const Tensor3& t, PhaseMatchType pm, int n = 256);

// Max of lambda_of_y over an n x n spherical grid for y (polar alpha_i =
// i*pi/n, azimuth beta_j = 2*pi*j/n; the pole row is evaluated once; the
// antipodal hemisphere is covered because lambda_of_y is even in y), refined
// as above. Requires n >= 16.
CeigOracleResult grid_max_ceig(const Tensor3& t, int n = 512);

}  // namespace shgeff

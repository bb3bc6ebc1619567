#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shgeff/tensor.hpp"
#include "shgeff/vec.hpp"

namespace shgeff {

// A C-eigenpair of a piezoelectric-type tensor: unit vectors x, y and scalar
// lambda with T(.,y,y) = lambda*x and T(x,y,.) = lambda*y.
struct CEigenTriple {
    double lambda = 0.0;
    Vec3 x{1.0, 0.0, 0.0};
    Vec3 y{1.0, 0.0, 0.0};
};

struct CEigenConfig {
    int random_starts = 12;        // on top of 6 signed axes + 8 signed diagonals
    std::uint64_t seed = 0x5EED;
    double tol = 1e-13;            // stop when the objective gain drops below this
    int max_iter = 500;            // per start
    double residual_tol = 1e-9;    // convergence contract on the returned triple
};

struct CEigenReport {
    CEigenTriple best;                // best.lambda >= 0 always
    int starts = 0;
    std::vector<int> iterations;      // per start
    int polish_iterations = 0;        // residual-driven extra steps on the winner
    double residual = 0.0;            // of best
    bool converged = false;
    bool degenerate = false;          // zero tensor
    std::string method = "multistart-alternating";
};

// ||T(.,y,y)|| — the largest contraction T(x,y,y) over unit x, for fixed
// unit y. Throws std::invalid_argument unless ||y| - 1| <= 1e-12.
double lambda_of_y(const Tensor3& t, const Vec3& y);

// ||T(.,y,y) - lambda*x|| + ||T(x,y,.) - lambda*y||; zero exactly at a
// C-eigenpair. Throws std::invalid_argument for non-unit x or y.
double residual(const Tensor3& t, const CEigenTriple& triple);

// The four sign companions (l,x,y), (l,x,-y), (-l,-x,y), (-l,-x,-y); each is
// a C-eigenpair whenever the input is, with identical residual.
std::array<CEigenTriple, 4> sign_quadruple(const CEigenTriple& triple);

// Frobenius distance || t - lambda * x(o)y(o)y ||_F to the rank-one tensor
// with entries lambda * x_i * y_j * y_k.
double rank_one_error(const Tensor3& t, const CEigenTriple& triple);

// Largest C-eigenvalue by multistart alternating maximization:
//   y-update: y <- top unit eigenvector of the symmetric M(x),
//             M(x)[j][k] = sum_i T(i,j,k) x_i;
//   x-update: x <- T(.,y,y) / ||T(.,y,y)||.
// The objective T(x,y,y) is nondecreasing across updates (asserted). Starts:
// 6 signed axes, 8 signed main diagonals, cfg.random_starts seeded random
// unit vectors. Stops when the gain drops below cfg.tol or at cfg.max_iter;
// non-convergence is reported via the converged flag, never silently
// accepted. Requires a PiezoType tensor (throws symmetry_error otherwise);
// the zero tensor returns lambda 0, x = y = e1, degenerate flag.
CEigenReport solve_lambda_max(const Tensor3& t, const CEigenConfig& cfg = {});

// Largest eigenvalue and unit eigenvector of a symmetric 3x3 matrix
// (row-major, upper triangle read). Analytic trigonometric roots with a
// cyclic-Jacobi fallback when the top two roots are within 1e-7 relative
// (above the ~sqrt(eps) error floor of the analytic roots near a repeated
// eigenvalue); near-ties resolve deterministically (sign-canonicalized,
// lexicographically largest eigenvector).
struct Sym3Eig {
    double lambda;
    Vec3 v;
};

Sym3Eig sym3_max_eigenpair(const std::array<double, 9>& m);

}  // namespace shgeff

#pragma once

#include <stdexcept>
#include <string>

namespace shgeff {

// Raised when an operation that needs last-two-index symmetry (Voigt
// conversion, the reduced type-I ee-o solver, the C-eigenvalue solver)
// receives a tensor that violates it beyond tolerance.
class symmetry_error : public std::runtime_error {
public:
    symmetry_error(std::string msg, int i = 0, int j = 0, int k = 0)
        : std::runtime_error(std::move(msg)), i_(i), j_(j), k_(k) {}

    // 1-based indices of the worst violating component (0|0|0 when not applicable).
    int i() const { return i_; }
    int j() const { return j_; }
    int k() const { return k_; }

private:
    int i_, j_, k_;
};

// Raised when an iterative solver fails to meet its convergence contract.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace shgeff

#pragma once

#include "nvrot/core_model.hpp"

namespace nvrot {

struct SymmetricEigen3 {
    Vec3 values;  ///< ascending
    Mat3 vectors; ///< orthonormal columns, largest-|component| of each positive
    int sweeps = 0;
};

/**
 * @brief Cyclic Jacobi diagonalisation of a real symmetric 3x3 matrix.
 *
 * Annihilates off-diagonal entries sweep by sweep until they are negligible
 * against the Frobenius norm. Eigenvalues are returned in ascending order and
 * every eigenvector has its largest-magnitude component positive (ties go to
 * the lowest index), so the output is fully deterministic.
 *
 * Throws NumericError if the off-diagonal mass has not vanished after
 * @p max_sweeps sweeps, and ValidationError for non-finite or asymmetric input.
 */
SymmetricEigen3 jacobi_eigen3(const Mat3 &a, int max_sweeps = 50);

} // namespace nvrot

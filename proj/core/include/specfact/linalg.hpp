#pragma once

#include "specfact/types.hpp"

namespace specfact {

struct LuSolveResult {
    ComplexMatrix x;
    double rcond = 0.0;   ///< reciprocal condition estimate of A
};

/// Solves A X = B with partial pivoting. SingularMatrixError when a pivot
/// underflows 1e-13 times the largest initial column magnitude.
LuSolveResult lu_solve(const ComplexMatrix& a, const ComplexMatrix& b);

/// Lower-triangular L with positive real diagonal and L L^* = H.
/// NotPositiveDefiniteError when a diagonal pivot fails.
ComplexMatrix cholesky_factor(const ComplexMatrix& h, double hermTol = 1e-10);

/// Hermitian principal square root via eigendecomposition. Negative
/// eigenvalues up to 1e-10 * ||H|| are clamped to zero; larger ones raise
/// NotPositiveDefiniteError. NotHermitianError on asymmetric input.
ComplexMatrix hermitian_principal_sqrt(const ComplexMatrix& h, double hermTol = 1e-8);

} // namespace specfact

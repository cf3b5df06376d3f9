#include "specfact/linalg.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "specfact/errors.hpp"

namespace specfact {

LuSolveResult lu_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols()) throw InvalidArgumentError("lu_solve: A must be square");
    if (b.rows() != a.rows()) throw InvalidArgumentError("lu_solve: row counts disagree");

    const double scale = supnorm(a);
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const double minPivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (scale == 0.0 || minPivot < 1e-13 * scale)
        throw SingularMatrixError("lu_solve: pivot underflow (matrix numerically singular)");
    return {lu.solve(b), lu.rcond()};
}

ComplexMatrix cholesky_factor(const ComplexMatrix& h, double hermTol) {
    if (h.rows() != h.cols()) throw InvalidArgumentError("cholesky_factor: H must be square");
    const double scale = std::max(supnorm(h), 1.0);
    if (supnorm(ComplexMatrix(h - h.adjoint())) > hermTol * scale)
        throw NotHermitianError("cholesky_factor: input is not Hermitian");

    Eigen::LLT<ComplexMatrix> llt(h);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("cholesky_factor: nonpositive pivot");
    return llt.matrixL();
}

ComplexMatrix hermitian_principal_sqrt(const ComplexMatrix& h, double hermTol) {
    if (h.rows() != h.cols())
        throw InvalidArgumentError("hermitian_principal_sqrt: H must be square");
    const double scale = std::max(supnorm(h), 1.0);
    if (supnorm(ComplexMatrix(h - h.adjoint())) > hermTol * scale)
        throw NotHermitianError("hermitian_principal_sqrt: input is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw NumericalError("hermitian_principal_sqrt: eigendecomposition failed");
    Eigen::VectorXd ev = es.eigenvalues();
    const double clamp = 1e-10 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -clamp)
            throw NotPositiveDefiniteError(
                "hermitian_principal_sqrt: eigenvalue " + std::to_string(ev(i)) +
                " below the PSD clamp");
        if (ev(i) < 0.0) ev(i) = 0.0;
    }
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace specfact

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "msf_detail.hpp"
#include "specfact/errors.hpp"
#include "specfact/fft.hpp"
#include "specfact/linalg.hpp"
#include "specfact/msf.hpp"

namespace specfact {

namespace {

/// Distance of the closest root of a causal polynomial to the unit circle,
/// from the companion matrix spectrum.
double min_root_distance(const LaurentPoly& a) {
    const double scale = supnorm(a);
    int deg = a.hi();
    while (deg > 0 && std::abs(a.at(deg)) < 1e-14 * scale) --deg;
    if (deg == 0) return std::numeric_limits<double>::infinity();
    ComplexMatrix comp = ComplexMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -a.at(i) / a.at(deg);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(comp, /*computeEigenvectors=*/false);
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        best = std::min(best, std::abs(std::abs(es.eigenvalues()(i)) - 1.0));
    return best;
}

// A factor root this close to the circle means det S vanishes on or near
// the boundary within working precision (an exact double zero of the
// density splits the computed roots by about sqrt of the factor error).
constexpr double kSingularRootDistance = 1.5e-5;

} // namespace

FactorResult jle3(const LaurentPolyMatrix& s, const AlgoParams& params) {
    params.validate();
    detail::Stopwatch sw;
    Diagnostics diag;

    const LaurentPolyMatrix sd = detail::prepare_density(s, params.hermitianTol);
    const int r = sd.rows;
    const int n = sd.hi();

    if (r == 1) {
        const int K = static_cast<int>(next_pow2(static_cast<std::size_t>(
            std::max(params.scalarGridK, 4 * n + 1))));
        LaurentPolyMatrix splus =
            LaurentPolyMatrix::from_scalar(scalar_factor(sd.entry(0, 0), K, params.scalarIters));
        return detail::finish_result(sd, std::move(splus), "jle3", std::move(diag), sw);
    }

    // determinants of S and its leading (r-1) x (r-1) block
    const LaurentPoly detS = polymat_det(sd, DetMethod::Fft, &diag.warnings);
    const LaurentPoly detSr1 = polymat_det(sd.leading(r - 1), DetMethod::Fft, &diag.warnings);

    // scalar spectral factor of det S; the accuracy of this step also
    // sharpens the singularity detection below, so the grid and iteration
    // floors are generous
    const int K = static_cast<int>(next_pow2(static_cast<std::size_t>(
        std::max({params.scalarGridK, 64 * r * n + 1, 8192}))));
    const LaurentPoly a = scalar_factor(detS, K, std::max(params.scalarIters, 60));

    const double rootDist = min_root_distance(a);
    if (rootDist < kSingularRootDistance)
        throw IllConditionedDeltaError(
            "jle3: det S vanishes on or near the unit circle (factor root distance " +
            std::to_string(rootDist) + "); the assembled system would be singular");

    // transposed cofactors of S_[r-1] and the product row
    LaurentPolyMatrix cof;
    try {
        cof = cofactor_transpose(sd.leading(r - 1), detSr1);
    } catch (const SingularNodeError& e) {
        throw SingularDeltaError(std::string("jle3: det S_[r-1] vanishes on the unit circle (") +
                                 e.what() + ")");
    }
    const LaurentPolyMatrix cRow = laurent_mul(sd.block(r - 1, 0, 1, r - 1), cof);

    // shifted coefficient vectors of length 2(r-1)n + 1
    const int shift = (r - 1) * n;
    const int clen = 2 * shift + 1;
    std::vector<cplx> b(static_cast<std::size_t>(clen));
    for (int k = 0; k < clen; ++k) b[static_cast<std::size_t>(k)] = detSr1.at(k - shift);
    std::vector<std::vector<cplx>> c(static_cast<std::size_t>(r - 1),
                                     std::vector<cplx>(static_cast<std::size_t>(clen)));
    for (int j = 0; j < r - 1; ++j)
        for (int k = 0; k < clen; ++k)
            c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = cRow.entry(0, j).at(k - shift);
    std::vector<cplx> av(a.coeffs.begin(), a.coeffs.end());   // degree rn

    // Delta = [T(c1;n) .. T(c_{r-1};n)  -T(b;n)  T(a;(r-1)n) ; point rows]
    const int eqRows = 2 * r * n - n + 1;
    const int order = 2 * r * n - n + r + 1;
    ComplexMatrix delta = ComplexMatrix::Zero(order, order);
    int col0 = 0;
    for (int j = 0; j < r - 1; ++j) {
        delta.block(0, col0, eqRows, n + 1) = toeplitz_lower(c[static_cast<std::size_t>(j)], n);
        col0 += n + 1;
    }
    delta.block(0, col0, eqRows, n + 1) = -toeplitz_lower(b, n);
    col0 += n + 1;
    delta.block(0, col0, eqRows, shift + 1) = toeplitz_lower(av, shift);

    for (int i = 0; i < r; ++i)
        delta.block(eqRows + i, (n + 1) * i, 1, n + 1).setOnes();

    // the blocks carry wildly different scales (determinant coefficients vs
    // unit point rows); equilibrate before factorizing so the conditioning
    // estimate reflects structure, not scaling
    Eigen::VectorXd rowScale(order), colScale(order);
    for (int i = 0; i < order; ++i) {
        const double m = delta.row(i).cwiseAbs().maxCoeff();
        rowScale(i) = (m > 0.0) ? 1.0 / m : 1.0;
    }
    delta = rowScale.asDiagonal() * delta;
    for (int j = 0; j < order; ++j) {
        const double m = delta.col(j).cwiseAbs().maxCoeff();
        colScale(j) = (m > 0.0) ? 1.0 / m : 1.0;
    }
    delta = delta * colScale.asDiagonal();

    Eigen::PartialPivLU<ComplexMatrix> lu(delta);
    const double rc = lu.rcond();
    {
        StepDiag step;
        step.m = r;
        step.N = order;
        step.rcondNormalizer = rc;
        diag.steps.push_back(step);
    }
    if (!std::isfinite(rc) || rc < 1e-15)
        throw SingularDeltaError("jle3: system matrix singular (det S vanishes on the unit circle); rcond " +
                                 std::to_string(rc));
    if (rc < params.rcondDeltaTol)
        throw IllConditionedDeltaError("jle3: system matrix ill-conditioned, rcond " + std::to_string(rc) +
                                       " (zeros of det S on or near the unit circle)");

    // value of the factor at t = 1 pins the solution: S+(1) = chol(S(1))
    const ComplexMatrix s1 = sd.eval(1.0);
    const ComplexMatrix l = cholesky_factor(s1);

    LaurentPolyMatrix splus(r, r, 0, n);
    for (int j = 0; j < r; ++j) {
        ComplexVector rhs = ComplexVector::Zero(order);
        rhs.segment(eqRows, r) = l.col(j);
        const ComplexVector x = colScale.asDiagonal() * lu.solve(rowScale.asDiagonal() * rhs);
        for (int i = 0; i < r; ++i)
            for (int k = 0; k <= n; ++k)
                splus.ref(k)(i, j) = x((n + 1) * i + k);
    }

    return detail::finish_result(sd, std::move(splus), "jle3", std::move(diag), sw);
}

} // namespace specfact

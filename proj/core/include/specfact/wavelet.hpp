#pragma once

#include <vector>

#include "specfact/laurent.hpp"
#include "specfact/types.hpp"

namespace specfact {

/// Truncated last row driving one recursion step: m-1 tails zeta_j on
/// [-N, n] and the causal f_m on [0, N+n].
struct LastRowData {
    int m = 2;
    int N = 1;
    std::vector<LaurentPoly> zeta;
    LaurentPoly fm;
};

/// Unitary matrix function with polynomial entries of degree <= N.
/// Rows 1..m-1 are causal; the last row holds the causal polynomials whose
/// conjugates form the actual entries.
struct WaveletMatrix {
    int m = 0;
    int N = 0;
    std::vector<std::vector<LaurentPoly>> upper;   // (m-1) x m, causal
    std::vector<LaurentPoly> lastRowConj;          // m causal polynomials
    double normalizerRcond = 0.0;                  // conditioning of the constant normalizer

    ComplexMatrix eval(cplx t) const;
    /// Full Laurent form on [-N, N] for products.
    LaurentPolyMatrix to_laurent() const;
};

struct WaveletGenerators {
    std::vector<cplx> b;                       // coefficients of P_N^+[1/f_m]
    std::vector<std::vector<cplx>> lambda;     // m-1 rows (eta_i0..eta_iN)
};

/// First rows of the Hankel generators Theta_i = D^{-1} Gamma_i, plus the
/// causal series of 1/f_m they are built from.
WaveletGenerators build_generators(const LastRowData& row);

enum class DeltaMethod {
    Dense,          ///< form Delta = sum Theta_i Theta_i^* + I and Cholesky it
    Displacement,   ///< generalized Schur on the rank-(m) displacement generators
};

/// Solves Delta X = Lambda_i^T for i = 1..m (Lambda_m = e_1 implicitly);
/// Delta is positive definite with eigenvalues >= 1 by construction.
std::vector<ComplexVector> solve_delta(const std::vector<std::vector<cplx>>& lambda, int N,
                                       DeltaMethod method = DeltaMethod::Dense);

/// Assembles the solution basis V and normalizes it by a constant right
/// factor into the unitary wavelet matrix. IllConditionedV0Error when the
/// normalizer is numerically singular.
WaveletMatrix assemble_wavelet(const LastRowData& row, const std::vector<ComplexVector>& x,
                               const std::vector<std::vector<cplx>>& lambda);

struct UnitaryDefect {
    double defect = 0.0;      ///< max over nodes of ||U U* - I||_inf
    double detDefect = 0.0;   ///< max over nodes of |det U - 1|
};

UnitaryDefect unitary_defect(const WaveletMatrix& u, int nodes);

/// Convenience: generators + solve + assembly in one call.
WaveletMatrix build_wavelet(const LastRowData& row, DeltaMethod method = DeltaMethod::Dense);

} // namespace specfact

#pragma once

#include <map>
#include <string>
#include <vector>

#include "specfact/laurent.hpp"
#include "specfact/scalar.hpp"
#include "specfact/wavelet.hpp"

namespace specfact {

/// Tuning parameters shared by the four factorization drivers.
struct AlgoParams {
    /// Explicit per-recursion-index truncation overrides; wins over the
    /// default schedules below.
    std::map<int, int> N_schedule;
    /// JLE-1 default schedule N(m) = ceil(N_multiplier * m * n).
    double N_multiplier = 5.0;
    /// log2 of the DFT grid for JLE-2 and Wilson, 10 <= kappa <= 23.
    int kappa = 12;
    /// JLE-2 default N = ratio * 2^kappa, clamped to 2^kappa - n - 1.
    double ratio = 1.0 / 16.0;
    /// Wilson refinement count inside scalar factorizations (up to 60 for
    /// singular inputs).
    int scalarIters = 5;
    /// Matrix Wilson iteration cap.
    int wilsonIters = 20;
    /// Grid floor for scalar factorizations outside JLE-2.
    int scalarGridK = 512;
    /// JLE-1 determinant route; Direct is exact convolution Laplace
    /// expansion, practical for small matrices.
    DetMethod detPath = DetMethod::Fft;
    /// JLE-1: compute f_m from the power identity instead of the
    /// determinant quotient.
    bool fmViaPower = false;
    /// Route wavelet Delta solves through the displacement-structure
    /// fast path (equivalent to the dense Cholesky default).
    bool useDisplacementSolver = false;
    /// Nodes for the per-step unitary-defect diagnostic.
    int defectNodes = 128;

    double hermitianTol = 1e-8;     ///< relative Hermitian-symmetry tolerance
    double rcondNodeTol = 1e-12;    ///< JLE-2 per-node fallback threshold
    double rcondDeltaTol = 1e-12;   ///< JLE-3 system conditioning threshold

    int grid_size() const { return 1 << kappa; }
    int scheduled_N(int m, int n) const;
    void validate() const;
};

struct StepDiag {
    int m = 0;
    int N = 0;
    double rcondNormalizer = 0.0;
    double unitaryDefect = 0.0;
    double detDefect = 0.0;
    double truncatedMass = 0.0;
    int singularNodeFallbacks = 0;
    double seconds = 0.0;
};

struct Diagnostics {
    std::vector<StepDiag> steps;
    std::vector<std::string> warnings;
    int iterations = 0;           ///< Wilson matrix iterations actually run
    double totalSeconds = 0.0;
};

struct FactorResult {
    LaurentPolyMatrix Splus;      ///< causal factor on [0, n], Splus(0) Hermitian PD
    double err = 0.0;             ///< coefficient sup-norm of S - Splus Splus*
    Diagnostics diagnostics;
    std::string algorithm;
};

/// Causal projection with the constant term halved: the [.]^+ of Wilson's
/// iteration. plus_half(F) + plus_half(F)* = F for Hermitian-symmetric F.
LaurentPoly plus_half(const LaurentPoly& f);
LaurentPolyMatrix plus_half(const LaurentPolyMatrix& f);

/// Conjugated last-row entries from Cramer's rule: solves
/// Sprev+ (zeta_1..zeta_{m-1})^* = col symbolically; element j is
/// conj(zeta_j) = p_j / det(Sprev+).
std::vector<RationalCausal> zeta_cramer(const LaurentPolyMatrix& sprevPlus,
                                        const LaurentPolyMatrix& col);

struct NodeZetas {
    std::vector<ComplexVector> values;   ///< per node: (zeta_1(t_l), .., zeta_{m-1}(t_l))
    int fallbacks = 0;                   ///< ill-conditioned nodes patched from a neighbor
};

/// Node-wise solves of Sprev+(t_l) X = col(t_l); zeta row = X^*. Nodes whose
/// system is ill-conditioned inherit the previous node's solution.
NodeZetas zeta_at_nodes(const std::vector<ComplexMatrix>& sprevVals,
                        const std::vector<ComplexVector>& colVals,
                        double rcondTol = 1e-12);

/// f_m as the quotient of scalar factors of det S_[m] and det S_[m-1].
RationalCausal fm_via_determinants(const LaurentPoly& detm, const LaurentPoly& detm1,
                                   const AlgoParams& params);

/// f_m from |f_m|^2 = s_mm - sum |zeta_j|^2 on the node grid, expanded by
/// exp-log to degree N + n.
LaurentPoly fm_via_power(const LaurentPoly& smm, const std::vector<ComplexVector>& zetaNodeVals,
                         int N, int n);

/// One recursion step: builds the wavelet matrix from the truncated row,
/// multiplies [Sprev+ (+) row] by it and truncates the product to [0, n].
LaurentPolyMatrix recursion_step(const LaurentPolyMatrix& sprevPlus, const LastRowData& row,
                                 int n, const AlgoParams& params, StepDiag* diag = nullptr);

/// Right-multiplies by the constant unitary that makes the value at the
/// origin Hermitian positive definite.
LaurentPolyMatrix normalize_at_zero(const LaurentPolyMatrix& s0plus);

FactorResult jle1(const LaurentPolyMatrix& s, const AlgoParams& params = {});
FactorResult jle2(const LaurentPolyMatrix& s, const AlgoParams& params = {});
FactorResult jle3(const LaurentPolyMatrix& s, const AlgoParams& params = {});
FactorResult wilson(const LaurentPolyMatrix& s, const AlgoParams& params = {});

} // namespace specfact

#include "specfact/msf.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "msf_detail.hpp"
#include "specfact/errors.hpp"
#include "specfact/fft.hpp"
#include "specfact/harness.hpp"
#include "specfact/linalg.hpp"
#include "specfact/parallel.hpp"

namespace specfact {

int AlgoParams::scheduled_N(int m, int n) const {
    if (auto it = N_schedule.find(m); it != N_schedule.end()) return it->second;
    return std::max(4, static_cast<int>(std::ceil(N_multiplier * m * std::max(n, 1))));
}

void AlgoParams::validate() const {
    if (kappa < 10 || kappa > 23)
        throw InvalidArgumentError("AlgoParams: kappa must satisfy 10 <= kappa <= 23");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw InvalidArgumentError("AlgoParams: ratio must lie in (0, 1)");
    if (scalarIters < 0 || wilsonIters < 1)
        throw InvalidArgumentError("AlgoParams: iteration counts out of range");
}

LaurentPoly plus_half(const LaurentPoly& f) {
    const int hi = std::max(f.hi(), 0);
    LaurentPoly out = LaurentPoly::zero(0, hi);
    for (int k = 1; k <= f.hi(); ++k) out.ref(k) = f.at(k);
    out.ref(0) = 0.5 * f.at(0);
    return out;
}

LaurentPolyMatrix plus_half(const LaurentPolyMatrix& f) {
    const int hi = std::max(f.hi(), 0);
    LaurentPolyMatrix out(f.rows, f.cols, 0, hi);
    for (int k = 1; k <= f.hi(); ++k) out.ref(k) = f.at(k);
    out.ref(0) = 0.5 * f.at(0);
    return out;
}

std::vector<RationalCausal> zeta_cramer(const LaurentPolyMatrix& sprevPlus,
                                        const LaurentPolyMatrix& col) {
    if (sprevPlus.rows != sprevPlus.cols)
        throw InvalidArgumentError("zeta_cramer: factor block must be square");
    if (col.rows != sprevPlus.rows || col.cols != 1)
        throw InvalidArgumentError("zeta_cramer: column shape mismatch");

    const LaurentPoly q = polymat_det(sprevPlus).restricted(0, sprevPlus.rows * sprevPlus.hi());
    const LaurentPolyMatrix adj = cofactor_transpose(sprevPlus, q);

    std::vector<RationalCausal> out;
    out.reserve(static_cast<std::size_t>(sprevPlus.rows));
    for (int j = 0; j < sprevPlus.rows; ++j) {
        LaurentPoly p = LaurentPoly::constant(0.0);
        for (int i = 0; i < sprevPlus.rows; ++i)
            p = add(p, mul(adj.entry(j, i), col.entry(i, 0)));
        out.push_back(RationalCausal{std::move(p), q});
    }
    return out;
}

NodeZetas zeta_at_nodes(const std::vector<ComplexMatrix>& sprevVals,
                        const std::vector<ComplexVector>& colVals,
                        double rcondTol) {
    const int K = static_cast<int>(sprevVals.size());
    if (K == 0 || colVals.size() != sprevVals.size())
        throw InvalidArgumentError("zeta_at_nodes: node arrays disagree");

    NodeZetas out;
    out.values.assign(static_cast<std::size_t>(K), ComplexVector());
    std::vector<char> ok(static_cast<std::size_t>(K), 0);

    parallel_for(K, [&](int l) {
        Eigen::PartialPivLU<ComplexMatrix> lu(sprevVals[static_cast<std::size_t>(l)]);
        const double rc = lu.rcond();
        if (std::isfinite(rc) && rc >= rcondTol) {
            const ComplexVector x = lu.solve(colVals[static_cast<std::size_t>(l)]);
            if (x.allFinite()) {
                out.values[static_cast<std::size_t>(l)] = x.conjugate();
                ok[static_cast<std::size_t>(l)] = 1;
            }
        }
    });

    // continuity fallback: an invalid node inherits its predecessor; the
    // leading run (node 0 has no predecessor) takes the nearest valid
    // successor instead
    int firstOk = -1;
    for (int l = 0; l < K; ++l)
        if (ok[static_cast<std::size_t>(l)]) { firstOk = l; break; }
    if (firstOk < 0) throw AllNodesSingularError("zeta_at_nodes: every node system failed");
    for (int l = 0; l < firstOk; ++l) {
        out.values[static_cast<std::size_t>(l)] = out.values[static_cast<std::size_t>(firstOk)];
        ++out.fallbacks;
    }
    for (int l = std::max(firstOk, 1); l < K; ++l) {
        if (!ok[static_cast<std::size_t>(l)]) {
            out.values[static_cast<std::size_t>(l)] = out.values[static_cast<std::size_t>(l - 1)];
            ++out.fallbacks;
        }
    }
    return out;
}

RationalCausal fm_via_determinants(const LaurentPoly& detm, const LaurentPoly& detm1,
                                   const AlgoParams& params) {
    // the grid must resolve determinant zeros sitting close to the circle
    // (typical distance shrinks with the degree), so it scales with deg
    const auto factor = [&](const LaurentPoly& d) {
        const int K = static_cast<int>(next_pow2(static_cast<std::size_t>(
            std::max(params.scalarGridK, 64 * std::max(d.hi(), 1) + 1))));
        return scalar_factor(d, K, params.scalarIters);
    };
    RationalCausal fm;
    fm.p = factor(detm);
    fm.q = (detm1.length() == 1 && detm1.lo == 0) ? detm1 : factor(detm1);
    return fm;
}

LaurentPoly fm_via_power(const LaurentPoly& smm, const std::vector<ComplexVector>& zetaNodeVals,
                         int N, int n) {
    const int K = static_cast<int>(zetaNodeVals.size());
    if (!is_pow2(static_cast<std::size_t>(K)))
        throw InvalidArgumentError("fm_via_power: node count must be a power of two");
    if (N + n >= K)
        throw InvalidArgumentError("fm_via_power: output degree N + n must stay below the grid");

    const std::vector<cplx> smmVals = sample_on_grid(smm, K);
    std::vector<double> power(static_cast<std::size_t>(K));
    const double scale = supnorm(smm);
    for (int l = 0; l < K; ++l) {
        double v = smmVals[static_cast<std::size_t>(l)].real() -
                   zetaNodeVals[static_cast<std::size_t>(l)].squaredNorm();
        if (v < -1e-6 * scale)
            throw NegativePowerError("fm_via_power: |f_m|^2 negative at node " + std::to_string(l) +
                                     " (upstream inaccuracy)");
        power[static_cast<std::size_t>(l)] = v;
    }
    return scalar_factor_explog(make_density_samples(power), N + n);
}

LaurentPolyMatrix recursion_step(const LaurentPolyMatrix& sprevPlus, const LastRowData& row,
                                 int n, const AlgoParams& params, StepDiag* diag) {
    detail::Stopwatch sw;
    const int m = row.m;
    if (sprevPlus.rows + 1 != m)
        throw InvalidArgumentError("recursion_step: row dimension must extend the factor by one");

    const WaveletMatrix w = build_wavelet(
        row, params.useDisplacementSolver ? DeltaMethod::Displacement : DeltaMethod::Dense);

    // T = [Sprev+ (+) 0; zeta_1 .. zeta_{m-1} f_m]
    LaurentPolyMatrix t(m, m, std::min(-row.N, 0), std::max(row.N + n, sprevPlus.hi()));
    for (int k = sprevPlus.lo; k <= sprevPlus.hi(); ++k)
        t.ref(k).topLeftCorner(m - 1, m - 1) = sprevPlus.at(k);
    for (int j = 0; j < m - 1; ++j) {
        const LaurentPoly& z = row.zeta[static_cast<std::size_t>(j)];
        for (int k = z.lo; k <= z.hi(); ++k)
            if (k >= t.lo && k <= t.hi()) t.ref(k)(m - 1, j) = z.at(k);
    }
    for (int k = row.fm.lo; k <= row.fm.hi(); ++k)
        if (k >= t.lo && k <= t.hi()) t.ref(k)(m - 1, m - 1) = row.fm.at(k);

    const LaurentPolyMatrix product = laurent_mul_fft(t, w.to_laurent());

    // coefficients outside [0, n] are dropped; their mass is a diagnostic
    double truncated = 0.0;
    for (int k = product.lo; k <= product.hi(); ++k)
        if (k < 0 || k > n) truncated = std::max(truncated, supnorm(product.at(k)));

    if (diag) {
        diag->m = m;
        diag->N = row.N;
        diag->rcondNormalizer = w.normalizerRcond;
        const UnitaryDefect ud = unitary_defect(w, std::max(params.defectNodes, 4));
        diag->unitaryDefect = ud.defect;
        diag->detDefect = ud.detDefect;
        diag->truncatedMass = truncated;
        diag->seconds = sw.seconds();
    }
    return product.restricted(0, n);
}

LaurentPolyMatrix normalize_at_zero(const LaurentPolyMatrix& s0plus) {
    if (s0plus.lo != 0) throw InvalidArgumentError("normalize_at_zero: factor must be causal");
    const ComplexMatrix a = s0plus.at(0);
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const double rc = lu.rcond();
    if (!(rc > 1e-14) || !std::isfinite(rc))
        throw SingularAtZeroError("normalize_at_zero: factor value at the origin is singular");

    const ComplexMatrix root = hermitian_principal_sqrt(ComplexMatrix(a * a.adjoint()));
    const ComplexMatrix u = lu.solve(root);
    LaurentPolyMatrix out = s0plus;
    for (ComplexMatrix& c : out.coeffs) c *= u;
    return out;
}

namespace detail {

FactorResult finish_result(const LaurentPolyMatrix& s, LaurentPolyMatrix splus,
                           std::string algorithm, Diagnostics diag, const Stopwatch& sw) {
    FactorResult res;
    res.Splus = normalize_at_zero(splus);
    res.err = factorization_error(s, res.Splus);
    res.algorithm = std::move(algorithm);
    res.diagnostics = std::move(diag);
    res.diagnostics.totalSeconds = sw.seconds();
    return res;
}

} // namespace detail

} // namespace specfact

#include <algorithm>
#include <string>
#include <vector>

#include "msf_detail.hpp"
#include "specfact/errors.hpp"
#include "specfact/fft.hpp"
#include "specfact/msf.hpp"

namespace specfact {

FactorResult jle2(const LaurentPolyMatrix& s, const AlgoParams& params) {
    params.validate();
    detail::Stopwatch sw;
    Diagnostics diag;

    const LaurentPolyMatrix sd = detail::prepare_density(s, params.hermitianTol);
    const int r = sd.rows;
    const int n = sd.hi();
    const int K = params.grid_size();
    if (n >= K / 4)
        throw InvalidArgumentError("jle2: grid 2^kappa too small for the polynomial degree");

    LaurentPolyMatrix splus = LaurentPolyMatrix::from_scalar(
        scalar_factor(sd.entry(0, 0), K, params.scalarIters));

    for (int m = 2; m <= r; ++m) {
        int N = params.N_schedule.count(m)
                    ? params.N_schedule.at(m)
                    : static_cast<int>(params.ratio * K);
        N = std::clamp(N, std::max(4, n), K - n - 1);

        // node values of the previous factor and of the next density column
        const std::vector<ComplexMatrix> prevVals = dft_eval(splus, K);
        const std::vector<ComplexMatrix> colValsM = dft_eval(sd.block(0, m - 1, m - 1, 1), K);
        std::vector<ComplexVector> colVals(static_cast<std::size_t>(K));
        for (int l = 0; l < K; ++l) colVals[static_cast<std::size_t>(l)] = colValsM[static_cast<std::size_t>(l)].col(0);

        NodeZetas zetas;
        try {
            zetas = zeta_at_nodes(prevVals, colVals, params.rcondNodeTol);
        } catch (const AllNodesSingularError&) {
            throw AllNodesSingularError("jle2: every node system singular at recursion step m = " +
                                        std::to_string(m));
        }

        LastRowData row;
        row.m = m;
        row.N = N;
        row.fm = fm_via_power(sd.entry(m - 1, m - 1), zetas.values, N, n);

        // zeta_j^{N}: inverse FFT of the node values, coefficients kept on [-N, n]
        row.zeta.resize(static_cast<std::size_t>(m - 1));
        std::vector<cplx> buf(static_cast<std::size_t>(K));
        for (int j = 0; j < m - 1; ++j) {
            for (int l = 0; l < K; ++l)
                buf[static_cast<std::size_t>(l)] = zetas.values[static_cast<std::size_t>(l)](j);
            row.zeta[static_cast<std::size_t>(j)] = idft_interpolate_scalar(buf, -N, n);
        }

        StepDiag step;
        splus = recursion_step(splus, row, n, params, &step);
        step.singularNodeFallbacks = zetas.fallbacks;
        diag.steps.push_back(step);
    }

    return detail::finish_result(sd, std::move(splus), "jle2", std::move(diag), sw);
}

} // namespace specfact

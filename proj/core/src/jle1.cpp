#include <string>
#include <vector>

#include "msf_detail.hpp"
#include "specfact/errors.hpp"
#include "specfact/fft.hpp"
#include "specfact/msf.hpp"
#include "specfact/parallel.hpp"

namespace specfact {

FactorResult jle1(const LaurentPolyMatrix& s, const AlgoParams& params) {
    params.validate();
    detail::Stopwatch sw;
    Diagnostics diag;

    const LaurentPolyMatrix sd = detail::prepare_density(s, params.hermitianTol);
    const int r = sd.rows;
    const int n = sd.hi();
    if (r >= 20 || n >= 25)
        diag.warnings.push_back("jle1: size " + std::to_string(r) + "x" + std::to_string(n) +
                                " is outside the reliable envelope (r<20, n<25)");

    // diagonal entries of the triangular factor from the determinant quotient
    std::vector<LaurentPoly> dets(static_cast<std::size_t>(r + 1), LaurentPoly::constant(1.0));
    for (int m = 1; m <= r; ++m)
        dets[static_cast<std::size_t>(m)] = polymat_det(sd.leading(m), params.detPath, &diag.warnings);

    std::vector<RationalCausal> fm(static_cast<std::size_t>(r + 1));
    for (int m = 1; m <= r; ++m)
        fm[static_cast<std::size_t>(m)] = fm_via_determinants(
            dets[static_cast<std::size_t>(m)], dets[static_cast<std::size_t>(m - 1)], params);

    LaurentPolyMatrix splus =
        LaurentPolyMatrix::from_scalar(fm[1].p.restricted(0, n));

    for (int m = 2; m <= r; ++m) {
        const int N = params.scheduled_N(m, n);

        LastRowData row;
        row.m = m;
        row.N = N;
        row.zeta.resize(static_cast<std::size_t>(m - 1));

        const std::vector<RationalCausal> zbar =
            zeta_cramer(splus, sd.block(0, m - 1, m - 1, 1));
        parallel_for(m - 1, [&](int j) {
            // expansion of conj(zeta_j) on [-n, N], flipped onto [-N, n]
            row.zeta[static_cast<std::size_t>(j)] =
                conj_flip(causal_expand(zbar[static_cast<std::size_t>(j)], -n, N));
        });

        if (params.fmViaPower) {
            const int K = static_cast<int>(next_pow2(static_cast<std::size_t>(
                std::max({params.scalarGridK, 2 * (N + n) + 2, 4 * n + 1}))));
            std::vector<ComplexVector> zv(static_cast<std::size_t>(K), ComplexVector(m - 1));
            for (int j = 0; j < m - 1; ++j) {
                RationalCausal zr = zbar[static_cast<std::size_t>(j)];
                const std::vector<cplx> pv = sample_on_grid(zr.p, K);
                const std::vector<cplx> qv = sample_on_grid(zr.q, K);
                for (int l = 0; l < K; ++l)
                    zv[static_cast<std::size_t>(l)](j) =
                        std::conj(pv[static_cast<std::size_t>(l)] / qv[static_cast<std::size_t>(l)]);
            }
            row.fm = fm_via_power(sd.entry(m - 1, m - 1), zv, N, n);
        } else {
            row.fm = causal_expand(fm[static_cast<std::size_t>(m)], 0, N + n);
        }

        StepDiag step;
        splus = recursion_step(splus, row, n, params, &step);
        diag.steps.push_back(step);
    }

    return detail::finish_result(sd, std::move(splus), "jle1", std::move(diag), sw);
}

} // namespace specfact

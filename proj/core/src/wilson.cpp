#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "msf_detail.hpp"
#include "specfact/errors.hpp"
#include "specfact/fft.hpp"
#include "specfact/linalg.hpp"
#include "specfact/msf.hpp"
#include "specfact/parallel.hpp"

namespace specfact {

FactorResult wilson(const LaurentPolyMatrix& s, const AlgoParams& params) {
    params.validate();
    detail::Stopwatch sw;
    Diagnostics diag;

    const LaurentPolyMatrix sd = detail::prepare_density(s, params.hermitianTol);
    const int r = sd.rows;
    const int n = sd.hi();
    const int K = params.grid_size();
    if (n >= K / 2)
        throw InvalidArgumentError("wilson: grid 2^kappa too small for the polynomial degree");

    const std::vector<ComplexMatrix> sVals = dft_eval(sd, K);

    // On densities positive across the grid the iterate can be projected
    // onto polynomials of the factor degree every round, which removes the
    // aliasing floor of the grid fixed point. Boundary zeros keep the
    // classical unprojected iteration.
    double minEig = std::numeric_limits<double>::infinity();
    {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es;
        for (const ComplexMatrix& v : sVals) {
            es.compute(v, Eigen::EigenvaluesOnly);
            minEig = std::min(minEig, es.eigenvalues().minCoeff());
        }
    }
    const bool projectIterates = minEig > 1e-9 * std::max(supnorm(sd), 1e-300);

    // initial iterate: the Hermitian square root of the constant coefficient
    ComplexMatrix s0;
    try {
        s0 = hermitian_principal_sqrt(sd.at(0));
    } catch (const NotPositiveDefiniteError&) {
        throw NotPositiveDefiniteError("wilson: C_0 is not positive semidefinite");
    }
    std::vector<ComplexMatrix> f(static_cast<std::size_t>(K), s0);
    std::vector<ComplexMatrix> g(static_cast<std::size_t>(K), ComplexMatrix(r, r));

    auto grid_residual = [&] {
        double res = 0.0;
        for (int l = 0; l < K; ++l) {
            const ComplexMatrix& fl = f[static_cast<std::size_t>(l)];
            res = std::max(res, supnorm(ComplexMatrix(fl * fl.adjoint() - sVals[static_cast<std::size_t>(l)])));
        }
        return res;
    };

    double prev = grid_residual();
    int growth = 0;
    int performed = 0;
    std::vector<double> history{prev};

    std::vector<cplx> buf(static_cast<std::size_t>(K));
    for (int it = 0; it < params.wilsonIters; ++it) {
        // G_l = F_l^{-1} S_l F_l^{-*} + I per node
        parallel_for(K, [&](int l) {
            Eigen::PartialPivLU<ComplexMatrix> lu(f[static_cast<std::size_t>(l)]);
            const ComplexMatrix inv = lu.inverse();
            g[static_cast<std::size_t>(l)] =
                inv * sVals[static_cast<std::size_t>(l)] * inv.adjoint() + ComplexMatrix::Identity(r, r);
        });

        // [.]^+ across the grid spectrum, entry by entry
        const double invK = 1.0 / static_cast<double>(K);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                for (int l = 0; l < K; ++l) buf[static_cast<std::size_t>(l)] = g[static_cast<std::size_t>(l)](i, j);
                fft_pow2(buf, -1);
                for (cplx& v : buf) v *= invK;
                plus_half_grid(buf);
                fft_pow2(buf, +1);
                for (int l = 0; l < K; ++l) g[static_cast<std::size_t>(l)](i, j) = buf[static_cast<std::size_t>(l)];
            }

        parallel_for(K, [&](int l) {
            f[static_cast<std::size_t>(l)] = f[static_cast<std::size_t>(l)] * g[static_cast<std::size_t>(l)];
        });

        if (projectIterates) {
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    for (int l = 0; l < K; ++l) buf[static_cast<std::size_t>(l)] = f[static_cast<std::size_t>(l)](i, j);
                    fft_pow2(buf, -1);
                    for (cplx& v : buf) v *= invK;
                    for (int k = n + 1; k < K; ++k) buf[static_cast<std::size_t>(k)] = cplx(0.0);
                    fft_pow2(buf, +1);
                    for (int l = 0; l < K; ++l) f[static_cast<std::size_t>(l)](i, j) = buf[static_cast<std::size_t>(l)];
                }
        }
        ++performed;

        const double res = grid_residual();
        if (!std::isfinite(res) || res > prev * 1.5) {
            if (++growth >= 3)
                throw DivergenceError("wilson: residual grew for 3 consecutive iterations (iteration " +
                                      std::to_string(it + 1) + ")");
        } else {
            growth = 0;
        }
        // stop once three further iterations buy less than 1% combined
        history.push_back(res);
        if (history.size() >= 4 && res > history[history.size() - 4] * (1.0 - 1e-2)) break;
        prev = res;
    }
    diag.iterations = performed;

    // back to coefficients, truncated to the known factor degree
    LaurentPolyMatrix splus = idft_interpolate(f, 0, std::min(n, K - 1));
    if (splus.hi() < n) splus = splus.restricted(0, n);

    return detail::finish_result(sd, std::move(splus), "wilson", std::move(diag), sw);
}

} // namespace specfact

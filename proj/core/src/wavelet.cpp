#include "specfact/wavelet.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "specfact/errors.hpp"
#include "specfact/scalar.hpp"

namespace specfact {

ComplexMatrix WaveletMatrix::eval(cplx t) const {
    ComplexMatrix u(m, m);
    for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j < m; ++j) u(i, j) = upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(t);
    for (int j = 0; j < m; ++j)
        u(m - 1, j) = std::conj(lastRowConj[static_cast<std::size_t>(j)].eval(t));
    return u;
}

LaurentPolyMatrix WaveletMatrix::to_laurent() const {
    LaurentPolyMatrix out(m, m, -N, N);
    for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j < m; ++j) {
            const LaurentPoly& p = upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k <= N; ++k) out.ref(k)(i, j) = p.at(k);
        }
    for (int j = 0; j < m; ++j) {
        const LaurentPoly& p = lastRowConj[static_cast<std::size_t>(j)];
        for (int k = 0; k <= N; ++k) out.ref(-k)(m - 1, j) = std::conj(p.at(k));
    }
    return out;
}

WaveletGenerators build_generators(const LastRowData& row) {
    const int m = row.m;
    const int N = row.N;
    if (m < 2) throw InvalidArgumentError("build_generators: m must be >= 2");
    if (N < 1) throw InvalidArgumentError("build_generators: N must be >= 1");
    if (static_cast<int>(row.zeta.size()) != m - 1)
        throw InvalidArgumentError("build_generators: expected m-1 zeta entries");
    if (row.fm.lo != 0 || std::abs(row.fm.at(0)) == 0.0)
        throw InvalidArgumentError("build_generators: f_m must be causal with f_m(0) != 0");

    WaveletGenerators g;

    // P_N^+[1/f_m] is determined by the first N+1 coefficients of f_m
    const LaurentPoly bPoly =
        causal_expand(RationalCausal{LaurentPoly::constant(1.0), row.fm.restricted(0, N)}, 0, N);
    g.b.assign(bPoly.coeffs.begin(), bPoly.coeffs.end());

    g.lambda.assign(static_cast<std::size_t>(m - 1),
                    std::vector<cplx>(static_cast<std::size_t>(N + 1), cplx(0.0)));
    for (int i = 0; i < m - 1; ++i) {
        // gamma_{i,k} = c_{-k}{zeta_i}, k = 1..N (gamma_{i,0} = 0)
        std::vector<cplx> gamma(static_cast<std::size_t>(N + 1), cplx(0.0));
        for (int k = 1; k <= N; ++k) gamma[static_cast<std::size_t>(k)] = row.zeta[static_cast<std::size_t>(i)].at(-k);
        // eta_{i,j} = sum_k b_k gamma_{i,k+j}
        std::vector<cplx>& eta = g.lambda[static_cast<std::size_t>(i)];
        for (int j = 0; j <= N; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k + j <= N; ++k)
                acc += g.b[static_cast<std::size_t>(k)] * gamma[static_cast<std::size_t>(k + j)];
            eta[static_cast<std::size_t>(j)] = acc;
        }
    }
    return g;
}

namespace {

/// Accumulates Theta Theta^* for a Hankel generator with first row eta.
/// (Theta Theta^*)_{jk} = eta_j conj(eta_k) + (Theta Theta^*)_{j+1,k+1}.
void accumulate_hankel_gram(ComplexMatrix& delta, const std::vector<cplx>& eta) {
    const int n1 = static_cast<int>(eta.size());
    for (int d = 0; d < n1; ++d) {
        cplx acc = 0.0;
        for (int j = n1 - 1 - d; j >= 0; --j) {
            acc += eta[static_cast<std::size_t>(j)] * std::conj(eta[static_cast<std::size_t>(j + d)]);
            delta(j, j + d) += acc;
            if (d != 0) delta(j + d, j) += std::conj(acc);
        }
    }
}

/// out_l = sum_k conj(eta_{l+k}) y_k, the conjugated Hankel action.
ComplexVector conj_hankel_apply(const std::vector<cplx>& eta, const ComplexVector& y) {
    const int n1 = static_cast<int>(eta.size());
    ComplexVector out = ComplexVector::Zero(n1);
    for (int l = 0; l < n1; ++l) {
        cplx acc = 0.0;
        for (int k = 0; k + l < n1; ++k)
            acc += std::conj(eta[static_cast<std::size_t>(l + k)]) * y(k);
        out(l) = acc;
    }
    return out;
}

std::vector<ComplexVector> solve_delta_dense(const std::vector<std::vector<cplx>>& lambda, int N) {
    const int n1 = N + 1;
    ComplexMatrix delta = ComplexMatrix::Identity(n1, n1);
    for (const std::vector<cplx>& eta : lambda) {
        if (static_cast<int>(eta.size()) != n1)
            throw InvalidArgumentError("solve_delta: generator length mismatch");
        accumulate_hankel_gram(delta, eta);
    }
    Eigen::LLT<ComplexMatrix> llt(delta);
    if (llt.info() != Eigen::Success)
        throw std::logic_error("solve_delta: Delta lost positive definiteness (generator corruption)");

    std::vector<ComplexVector> x;
    x.reserve(lambda.size() + 1);
    for (const std::vector<cplx>& eta : lambda) {
        ComplexVector rhs(n1);
        for (int k = 0; k < n1; ++k) rhs(k) = eta[static_cast<std::size_t>(k)];
        x.push_back(llt.solve(rhs));
    }
    ComplexVector e0 = ComplexVector::Zero(n1);
    e0(0) = 1.0;
    x.push_back(llt.solve(e0));
    return x;
}

std::vector<ComplexVector> solve_delta_displacement(const std::vector<std::vector<cplx>>& lambda, int N);

} // namespace

std::vector<ComplexVector> solve_delta(const std::vector<std::vector<cplx>>& lambda, int N,
                                       DeltaMethod method) {
    if (method == DeltaMethod::Displacement) return solve_delta_displacement(lambda, N);
    return solve_delta_dense(lambda, N);
}

WaveletMatrix assemble_wavelet(const LastRowData& row, const std::vector<ComplexVector>& x,
                               const std::vector<std::vector<cplx>>& lambda) {
    const int m = row.m;
    const int N = row.N;
    const int n1 = N + 1;
    if (static_cast<int>(x.size()) != m)
        throw InvalidArgumentError("assemble_wavelet: expected m solution vectors");

    // Solution basis: column j has last entry (conjugated coefficients) X_j,
    // upper entries conj(Theta_i) X_j - delta_{ij} e_0. The constant right
    // factor V(1)^{-1} turns the basis into the unitary wavelet matrix.
    ComplexMatrix xmat(n1, m);
    for (int j = 0; j < m; ++j) xmat.col(j) = x[static_cast<std::size_t>(j)];

    ComplexMatrix v1(m, m);
    for (int i = 0; i < m - 1; ++i) {
        const std::vector<cplx>& eta = lambda[static_cast<std::size_t>(i)];
        // column sums of conj(Theta_i): suffix sums of conj(eta)
        ComplexVector suffix(n1);
        cplx acc = 0.0;
        for (int k = N; k >= 0; --k) {
            acc += std::conj(eta[static_cast<std::size_t>(k)]);
            suffix(k) = acc;
        }
        for (int j = 0; j < m; ++j)
            v1(i, j) = (suffix.array() * xmat.col(j).array()).sum() - (i == j ? 1.0 : 0.0);
    }
    for (int j = 0; j < m; ++j) v1(m - 1, j) = xmat.col(j).sum();

    Eigen::PartialPivLU<ComplexMatrix> lu(v1);
    const double rc = lu.rcond();
    if (!(rc > 1e-12) || !std::isfinite(rc))
        throw IllConditionedV0Error("assemble_wavelet: normalizer rcond " + std::to_string(rc) +
                                    "; raise N or check the recursion data");
    const ComplexMatrix c = lu.inverse();
    const ComplexMatrix y = xmat * c;

    WaveletMatrix w;
    w.m = m;
    w.N = N;
    w.normalizerRcond = rc;
    w.upper.assign(static_cast<std::size_t>(m - 1),
                   std::vector<LaurentPoly>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m - 1; ++i) {
        const std::vector<cplx>& eta = lambda[static_cast<std::size_t>(i)];
        for (int j = 0; j < m; ++j) {
            ComplexVector vij = conj_hankel_apply(eta, y.col(j));
            vij(0) -= c(i, j);
            LaurentPoly entry = LaurentPoly::zero(0, N);
            for (int k = 0; k <= N; ++k) entry.ref(k) = vij(k);
            w.upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(entry);
        }
    }
    w.lastRowConj.assign(static_cast<std::size_t>(m), LaurentPoly());
    for (int j = 0; j < m; ++j) {
        LaurentPoly entry = LaurentPoly::zero(0, N);
        for (int k = 0; k <= N; ++k) entry.ref(k) = std::conj(y(k, j));
        w.lastRowConj[static_cast<std::size_t>(j)] = std::move(entry);
    }
    return w;
}

UnitaryDefect unitary_defect(const WaveletMatrix& u, int nodes) {
    if (nodes < 1) throw InvalidArgumentError("unitary_defect: nodes must be >= 1");
    UnitaryDefect out;
    const ComplexMatrix eye = ComplexMatrix::Identity(u.m, u.m);
    for (int l = 0; l < nodes; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / nodes);
        const ComplexMatrix ul = u.eval(t);
        out.defect = std::max(out.defect, supnorm(ComplexMatrix(ul * ul.adjoint() - eye)));
        out.detDefect = std::max(out.detDefect,
                                 std::abs(Eigen::PartialPivLU<ComplexMatrix>(ul).determinant() - cplx(1.0)));
    }
    return out;
}

WaveletMatrix build_wavelet(const LastRowData& row, DeltaMethod method) {
    const WaveletGenerators g = build_generators(row);
    const std::vector<ComplexVector> x = solve_delta(g.lambda, row.N, method);
    return assemble_wavelet(row, x, g.lambda);
}

namespace {

/// Generalized Schur recursion on the displacement generators
/// [Lambda_1^T .. Lambda_{m-1}^T, e_N]: Delta - Z Delta Z^* = G G^* with Z
/// the upper shift. Index reversal turns Z into the lower shift, where the
/// classical positive-case Schur recursion produces the Cholesky factor of
/// the reversed matrix in O(m N^2) without forming Delta. Pivots stay >= 1
/// because the identity term is absorbed into the generator.
std::vector<ComplexVector> solve_delta_displacement(const std::vector<std::vector<cplx>>& lambda, int N) {
    const int n1 = N + 1;
    const int g = static_cast<int>(lambda.size()) + 1;

    // reversed-index generator: row j holds (eta_1[N-j], ..., eta_{m-1}[N-j]),
    // and the e_N column becomes e_0
    ComplexMatrix gen(n1, g);
    for (int c = 0; c + 1 < g; ++c) {
        const std::vector<cplx>& eta = lambda[static_cast<std::size_t>(c)];
        if (static_cast<int>(eta.size()) != n1)
            throw InvalidArgumentError("solve_delta: generator length mismatch");
        for (int j = 0; j < n1; ++j) gen(j, c) = eta[static_cast<std::size_t>(N - j)];
    }
    gen.col(g - 1).setZero();
    gen(0, g - 1) = 1.0;

    ComplexMatrix lfac = ComplexMatrix::Zero(n1, n1);
    for (int k = 0; k < n1; ++k) {
        // proper form: right-unitary Householder sending row k to (|row|, 0, ..)
        ComplexVector u = gen.row(k).adjoint();
        const double nrm = u.norm();
        if (!(nrm > 0.0))
            throw std::logic_error("solve_delta: displacement recursion lost positivity");
        ComplexVector w = u;
        w(0) += nrm * (std::abs(u(0)) == 0.0 ? 1.0 : u(0) / std::abs(u(0)));
        const double wn2 = w.squaredNorm();
        if (wn2 > 0.0) {
            const ComplexVector gw = gen.bottomRows(n1 - k) * w;
            gen.bottomRows(n1 - k).noalias() -= (2.0 / wn2) * gw * w.adjoint();
        }
        // phase-fix column 0 so the pivot entry is real positive
        const cplx piv = gen(k, 0);
        if (std::abs(piv) > 0.0) gen.col(0) *= std::conj(piv) / std::abs(piv);

        lfac.block(k, k, n1 - k, 1) = gen.block(k, 0, n1 - k, 1);
        // shift the first generator column down one row within the active block
        for (int j = n1 - 1; j > k; --j) gen(j, 0) = gen(j - 1, 0);
        gen(k, 0) = 0.0;
    }

    // Delta = J (L L^*) J with J the index flip; solve by two triangular
    // sweeps against flipped right-hand sides
    auto solve_one = [&](const ComplexVector& rhs) {
        ComplexVector b(n1);
        for (int j = 0; j < n1; ++j) b(j) = rhs(N - j);
        lfac.triangularView<Eigen::Lower>().solveInPlace(b);
        lfac.triangularView<Eigen::Lower>().adjoint().solveInPlace(b);
        ComplexVector x(n1);
        for (int j = 0; j < n1; ++j) x(j) = b(N - j);
        return x;
    };

    std::vector<ComplexVector> x;
    x.reserve(lambda.size() + 1);
    for (const std::vector<cplx>& eta : lambda) {
        ComplexVector rhs(n1);
        for (int k = 0; k < n1; ++k) rhs(k) = eta[static_cast<std::size_t>(k)];
        x.push_back(solve_one(rhs));
    }
    ComplexVector e0 = ComplexVector::Zero(n1);
    e0(0) = 1.0;
    x.push_back(solve_one(e0));
    return x;
}

} // namespace

} // namespace specfact

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/QR>

#include "specfact/errors.hpp"
#include "specfact/harness.hpp"
#include "specfact/laurent.hpp"
#include "specfact/linalg.hpp"
#include "specfact/msf.hpp"

using namespace specfact;

namespace {

LaurentPoly lp(int lo, std::initializer_list<double> vals) {
    LaurentPoly p = LaurentPoly::zero(lo, lo + static_cast<int>(vals.size()) - 1);
    int k = lo;
    for (double v : vals) p.ref(k++) = v;
    return p;
}

/// Well-conditioned random causal factor: dominant identity plus a causal tail.
LaurentPolyMatrix random_causal_factor(int m, int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    LaurentPolyMatrix p(m, m, 0, n);
    p.ref(0) = 2.0 * ComplexMatrix::Identity(m, m);
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                p.ref(k)(i, j) += 0.2 * cplx(rng.next_symmetric(), rng.next_symmetric());
    return p;
}

} // namespace

TEST_CASE("plus_half: definition and decomposition identity") {
    const LaurentPoly f = lp(-1, {2.0, 5.0, 2.0});
    const LaurentPoly h = plus_half(f);
    CHECK(h.lo == 0);
    CHECK(std::abs(h.at(0) - cplx(2.5)) == 0.0);
    CHECK(std::abs(h.at(1) - cplx(2.0)) == 0.0);

    LaurentPoly causal = lp(0, {0.0, 3.0, -1.0});
    const LaurentPoly hc = plus_half(causal);
    CHECK(std::abs(hc.at(0)) == 0.0);
    CHECK(std::abs(hc.at(1) - cplx(3.0)) == 0.0);
    CHECK(std::abs(hc.at(2) + cplx(1.0)) == 0.0);

    // Hermitian-symmetric F: plus_half(F) + plus_half(F)* = F exactly
    SplitMix64 rng(31);
    LaurentPolyMatrix a(3, 3, 0, 4);
    for (int k = 0; k <= 4; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.ref(k)(i, j) = cplx(rng.next_symmetric(), rng.next_symmetric());
    const LaurentPolyMatrix f2 = laurent_mul(a, laurent_adjoint(a));
    const LaurentPolyMatrix h2 = plus_half(f2);
    CHECK(supnorm(sub(add(h2, laurent_adjoint(h2)), f2)) == 0.0);
}

TEST_CASE("zeta_cramer: constant and diagonal cases") {
    // S = [[1,1],[1,2]]: Sprev+ = (1), so conj(zeta_1) = s_12 = 1
    const LaurentPolyMatrix sprev = LaurentPolyMatrix::identity(1);
    LaurentPolyMatrix col(1, 1, 0, 0);
    col.ref(0)(0, 0) = 1.0;
    const auto z = zeta_cramer(sprev, col);
    REQUIRE(z.size() == 1);
    const LaurentPoly expanded = causal_expand(z[0], -4, 4);
    CHECK(std::abs(expanded.at(0) - cplx(1.0)) < 1e-14);
    for (int k = -4; k <= 4; ++k)
        if (k != 0) CHECK(std::abs(expanded.at(k)) < 1e-14);

    // diagonal density: zero column, zero tails
    LaurentPolyMatrix zcol(1, 1, -1, 1);
    const auto z0 = zeta_cramer(sprev, zcol);
    CHECK(supnorm(causal_expand(z0[0], -8, 8)) == 0.0);
}

TEST_CASE("zeta_cramer vs node solves on the IEE0 fixture") {
    const Fixture f = fixture("ieee0");
    const LaurentPoly f1 = scalar_factor(f.S.entry(0, 0), 512, 8);
    const LaurentPolyMatrix sprev = LaurentPolyMatrix::from_scalar(f1);
    const auto z = zeta_cramer(sprev, f.S.block(0, 1, 1, 1));

    for (int l = 0; l < 16; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / 16);
        const cplx viaCramer = z[0].p.eval(t) / z[0].q.eval(t);
        const cplx viaSolve = f.S.entry(0, 1).eval(t) / f1.eval(t);
        CHECK(std::abs(viaCramer - viaSolve) < 1e-10);
    }
}

TEST_CASE("zeta_at_nodes: constant and diagonal densities") {
    const int K = 8;
    std::vector<ComplexMatrix> sprev(K, ComplexMatrix::Identity(1, 1));
    std::vector<ComplexVector> col(K, ComplexVector::Ones(1));
    const NodeZetas z = zeta_at_nodes(sprev, col);
    CHECK(z.fallbacks == 0);
    for (const auto& v : z.values) CHECK(std::abs(v(0) - cplx(1.0)) < 1e-15);

    std::vector<ComplexVector> zero(K, ComplexVector::Zero(1));
    const NodeZetas z0 = zeta_at_nodes(sprev, zero);
    for (const auto& v : z0.values) CHECK(std::abs(v(0)) == 0.0);
}

TEST_CASE("zeta_at_nodes matches zeta_cramer evaluations on random data") {
    const int K = 64;
    const LaurentPolyMatrix sprev = random_causal_factor(4, 5, 808);
    SplitMix64 rng(809);
    LaurentPolyMatrix col(4, 1, -5, 5);
    for (int k = -5; k <= 5; ++k)
        for (int i = 0; i < 4; ++i) col.ref(k)(i, 0) = cplx(rng.next_symmetric(), rng.next_symmetric());

    const std::vector<ComplexMatrix> sv = dft_eval(sprev, K);
    const std::vector<ComplexMatrix> cvm = dft_eval(col, K);
    std::vector<ComplexVector> cv(K);
    for (int l = 0; l < K; ++l) cv[static_cast<std::size_t>(l)] = cvm[static_cast<std::size_t>(l)].col(0);

    const NodeZetas nodes = zeta_at_nodes(sv, cv);
    const auto rats = zeta_cramer(sprev, col);
    for (int l = 0; l < K; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / K);
        for (int j = 0; j < 4; ++j) {
            const cplx viaCramer = std::conj(rats[static_cast<std::size_t>(j)].p.eval(t) /
                                             rats[static_cast<std::size_t>(j)].q.eval(t));
            CHECK(std::abs(nodes.values[static_cast<std::size_t>(l)](j) - viaCramer) < 1e-8);
        }
    }
}

TEST_CASE("zeta_at_nodes: ill-conditioned nodes fall back to neighbors") {
    const int K = 8;
    std::vector<ComplexMatrix> sprev(K, ComplexMatrix::Identity(2, 2));
    sprev[0] = ComplexMatrix::Zero(2, 2);   // singular at node 0
    ComplexMatrix skewed = ComplexMatrix::Identity(2, 2);
    skewed(1, 1) = 1e-14;                   // rcond far below the threshold
    sprev[3] = skewed;
    std::vector<ComplexVector> col(K, ComplexVector::Ones(2));
    const NodeZetas z = zeta_at_nodes(sprev, col);
    CHECK(z.fallbacks == 2);
    CHECK(std::abs(z.values[0](0) - cplx(1.0)) < 1e-15);   // nearest valid successor
    CHECK(std::abs(z.values[3](0) - cplx(1.0)) < 1e-15);   // predecessor
    CHECK(std::abs(z.values[3](1) - cplx(1.0)) < 1e-15);

    std::vector<ComplexMatrix> allBad(K, ComplexMatrix::Zero(2, 2));
    CHECK_THROWS_AS(zeta_at_nodes(allBad, col), AllNodesSingularError);
}

TEST_CASE("fm_via_determinants: diagonal density gives the scalar factor ratio") {
    AlgoParams params;
    params.scalarIters = 6;
    // S = diag(2t^-1+5+2t, 9): det S_[1] = s11, det S_[2] = 9 * s11
    const LaurentPoly d1 = lp(-1, {2.0, 5.0, 2.0});
    const LaurentPoly d2 = scale(d1, 9.0);
    const RationalCausal fm = fm_via_determinants(d2, d1, params);
    // |f_2(t)|^2 must reconstruct 9 on the circle
    for (int l = 0; l < 16; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / 16);
        const cplx v = fm.p.eval(t) / fm.q.eval(t);
        CHECK(std::abs(std::norm(v) - 9.0) < 1e-9);
    }
}

TEST_CASE("fm_via_determinants: IEE0 determinant modulus identity") {
    const Fixture f = fixture("ieee0");
    AlgoParams params;
    params.scalarIters = 30;
    const LaurentPoly detS1 = f.S.entry(0, 0);
    const LaurentPoly detS2 = f.detReference.value();
    const RationalCausal f2 = fm_via_determinants(detS2, detS1, params);
    const LaurentPoly f1 = scalar_factor(detS1, 512, 30);
    for (int l = 1; l < 16; l += 2) {   // odd nodes stay away from the boundary zeros
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / 16);
        const double lhs = std::norm(f2.p.eval(t) / f2.q.eval(t)) * std::norm(f1.eval(t));
        CHECK(std::abs(lhs - std::abs(detS2.eval(t))) < 1e-6);
    }
}

TEST_CASE("fm_via_power: constant and diagonal identities") {
    const int K = 1024;
    // S = [[1,1],[1,2]]: |f_2|^2 = s22 - |zeta_1|^2 = 2 - 1 = 1
    std::vector<ComplexVector> zeta(K, ComplexVector::Ones(1));
    const LaurentPoly f2 = fm_via_power(LaurentPoly::constant(2.0), zeta, 16, 0);
    CHECK(std::abs(f2.at(0) - cplx(1.0)) < 1e-12);
    for (int k = 1; k <= 16; ++k) CHECK(std::abs(f2.at(k)) < 1e-12);

    // diagonal: zero tails, |f_m|^2 = s_mm
    std::vector<ComplexVector> zero(K, ComplexVector::Zero(1));
    const LaurentPoly smm = lp(-1, {2.0, 5.0, 2.0});
    const LaurentPoly fm = fm_via_power(smm, zero, 16, 1);
    for (int l = 0; l < 16; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / 16);
        CHECK(std::abs(std::norm(fm.eval(t)) - smm.eval(t).real()) < 1e-9);
    }
}

TEST_CASE("fm_via_power: reconstructs the computed power on the grid") {
    const int K = 2048;
    // genuine recursion data: the factored leading block of a density
    const LaurentPolyMatrix s = random_spd({3, 4, 404, 0.5});
    const LaurentPolyMatrix sprev = jle1(s.leading(2)).Splus;
    const std::vector<ComplexMatrix> sv = dft_eval(sprev, K);
    const std::vector<ComplexMatrix> cvm = dft_eval(s.block(0, 2, 2, 1), K);
    std::vector<ComplexVector> cv(K);
    for (int l = 0; l < K; ++l) cv[static_cast<std::size_t>(l)] = cvm[static_cast<std::size_t>(l)].col(0);
    const NodeZetas z = zeta_at_nodes(sv, cv);

    const LaurentPoly smm = s.entry(2, 2);
    const int N = 128;
    const LaurentPoly fm = fm_via_power(smm, z.values, N, 4);
    CHECK(fm.lo == 0);
    CHECK(fm.hi() == N + 4);
    double worst = 0.0;
    for (int l = 0; l < K; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / K);
        const double target = smm.eval(t).real() - z.values[static_cast<std::size_t>(l)].squaredNorm();
        worst = std::max(worst, std::abs(std::norm(fm.eval(t)) - std::max(target, 0.0)));
    }
    CHECK(worst < 1e-6);

    // a power deficit beyond the guard is an error
    std::vector<ComplexVector> big(K, ComplexVector::Constant(2, 10.0));
    CHECK_THROWS_AS(fm_via_power(LaurentPoly::constant(1.0), big, 16, 0), NegativePowerError);
}

TEST_CASE("recursion_step: diagonal density needs no compensation") {
    AlgoParams params;
    const LaurentPoly f1 = scalar_factor(lp(-1, {2.0, 5.0, 2.0}), 512, 6);
    const LaurentPolyMatrix sprev = LaurentPolyMatrix::from_scalar(f1);

    LastRowData row;
    row.m = 2;
    row.N = 12;
    row.zeta = {LaurentPoly::zero(-12, 1)};
    row.fm = LaurentPoly::constant(3.0).restricted(0, 13);

    StepDiag diag;
    const LaurentPolyMatrix out = recursion_step(sprev, row, 1, params, &diag);
    CHECK(out.rows == 2);
    CHECK(out.lo == 0);
    CHECK(out.hi() == 1);
    CHECK(std::abs(out.at(0)(0, 0) - f1.at(0)) < 1e-12);
    CHECK(std::abs(out.at(1)(0, 0) - f1.at(1)) < 1e-12);
    CHECK(std::abs(out.at(0)(1, 1) - cplx(3.0)) < 1e-12);
    CHECK(std::abs(out.at(0)(0, 1)) < 1e-12);
    CHECK(std::abs(out.at(0)(1, 0)) < 1e-12);
    CHECK(diag.unitaryDefect < 1e-10);
    CHECK(diag.truncatedMass < 1e-12);
}

TEST_CASE("jle1: IEE0 with the direct determinant path reaches 1e-10") {
    AlgoParams params;
    params.detPath = DetMethod::Direct;
    params.scalarIters = 45;
    params.scalarGridK = 8192;
    params.N_schedule[2] = 100;
    const FactorResult res = jle1(fixture("ieee0").S, params);
    CHECK(res.err <= 1e-10);
}

TEST_CASE("jle1: IEE0 default path with 5 iterations reaches 1e-3") {
    AlgoParams params;
    params.N_schedule[2] = 100;
    const FactorResult res = jle1(fixture("ieee0").S, params);
    CHECK(res.err <= 1e-3);
}

TEST_CASE("jle1: intermediate accuracy at N = 20 and improvement with N") {
    AlgoParams p20;
    p20.detPath = DetMethod::Direct;
    p20.scalarIters = 45;
    p20.scalarGridK = 8192;
    p20.N_schedule[2] = 20;
    const FactorResult r20 = jle1(fixture("ieee0").S, p20);
    CHECK(r20.err <= 1e-4);

    AlgoParams p40 = p20;
    p40.N_schedule[2] = 40;
    const FactorResult r40 = jle1(fixture("ieee0").S, p40);
    CHECK(r40.err <= r20.err);
}

TEST_CASE("jle1: SA4 with 60 scalar iterations stays under 1e-4") {
    AlgoParams params;
    params.scalarIters = 60;
    params.scalarGridK = 2048;
    params.N_schedule[2] = 100;
    const FactorResult res = jle1(fixture("sa4").S, params);
    CHECK(res.err <= 1e-4);
}

TEST_CASE("jle1: 1x1 input reduces to the scalar factorization") {
    const LaurentPolyMatrix s = LaurentPolyMatrix::from_scalar(lp(-1, {2.0, 5.0, 2.0}));
    const FactorResult res = jle1(s);
    CHECK(res.err < 1e-12);
    CHECK(std::abs(res.Splus.at(0)(0, 0) - cplx(2.0)) < 1e-10);
    CHECK(std::abs(res.Splus.at(1)(0, 0) - cplx(1.0)) < 1e-10);
}

TEST_CASE("jle1: fm via the power identity agrees with the determinant route") {
    const LaurentPolyMatrix s = random_spd({3, 3, 2710, 1.0});
    AlgoParams pdet;
    pdet.scalarIters = 10;
    AlgoParams ppow = pdet;
    ppow.fmViaPower = true;
    const FactorResult a = jle1(s, pdet);
    const FactorResult b = jle1(s, ppow);
    CHECK(a.err < 1e-6);
    CHECK(b.err < 1e-6);
    CHECK(supnorm(sub(a.Splus, b.Splus)) < 1e-5);
}

TEST_CASE("jle2: diagonal density factors entrywise") {
    LaurentPolyMatrix s(2, 2, -1, 1);
    s.ref(-1)(0, 0) = 2.0;
    s.ref(0)(0, 0) = 5.0;
    s.ref(1)(0, 0) = 2.0;
    s.ref(0)(1, 1) = 9.0;
    AlgoParams params;
    params.kappa = 10;
    const FactorResult res = jle2(s, params);
    CHECK(res.err < 1e-8);
    CHECK(std::abs(res.Splus.at(0)(0, 1)) < 1e-9);
    CHECK(std::abs(res.Splus.at(0)(1, 0)) < 1e-9);
    CHECK(std::abs(res.Splus.at(0)(1, 1) - cplx(3.0)) < 1e-8);
}

TEST_CASE("jle2: random 6x6 shifted density") {
    const LaurentPolyMatrix s = random_spd({6, 6, 606, 1.0});
    AlgoParams params;
    params.kappa = 11;
    const FactorResult res = jle2(s, params);
    CHECK(res.err < 1e-5);
    CHECK(res.diagnostics.steps.size() == 5);
}

TEST_CASE("jle3: r=1 degenerates to the scalar factorization") {
    const LaurentPolyMatrix s = LaurentPolyMatrix::from_scalar(lp(-1, {2.0, 5.0, 2.0}));
    const FactorResult res = jle3(s);
    CHECK(res.err < 1e-12);
}

TEST_CASE("jle3: random shifted 3x3 degree-8 instance") {
    const LaurentPolyMatrix s = random_spd({3, 8, 33, 0.5});
    const FactorResult res = jle3(s);
    CHECK(res.err < 1e-8);
}

TEST_CASE("jle3: singular IEE0 density is rejected through the Delta system") {
    CHECK_THROWS_AS(jle3(fixture("ieee0").S), NumericalError);
    try {
        jle3(fixture("ieee0").S);
        CHECK(false);
    } catch (const SingularDeltaError&) {
        CHECK(true);
    } catch (const IllConditionedDeltaError&) {
        CHECK(true);
    }
}

TEST_CASE("wilson: scalar density converges to 2+t") {
    const LaurentPolyMatrix s = LaurentPolyMatrix::from_scalar(lp(-1, {2.0, 5.0, 2.0}));
    AlgoParams params;
    params.kappa = 10;
    params.wilsonIters = 30;
    const FactorResult res = wilson(s, params);
    CHECK(res.err < 1e-10);
    CHECK(std::abs(res.Splus.at(0)(0, 0) - cplx(2.0)) < 1e-9);
    CHECK(std::abs(res.Splus.at(1)(0, 0) - cplx(1.0)) < 1e-9);
}

TEST_CASE("wilson: IEE0 boundary zeros cap the accuracy") {
    AlgoParams params;
    params.kappa = 13;
    params.wilsonIters = 60;
    const FactorResult res = wilson(fixture("ieee0").S, params);
    CHECK(res.err < 1e-3);   // the floor sits near 1e-6 with larger grids
}

TEST_CASE("wilson: random shifted instance and C0 guard") {
    const LaurentPolyMatrix s = random_spd({4, 6, 99, 1.0});
    AlgoParams params;
    params.kappa = 11;
    params.wilsonIters = 30;
    const FactorResult res = wilson(s, params);
    CHECK(res.err < 1e-8);

    LaurentPolyMatrix bad(2, 2, 0, 0);
    bad.ref(0) << cplx(-1.0), cplx(0.0), cplx(0.0), cplx(-1.0);
    CHECK_THROWS_AS(wilson(bad, params), NotPositiveDefiniteError);
}

TEST_CASE("normalize_at_zero: fixed point, exchange constant, invariance") {
    // Hermitian PD constant coefficient is left alone
    const LaurentPolyMatrix f = random_causal_factor(3, 2, 515);
    LaurentPolyMatrix herm = f;
    herm.ref(0) = ComplexMatrix::Identity(3, 3) * 4.0;
    const LaurentPolyMatrix normalized = normalize_at_zero(herm);
    CHECK(supnorm(sub(normalized, herm)) < 1e-12);

    // constant exchange matrix normalizes to the identity
    LaurentPolyMatrix x(2, 2, 0, 0);
    x.ref(0) << cplx(0.0), cplx(1.0), cplx(1.0), cplx(0.0);
    const LaurentPolyMatrix nx = normalize_at_zero(x);
    CHECK(supnorm(ComplexMatrix(nx.at(0) - ComplexMatrix::Identity(2, 2))) < 1e-14);

    // the residual does not see the unitary correction
    const LaurentPolyMatrix s = laurent_mul(f, laurent_adjoint(f));
    const LaurentPolyMatrix g = normalize_at_zero(f);
    CHECK(std::abs(factorization_error(s, f) - factorization_error(s, g)) < 1e-12);

    LaurentPolyMatrix sing(2, 2, 0, 1);
    sing.ref(1) = ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(normalize_at_zero(sing), SingularAtZeroError);
}

TEST_CASE("residual is invariant under constant right unitary factors") {
    const Fixture f = fixture("ieee0");
    ComplexMatrix a(2, 2);
    a << cplx(1.0, 0.5), cplx(-0.3, 0.2), cplx(0.7, -0.1), cplx(0.4, 0.9);
    const Eigen::HouseholderQR<ComplexMatrix> qr(a);
    const ComplexMatrix q = qr.householderQ();

    LaurentPolyMatrix rotated = *f.knownFactor;
    for (ComplexMatrix& c : rotated.coeffs) c *= q;
    CHECK(std::abs(factorization_error(f.S, *f.knownFactor) - factorization_error(f.S, rotated)) < 1e-12);
}

TEST_CASE("four algorithms agree on the canonical factor") {
    const LaurentPolyMatrix s = random_spd({4, 8, 4242, 1.0});

    AlgoParams p1;
    p1.scalarIters = 20;
    const FactorResult a = jle1(s, p1);

    AlgoParams p2;
    p2.kappa = 11;
    p2.scalarIters = 20;
    const FactorResult b = jle2(s, p2);

    const FactorResult c = jle3(s, p1);

    AlgoParams pw;
    pw.kappa = 11;
    pw.wilsonIters = 40;
    const FactorResult d = wilson(s, pw);

    CHECK(a.err < 1e-5);
    CHECK(b.err < 1e-4);
    CHECK(c.err < 1e-6);
    CHECK(d.err < 1e-6);
    CHECK(supnorm(sub(a.Splus, c.Splus)) < 1e-4);
    CHECK(supnorm(sub(b.Splus, c.Splus)) < 1e-4);
    CHECK(supnorm(sub(d.Splus, c.Splus)) < 1e-4);
}

TEST_CASE("factor results carry an independently recomputable residual") {
    const LaurentPolyMatrix s = random_spd({3, 4, 777, 1.0});
    const FactorResult res = jle1(s);
    const double recomputed = factorization_error(s, res.Splus);
    CHECK(std::abs(res.err - recomputed) <= 1e-14 * std::max(1.0, recomputed));
    // canonical normalization: Hermitian PD at the origin
    CHECK(supnorm(ComplexMatrix(res.Splus.at(0) - res.Splus.at(0).adjoint())) < 1e-10);
    CHECK_NOTHROW(cholesky_factor(res.Splus.at(0)));
}

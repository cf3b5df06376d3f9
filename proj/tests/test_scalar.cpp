#include <doctest.h>

#include <cmath>
#include <complex>

#include "specfact/errors.hpp"
#include "specfact/harness.hpp"
#include "specfact/laurent.hpp"
#include "specfact/scalar.hpp"

using namespace specfact;

namespace {

double reconstruction_residual(const LaurentPoly& density, const LaurentPoly& f) {
    return supnorm(sub(density, mul(f, conj_flip(f))));
}

} // namespace

TEST_CASE("scalar_factor_explog: constant density") {
    DensitySamples s;
    s.values.assign(64, 4.0);
    const LaurentPoly f = scalar_factor_explog(s, 4);
    CHECK(std::abs(f.at(0) - cplx(2.0)) < 1e-12);
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(f.at(k)) < 1e-12);
}

TEST_CASE("scalar_factor_explog: 2t^-1+5+2t has outer factor 2+t") {
    const LaurentPoly density(-1, {cplx(2.0), cplx(5.0), cplx(2.0)});
    const LaurentPoly f = scalar_factor_explog(sample_density(density, 256), 8);
    CHECK(std::abs(f.at(0) - cplx(2.0)) < 1e-10);
    CHECK(std::abs(f.at(1) - cplx(1.0)) < 1e-10);
    for (int k = 2; k <= 8; ++k) CHECK(std::abs(f.at(k)) < 1e-9);
}

TEST_CASE("scalar_factor_explog: singular IEE0 determinant approximates 1 - t^2") {
    // (1-t^2)(1-t^-2) = 2 - t^2 - t^-2 vanishes at t = +-1; the grid floor
    // keeps the logs finite and the exp-log factor lands near 1 - t^2
    const LaurentPoly det = fixture("ieee0").detReference.value();
    const LaurentPoly f = scalar_factor_explog(sample_density(det, 512), 2);
    CHECK(std::abs(f.at(0) - cplx(1.0)) < 0.05);
    CHECK(std::abs(f.at(1)) < 0.05);
    CHECK(std::abs(f.at(2) + cplx(1.0)) < 0.05);
}

TEST_CASE("scalar_factor_explog: flooring disabled raises on singular samples") {
    const LaurentPoly det = fixture("ieee0").detReference.value();
    CHECK_THROWS_AS(sample_density(det, 512, false), NonPositiveSampleError);
}

TEST_CASE("wilson_scalar_refine: constant density converges from a rough start") {
    const LaurentPoly density = LaurentPoly::constant(4.0);
    const LaurentPoly f0 = LaurentPoly::constant(1.9);
    const LaurentPoly f = wilson_scalar_refine(density, f0, 8, 64);
    CHECK(std::abs(f.at(0) - cplx(2.0)) < 1e-12);
}

TEST_CASE("wilson_scalar_refine: polishes the explog factor to machine accuracy") {
    const LaurentPoly density(-1, {cplx(2.0), cplx(5.0), cplx(2.0)});
    const LaurentPoly f0 = scalar_factor_explog(sample_density(density, 256), 1);
    const LaurentPoly f = wilson_scalar_refine(density, f0, 6, 256);
    CHECK(reconstruction_residual(density, f) < 1e-12);
    CHECK(std::abs(f.at(0) - cplx(2.0)) < 1e-12);
    CHECK(std::abs(f.at(1) - cplx(1.0)) < 1e-12);
}

TEST_CASE("wilson_scalar_refine: SA4 determinant with 60 iterations") {
    // offset sampling keeps the boundary zeros between nodes
    const LaurentPoly det = fixture("sa4").detReference.value();
    const LaurentPoly f0 = scalar_factor_explog(sample_density(det, 1024, true, true), 6);
    const LaurentPoly f = wilson_scalar_refine(det, f0, 60, 1024);
    const double res = reconstruction_residual(det, f);
    CHECK(res < 1e-4);   // boundary zeros slow the iteration; 60 rounds suffice
}

TEST_CASE("scalar_factor: explicit factors and residuals") {
    const LaurentPoly density(-1, {cplx(2.0), cplx(5.0), cplx(2.0)});
    const LaurentPoly f = scalar_factor(density, 512, 5);
    CHECK(reconstruction_residual(density, f) < 1e-12);
    CHECK(f.at(0).real() > 0.0);
    CHECK(std::abs(f.at(0).imag()) < 1e-14);

    const LaurentPoly nine = scalar_factor(LaurentPoly::constant(9.0), 512, 5);
    CHECK(std::abs(nine.at(0) - cplx(3.0)) < 1e-12);
}

TEST_CASE("scalar_factor: determinant of a random 4x4 degree-30 density") {
    const LaurentPolyMatrix s = random_spd({4, 30, 17, 0.0});
    const LaurentPoly det = polymat_det(s);
    const LaurentPoly f = scalar_factor(det, 2048, 8);
    CHECK(reconstruction_residual(det, f) < 1e-8);
}

TEST_CASE("causal_expand: geometric series and indicator") {
    RationalCausal geo{LaurentPoly::constant(1.0), LaurentPoly(0, {cplx(1.0), cplx(-0.5)})};
    const LaurentPoly g = causal_expand(geo, 0, 3);
    CHECK(std::abs(g.at(0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(g.at(1) - cplx(0.5)) < 1e-15);
    CHECK(std::abs(g.at(2) - cplx(0.25)) < 1e-15);
    CHECK(std::abs(g.at(3) - cplx(0.125)) < 1e-15);

    const LaurentPoly q(0, {cplx(3.0), cplx(1.0), cplx(-0.5)});
    const LaurentPoly ind = causal_expand(RationalCausal{q, q}, -2, 5);
    CHECK(std::abs(ind.at(0) - cplx(1.0)) < 1e-15);
    for (int k = -2; k <= 5; ++k)
        if (k != 0) CHECK(std::abs(ind.at(k)) < 1e-15);
}

TEST_CASE("causal_expand: series of 1/(2+t) follows the closed form") {
    RationalCausal f{LaurentPoly::constant(1.0), LaurentPoly(0, {cplx(2.0), cplx(1.0)})};
    const LaurentPoly b = causal_expand(f, 0, 12);
    for (int k = 0; k <= 12; ++k) {
        const double expected = 0.5 * std::pow(-0.5, k);
        CHECK(std::abs(b.at(k) - cplx(expected)) < 1e-14);
    }
}

TEST_CASE("causal_expand: multiplying back by q recovers p on the overlap") {
    SplitMix64 rng(99);
    LaurentPoly p(-3, std::vector<cplx>(9));
    for (cplx& c : p.coeffs) c = cplx(rng.next_symmetric(), rng.next_symmetric());
    LaurentPoly q(0, {cplx(2.0), cplx(0.4), cplx(-0.3), cplx(0.1)});
    const LaurentPoly u = causal_expand(RationalCausal{p, q}, -3, 40);
    const LaurentPoly back = mul(u, q);
    // below the truncation tail, q*u must reproduce p
    CHECK(supnorm(sub(back.restricted(-3, 30), p.restricted(-3, 30))) < 1e-10);
}

TEST_CASE("causal_expand: pole on the circle is detected") {
    RationalCausal f{LaurentPoly::constant(1.0), LaurentPoly(0, {cplx(1.0), cplx(-1.0)})};
    CHECK_THROWS_AS(causal_expand(f, 0, 4), PoleOnCircleError);
}

TEST_CASE("RationalCausal: denominator root check") {
    CHECK(RationalCausal{LaurentPoly::constant(1.0), LaurentPoly(0, {cplx(2.0), cplx(1.0)})}
              .denominator_zero_free());
    CHECK_FALSE(RationalCausal{LaurentPoly::constant(1.0), LaurentPoly(0, {cplx(0.25), cplx(1.0)})}
                    .denominator_zero_free());
}

TEST_CASE("scalar factors are causal with real positive constant term") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        // shifted density keeps the zeros away from the circle, where the
        // reconstruction contract applies
        const LaurentPolyMatrix s = random_spd({1, 6, 300 + seed, 1.0});
        const LaurentPoly density = s.entry(0, 0);
        const LaurentPoly f = scalar_factor(density, 512, 5);
        CHECK(f.lo == 0);
        CHECK(f.hi() == density.hi());
        CHECK(f.at(0).real() > 0.0);
        CHECK(std::abs(f.at(0).imag()) < 1e-13);
        CHECK(reconstruction_residual(density, f) < 1e-7 * std::max(1.0, supnorm(density)));
    }
}

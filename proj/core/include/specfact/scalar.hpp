#pragma once

#include <vector>

#include "specfact/laurent.hpp"
#include "specfact/types.hpp"

namespace specfact {

/// Boundary values of a spectral density on a power-of-two DFT grid,
/// positive after flooring. `offsetGrid` marks values taken at the
/// half-shifted nodes exp(2*pi*i*(l+1/2)/K).
struct DensitySamples {
    std::vector<double> values;
    bool floorApplied = false;
    bool offsetGrid = false;
};

/// Floors raw samples at 1e-15 * max before logs are taken; with flooring
/// disabled a sample at or below the floor raises NonPositiveSampleError.
DensitySamples make_density_samples(const std::vector<double>& raw, bool allowFloor = true);

/// Samples a Hermitian-symmetric density on the K-point grid (real parts).
DensitySamples sample_density(const LaurentPoly& density, int K, bool allowFloor = true,
                              bool offsetGrid = false);

/// Causal projection of a wrapped K-point coefficient array: constant term
/// halved, Nyquist bin halved, negative-index bins dropped.
void plus_half_grid(std::vector<cplx>& coeffs);

/// Outer (minimum-phase) factor of degree M from boundary samples by the
/// exp-log cepstral method. The constant coefficient is made real positive.
LaurentPoly scalar_factor_explog(const DensitySamples& samples, int M);

/// Newton refinement f <- f * [density/(f f*) + 1]_+ on a DFT grid, where
/// [.]_+ keeps nonnegative indices with the constant term halved. K = 0
/// picks a grid from the window size. DivergenceError after three
/// consecutive residual increases.
LaurentPoly wilson_scalar_refine(const LaurentPoly& density, const LaurentPoly& f0,
                                 int iters, int K = 0);

/// Sampling + exp-log + Wilson refinement; the scalar factorization
/// primitive used throughout the matrix algorithms.
LaurentPoly scalar_factor(const LaurentPoly& density, int K = 0, int iters = 5);

/// Rational function p/q with q causal, q(0) != 0 and q zero-free in the
/// open unit disk; p may carry negative powers.
struct RationalCausal {
    LaurentPoly p;
    LaurentPoly q = LaurentPoly::constant(1.0);

    /// Root check of q via the companion matrix; practical for deg q <= 64.
    bool denominator_zero_free(double tol = 1e-9) const;
};

/// Fourier window [lo, hi] of p/q on the circle. The causal expansion runs
/// by forward substitution against q's power series; coefficients below
/// p.lo vanish identically. PoleOnCircleError when |q| underflows at a
/// probe node.
LaurentPoly causal_expand(const RationalCausal& f, int lo, int hi);

} // namespace specfact

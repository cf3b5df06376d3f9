#include "specfact/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "specfact/errors.hpp"
#include "specfact/fft.hpp"

namespace specfact {

namespace {

constexpr double kFloorRatio = 1e-15;

/// Multiplies by the unimodular constant that makes the constant
/// coefficient real positive.
LaurentPoly normalize_phase(LaurentPoly f) {
    const cplx c0 = f.at(0);
    const double a = std::abs(c0);
    if (a == 0.0) return f;
    const cplx u = std::conj(c0) / a;
    for (cplx& c : f.coeffs) c *= u;
    f.ref(0) = cplx(a, 0.0);
    return f;
}

} // namespace

DensitySamples make_density_samples(const std::vector<double>& raw, bool allowFloor) {
    if (raw.size() < 2 || !is_pow2(raw.size()))
        throw InvalidArgumentError("density samples: grid must be a power of two, K >= 2");
    double mx = 0.0;
    for (double v : raw) mx = std::max(mx, v);
    if (mx <= 0.0) throw NonPositiveSampleError("density samples: no positive sample");
    const double floor = kFloorRatio * mx;
    DensitySamples out;
    out.values.reserve(raw.size());
    for (double v : raw) {
        if (v <= floor) {
            if (!allowFloor)
                throw NonPositiveSampleError("density samples: sample below floor with flooring disabled");
            out.values.push_back(floor);
            out.floorApplied = true;
        } else {
            out.values.push_back(v);
        }
    }
    return out;
}

DensitySamples sample_density(const LaurentPoly& density, int K, bool allowFloor,
                              bool offsetGrid) {
    const std::vector<cplx> vals = sample_on_grid(density, K, offsetGrid);
    std::vector<double> raw(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) raw[i] = vals[i].real();
    DensitySamples out = make_density_samples(raw, allowFloor);
    out.offsetGrid = offsetGrid;
    return out;
}

void plus_half_grid(std::vector<cplx>& coeffs) {
    const std::size_t K = coeffs.size();
    coeffs[0] *= 0.5;
    if (K % 2 == 0) coeffs[K / 2] *= 0.5;
    for (std::size_t j = K / 2 + 1; j < K; ++j) coeffs[j] = cplx(0.0);
}

LaurentPoly scalar_factor_explog(const DensitySamples& samples, int M) {
    const int K = static_cast<int>(samples.values.size());
    if (M < 0 || M >= K)
        throw InvalidArgumentError("scalar_factor_explog: output degree must satisfy 0 <= M < K");

    std::vector<cplx> buf(samples.values.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = std::log(samples.values[i]);

    // cepstrum, then the analytic half with the constant (and Nyquist) halved;
    // on the offset grid the bins carry an extra per-index phase, which is
    // transparent to the bin-wise projection
    fft_pow2(buf, -1);
    const double invK = 1.0 / static_cast<double>(K);
    for (cplx& c : buf) c *= invK;
    plus_half_grid(buf);

    // back to node values, exponentiate, read off the factor coefficients
    fft_pow2(buf, +1);
    for (cplx& c : buf) c = std::exp(c);
    fft_pow2(buf, -1);
    for (cplx& c : buf) c *= invK;

    LaurentPoly f = LaurentPoly::zero(0, M);
    for (int k = 0; k <= M; ++k) {
        const cplx untwiddle = samples.offsetGrid
                                   ? std::polar(1.0, -std::numbers::pi * k / K)
                                   : cplx(1.0);
        f.ref(k) = untwiddle * buf[static_cast<std::size_t>(k)];
    }
    return normalize_phase(f);
}

LaurentPoly wilson_scalar_refine(const LaurentPoly& density, const LaurentPoly& f0,
                                 int iters, int K) {
    if (f0.lo != 0) throw InvalidArgumentError("wilson_scalar_refine: f0 must be causal");
    if (f0.hi() > density.hi())
        throw InvalidArgumentError("wilson_scalar_refine: deg f0 exceeds the density degree");
    if (std::abs(f0.at(0)) == 0.0)
        throw InvalidArgumentError("wilson_scalar_refine: f0(0) must be nonzero");
    if (K == 0)
        K = static_cast<int>(next_pow2(static_cast<std::size_t>(
            std::max(512, 4 * (density.hi() - density.lo + 1)))));

    // Offset nodes keep boundary zeros of symmetric densities (at +-1, +-i)
    // strictly between samples, so the Newton map stays regular even for
    // singular inputs.
    const std::vector<cplx> draw = sample_on_grid(density, K, true);
    std::vector<double> d(draw.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = std::max(draw[i].real(), 0.0);
        dmax = std::max(dmax, d[i]);
    }
    const double floor = 1e-300 * std::max(dmax, 1.0);
    for (double& v : d) v = std::max(v, floor);

    std::vector<cplx> f = sample_on_grid(f0, K, true);
    std::vector<cplx> g(f.size());

    auto residual = [&] {
        double r = 0.0;
        for (std::size_t l = 0; l < f.size(); ++l) r = std::max(r, std::abs(d[l] - std::norm(f[l])));
        return r;
    };

    // the returned iterate is the best one seen: extra iterations can only
    // help, and under-resolved boundary zeros cannot degrade the result
    std::vector<cplx> best = f;
    double bestRes = residual();
    double prev = bestRes;
    int growth = 0;
    for (int it = 0; it < iters; ++it) {
        for (std::size_t l = 0; l < f.size(); ++l)
            g[l] = d[l] / std::max(std::norm(f[l]), 1e-300) + 1.0;
        fft_pow2(g, -1);
        const double invK = 1.0 / static_cast<double>(K);
        for (cplx& c : g) c *= invK;
        plus_half_grid(g);
        fft_pow2(g, +1);
        for (std::size_t l = 0; l < f.size(); ++l) f[l] *= g[l];

        // project the iterate onto polynomials of the factor degree; the
        // exact factor is then a fixed point despite aliasing of d/(f f*)
        fft_pow2(f, -1);
        for (cplx& c : f) c *= invK;
        for (int k = density.hi() + 1; k < K; ++k) f[static_cast<std::size_t>(k)] = cplx(0.0);
        fft_pow2(f, +1);

        const double res = residual();
        if (res < bestRes) {
            bestRes = res;
            best = f;
        }
        if (res > prev * 1.5) {
            if (++growth >= 3)
                throw DivergenceError("wilson_scalar_refine: residual grew for 3 consecutive iterations");
        } else {
            growth = 0;
        }
        prev = res;
    }

    std::vector<cplx> c = std::move(best);
    fft_pow2(c, -1);
    const double invK = 1.0 / static_cast<double>(K);
    for (cplx& v : c) v *= invK;
    LaurentPoly out = LaurentPoly::zero(0, density.hi());
    for (int k = 0; k <= density.hi(); ++k)
        out.ref(k) = std::polar(1.0, -std::numbers::pi * k / K) * c[static_cast<std::size_t>(k)];
    return normalize_phase(out);
}

namespace {

/// For factors of singular densities the Newton limit can leave a root a
/// hair inside the disk; the resulting non-outer factor wrecks the rational
/// divisions downstream. Snapping near-circle roots onto the circle
/// restores the outer structure. Practical for modest degrees only.
LaurentPoly reflect_near_circle_roots(const LaurentPoly& f, const DensitySamples& samples) {
    const int deg = f.hi();
    if (deg < 1 || deg > 64) return f;

    ComplexMatrix comp = ComplexMatrix::Zero(deg, deg);
    if (std::abs(f.at(deg)) == 0.0) return f;
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -f.at(i) / f.at(deg);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(comp, false);

    bool touched = false;
    std::vector<cplx> roots(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        cplx z = es.eigenvalues()(i);
        const double a = std::abs(z);
        if (std::abs(a - 1.0) < 3e-5) {
            z /= a;
            touched = true;
        }
        roots[static_cast<std::size_t>(i)] = z;
    }
    if (!touched) return f;

    LaurentPoly g = LaurentPoly::constant(f.at(deg));
    for (const cplx& z : roots) g = mul(g, LaurentPoly(0, {-z, cplx(1.0)}));

    // rescale against the density samples (median of |d| / |g|^2 is robust
    // to the near-zero nodes), then pin the constant-term phase
    const int K = static_cast<int>(samples.values.size());
    std::vector<double> ratios;
    ratios.reserve(samples.values.size());
    const std::vector<cplx> gv = sample_on_grid(g, K, samples.offsetGrid);
    for (int l = 0; l < K; ++l) {
        const double gg = std::norm(gv[static_cast<std::size_t>(l)]);
        if (gg > 1e-280) ratios.push_back(samples.values[static_cast<std::size_t>(l)] / gg);
    }
    if (ratios.empty()) return f;
    std::nth_element(ratios.begin(), ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2),
                     ratios.end());
    const double c = std::sqrt(ratios[ratios.size() / 2]);
    return normalize_phase(scale(g, c));
}

} // namespace

LaurentPoly scalar_factor(const LaurentPoly& density, int K, int iters) {
    const double scale = std::max(supnorm(density), 1e-300);
    if (!is_hermitian(density, 1e-8 * scale))
        throw NotHermitianError("scalar_factor: density is not Hermitian-symmetric");
    if (K == 0)
        K = static_cast<int>(next_pow2(static_cast<std::size_t>(
            std::max(512, 4 * density.hi() + 1))));

    const DensitySamples samples = sample_density(density, K, true, /*offsetGrid=*/true);
    LaurentPoly f = scalar_factor_explog(samples, density.hi());
    if (iters > 0) f = wilson_scalar_refine(density, f, iters, K);

    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (double v : samples.values) {
        dmin = std::min(dmin, v);
        dmax = std::max(dmax, v);
    }
    if (dmin < 1e-6 * dmax) f = reflect_near_circle_roots(f, samples);
    return f;
}

bool RationalCausal::denominator_zero_free(double tol) const {
    const LaurentPoly qq = q.restricted(0, q.hi());
    int deg = qq.hi();
    while (deg > 0 && std::abs(qq.at(deg)) == 0.0) --deg;
    if (deg == 0) return std::abs(qq.at(0)) != 0.0;
    if (deg > 64) return true;   // companion route impractical; rely on expansion behavior
    ComplexMatrix comp = ComplexMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -qq.at(i) / qq.at(deg);
    const Eigen::VectorXcd roots = comp.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i)
        if (std::abs(roots(i)) < 1.0 - tol) return false;
    return true;
}

LaurentPoly causal_expand(const RationalCausal& f, int lo, int hi) {
    if (lo > hi) throw InvalidArgumentError("causal_expand: lo > hi");
    if (f.q.lo != 0) throw InvalidArgumentError("causal_expand: q must be causal");
    const cplx q0 = f.q.at(0);
    if (std::abs(q0) == 0.0) throw InvalidArgumentError("causal_expand: q(0) must be nonzero");

    // underflow probe on a coarse grid flags exact zeros of q on the circle
    {
        const int G = static_cast<int>(next_pow2(static_cast<std::size_t>(
            std::max(256, 2 * f.q.length()))));
        const std::vector<cplx> qv = sample_on_grid(f.q, G);
        for (const cplx& v : qv)
            if (std::abs(v) < 1e-300)
                throw PoleOnCircleError("causal_expand: |q| underflows at a grid node");
    }

    const int shift = f.p.lo;
    LaurentPoly out = LaurentPoly::zero(lo, hi);
    if (hi < shift) return out;

    // forward substitution for u = p/q with indices counted from p.lo
    const int len = hi - shift + 1;
    const int dq = f.q.hi();
    std::vector<cplx> u(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) {
        cplx acc = f.p.at(shift + k);
        for (int j = 1; j <= std::min(k, dq); ++j)
            acc -= f.q.at(j) * u[static_cast<std::size_t>(k - j)];
        u[static_cast<std::size_t>(k)] = acc / q0;
    }
    for (int k = std::max(lo, shift); k <= hi; ++k)
        out.ref(k) = u[static_cast<std::size_t>(k - shift)];
    return out;
}

} // namespace specfact

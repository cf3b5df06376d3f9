#include "specfact/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "specfact/errors.hpp"
#include "specfact/fft.hpp"

namespace specfact {

namespace {

int wrap_index(int k, int K) {
    int r = k % K;
    return r < 0 ? r + K : r;
}

} // namespace

cplx LaurentPoly::eval(cplx t) const {
    // Horner over the causal part, explicit powers for the anticausal part.
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    if (lo != 0) acc *= std::pow(t, lo);
    return acc;
}

LaurentPoly LaurentPoly::restricted(int newLo, int newHi) const {
    LaurentPoly out = LaurentPoly::zero(newLo, newHi);
    for (int k = std::max(lo, newLo); k <= std::min(hi(), newHi); ++k) out.ref(k) = at(k);
    return out;
}

double supnorm(const LaurentPoly& p) {
    double m = 0.0;
    for (const cplx& c : p.coeffs) m = std::max(m, std::abs(c));
    return m;
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = LaurentPoly::zero(std::min(a.lo, b.lo), std::max(a.hi(), b.hi()));
    for (int k = out.lo; k <= out.hi(); ++k) out.ref(k) = a.at(k) + b.at(k);
    return out;
}

LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = LaurentPoly::zero(std::min(a.lo, b.lo), std::max(a.hi(), b.hi()));
    for (int k = out.lo; k <= out.hi(); ++k) out.ref(k) = a.at(k) - b.at(k);
    return out;
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = LaurentPoly::zero(a.lo + b.lo, a.hi() + b.hi());
    for (int i = 0; i < a.length(); ++i) {
        const cplx ai = a.coeffs[static_cast<std::size_t>(i)];
        if (ai == cplx(0.0)) continue;
        for (int j = 0; j < b.length(); ++j)
            out.coeffs[static_cast<std::size_t>(i + j)] += ai * b.coeffs[static_cast<std::size_t>(j)];
    }
    return out;
}

LaurentPoly scale(const LaurentPoly& a, cplx s) {
    LaurentPoly out = a;
    for (cplx& c : out.coeffs) c *= s;
    return out;
}

LaurentPoly conj_flip(const LaurentPoly& p) {
    LaurentPoly out = LaurentPoly::zero(-p.hi(), -p.lo);
    for (int k = p.lo; k <= p.hi(); ++k) out.ref(-k) = std::conj(p.at(k));
    return out;
}

bool is_hermitian(const LaurentPoly& p, double tol) {
    for (int k = 0; k <= std::max(p.hi(), -p.lo); ++k)
        if (std::abs(p.at(-k) - std::conj(p.at(k))) > tol) return false;
    return true;
}

std::vector<cplx> sample_on_grid(const LaurentPoly& p, int K, bool offset) {
    if (is_pow2(static_cast<std::size_t>(K))) {
        std::vector<cplx> buf(static_cast<std::size_t>(K), cplx(0.0));
        for (int k = p.lo; k <= p.hi(); ++k) {
            const cplx twiddle =
                offset ? std::polar(1.0, std::numbers::pi * k / K) : cplx(1.0);
            buf[static_cast<std::size_t>(wrap_index(k, K))] += twiddle * p.at(k);
        }
        fft_pow2(buf, +1);
        return buf;
    }
    std::vector<cplx> out(static_cast<std::size_t>(K));
    const double half = offset ? 0.5 : 0.0;
    for (int l = 0; l < K; ++l)
        out[static_cast<std::size_t>(l)] =
            p.eval(std::polar(1.0, 2.0 * std::numbers::pi * (l + half) / K));
    return out;
}

LaurentPolyMatrix::LaurentPolyMatrix(int r, int c, int lo_, int hi_)
    : rows(r), cols(c), lo(lo_),
      coeffs(static_cast<std::size_t>(hi_ - lo_ + 1), ComplexMatrix::Zero(r, c)) {}

LaurentPolyMatrix LaurentPolyMatrix::identity(int n) {
    LaurentPolyMatrix out(n, n, 0, 0);
    out.coeffs[0] = ComplexMatrix::Identity(n, n);
    return out;
}

LaurentPolyMatrix LaurentPolyMatrix::from_scalar(const LaurentPoly& p) {
    LaurentPolyMatrix out(1, 1, p.lo, p.hi());
    for (int k = p.lo; k <= p.hi(); ++k) out.ref(k)(0, 0) = p.at(k);
    return out;
}

LaurentPoly LaurentPolyMatrix::entry(int i, int j) const {
    LaurentPoly out = LaurentPoly::zero(lo, hi());
    for (int k = lo; k <= hi(); ++k)
        out.ref(k) = coeffs[static_cast<std::size_t>(k - lo)](i, j);
    return out;
}

void LaurentPolyMatrix::set_entry(int i, int j, const LaurentPoly& p) {
    for (int k = lo; k <= hi(); ++k) ref(k)(i, j) = p.at(k);
}

LaurentPolyMatrix LaurentPolyMatrix::leading(int m) const { return block(0, 0, m, m); }

LaurentPolyMatrix LaurentPolyMatrix::block(int r0, int c0, int nr, int nc) const {
    LaurentPolyMatrix out(nr, nc, lo, hi());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        out.coeffs[k] = coeffs[k].block(r0, c0, nr, nc);
    return out;
}

ComplexMatrix LaurentPolyMatrix::eval(cplx t) const {
    ComplexMatrix acc = ComplexMatrix::Zero(rows, cols);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    if (lo != 0) acc *= std::pow(t, lo);
    return acc;
}

LaurentPolyMatrix LaurentPolyMatrix::restricted(int newLo, int newHi) const {
    LaurentPolyMatrix out(rows, cols, newLo, newHi);
    for (int k = std::max(lo, newLo); k <= std::min(hi(), newHi); ++k) out.ref(k) = at(k);
    return out;
}

LaurentPolyMatrix LaurentPolyMatrix::trimmed(double tol) const {
    int a = lo, b = hi();
    while (a < b && supnorm(at(a)) <= tol) ++a;
    while (b > a && supnorm(at(b)) <= tol) --b;
    return restricted(a, b);
}

double supnorm(const LaurentPolyMatrix& p) {
    double m = 0.0;
    for (const ComplexMatrix& c : p.coeffs) m = std::max(m, supnorm(c));
    return m;
}

bool is_hermitian(const LaurentPolyMatrix& p, double tol) {
    if (p.rows != p.cols) return false;
    for (int k = 0; k <= std::max(p.hi(), -p.lo); ++k)
        if (supnorm(ComplexMatrix(p.at(-k) - p.at(k).adjoint())) > tol) return false;
    return true;
}

LaurentPolyMatrix add(const LaurentPolyMatrix& a, const LaurentPolyMatrix& b) {
    LaurentPolyMatrix out(a.rows, a.cols, std::min(a.lo, b.lo), std::max(a.hi(), b.hi()));
    for (int k = out.lo; k <= out.hi(); ++k) out.ref(k) = a.at(k) + b.at(k);
    return out;
}

LaurentPolyMatrix sub(const LaurentPolyMatrix& a, const LaurentPolyMatrix& b) {
    LaurentPolyMatrix out(a.rows, a.cols, std::min(a.lo, b.lo), std::max(a.hi(), b.hi()));
    for (int k = out.lo; k <= out.hi(); ++k) out.ref(k) = a.at(k) - b.at(k);
    return out;
}

std::vector<ComplexMatrix> dft_eval(const LaurentPolyMatrix& p, int K) {
    if (K < 1) throw InvalidArgumentError("dft_eval: node count must be >= 1");
    std::vector<ComplexMatrix> out(static_cast<std::size_t>(K), ComplexMatrix::Zero(p.rows, p.cols));
    if (is_pow2(static_cast<std::size_t>(K))) {
        std::vector<cplx> buf(static_cast<std::size_t>(K));
        for (int i = 0; i < p.rows; ++i)
            for (int j = 0; j < p.cols; ++j) {
                std::fill(buf.begin(), buf.end(), cplx(0.0));
                for (int k = p.lo; k <= p.hi(); ++k)
                    buf[static_cast<std::size_t>(wrap_index(k, K))] +=
                        p.coeffs[static_cast<std::size_t>(k - p.lo)](i, j);
                fft_pow2(buf, +1);
                for (int l = 0; l < K; ++l) out[static_cast<std::size_t>(l)](i, j) = buf[static_cast<std::size_t>(l)];
            }
        return out;
    }
    for (int l = 0; l < K; ++l)
        out[static_cast<std::size_t>(l)] =
            p.eval(std::polar(1.0, 2.0 * std::numbers::pi * l / K));
    return out;
}

std::vector<cplx> idft_coeffs(const std::vector<cplx>& values) {
    std::vector<cplx> c = fourier_sum(values, -1);
    const double invK = 1.0 / static_cast<double>(values.size());
    for (cplx& v : c) v *= invK;
    return c;
}

LaurentPoly idft_interpolate_scalar(const std::vector<cplx>& values, int lo, int hi) {
    const int K = static_cast<int>(values.size());
    if (K < hi - lo + 1)
        throw AliasError("idft_interpolate: window length exceeds node count");
    const std::vector<cplx> c = idft_coeffs(values);
    LaurentPoly out = LaurentPoly::zero(lo, hi);
    for (int k = lo; k <= hi; ++k) out.ref(k) = c[static_cast<std::size_t>(wrap_index(k, K))];
    return out;
}

LaurentPolyMatrix idft_interpolate(const std::vector<ComplexMatrix>& values, int lo, int hi) {
    const int K = static_cast<int>(values.size());
    if (K < hi - lo + 1)
        throw AliasError("idft_interpolate: window length exceeds node count");
    const int rows = static_cast<int>(values.front().rows());
    const int cols = static_cast<int>(values.front().cols());
    LaurentPolyMatrix out(rows, cols, lo, hi);
    std::vector<cplx> buf(static_cast<std::size_t>(K));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            for (int l = 0; l < K; ++l) buf[static_cast<std::size_t>(l)] = values[static_cast<std::size_t>(l)](i, j);
            const std::vector<cplx> c = idft_coeffs(buf);
            for (int k = lo; k <= hi; ++k)
                out.ref(k)(i, j) = c[static_cast<std::size_t>(wrap_index(k, K))];
        }
    return out;
}

LaurentPolyMatrix laurent_mul(const LaurentPolyMatrix& p, const LaurentPolyMatrix& q) {
    if (p.cols != q.rows) throw InvalidArgumentError("laurent_mul: inner dimensions disagree");
    LaurentPolyMatrix out(p.rows, q.cols, p.lo + q.lo, p.hi() + q.hi());
    for (int i = 0; i < p.length(); ++i)
        for (int j = 0; j < q.length(); ++j)
            out.coeffs[static_cast<std::size_t>(i + j)] +=
                p.coeffs[static_cast<std::size_t>(i)] * q.coeffs[static_cast<std::size_t>(j)];
    return out;
}

LaurentPolyMatrix laurent_mul_fft(const LaurentPolyMatrix& p, const LaurentPolyMatrix& q) {
    if (p.cols != q.rows) throw InvalidArgumentError("laurent_mul: inner dimensions disagree");
    const int lo = p.lo + q.lo;
    const int hi = p.hi() + q.hi();
    const int K = static_cast<int>(next_pow2(static_cast<std::size_t>(hi - lo + 1)));
    const std::vector<ComplexMatrix> pv = dft_eval(p, K);
    const std::vector<ComplexMatrix> qv = dft_eval(q, K);
    std::vector<ComplexMatrix> prod(static_cast<std::size_t>(K));
    for (int l = 0; l < K; ++l)
        prod[static_cast<std::size_t>(l)] = pv[static_cast<std::size_t>(l)] * qv[static_cast<std::size_t>(l)];
    return idft_interpolate(prod, lo, hi);
}

LaurentPolyMatrix laurent_adjoint(const LaurentPolyMatrix& p) {
    LaurentPolyMatrix out(p.cols, p.rows, -p.hi(), -p.lo);
    for (int k = p.lo; k <= p.hi(); ++k) out.ref(-k) = p.at(k).adjoint();
    return out;
}

namespace {

LaurentPoly det_direct(const LaurentPolyMatrix& p) {
    const int m = p.rows;
    if (m == 1) return p.entry(0, 0);
    LaurentPoly acc = LaurentPoly::constant(0.0);
    // Laplace expansion along the first row
    for (int j = 0; j < m; ++j) {
        LaurentPolyMatrix minor(m - 1, m - 1, p.lo, p.hi());
        for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
            ComplexMatrix& mk = minor.coeffs[k];
            const ComplexMatrix& pk = p.coeffs[k];
            for (int i = 1; i < m; ++i) {
                int cc = 0;
                for (int c = 0; c < m; ++c) {
                    if (c == j) continue;
                    mk(i - 1, cc++) = pk(i, c);
                }
            }
        }
        LaurentPoly term = mul(p.entry(0, j), det_direct(minor));
        if (j % 2 == 1) term = scale(term, cplx(-1.0));
        acc = add(acc, term);
    }
    return acc;
}

} // namespace

LaurentPoly polymat_det(const LaurentPolyMatrix& p, DetMethod method,
                        std::vector<std::string>* warnings) {
    if (p.rows != p.cols) throw InvalidArgumentError("polymat_det: matrix must be square");
    const int m = p.rows;
    const int n = std::max(p.hi(), -p.lo);
    if (warnings && (m >= 20 || n >= 25))
        warnings->push_back("polymat_det: size " + std::to_string(m) + "x" + std::to_string(n) +
                            " exceeds the reliable node/interpolation envelope (r<20, n<25)");
    if (m == 1) return p.entry(0, 0);
    if (method == DetMethod::Direct) return det_direct(p);

    const int lo = m * p.lo;
    const int hi = m * p.hi();
    const int K = static_cast<int>(next_pow2(static_cast<std::size_t>(hi - lo + 1)));
    const std::vector<ComplexMatrix> vals = dft_eval(p, K);
    std::vector<cplx> dets(static_cast<std::size_t>(K));
    for (int l = 0; l < K; ++l)
        dets[static_cast<std::size_t>(l)] =
            Eigen::PartialPivLU<ComplexMatrix>(vals[static_cast<std::size_t>(l)]).determinant();
    return idft_interpolate_scalar(dets, lo, hi);
}

LaurentPolyMatrix cofactor_transpose(const LaurentPolyMatrix& p, const LaurentPoly& detP) {
    if (p.rows != p.cols) throw InvalidArgumentError("cofactor_transpose: matrix must be square");
    const int m = p.rows;
    if (m == 1) return LaurentPolyMatrix::identity(1);

    const int lo = (m - 1) * p.lo;
    const int hi = (m - 1) * p.hi();
    const int K = static_cast<int>(next_pow2(static_cast<std::size_t>(hi - lo + 1)));
    const std::vector<ComplexMatrix> vals = dft_eval(p, K);
    std::vector<ComplexMatrix> cof(static_cast<std::size_t>(K));
    for (int l = 0; l < K; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / K);
        Eigen::PartialPivLU<ComplexMatrix> lu(vals[static_cast<std::size_t>(l)]);
        const double rc = lu.rcond();
        if (!(rc > 1e-14) || !std::isfinite(rc))
            throw SingularNodeError("cofactor_transpose: P(t_l) numerically singular at node " +
                                    std::to_string(l) + " of " + std::to_string(K));
        cof[static_cast<std::size_t>(l)] = detP.eval(t) * lu.inverse();
    }
    return idft_interpolate(cof, lo, hi);
}

ComplexMatrix toeplitz_lower(const std::vector<cplx>& a, int m) {
    if (m < 1) throw InvalidArgumentError("toeplitz_lower: m must be >= 1");
    const int l = static_cast<int>(a.size()) - 1;
    ComplexMatrix t = ComplexMatrix::Zero(l + m + 1, m + 1);
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= l; ++i) t(i + j, j) = a[static_cast<std::size_t>(i)];
    return t;
}

} // namespace specfact

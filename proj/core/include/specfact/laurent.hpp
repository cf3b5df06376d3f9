#pragma once

#include <string>
#include <vector>

#include "specfact/types.hpp"

namespace specfact {

/// Scalar Laurent polynomial: complex coefficients on an integer index
/// window [lo, hi], stored densely (coeffs[k - lo] is the coefficient of t^k).
struct LaurentPoly {
    int lo = 0;
    std::vector<cplx> coeffs{cplx(0.0)};

    LaurentPoly() = default;
    LaurentPoly(int lo_, std::vector<cplx> c) : lo(lo_), coeffs(std::move(c)) {}

    static LaurentPoly constant(cplx v) { return LaurentPoly(0, {v}); }
    static LaurentPoly zero(int lo, int hi) {
        return LaurentPoly(lo, std::vector<cplx>(static_cast<std::size_t>(hi - lo + 1), cplx(0.0)));
    }

    int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
    int length() const { return static_cast<int>(coeffs.size()); }

    cplx at(int k) const {
        if (k < lo || k > hi()) return cplx(0.0);
        return coeffs[static_cast<std::size_t>(k - lo)];
    }
    cplx& ref(int k) { return coeffs[static_cast<std::size_t>(k - lo)]; }

    /// Value at a point of the unit circle (or any nonzero t).
    cplx eval(cplx t) const;

    /// Same polynomial re-windowed to [newLo, newHi]; coefficients outside
    /// the old window are zero, outside the new window they are dropped.
    LaurentPoly restricted(int newLo, int newHi) const;
};

double supnorm(const LaurentPoly& p);
LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly scale(const LaurentPoly& a, cplx s);

/// p*(t) = conj(p(1/conj(t))): window negated, coefficient at -k = conj(c_k).
LaurentPoly conj_flip(const LaurentPoly& p);

/// Hermitian symmetry c_{-k} = conj(c_k) within an absolute tolerance.
bool is_hermitian(const LaurentPoly& p, double tol);

/// Samples p(t_l) on the K-point DFT grid, t_l = exp(2*pi*i*l/K). With
/// `offset`, the half-shifted nodes exp(2*pi*i*(l+1/2)/K) are used instead;
/// they avoid +-1 and +-i, where symmetric singular densities vanish.
std::vector<cplx> sample_on_grid(const LaurentPoly& p, int K, bool offset = false);

/// Matrix Laurent polynomial: one coefficient matrix per index of the shared
/// window [lo, hi]. Densities are Hermitian (C_{-k} = C_k^*), causal objects
/// such as spectral factors have lo = 0.
struct LaurentPolyMatrix {
    int rows = 0;
    int cols = 0;
    int lo = 0;
    std::vector<ComplexMatrix> coeffs;   // coeffs[k - lo]

    LaurentPolyMatrix() = default;
    LaurentPolyMatrix(int r, int c, int lo_, int hi_);

    static LaurentPolyMatrix identity(int n);
    static LaurentPolyMatrix from_scalar(const LaurentPoly& p);

    int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
    int length() const { return static_cast<int>(coeffs.size()); }

    ComplexMatrix at(int k) const {
        if (k < lo || k > hi()) return ComplexMatrix::Zero(rows, cols);
        return coeffs[static_cast<std::size_t>(k - lo)];
    }
    ComplexMatrix& ref(int k) { return coeffs[static_cast<std::size_t>(k - lo)]; }

    LaurentPoly entry(int i, int j) const;
    void set_entry(int i, int j, const LaurentPoly& p);

    /// Upper-left m x m submatrix (same window).
    LaurentPolyMatrix leading(int m) const;
    /// Column block [r0, r1) x [c0, c1) (same window).
    LaurentPolyMatrix block(int r0, int c0, int nr, int nc) const;

    ComplexMatrix eval(cplx t) const;
    LaurentPolyMatrix restricted(int newLo, int newHi) const;
    /// Drops leading/trailing all-zero coefficient matrices (keeps >= 1).
    LaurentPolyMatrix trimmed(double tol = 0.0) const;
};

double supnorm(const LaurentPolyMatrix& p);
bool is_hermitian(const LaurentPolyMatrix& p, double tol);
LaurentPolyMatrix add(const LaurentPolyMatrix& a, const LaurentPolyMatrix& b);
LaurentPolyMatrix sub(const LaurentPolyMatrix& a, const LaurentPolyMatrix& b);

/// Values P(t_l) on the K-point DFT grid; FFT per entry when K is a power of
/// two, direct evaluation otherwise.
std::vector<ComplexMatrix> dft_eval(const LaurentPolyMatrix& p, int K);

/// Inverse of dft_eval: recovers the unique matrix polynomial supported on
/// [lo, hi] from its samples (K >= window length required, else AliasError).
LaurentPolyMatrix idft_interpolate(const std::vector<ComplexMatrix>& values, int lo, int hi);

/// Scalar counterparts used by the factorization kernels.
std::vector<cplx> idft_coeffs(const std::vector<cplx>& values);
LaurentPoly idft_interpolate_scalar(const std::vector<cplx>& values, int lo, int hi);

/// Matrix product of Laurent series by exact coefficient convolution.
LaurentPolyMatrix laurent_mul(const LaurentPolyMatrix& p, const LaurentPolyMatrix& q);

/// Same contract as laurent_mul, computed by node-wise products on a DFT
/// grid; preferred when the windows are large.
LaurentPolyMatrix laurent_mul_fft(const LaurentPolyMatrix& p, const LaurentPolyMatrix& q);

/// P*(t) = conj-transpose of P(1/conj(t)).
LaurentPolyMatrix laurent_adjoint(const LaurentPolyMatrix& p);

enum class DetMethod {
    Fft,     ///< evaluate at DFT nodes, LU determinant, interpolate
    Direct,  ///< Laplace expansion over exact coefficient convolutions
};

/// Determinant of a square matrix polynomial, supported on [m*lo, m*hi].
/// Appends a reliability note to `warnings` when the size exceeds the
/// envelope where the node/interpolation route stays accurate.
LaurentPoly polymat_det(const LaurentPolyMatrix& p, DetMethod method = DetMethod::Fft,
                        std::vector<std::string>* warnings = nullptr);

/// Transposed cofactor matrix: P * cofactor_transpose(P) = det(P) * I.
/// Computed from node values det(t_l) * P(t_l)^{-1}; SingularNodeError when
/// some P(t_l) is numerically singular.
LaurentPolyMatrix cofactor_transpose(const LaurentPolyMatrix& p, const LaurentPoly& detP);

/// T(a; m): the (l+m+1) x (m+1) lower-trapezoidal Toeplitz matrix with first
/// column [a; 0] and first row [a_0, 0]. T(a; m) * v stacks the coefficients
/// of the product a(t) * v(t) for deg v <= m.
ComplexMatrix toeplitz_lower(const std::vector<cplx>& a, int m);

} // namespace specfact

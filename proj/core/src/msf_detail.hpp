#pragma once

#include <chrono>
#include <string>

#include "specfact/errors.hpp"
#include "specfact/laurent.hpp"
#include "specfact/msf.hpp"

namespace specfact::detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Validates a density and pads its window to the symmetric [-n, n].
inline LaurentPolyMatrix prepare_density(const LaurentPolyMatrix& s, double hermitianTol) {
    if (s.rows != s.cols) throw InvalidArgumentError("density must be square");
    const double scale = std::max(supnorm(s), 1e-300);
    if (!is_hermitian(s, hermitianTol * scale))
        throw NotHermitianError("density is not Hermitian-symmetric within tolerance");
    const int n = std::max(s.hi(), -s.lo);
    return s.restricted(-n, n);
}

/// Finalizes a factor run: canonical normalization, independent residual.
FactorResult finish_result(const LaurentPolyMatrix& s, LaurentPolyMatrix splus,
                           std::string algorithm, Diagnostics diag, const Stopwatch& sw);

} // namespace specfact::detail

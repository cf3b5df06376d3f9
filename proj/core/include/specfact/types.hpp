#pragma once

#include <complex>
#include <Eigen/Dense>

namespace specfact {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Entrywise max-abs norm of a constant matrix.
inline double supnorm(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double supnorm(const ComplexVector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

} // namespace specfact

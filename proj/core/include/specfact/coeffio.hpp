#pragma once

#include <string>

#include "specfact/laurent.hpp"
#include "specfact/msf.hpp"

namespace specfact {

/// UTF-8 JSON coefficient files, format tag "specfact-coeffs/1": explicit
/// (re, im) pairs per entry, one rows x cols array per index in [lo, hi].
/// Round trips are bit-exact for finite values.

std::string coeffs_to_json(const LaurentPolyMatrix& p);
LaurentPolyMatrix coeffs_from_json(const std::string& text);

void save_coeffs(const std::string& path, const LaurentPolyMatrix& p);
LaurentPolyMatrix load_coeffs(const std::string& path);

/// Density loader: enforces the Hermitian symmetry check at tolerance
/// `hermTol` (relative); SchemaError on violation.
LaurentPolyMatrix load_density(const std::string& path, double hermTol = 1e-8);

/// Per-run diagnostics sidecar (err, algorithm, warnings, per-step records).
std::string diagnostics_to_json(const FactorResult& result);
void save_diagnostics(const std::string& path, const FactorResult& result);

} // namespace specfact

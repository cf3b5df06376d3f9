#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specfact/laurent.hpp"
#include "specfact/msf.hpp"

namespace specfact {

/// SplitMix64: state advances by 0x9E3779B97F4A7C15, output is the
/// finalized mix (Steele-Lea-Flood constants). Fixed here so seeds are
/// portable across platforms and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [-1, 1): 53-bit mantissa mapped affinely.
    double next_symmetric() {
        return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
    }

private:
    std::uint64_t state_;
};

struct MatrixFamilySpec {
    int r = 1;
    int n = 0;
    std::uint64_t seed = 0;
    double shift = 0.0;   ///< added as shift * I to the density
};

/// S = A(t) A*(t) + shift I with A_k drawn entrywise uniform on [-1, 1]
/// (draw order: k = 0..n outer, then row-major within each coefficient).
LaurentPolyMatrix random_spd(const MatrixFamilySpec& spec);

struct Fixture {
    std::string name;
    LaurentPolyMatrix S;
    std::optional<LaurentPolyMatrix> knownFactor;   ///< exact factor when available
    std::optional<LaurentPoly> detReference;        ///< closed-form determinant
    std::string notes;
};

/// Golden inputs: "ieee0" (2x2, determinant with double boundary zeros,
/// factor known exactly) and "sa4" (2x2 degree 3, the multiwavelet matrix
/// with fourth-order boundary zeros). UnknownFixtureError otherwise.
Fixture fixture(const std::string& name);

/// Coefficient sup-norm of S - Splus Splus* over the union of both windows,
/// with the product formed by exact convolution.
double factorization_error(const LaurentPolyMatrix& s, const LaurentPolyMatrix& splus);

enum class Algo { Jle1, Jle2, Jle3, Wilson };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& name);

struct RunSpec {
    Algo algorithm = Algo::Jle1;
    std::optional<MatrixFamilySpec> family;   ///< exactly one of family/fixtureName
    std::optional<std::string> fixtureName;
    AlgoParams params;
};

struct BenchRow {
    std::string alg;
    int r = 0;
    int n = 0;
    std::uint64_t seed = 0;
    std::string params;     ///< compact snapshot of the tuning that ran
    double time_s = 0.0;
    double err = -1.0;
    std::string status;     ///< "ok" or the failure message
};

/// Runs every listed spec on identically generated data; failed rows carry
/// their message in `status` and never abort the sweep.
std::vector<BenchRow> run_bench(const std::vector<RunSpec>& config);

/// JSON-lines serialization of a sweep report.
std::string bench_report_jsonl(const std::vector<BenchRow>& rows);

} // namespace specfact

#include "specfact/coeffio.hpp"

#include <fstream>

#include <json.hpp>

#include "specfact/errors.hpp"

namespace specfact {

namespace {

using nlohmann::json;

constexpr const char* kFormatTag = "specfact-coeffs/1";

} // namespace

std::string coeffs_to_json(const LaurentPolyMatrix& p) {
    json j;
    j["format"] = kFormatTag;
    j["rows"] = p.rows;
    j["cols"] = p.cols;
    j["lo"] = p.lo;
    j["hi"] = p.hi();
    json coeffs = json::array();
    for (int k = p.lo; k <= p.hi(); ++k) {
        json mat = json::array();
        for (int i = 0; i < p.rows; ++i) {
            json row = json::array();
            for (int jj = 0; jj < p.cols; ++jj) {
                const cplx v = p.at(k)(i, jj);
                row.push_back(json::array({v.real(), v.imag()}));
            }
            mat.push_back(std::move(row));
        }
        coeffs.push_back(std::move(mat));
    }
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

LaurentPolyMatrix coeffs_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("coefficient file: invalid JSON: ") + e.what());
    }
    try {
        if (!j.contains("format") || j.at("format").get<std::string>() != kFormatTag)
            throw SchemaError("coefficient file: missing or unsupported format tag (want specfact-coeffs/1)");
        const int rows = j.at("rows").get<int>();
        const int cols = j.at("cols").get<int>();
        const int lo = j.at("lo").get<int>();
        const int hi = j.at("hi").get<int>();
        if (rows < 1 || cols < 1 || lo > hi)
            throw SchemaError("coefficient file: bad shape fields");
        const json& coeffs = j.at("coeffs");
        if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != hi - lo + 1)
            throw SchemaError("coefficient file: coeffs length must equal hi - lo + 1");

        LaurentPolyMatrix p(rows, cols, lo, hi);
        for (int k = lo; k <= hi; ++k) {
            const json& mat = coeffs.at(static_cast<std::size_t>(k - lo));
            if (!mat.is_array() || static_cast<int>(mat.size()) != rows)
                throw SchemaError("coefficient file: coefficient matrix row count mismatch");
            for (int i = 0; i < rows; ++i) {
                const json& row = mat.at(static_cast<std::size_t>(i));
                if (!row.is_array() || static_cast<int>(row.size()) != cols)
                    throw SchemaError("coefficient file: coefficient matrix column count mismatch");
                for (int jj = 0; jj < cols; ++jj) {
                    const json& pair = row.at(static_cast<std::size_t>(jj));
                    if (!pair.is_array() || pair.size() != 2)
                        throw SchemaError("coefficient file: entries must be [re, im] pairs");
                    p.ref(k)(i, jj) = cplx(pair.at(0).get<double>(), pair.at(1).get<double>());
                }
            }
        }
        return p;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("coefficient file: ") + e.what());
    }
}

void save_coeffs(const std::string& path, const LaurentPolyMatrix& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << coeffs_to_json(p) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

LaurentPolyMatrix load_coeffs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return coeffs_from_json(text);
}

LaurentPolyMatrix load_density(const std::string& path, double hermTol) {
    LaurentPolyMatrix p = load_coeffs(path);
    if (p.rows != p.cols) throw SchemaError("density file: matrix must be square");
    const double scale = std::max(supnorm(p), 1e-300);
    if (!is_hermitian(p, hermTol * scale))
        throw SchemaError("density file: Hermitian symmetry check failed");
    return p;
}

std::string diagnostics_to_json(const FactorResult& result) {
    json j;
    j["algorithm"] = result.algorithm;
    j["err"] = result.err;
    j["total_seconds"] = result.diagnostics.totalSeconds;
    if (result.diagnostics.iterations > 0) j["iterations"] = result.diagnostics.iterations;
    j["warnings"] = result.diagnostics.warnings;
    json steps = json::array();
    for (const StepDiag& s : result.diagnostics.steps) {
        steps.push_back(json{{"m", s.m},
                             {"N", s.N},
                             {"rcond_normalizer", s.rcondNormalizer},
                             {"unitary_defect", s.unitaryDefect},
                             {"det_defect", s.detDefect},
                             {"truncated_mass", s.truncatedMass},
                             {"singular_node_fallbacks", s.singularNodeFallbacks},
                             {"seconds", s.seconds}});
    }
    j["steps"] = std::move(steps);
    return j.dump(2);
}

void save_diagnostics(const std::string& path, const FactorResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << diagnostics_to_json(result) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

} // namespace specfact

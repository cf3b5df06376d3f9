// specfact: spectral factorization of Laurent polynomial matrix densities.
//
// Subcommands:
//   factor  — factorize a density coefficient file, write the causal factor
//   verify  — recompute the reconstruction residual of a (density, factor) pair
//   bench   — run seeded sweeps and emit a JSON-lines report
//
// Exit codes: 0 success, 1 I/O or schema problems, 2 numerical failure.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "specfact/coeffio.hpp"
#include "specfact/errors.hpp"
#include "specfact/harness.hpp"
#include "specfact/msf.hpp"

namespace {

using namespace specfact;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitNumerical = 2;

struct FactorOptions {
    std::string alg;
    std::string input;
    std::string output;
    int N = 0;
    int kappa = 0;
    int iters = 0;
    int scalarIters = 0;
    double shiftCheck = -1.0;
    double hermitianTol = 1e-8;
    double ratio = 0.0;
    std::string detPath = "fft";
    bool fmPower = false;
    bool displacement = false;
};

AlgoParams make_params(const FactorOptions& opt, int r, int n) {
    AlgoParams p;
    if (opt.kappa > 0) p.kappa = opt.kappa;
    if (opt.iters > 0) p.wilsonIters = opt.iters;
    if (opt.scalarIters > 0) p.scalarIters = opt.scalarIters;
    if (opt.ratio > 0.0) p.ratio = opt.ratio;
    if (opt.N > 0)
        for (int m = 2; m <= r; ++m) p.N_schedule[m] = opt.N;
    p.detPath = (opt.detPath == "direct") ? DetMethod::Direct : DetMethod::Fft;
    p.fmViaPower = opt.fmPower;
    p.useDisplacementSolver = opt.displacement;
    p.hermitianTol = opt.hermitianTol;
    (void)n;
    return p;
}

/// Minimum eigenvalue of S(t_l) over a coarse node set; a density that dips
/// below -tol fails the check.
void shift_check(const LaurentPolyMatrix& s, double tol) {
    const int nodes = 64;
    for (int l = 0; l < nodes; ++l) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * l / nodes);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s.eval(t));
        if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < -tol)
            throw SchemaError("density fails the positive semidefiniteness check at node " +
                              std::to_string(l));
    }
}

int run_factor(const FactorOptions& opt) {
    const LaurentPolyMatrix s = load_density(opt.input, opt.hermitianTol);
    if (opt.shiftCheck >= 0.0) shift_check(s, opt.shiftCheck);

    const AlgoParams params = make_params(opt, s.rows, std::max(s.hi(), -s.lo));
    const Algo alg = algo_from_name(opt.alg);

    FactorResult result;
    switch (alg) {
        case Algo::Jle1: result = jle1(s, params); break;
        case Algo::Jle2: result = jle2(s, params); break;
        case Algo::Jle3: result = jle3(s, params); break;
        case Algo::Wilson: result = wilson(s, params); break;
    }

    save_coeffs(opt.output, result.Splus);
    save_diagnostics(opt.output + ".diag.json", result);
    std::cout.precision(17);
    std::cout << result.err << "\n";
    return kExitOk;
}

int run_verify(const std::string& densityPath, const std::string& factorPath, double tol) {
    const LaurentPolyMatrix s = load_density(densityPath);
    const LaurentPolyMatrix f = load_coeffs(factorPath);
    if (f.rows != s.rows || f.cols != s.cols)
        throw SchemaError("verify: factor dimensions do not match the density");
    if (f.lo != 0) throw SchemaError("verify: factor file must be causal (lo = 0)");
    const double err = factorization_error(s, f);
    std::cout.precision(17);
    std::cout << err << "\n";
    return err <= tol ? kExitOk : kExitNumerical;
}

struct BenchOptions {
    std::string preset;
    std::string output;
    int r = 0;
    int n = 0;
    int seeds = 3;
    double shift = 0.0;
    std::string algs = "jle1";
    int kappa = 0;
    int iters = 0;
    int scalarIters = 0;
};

std::vector<RunSpec> preset_specs(const BenchOptions& opt) {
    std::vector<RunSpec> specs;
    const auto pushFamily = [&](Algo a, int r, int n, double shift, AlgoParams p) {
        for (int seed = 0; seed < opt.seeds; ++seed) {
            RunSpec rs;
            rs.algorithm = a;
            rs.family = MatrixFamilySpec{r, n, static_cast<std::uint64_t>(seed), shift};
            rs.params = p;
            specs.push_back(std::move(rs));
        }
    };

    if (opt.preset == "table1") {
        const int sizes[4][2] = {{4, 30}, {6, 20}, {8, 10}, {10, 5}};
        for (int si = 0; si < 4; ++si) {
            const auto& rn = sizes[si];
            AlgoParams p3;
            pushFamily(Algo::Jle3, rn[0], rn[1], 0.0, p3);
            AlgoParams p1;
            if (si == 0) {
                p1.N_multiplier = 10.0;
                p1.scalarIters = 30;
            } else {
                p1.scalarIters = 20;
            }
            pushFamily(Algo::Jle1, rn[0], rn[1], 0.0, p1);
            AlgoParams pw;
            pw.kappa = (si == 0) ? 12 : 11;
            pw.wilsonIters = (si == 0) ? 30 : 18;
            pushFamily(Algo::Wilson, rn[0], rn[1], 0.0, pw);
        }
    } else if (opt.preset == "table2") {
        AlgoParams p1;
        for (int m = 2; m <= 15; ++m) p1.N_schedule[m] = 100 * m;
        p1.scalarIters = 20;
        pushFamily(Algo::Jle1, 15, 20, 0.0, p1);
        AlgoParams pw;
        pw.kappa = 11;
        pw.wilsonIters = 25;
        pushFamily(Algo::Wilson, 15, 20, 0.0, pw);
    } else if (opt.preset == "table3-desk" || opt.preset == "table4-desk") {
        const double shift = (opt.preset == "table4-desk") ? 1.0 : 0.0;
        AlgoParams p2;
        pushFamily(Algo::Jle2, 20, 10, shift, p2);
        AlgoParams pw;
        pw.kappa = 11;
        pw.wilsonIters = 20;
        pushFamily(Algo::Wilson, 20, 10, shift, pw);
    } else if (opt.preset == "singular") {
        RunSpec ieee;
        ieee.algorithm = Algo::Jle1;
        ieee.fixtureName = "ieee0";
        ieee.params.scalarIters = 45;
        ieee.params.scalarGridK = 8192;
        ieee.params.detPath = DetMethod::Direct;
        ieee.params.N_schedule[2] = 100;
        specs.push_back(ieee);

        RunSpec sa4;
        sa4.algorithm = Algo::Jle1;
        sa4.fixtureName = "sa4";
        sa4.params.scalarIters = 60;
        sa4.params.scalarGridK = 2048;
        sa4.params.N_schedule[2] = 100;
        specs.push_back(sa4);
    } else {
        throw InvalidArgumentError("bench: unknown preset '" + opt.preset + "'");
    }
    return specs;
}

std::vector<RunSpec> explicit_specs(const BenchOptions& opt) {
    std::vector<RunSpec> specs;
    std::vector<std::string> names;
    std::string cur;
    for (char c : opt.algs) {
        if (c == ',') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) names.push_back(cur);

    for (const std::string& name : names) {
        AlgoParams p;
        if (opt.kappa > 0) p.kappa = opt.kappa;
        if (opt.iters > 0) p.wilsonIters = opt.iters;
        if (opt.scalarIters > 0) p.scalarIters = opt.scalarIters;
        for (int seed = 0; seed < opt.seeds; ++seed) {
            RunSpec rs;
            rs.algorithm = algo_from_name(name);
            rs.family = MatrixFamilySpec{opt.r, opt.n, static_cast<std::uint64_t>(seed), opt.shift};
            rs.params = p;
            specs.push_back(std::move(rs));
        }
    }
    return specs;
}

int run_bench(const BenchOptions& opt) {
    const std::vector<RunSpec> specs =
        opt.preset.empty() ? explicit_specs(opt) : preset_specs(opt);
    const std::vector<BenchRow> rows = run_bench(specs);

    const std::string report = bench_report_jsonl(rows);
    if (opt.output.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out) throw IoError("cannot open for writing: " + opt.output);
        out << report;
        if (!out) throw IoError("write failed: " + opt.output);
    }
    for (const BenchRow& row : rows)
        if (row.status != "ok")
            std::cerr << "row failed: " << row.alg << " r=" << row.r << " n=" << row.n
                      << " seed=" << row.seed << ": " << row.status << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral factorization of positive definite Laurent polynomial matrices"};
    app.require_subcommand(1);

    FactorOptions fopt;
    CLI::App* factor = app.add_subcommand("factor", "factorize a density coefficient file");
    factor->add_option("--alg", fopt.alg, "algorithm: jle1|jle2|jle3|wilson")->required();
    factor->add_option("--input", fopt.input, "density coefficient file")->required();
    factor->add_option("--output", fopt.output, "factor coefficient file to write")->required();
    factor->add_option("--N", fopt.N, "fixed truncation parameter for every recursion step");
    factor->add_option("--kappa", fopt.kappa, "log2 DFT grid size (jle2/wilson)");
    factor->add_option("--iters", fopt.iters, "matrix Wilson iteration count");
    factor->add_option("--scalar-iters", fopt.scalarIters, "scalar Wilson refinement count");
    factor->add_option("--shift-check", fopt.shiftCheck,
                       "verify the density is PSD on 64 nodes within this tolerance");
    factor->add_option("--hermitian-tol", fopt.hermitianTol, "Hermitian symmetry load tolerance");
    factor->add_option("--ratio", fopt.ratio, "jle2 target N / 2^kappa");
    factor->add_option("--det-path", fopt.detPath, "jle1 determinant route: fft|direct")
        ->check(CLI::IsMember({"fft", "direct"}));
    factor->add_flag("--fm-power", fopt.fmPower, "jle1: derive f_m from the power identity");
    factor->add_flag("--displacement", fopt.displacement,
                     "use the displacement-structure solver in the wavelet step");

    std::string vDensity, vFactor;
    double vTol = 1e-6;
    CLI::App* verify = app.add_subcommand("verify", "recompute a reconstruction residual");
    verify->add_option("--density", vDensity)->required();
    verify->add_option("--factor", vFactor)->required();
    verify->add_option("--tol", vTol, "acceptance tolerance (default 1e-6)");

    BenchOptions bopt;
    CLI::App* bench = app.add_subcommand("bench", "seeded sweeps with a JSON-lines report");
    bench->add_option("--preset", bopt.preset, "table1|table2|table3-desk|table4-desk|singular");
    bench->add_option("--output", bopt.output, "report path (stdout when omitted)");
    bench->add_option("--r", bopt.r, "matrix dimension");
    bench->add_option("--n", bopt.n, "polynomial degree");
    bench->add_option("--seeds", bopt.seeds, "number of seeds (0..seeds-1)");
    bench->add_option("--shift", bopt.shift, "shift * I added to the density");
    bench->add_option("--algs", bopt.algs, "comma-separated algorithm list");
    bench->add_option("--kappa", bopt.kappa);
    bench->add_option("--iters", bopt.iters);
    bench->add_option("--scalar-iters", bopt.scalarIters);

    try {
        app.parse(argc, argv);
        if (factor->parsed()) return run_factor(fopt);
        if (verify->parsed()) return run_verify(vDensity, vFactor, vTol);
        if (bench->parsed()) return run_bench(bopt);
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

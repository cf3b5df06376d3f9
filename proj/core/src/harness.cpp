#include "specfact/harness.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "specfact/errors.hpp"

namespace specfact {

LaurentPolyMatrix random_spd(const MatrixFamilySpec& spec) {
    if (spec.r < 1 || spec.n < 0)
        throw InvalidArgumentError("random_spd: need r >= 1 and n >= 0");
    SplitMix64 rng(spec.seed);

    LaurentPolyMatrix a(spec.r, spec.r, 0, spec.n);
    for (int k = 0; k <= spec.n; ++k)
        for (int i = 0; i < spec.r; ++i)
            for (int j = 0; j < spec.r; ++j)
                a.ref(k)(i, j) = rng.next_symmetric();

    LaurentPolyMatrix s = laurent_mul(a, laurent_adjoint(a));
    if (spec.shift != 0.0)
        s.ref(0) += spec.shift * ComplexMatrix::Identity(spec.r, spec.r);
    return s;
}

Fixture fixture(const std::string& name) {
    if (name == "ieee0") {
        Fixture f;
        f.name = name;
        f.S = LaurentPolyMatrix(2, 2, -1, 1);
        f.S.ref(-1) << 2.0, 11.0, 7.0, 38.0;
        f.S.ref(0) << 6.0, 22.0, 22.0, 84.0;
        f.S.ref(1) << 2.0, 7.0, 11.0, 38.0;

        LaurentPolyMatrix factor(2, 2, 0, 1);
        factor.ref(0) << 2.0, 1.0, 7.0, 3.0;
        factor.ref(1) << 1.0, 0.0, 5.0, 1.0;
        f.knownFactor = factor;

        f.detReference = LaurentPoly(-2, {cplx(-1.0), cplx(0.0), cplx(2.0), cplx(0.0), cplx(-1.0)});
        f.notes = "2x2 density with known factor; its determinant -z^-2 + 2 - z^2 has double zeros at +-1";
        return f;
    }
    if (name == "sa4") {
        const double alpha = 4.0 + std::sqrt(15.0);
        const double alphaBar = 4.0 - std::sqrt(15.0);
        const double c1 = (1.0 + 4.0 * alpha) / 64.0;
        const double c3 = (1.0 - 4.0 * alphaBar) / 64.0;
        const double d1 = alpha / 16.0;
        const double d3 = alphaBar / 16.0;

        Fixture f;
        f.name = name;
        f.S = LaurentPolyMatrix(2, 2, -3, 3);
        f.S.ref(-3) << -c3, d3, -d3, c3;
        f.S.ref(-1) << c1, -d1, d1, -c1;
        f.S.ref(0) << 1.0, 0.0, 0.0, 1.0;
        f.S.ref(1) << c1, d1, -d1, -c1;
        f.S.ref(3) << -c3, -d3, d3, c3;

        // det S = (8 alphaBar - 1)/4096 * z^-6 (z^2-1)^4 (z^2+1)^2
        const double c = (8.0 * alphaBar - 1.0) / 4096.0;
        f.detReference = LaurentPoly(
            -6, {cplx(c), cplx(0.0), cplx(-2.0 * c), cplx(0.0), cplx(-c), cplx(0.0), cplx(4.0 * c),
                 cplx(0.0), cplx(-c), cplx(0.0), cplx(-2.0 * c), cplx(0.0), cplx(c)});
        f.notes = "SA4 multiwavelet density; determinant vanishes to fourth order at +-1 and second order at +-i";
        return f;
    }
    throw UnknownFixtureError("fixture: unknown name '" + name + "' (expected ieee0 or sa4)");
}

double factorization_error(const LaurentPolyMatrix& s, const LaurentPolyMatrix& splus) {
    if (s.rows != splus.rows || s.rows != s.cols)
        throw InvalidArgumentError("factorization_error: dimension mismatch");
    const LaurentPolyMatrix product = laurent_mul(splus, laurent_adjoint(splus));
    return supnorm(sub(s, product));
}

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::Jle1: return "jle1";
        case Algo::Jle2: return "jle2";
        case Algo::Jle3: return "jle3";
        case Algo::Wilson: return "wilson";
    }
    return "unknown";
}

Algo algo_from_name(const std::string& name) {
    if (name == "jle1") return Algo::Jle1;
    if (name == "jle2") return Algo::Jle2;
    if (name == "jle3") return Algo::Jle3;
    if (name == "wilson") return Algo::Wilson;
    throw InvalidArgumentError("unknown algorithm '" + name + "'");
}

namespace {

std::string params_snapshot(const RunSpec& spec) {
    std::ostringstream os;
    switch (spec.algorithm) {
        case Algo::Jle1:
            os << "Nmul=" << spec.params.N_multiplier << " scalarIters=" << spec.params.scalarIters;
            break;
        case Algo::Jle2:
            os << "kappa=" << spec.params.kappa << " ratio=" << spec.params.ratio
               << " scalarIters=" << spec.params.scalarIters;
            break;
        case Algo::Jle3:
            os << "scalarIters=" << spec.params.scalarIters;
            break;
        case Algo::Wilson:
            os << "kappa=" << spec.params.kappa << " iters=" << spec.params.wilsonIters;
            break;
    }
    if (!spec.params.N_schedule.empty()) os << " N=explicit";
    return os.str();
}

FactorResult dispatch(Algo a, const LaurentPolyMatrix& s, const AlgoParams& p) {
    switch (a) {
        case Algo::Jle1: return jle1(s, p);
        case Algo::Jle2: return jle2(s, p);
        case Algo::Jle3: return jle3(s, p);
        case Algo::Wilson: return wilson(s, p);
    }
    throw InvalidArgumentError("run_bench: bad algorithm id");
}

} // namespace

std::vector<BenchRow> run_bench(const std::vector<RunSpec>& config) {
    std::vector<BenchRow> rows;
    rows.reserve(config.size());
    for (const RunSpec& spec : config) {
        BenchRow row;
        row.alg = algo_name(spec.algorithm);
        row.params = params_snapshot(spec);

        LaurentPolyMatrix s;
        try {
            if (spec.family) {
                s = random_spd(*spec.family);
                row.r = spec.family->r;
                row.n = spec.family->n;
                row.seed = spec.family->seed;
            } else if (spec.fixtureName) {
                const Fixture f = fixture(*spec.fixtureName);
                s = f.S;
                row.r = s.rows;
                row.n = s.hi();
                row.params += " fixture=" + f.name;
            } else {
                throw InvalidArgumentError("run_bench: spec names neither a family nor a fixture");
            }

            const auto start = std::chrono::steady_clock::now();
            const FactorResult res = dispatch(spec.algorithm, s, spec.params);
            row.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            row.err = res.err;
            row.status = "ok";
        } catch (const std::exception& e) {
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string bench_report_jsonl(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    for (const BenchRow& r : rows) {
        std::string status = r.status;
        for (char& ch : status)
            if (ch == '"' || ch == '\\' || ch == '\n') ch = ' ';
        os << "{\"alg\":\"" << r.alg << "\",\"r\":" << r.r << ",\"n\":" << r.n
           << ",\"seed\":" << r.seed << ",\"params\":\"" << r.params << "\",\"time_s\":" << r.time_s
           << ",\"err\":" << r.err << ",\"status\":\"" << status << "\"}\n";
    }
    return os.str();
}

} // namespace specfact

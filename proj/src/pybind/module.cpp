// Python bindings for the main operations: sieving and Mertens sums,
// multiprecision phase reduction, prime sums, the disorder oracles, moment
// and counting statistics, zeta sampling, and the experiment runner.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "disorderlab/dirichlet.hpp"
#include "disorderlab/disorder.hpp"
#include "disorderlab/moments.hpp"
#include "disorderlab/phases.hpp"
#include "disorderlab/primes.hpp"
#include "disorderlab/report.hpp"
#include "disorderlab/rmt.hpp"
#include "disorderlab/runner.hpp"
#include "disorderlab/zeta.hpp"

namespace py = pybind11;
using namespace dlab;

PYBIND11_MODULE(_disorderlab, m) {
    m.doc() = "Numerical experiments on log zeta, prime Dirichlet sums, the total "
              "disorder process, and CUE counting statistics";

    // ------------------------------------------------------------------ primes
    py::class_<PrimeTable>(m, "PrimeTable")
        .def_property_readonly("bound", &PrimeTable::bound)
        .def_property_readonly("primes", &PrimeTable::primes)
        .def_property_readonly("log_precision_bits", &PrimeTable::log_precision_bits)
        .def("__len__", &PrimeTable::size)
        .def("log_float", [](const PrimeTable& t, std::size_t i) {
            return t.log_at(i).to_double();
        });
    m.def("sieve_upto", &sieve_upto, py::arg("bound"),
          py::arg("log_precision_bits") = kDefaultLogBits,
          py::arg("memory_cap") = kDefaultSieveCap);
    m.def("mertens_sum", &mertens_sum, py::arg("table"), py::arg("x"));

    // ------------------------------------------------------------------ phases
    py::class_<PhaseContext>(m, "PhaseContext")
        .def_readonly("N", &PhaseContext::N)
        .def_readonly("lambda_", &PhaseContext::lambda)
        .def_readonly("exponent", &PhaseContext::exponent)
        .def_readonly("precision_bits", &PhaseContext::precision_bits)
        .def_property_readonly("big_scale_float",
                               [](const PhaseContext& c) { return c.big_scale.to_double(); });
    m.def("make_phase_context", &make_phase_context, py::arg("N"), py::arg("lambda_"),
          py::arg("guard_bits") = kDefaultGuardBits,
          py::arg("exponent_cap") = kDefaultExponentCap);
    m.def(
        "reduce_phase",
        [](const PhaseContext& ctx, double u, const PrimeTable& table, std::size_t index) {
            return reduce_phase(ctx, u, table.log_at(index));
        },
        py::arg("ctx"), py::arg("u"), py::arg("table"), py::arg("prime_index"),
        "Reduce u * e^(N^lambda) * log(p_index) modulo 2*pi");

    // ---------------------------------------------------------------- dirichlet
    py::class_<PrimeSumSpec>(m, "PrimeSumSpec")
        .def(py::init([](double N, double lambda, int k, int n) {
                 return PrimeSumSpec{N, lambda, k, n};
             }),
             py::arg("N"), py::arg("lambda_"), py::arg("k"), py::arg("n"))
        .def_readonly("N", &PrimeSumSpec::N)
        .def_readonly("lambda_", &PrimeSumSpec::lambda)
        .def_readonly("k", &PrimeSumSpec::k)
        .def_readonly("n", &PrimeSumSpec::n)
        .def_property_readonly("cutoff", &PrimeSumSpec::cutoff)
        .def_property_readonly("normalization", &PrimeSumSpec::normalization);
    m.def("prime_sum_P", &prime_sum_P, py::arg("spec"), py::arg("ctx"), py::arg("table"),
          py::arg("u"));
    m.def(
        "prime_sum_grid",
        [](const PrimeSumSpec& spec, const PhaseContext& ctx, const PrimeTable& table,
           const std::vector<double>& grid, int threads) {
            return prime_sum_grid(spec, ctx, table, grid, threads);
        },
        py::arg("spec"), py::arg("ctx"), py::arg("table"), py::arg("u_grid"),
        py::arg("threads") = 1);
    m.def("midpoint_u_grid", &midpoint_u_grid, py::arg("M"));

    // ----------------------------------------------------------------- disorder
    m.def("gaussian_mixed_moment", &gaussian_mixed_moment, py::arg("m"), py::arg("n"),
          py::arg("sigma2"));
    py::class_<MomentSpec>(m, "MomentSpec")
        .def(py::init([](std::vector<double> lambdas, std::vector<int> mm, std::vector<int> nn) {
                 MomentSpec s{std::move(lambdas), std::move(mm), std::move(nn)};
                 validate_moment_spec(s);
                 return s;
             }),
             py::arg("lambdas"), py::arg("m"), py::arg("n"))
        .def_readonly("lambdas", &MomentSpec::lambdas)
        .def_readonly("m", &MomentSpec::m)
        .def_readonly("n", &MomentSpec::n);
    m.def("target_tensor", &target_tensor, py::arg("spec"));
    py::class_<Rect>(m, "Rect")
        .def(py::init([](double re_lo, double re_hi, double im_lo, double im_hi) {
                 return Rect{re_lo, re_hi, im_lo, im_hi};
             }),
             py::arg("re_lo"), py::arg("re_hi"), py::arg("im_lo"), py::arg("im_hi"))
        .def_static("quadrant", &Rect::quadrant_neg)
        .def_static("full_plane", &Rect::full_plane)
        .def("contains", &Rect::contains);
    m.def(
        "rect_prob",
        [](double lambda, const Rect& r) { return rect_prob(DisorderParams{lambda}, r); },
        py::arg("lambda_"), py::arg("rect"));
    m.def(
        "sample_disorder",
        [](const std::vector<double>& lambdas, std::size_t count, std::uint64_t seed) {
            const DisorderSample s = sample_disorder(lambdas, count, seed);
            std::vector<std::vector<std::complex<double>>> rows(count);
            for (std::size_t i = 0; i < count; ++i) {
                rows[i].resize(lambdas.size());
                for (std::size_t j = 0; j < lambdas.size(); ++j) rows[i][j] = s.at(i, j);
            }
            return rows;
        },
        py::arg("lambdas"), py::arg("count"), py::arg("seed"));
    m.def(
        "mgf_check",
        [](std::complex<double> alpha, std::complex<double> beta, double sigma2,
           std::size_t count, std::uint64_t seed) {
            const MgfCheck c = mgf_check(alpha, beta, sigma2, count, seed);
            return py::make_tuple(c.empirical, c.exact, c.std_error);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("sigma2"), py::arg("count"), py::arg("seed"));

    // ------------------------------------------------------------------ moments
    py::class_<DiagonalResult>(m, "DiagonalResult")
        .def_readonly("cutoff", &DiagonalResult::cutoff)
        .def_readonly("n", &DiagonalResult::n)
        .def_readonly("exact", &DiagonalResult::exact)
        .def_readonly("asymptotic", &DiagonalResult::asymptotic)
        .def_readonly("ratio", &DiagonalResult::ratio);
    m.def("diagonal_exact", &diagonal_exact, py::arg("table"), py::arg("cutoff"), py::arg("n"));
    m.def(
        "diagonal_asymptotic",
        [](double lambda, double N, int n, int k) {
            const DiagonalAsymptotic d = diagonal_asymptotic(lambda, N, n, k);
            return py::make_tuple(d.leading, d.finite_N, d.degenerate);
        },
        py::arg("lambda_"), py::arg("N"), py::arg("n"), py::arg("k"));
    m.def(
        "offdiag_bound_check",
        [](std::uint64_t max_int) {
            const OffdiagCheck c = offdiag_bound_check(max_int);
            return py::make_tuple(c.holds, c.worst_m, c.worst_n, c.worst_slack);
        },
        py::arg("max_int"));
    m.def(
        "indicator_prob",
        [](const std::vector<std::vector<std::complex<double>>>& seqs,
           const std::vector<Rect>& rects) {
            const IndicatorEstimate e = indicator_prob(seqs, rects);
            return py::make_tuple(e.frequency, e.std_error);
        },
        py::arg("samples"), py::arg("rects"));

    // --------------------------------------------------------------------- zeta
    m.def("rs_theta", &rs_theta, py::arg("t"));
    m.def("hardy_Z", &hardy_Z, py::arg("t"), py::arg("height_cap") = kDefaultHeightCap);
    m.def("zeta_em", &zeta_em, py::arg("t"));
    py::class_<ZeroScan>(m, "ZeroScan")
        .def_readonly("t_max", &ZeroScan::t_max)
        .def_readonly("grid_density", &ZeroScan::grid_density)
        .def_readonly("zeros", &ZeroScan::zeros)
        .def_readonly("warnings", &ZeroScan::warnings)
        .def("count_upto", &ZeroScan::count_upto)
        .def("s_value", &ZeroScan::s_value);
    m.def("zero_count_scan", &zero_count_scan, py::arg("t_max"), py::arg("grid_density") = 4.0);
    m.def(
        "log_zeta_det",
        [](double t, const ZeroScan& scan) { return log_zeta_det(t, scan).log_zeta; },
        py::arg("t"), py::arg("scan"));
    m.def("sample_L", &sample_L, py::arg("N"), py::arg("lambda_"), py::arg("u"), py::arg("scan"));

    // ---------------------------------------------------------------------- rmt
    py::class_<EigenangleSample>(m, "EigenangleSample")
        .def_readonly("N", &EigenangleSample::N)
        .def_readonly("angles", &EigenangleSample::angles)
        .def_readonly("seed", &EigenangleSample::seed)
        .def_readonly("burn_in_sweeps", &EigenangleSample::burn_in_sweeps)
        .def_readonly("thinning", &EigenangleSample::thinning)
        .def_readonly("acceptance_rate", &EigenangleSample::acceptance_rate);
    py::enum_<CueSampler>(m, "CueSampler")
        .value("metropolis", CueSampler::metropolis)
        .value("rejection", CueSampler::rejection);
    m.def("sample_cue", &sample_cue, py::arg("N"), py::arg("count"), py::arg("seed"),
          py::arg("sampler") = CueSampler::metropolis);
    m.def("log_char_poly", &log_char_poly, py::arg("sample"), py::arg("theta"));
    m.def(
        "counting_stat",
        [](const EigenangleSample& s, double a, double b) {
            const CountingStat c = counting_stat(s, a, b);
            return py::make_tuple(c.raw_count, c.normalized);
        },
        py::arg("sample"), py::arg("s"), py::arg("t"));
    m.def("dpp_count_variance", &dpp_count_variance, py::arg("N"), py::arg("s"), py::arg("t"),
          py::arg("resolution") = 0);

    // ------------------------------------------------------------------- runner
    m.def(
        "run_experiment",
        [](const std::string& name, const std::map<std::string, std::string>& params,
           std::uint64_t seed, int threads) {
            RunConfig cfg;
            cfg.experiment = name;
            cfg.parameters = params;
            cfg.seed = seed;
            cfg.threads = threads;
            const ExperimentReport rep = run_experiment(cfg);
            py::dict out;
            out["experiment"] = rep.experiment;
            out["seed"] = rep.seed;
            out["all_pass"] = rep.all_pass();
            py::list recs;
            for (const auto& r : rep.records) {
                py::dict d;
                d["label"] = r.label;
                d["estimate"] = r.estimate;
                d["std_error"] = r.std_error;
                d["target"] = r.target;
                d["z_score"] = r.z_score;
                d["pass"] = r.pass;
                recs.append(d);
            }
            out["records"] = recs;
            out["warnings"] = rep.integrity_warnings;
            out["json"] = emit_report(rep, ReportFormat::json);
            return out;
        },
        py::arg("experiment"), py::arg("parameters") = std::map<std::string, std::string>{},
        py::arg("seed") = 20061201, py::arg("threads") = 1);
    m.def("experiment_registry", &experiment_registry);

    m.attr("__version__") = "0.1.0";
}

#include <cmath>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tritime/errors.hpp"
#include "tritime/fieldcheck.hpp"
#include "tritime/kinematics.hpp"
#include "tritime/report.hpp"
#include "tritime/spin.hpp"
#include "tritime/suite.hpp"

namespace py = pybind11;
namespace kin = tritime::kinematics;
namespace sp = tritime::spin;

namespace {

std::string verify_json(std::uint64_t seed, int states, std::uint64_t n_samples, int slit_configs, int causality_pairs,
                        int threads) {
    tritime::suite::VerifyOptions o;
    o.seed = seed;
    o.states = states;
    o.measure_samples = n_samples;
    o.slit_configs = slit_configs;
    o.causality_pairs = causality_pairs;
    o.threads = threads;
    py::gil_scoped_release release;
    return tritime::report::to_json(tritime::suite::run_verify(o));
}

py::dict quantize(int n, double r4, double r5, double kappa, double hbar) {
    auto q = tritime::fieldcheck::quantize(n, r4, r5, kappa, hbar);
    py::dict d;
    d["n"] = n;
    d["m0"] = q.m0;
    d["e"] = q.e;
    d["eigenvalue"] = q.eigen_expr.str();
    bool ok = true;
    for (const auto& r : q.reports) ok = ok && r.verdict;
    d["verdict"] = ok;
    return d;
}

py::dict measure(const std::string& profile, std::uint64_t n, std::uint64_t seed, int bins, double lo, double hi,
                 int threads) {
    kin::Box box{lo, hi, bins};
    kin::MeasurementResult m;
    {
        auto p = kin::Profile::named(profile);
        py::gil_scoped_release release;
        m = kin::measure(p, box, n, seed, threads);
    }
    py::dict d;
    d["bin_centers"] = m.bin_centers;
    d["counts"] = m.counts;
    d["empirical"] = m.empirical;
    d["target"] = m.target;
    d["within_bound_fraction"] = m.within_bound_fraction();
    d["bound_met"] = m.bound_met();
    return d;
}

py::dict double_slit(double d_sep, double L, double lambda, std::uint64_t n, std::uint64_t seed, int bins,
                     const std::string& model, const std::string& slits, int threads) {
    kin::DoubleSlitConfig c;
    c.d = d_sep;
    c.L = L;
    c.lambda = lambda;
    c.N = n;
    c.seed = seed;
    c.bins = bins;
    if (model == "paraxial") c.model = kin::PathModel::Paraxial;
    else if (model != "exact") throw tritime::ConfigError("model must be exact or paraxial");
    if (slits == "upper") c.open = {true, false};
    else if (slits == "lower") c.open = {false, true};
    else if (slits != "both") throw tritime::ConfigError("slits must be both, upper or lower");
    kin::InterferenceResult r;
    {
        py::gil_scoped_release release;
        r = kin::double_slit(c, threads);
    }
    py::dict out;
    out["y"] = r.y;
    out["counts"] = r.counts;
    out["intensity"] = r.intensity;
    out["expected"] = r.expected;
    out["spacing"] = r.spacing;
    out["maxima"] = kin::fringe_maxima(r);
    out["fringe_deviation"] = slits == "both" ? kin::fringe_deviation(r) : NAN;
    out["visibility"] = kin::visibility(r);
    return out;
}

py::dict hopf(double tau, double sigma, double phi) {
    auto p = sp::hopf(tau, sigma, phi);
    py::dict d;
    d["z1"] = p.z1;
    d["z2"] = p.z2;
    d["n"] = p.n;
    d["x"] = p.x();
    d["sn_residual"] = sp::sn_identity(p);
    return d;
}

py::dict g_factor(double r, double v, const std::string& area) {
    sp::Area a = area == "disk" ? sp::Area::Disk : sp::Area::Hemisphere;
    if (area != "disk" && area != "hemisphere") throw tritime::ConfigError("area must be hemisphere or disk");
    auto g = sp::g_factor(r, v, a);
    py::dict d;
    d["g"] = g.g.str();
    d["mu"] = g.mu.str();
    d["exact"] = g.exact;
    d["g_value"] = g.g_value;
    d["mu_value"] = g.mu_value;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-time verification engine and simulators";

    auto base = py::register_exception<tritime::Error>(m, "Error");
    py::register_exception<tritime::DomainError>(m, "DomainError", base.ptr());
    py::register_exception<tritime::GeometryError>(m, "GeometryError", base.ptr());
    py::register_exception<tritime::EmptyBox>(m, "EmptyBox", base.ptr());
    py::register_exception<tritime::ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<tritime::UnsupportedJ>(m, "UnsupportedJ", base.ptr());

    m.def("verify_json", &verify_json, py::arg("seed") = 1, py::arg("states") = 50, py::arg("n_samples") = 1000000,
          py::arg("slit_configs") = 20, py::arg("causality_pairs") = 10000, py::arg("threads") = 0,
          "Run the claim suite and return the JSON report text.");
    m.def("schema", &tritime::report::schema_text, "JSON schema of the report.");
    m.def("quantize", &quantize, py::arg("n"), py::arg("r4") = 1.0, py::arg("r5") = 1.0, py::arg("kappa") = 1.0,
          py::arg("hbar") = 1.0);
    m.def("measure", &measure, py::arg("profile") = "gaussian", py::arg("n") = 1000000, py::arg("seed") = 1,
          py::arg("bins") = 64, py::arg("lo") = -2.0, py::arg("hi") = 2.0, py::arg("threads") = 0);
    m.def("double_slit", &double_slit, py::arg("d") = 1.0, py::arg("L") = 100.0, py::arg("wavelength") = 0.05,
          py::arg("n") = 200000, py::arg("seed") = 1, py::arg("bins") = 700, py::arg("model") = "exact",
          py::arg("slits") = "both", py::arg("threads") = 0);
    m.def("two_path_probability",
          [](double d, double L, double lambda, double y, const std::string& model) {
              kin::DoubleSlitConfig c;
              c.d = d;
              c.L = L;
              c.lambda = lambda;
              c.model = model == "paraxial" ? kin::PathModel::Paraxial : kin::PathModel::Exact;
              return kin::two_path_probability(c, y);
          },
          py::arg("d"), py::arg("L"), py::arg("wavelength"), py::arg("y"), py::arg("model") = "exact");
    m.def("hopf", &hopf, py::arg("tau"), py::arg("sigma"), py::arg("phi"));
    m.def("g_factor", &g_factor, py::arg("r") = 1.0, py::arg("v") = 0.5, py::arg("area") = "hemisphere");
    m.def("rotation_eigenvalue",
          [](double j, double mp, double mm) { return sp::rotation_eigenvalue(j, mp, mm).euler; }, py::arg("j"),
          py::arg("m_prime"), py::arg("m"));
}

// tritime command-line driver.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tritime/binding.hpp"
#include "tritime/errors.hpp"
#include "tritime/fieldcheck.hpp"
#include "tritime/io.hpp"
#include "tritime/kinematics.hpp"
#include "tritime/report.hpp"
#include "tritime/spin.hpp"
#include "tritime/suite.hpp"

namespace {

namespace kin = tritime::kinematics;
namespace io = tritime::io;
using tritime::io::format_double;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerdict = 2;
constexpr double kPi = std::numbers::pi;

const char* kSynopsis =
    "usage: tritime <command> [options]\n"
    "  verify                  run every claim check and print the JSON report\n"
    "  simulate measure        detection statistics against R^2\n"
    "  simulate double-slit    per-electron interference pattern\n"
    "  simulate worldlines     three-time trajectory samples and constraint checks\n"
    "  spin                    Hopf map samples, S.n identity, g factor\n"
    "  quantize                mass and charge table\n"
    "common options: --seed N, --out DIR, --config FILE, --threads N\n"
    "run 'tritime <command> --help' for the options of a command\n";

struct Output {
    std::string dir;

    bool to_files() const { return !dir.empty(); }
    void write(const std::string& name, const std::string& text) const {
        std::filesystem::create_directories(dir);
        io::write_text((std::filesystem::path(dir) / name).string(), text);
    }
};

/// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tritime::ConfigError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        s.erase(0, s.find_first_not_of(ws));
        s.erase(s.find_last_not_of(ws) + 1);
        return s;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw tritime::ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

/// Inserts config entries after the command words unless the flag is already on the command line.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
    std::string config;
    std::size_t words = 0;
    while (words < args.size() && args[words].rfind("-", 0) != 0) ++words;
    std::set<std::string> given;
    for (std::size_t i = words; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a.rfind("--", 0) != 0) continue;
        std::string key = a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2);
        given.insert(key);
        if (key == "config") {
            if (auto eq = a.find('='); eq != std::string::npos) config = a.substr(eq + 1);
            else if (i + 1 < args.size()) config = args[i + 1];
        }
    }
    if (config.empty()) return args;
    std::vector<std::string> out(args.begin(), args.begin() + static_cast<long>(words));
    for (const auto& [k, v] : read_config(config))
        if (!given.count(k)) out.push_back("--" + k + "=" + v);
    out.insert(out.end(), args.begin() + static_cast<long>(words), args.end());
    return out;
}

io::CsvTable csv(std::vector<std::string> header) { return io::CsvTable{std::move(header), {}}; }

void emit(const Output& out, const std::string& stem, const io::CsvTable& table, const io::Chart* chart) {
    if (out.to_files()) {
        out.write(stem + ".csv", table.str());
        if (chart) out.write(stem + ".svg", io::svg(*chart));
    } else {
        std::cout << table.str();
    }
}

// ---------------------------------------------------------------- commands

struct VerifyArgs {
    tritime::suite::VerifyOptions opts;
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    auto report = tritime::suite::run_verify(a.opts);
    std::string json = tritime::report::to_json(report);
    if (!a.out.empty()) Output{a.out}.write("report.json", json);
    std::cout << json;
    std::size_t failed = 0;
    for (const auto& c : report.claims) failed += c.verdict ? 0 : 1;
    std::cerr << report.claims.size() - failed << "/" << report.claims.size() << " claims hold\n";
    return failed ? kVerdict : kOk;
}

struct MeasureArgs {
    std::string profile = "gaussian";
    std::uint64_t n = 1000000;
    std::uint64_t seed = 1;
    kin::Box box;
    int threads = 0;
    std::string out;
};

int run_measure(const MeasureArgs& a) {
    auto m = kin::measure(kin::Profile::named(a.profile), a.box, a.n, a.seed, a.threads);
    auto t = csv({"bin_center", "count", "empirical", "target", "bound"});
    io::Series emp{"empirical", {}, "#1f77b4", true};
    io::Series tgt{"R^2 target", {}, "#d62728", false};
    for (std::size_t b = 0; b < m.counts.size(); ++b) {
        double p = m.target[b];
        double bound = 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(m.N));
        t.rows.push_back({m.bin_centers[b], static_cast<double>(m.counts[b]), m.empirical[b], p, bound});
        emp.points.emplace_back(m.bin_centers[b], m.empirical[b]);
        tgt.points.emplace_back(m.bin_centers[b], p);
    }
    io::Chart chart{"Detection frequencies, " + a.profile + " profile", "x", "fraction per bin", {tgt, emp}};
    emit(Output{a.out}, "measure", t, &chart);
    std::cerr << "bins within 4 sigma: " << format_double(100.0 * m.within_bound_fraction()) << "%\n";
    return m.bound_met() ? kOk : kVerdict;
}

struct SlitArgs {
    kin::DoubleSlitConfig c;
    std::string model = "exact";
    std::string slits = "both";
    int threads = 0;
    std::string out;
};

int run_double_slit(SlitArgs a) {
    if (a.model == "paraxial") a.c.model = kin::PathModel::Paraxial;
    if (a.slits == "upper") a.c.open = {true, false};
    if (a.slits == "lower") a.c.open = {false, true};
    auto r = kin::double_slit(a.c, a.threads);
    auto t = csv({"y", "count", "intensity", "expected"});
    io::Series sim{"simulated", {}, "#1f77b4", false};
    io::Series th{"two-path probability", {}, "#d62728", false};
    double peak = 0.0;
    for (double e : r.expected) peak = std::max(peak, e);
    for (std::size_t b = 0; b < r.y.size(); ++b) {
        t.rows.push_back({r.y[b], static_cast<double>(r.counts[b]), r.intensity[b], r.expected[b]});
        sim.points.emplace_back(r.y[b], r.intensity[b]);
        th.points.emplace_back(r.y[b], peak > 0 ? r.expected[b] / peak : 0.0);
    }
    io::Chart chart{"Double slit, " + a.slits + " open", "y", "intensity", {th, sim}};
    emit(Output{a.out}, "double_slit", t, &chart);
    if (a.slits != "both") {
        double v = kin::visibility(r);
        std::cerr << "visibility " << format_double(v) << "\n";
        return v < 0.15 ? kOk : kVerdict;
    }
    double dev = kin::fringe_deviation(r);
    std::cerr << "fringe spacing " << format_double(r.spacing) << ", max deviation " << format_double(dev) << "\n";
    return dev <= 0.02 ? kOk : kVerdict;
}

struct WorldlineArgs {
    double m0 = 1.0;
    std::vector<double> p{0.3, 0.0, 0.4};
    double alpha = 0.5;
    double tau_max = 20.0;
    int samples = 2000;
    std::uint64_t seed = 1;
    std::string units = "natural";
    double hbar = 1.0;
    double c = 1.0;
    std::string out;
};

int run_worldlines(const WorldlineArgs& a) {
    if (a.p.size() != 3) throw tritime::ConfigError("--p takes three components");
    if (a.samples < 2) throw tritime::ConfigError("--samples must be at least 2");
    auto state = tritime::catalog::ParticleState::on_shell(a.m0, a.p[0], a.p[1], a.p[2]);
    kin::WorldlineOptions o;
    o.reality = true;
    o.alpha = {a.alpha, 0.0};
    auto ws = kin::build_worldlines(state, o);
    auto reports = kin::check_constraints(ws, a.seed);

    auto t = csv({"tau", "sigma", "phi", "x0", "x1", "x2", "x3", "x4", "im_x5", "t", "x_parallel"});
    std::vector<kin::ThreeTimePoint> pts;
    for (int k = 0; k < a.samples; ++k) {
        double tau = a.tau_max * k / (a.samples - 1);
        pts.push_back({tau, tau, tau});
    }
    auto proj = kin::project_tx(ws, pts);
    io::Series total{"total trajectory", {}, "#1f77b4", false};
    io::Series straight{"tau worldline", {}, "#7f7f7f", false};
    double pm = std::sqrt(a.p[0] * a.p[0] + a.p[1] * a.p[1] + a.p[2] * a.p[2]);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        auto x = ws.position(pts[k]);
        t.rows.push_back({pts[k].tau, pts[k].normalized().sigma, pts[k].normalized().phi, x[0].real(), x[1].real(),
                          x[2].real(), x[3].real(), x[4].real(), x[5].imag(), proj[k].second, proj[k].first});
        total.points.emplace_back(proj[k].first, proj[k].second);
        straight.points.emplace_back(pm / a.m0 * pts[k].tau, state.p[0] / a.m0 * pts[k].tau);
    }
    io::Chart chart{"Worldlines projected on the t-x plane", "x along p", "t", {straight, total}};
    chart.equal_aspect = true;
    emit(Output{a.out}, "worldlines", t, &chart);

    auto db = kin::de_broglie(a.m0, state.p[0], pm / state.p[0], 2 * kPi * (a.units == "explicit" ? a.hbar : 1.0),
                              a.units == "explicit" ? a.c : 1.0);
    std::cerr << "de Broglie wavelength " << format_double(db.wavelength) << ", phase velocity c^2/u "
              << format_double(db.phase_velocity_ratio) << "\n";
    bool ok = true;
    for (const auto& r : reports) {
        std::cerr << (r.verdict ? "holds " : "fails ") << r.id << " [" << r.convention << "]\n";
        ok = ok && r.verdict;
    }
    return ok ? kOk : kVerdict;
}

struct SpinArgs {
    int samples = 1000;
    std::uint64_t seed = 1;
    double r = 1.0;
    double v = 0.5;
    std::string units = "natural";
    double e = 1.0, c = 1.0, me = 1.0;
    std::string out;
};

int run_spin(const SpinArgs& a) {
    namespace sp = tritime::spin;
    if (a.samples < 1) throw tritime::ConfigError("--samples must be positive");
    auto t = csv({"tau", "sigma", "phi", "z1_re", "z1_im", "z2_re", "z2_im", "n1", "n2", "n3", "sn_residual"});
    io::Series north{"n3 >= 0", {}, "#1f77b4", true};
    io::Series south{"n3 < 0", {}, "#ff7f0e", true};
    for (int k = 0; k < a.samples; ++k) {
        io::Substream rng(a.seed, static_cast<std::uint64_t>(k));
        double tau = 2 * kPi * rng.uniform(), sigma = std::acos(1 - 2 * rng.uniform()), phi = 2 * kPi * rng.uniform();
        auto p = sp::hopf(tau, sigma, phi);
        auto S = sp::su2(tau, sigma, phi);
        t.rows.push_back({tau, sigma, phi, S(0, 0).real(), S(0, 0).imag(), S(1, 0).real(), S(1, 0).imag(), p.n[0],
                          p.n[1], p.n[2], sp::sn_identity(p)});
        (p.n[2] >= 0 ? north : south).points.emplace_back(p.n[0], p.n[1]);
    }
    io::Chart chart{"Time-sphere coverage (n1, n2)", "n1", "n2", {north, south}};
    chart.equal_aspect = true;
    emit(Output{a.out}, "spin", t, &chart);

    auto g = sp::g_factor(a.r, a.v);
    auto disk = sp::g_factor(a.r, a.v, sp::Area::Disk);
    tritime::expr::Binding b;
    bool explicit_units = a.units == "explicit";
    b.set_param("e", explicit_units ? a.e : 1.0)
        .set_param("c", explicit_units ? a.c : 1.0)
        .set_param("m_e", explicit_units ? a.me : 1.0)
        .set_param("pi", kPi)
        .set_param("r", a.r)
        .set_param("v", a.v);
    double mu = tritime::expr::evaluate(g.mu, b).real();
    auto chk = sp::check_su2(static_cast<std::size_t>(a.samples), a.seed);
    std::cerr << "g = " << g.g.str() << " (hemisphere), " << disk.g.str() << " (disk); mu = " << format_double(mu) << "\n";
    std::cerr << "max S.n residual " << format_double(chk.max_sn_column) << ", unitarity " << format_double(chk.max_unitarity)
              << "\n";
    bool ok = g.exact && g.g_value == 2.0 && chk.max_sn_column <= 1e-12 && chk.max_unitarity <= 1e-12 &&
              chk.max_det <= 1e-12;
    return ok ? kOk : kVerdict;
}

struct QuantizeArgs {
    std::vector<int> n{1, 2, 3};
    double r4 = 1.0, r5 = 1.0, kappa = 1.0, hbar = 1.0;
    std::string out;
};

int run_quantize(const QuantizeArgs& a) {
    auto t = csv({"n", "m0", "e", "eigenvalue"});
    bool ok = true;
    for (int n : a.n) {
        auto q = tritime::fieldcheck::quantize(n, a.r4, a.r5, a.kappa, a.hbar);
        tritime::expr::Binding b;
        b.set_param("n", n).set_param("R5", a.r5).set_param("R4", a.r4);
        double ev = tritime::expr::evaluate(q.eigen_expr, b).real();
        t.rows.push_back({static_cast<double>(n), q.m0, q.e, ev});
        for (const auto& r : q.reports) ok = ok && r.verdict;
    }
    emit(Output{a.out}, "quantize", t, nullptr);
    return ok ? kOk : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << kSynopsis;
        return kUsage;
    }
    try {
        args = apply_config(args);
    } catch (const tritime::Error& e) {
        std::cerr << "error: " << e.what() << "\n" << kSynopsis;
        return kUsage;
    }

    CLI::App app{"Three-time verification engine and simulator", "tritime"};
    app.require_subcommand(1);
    std::string config;
    auto common = [&](CLI::App* c, std::uint64_t* seed, int* threads, std::string* out) {
        c->add_option("--config", config, "key=value file; command-line flags take precedence");
        if (seed) c->add_option("--seed", *seed, "random seed")->check(CLI::NonNegativeNumber);
        if (threads) c->add_option("--threads", *threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
        if (out) c->add_option("--out", *out, "output directory");
    };

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run every claim check and print the JSON report");
    common(verify, &va.opts.seed, &va.opts.threads, &va.out);
    verify->add_option("--states", va.opts.states, "random on-shell states per sector")->check(CLI::PositiveNumber);
    verify->add_option("--n-samples", va.opts.measure_samples, "detections per measurement profile")
        ->check(CLI::PositiveNumber);
    verify->add_option("--slit-configs", va.opts.slit_configs, "double-slit configurations")->check(CLI::PositiveNumber);
    verify->add_option("--causality-pairs", va.opts.causality_pairs, "event pairs for the ordering check")
        ->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "stochastic and kinematic simulations");
    simulate->require_subcommand(1);

    MeasureArgs ma;
    auto* measure = simulate->add_subcommand("measure", "detection statistics against R^2");
    common(measure, &ma.seed, &ma.threads, &ma.out);
    measure->add_option("--profile", ma.profile, "amplitude profile")
        ->check(CLI::IsMember({"constant", "gaussian", "two-bump"}));
    measure->add_option("--n-samples", ma.n, "detections")->check(CLI::PositiveNumber);
    measure->add_option("--bins", ma.box.bins, "histogram bins")->check(CLI::PositiveNumber);
    measure->add_option("--lo", ma.box.lo, "box lower edge");
    measure->add_option("--hi", ma.box.hi, "box upper edge");

    SlitArgs sa;
    auto* slit = simulate->add_subcommand("double-slit", "per-electron interference pattern");
    common(slit, &sa.c.seed, &sa.threads, &sa.out);
    slit->add_option("--d", sa.c.d, "slit separation");
    slit->add_option("--L", sa.c.L, "screen distance");
    slit->add_option("--lambda", sa.c.lambda, "de Broglie wavelength");
    slit->add_option("--n-samples", sa.c.N, "electrons")->check(CLI::PositiveNumber);
    slit->add_option("--bins", sa.c.bins, "screen bins")->check(CLI::PositiveNumber);
    slit->add_option("--half-width", sa.c.half_width, "screen half-width (0 = 3.5 fringe spacings)");
    slit->add_option("--model", sa.model, "path lengths")->check(CLI::IsMember({"exact", "paraxial"}));
    slit->add_option("--slits", sa.slits, "open slits")->check(CLI::IsMember({"both", "upper", "lower"}));

    WorldlineArgs wa;
    auto* wl = simulate->add_subcommand("worldlines", "three-time trajectory samples and constraint checks");
    common(wl, &wa.seed, nullptr, &wa.out);
    wl->add_option("--m0", wa.m0, "rest mass")->check(CLI::PositiveNumber);
    wl->add_option("--p", wa.p, "spatial momentum p1 p2 p3")->expected(3);
    wl->add_option("--alpha", wa.alpha, "oscillation amplitude (alpha = beta)");
    wl->add_option("--tau-max", wa.tau_max, "largest tau sampled")->check(CLI::PositiveNumber);
    wl->add_option("--samples", wa.samples, "trajectory samples");
    wl->add_option("--units", wa.units, "natural or explicit constants")->check(CLI::IsMember({"natural", "explicit"}));
    wl->add_option("--hbar", wa.hbar, "hbar in explicit units")->check(CLI::PositiveNumber);
    wl->add_option("--c", wa.c, "c in explicit units")->check(CLI::PositiveNumber);

    SpinArgs pa;
    auto* sp = app.add_subcommand("spin", "Hopf map samples, S.n identity, g factor");
    common(sp, &pa.seed, nullptr, &pa.out);
    sp->add_option("--samples", pa.samples, "random angles");
    sp->add_option("--r", pa.r, "loop radius")->check(CLI::PositiveNumber);
    sp->add_option("--v", pa.v, "loop speed")->check(CLI::PositiveNumber);
    sp->add_option("--units", pa.units, "natural or explicit constants")->check(CLI::IsMember({"natural", "explicit"}));
    sp->add_option("--e", pa.e, "charge in explicit units")->check(CLI::PositiveNumber);
    sp->add_option("--c", pa.c, "c in explicit units")->check(CLI::PositiveNumber);
    sp->add_option("--me", pa.me, "electron mass in explicit units")->check(CLI::PositiveNumber);

    QuantizeArgs qa;
    auto* qz = app.add_subcommand("quantize", "mass and charge table");
    common(qz, nullptr, nullptr, &qa.out);
    qz->add_option("--n", qa.n, "modes")->check(CLI::PositiveNumber);
    qz->add_option("--r4", qa.r4, "charge-dimension radius")->check(CLI::PositiveNumber);
    qz->add_option("--r5", qa.r5, "mass-dimension radius")->check(CLI::PositiveNumber);
    qz->add_option("--kappa", qa.kappa, "coupling")->check(CLI::PositiveNumber);
    qz->add_option("--hbar", qa.hbar, "hbar")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << kSynopsis;
        return kUsage;
    }

    try {
        if (verify->parsed()) return run_verify(va);
        if (measure->parsed()) return run_measure(ma);
        if (slit->parsed()) return run_double_slit(sa);
        if (wl->parsed()) return run_worldlines(wa);
        if (sp->parsed()) return run_spin(pa);
        if (qz->parsed()) return run_quantize(qa);
    } catch (const tritime::Error& e) {
        std::cerr << "error: " << e.what() << "\n" << kSynopsis;
        return kUsage;
    }
    std::cerr << kSynopsis;
    return kUsage;
}

// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance [--criterion N] [--cli PATH] [--seed S]
//
// Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "tritime/catalog.hpp"
#include "tritime/fieldcheck.hpp"
#include "tritime/io.hpp"
#include "tritime/kinematics.hpp"
#include "tritime/report.hpp"
#include "tritime/spin.hpp"
#include "tritime/suite.hpp"

namespace {

namespace suite = tritime::suite;
namespace kin = tritime::kinematics;
namespace sp = tritime::spin;
using tritime::fieldcheck::ResidualReport;
using tritime::io::format_double;

// Pinned thresholds.
constexpr double kIdentityTol = 1e-9;
constexpr double kExactTol = 1e-12;
constexpr double kSpinTol = 1e-12;
constexpr double kFringeTol = 0.02;
constexpr double kBinFraction = 0.95;
constexpr double kVisibilityMax = 0.15;
constexpr int kStates = 50;
constexpr std::uint64_t kMeasureN = 1000000;
constexpr int kBins = 64;
constexpr int kSlitConfigs = 20;
constexpr int kCausalityPairs = 10000;
constexpr int kSpinSamples = 1000;

struct Outcome {
    bool pass = true;
    std::vector<std::string> detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail.push_back((ok ? "" : "FAILED ") + what);
    }
};

struct Criterion {
    int number;
    std::string title;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome()> run;
};

std::string fmt(double v) { return format_double(v); }

/// Merge every report with the given id; worst residual, all verdicts.
struct Merged {
    bool found = false;
    bool verdict = true;
    double worst = 0.0;
    std::set<std::string> conventions;
    std::size_t cases = 0;
    int min_vanishing = 1 << 30, max_vanishing = 0;
};

Merged merged(const std::vector<ResidualReport>& rs, const std::string& id) {
    Merged m;
    for (const auto& r : rs) {
        if (r.id != id) continue;
        m.found = true;
        ++m.cases;
        m.verdict = m.verdict && r.verdict;
        if (std::isfinite(r.max_residual)) m.worst = std::max(m.worst, r.max_residual);
        else m.worst = INFINITY;
        m.conventions.insert(r.convention);
        int v = static_cast<int>(r.vanishing_count());
        m.min_vanishing = std::min(m.min_vanishing, v);
        m.max_vanishing = std::max(m.max_vanishing, v);
    }
    return m;
}

void identity(Outcome& o, const std::vector<ResidualReport>& rs, const std::string& id, double tol) {
    auto m = merged(rs, id);
    o.require(m.found && m.verdict && m.worst <= tol,
              id + " over " + std::to_string(m.cases) + " cases, max residual " + fmt(m.worst) + " (tol " + fmt(tol) + ")");
}

std::vector<ResidualReport> concat(std::vector<ResidualReport> a, std::vector<ResidualReport> b) {
    for (auto& r : b) a.push_back(std::move(r));
    return a;
}

// ---------------------------------------------------------------- criteria

Outcome quantum_potential(std::uint64_t seed) {
    Outcome o;
    auto rs = suite::quantum_claims(seed);
    for (const char* p : {"constant", "gaussian", "product-of-sinusoids", "two-bump"}) {
        std::vector<ResidualReport> mine;
        for (const auto& r : rs)
            if (r.notes.rfind(std::string("R ") + p + ".", 0) == 0) mine.push_back(r);
        o.require(!mine.empty(), std::string("profile ") + p + " present");
        identity(o, mine, "quantum.ricci_scalar", kIdentityTol);
        identity(o, mine, "quantum.potential", kIdentityTol);
    }
    return o;
}

Outcome klein_gordon(std::uint64_t seed) {
    Outcome o;
    auto rs = suite::scalar_claims(suite::random_states(kStates, seed, true), seed);
    identity(o, rs, "scalar.klein_gordon", kIdentityTol);
    identity(o, rs, "scalar.charged.klein_gordon", kIdentityTol);
    auto ctrl = merged(rs, "scalar.off_shell_control");
    o.require(ctrl.found && ctrl.verdict, "off-shell control fails the Klein-Gordon residual (residual " + fmt(ctrl.worst) + ")");
    return o;
}

Outcome energy_momentum(std::uint64_t seed) {
    Outcome o;
    auto rs = suite::scalar_claims(suite::random_states(kStates, seed, true), seed);
    identity(o, rs, "scalar.t_ab", kIdentityTol);
    identity(o, rs, "scalar.t55", kIdentityTol);
    identity(o, rs, "scalar.t4b", kIdentityTol);

    // One T_44 expression has to give E^2/2 for the electric field and B^2/2 for the magnetic field.
    auto t44 = tritime::fieldcheck::check_static_t44(1.7, 0.9, seed);
    const ResidualReport* e = nullptr;
    const ResidualReport* b = nullptr;
    for (const auto& r : t44) (r.id == "vector.t44_static_e" ? e : b) = &r;
    bool joint = false;
    std::string best;
    double best_worst = INFINITY;
    for (std::size_t k = 0; e && b && k < e->candidates.size(); ++k) {
        const auto& ce = e->candidates[k];
        const auto& cb = b->candidates[k];
        double worst = std::max(ce.max_residual, cb.max_residual);
        o.detail.push_back("T_44 [" + ce.label + "]: E residual " + fmt(ce.max_residual) + ", B residual " +
                           fmt(cb.max_residual));
        if (worst < best_worst) {
            best_worst = worst;
            best = ce.label;
        }
        joint = joint || worst <= kIdentityTol;
    }
    o.require(joint, "single T_44 expression with E^2/2 and B^2/2, best [" + best + "] residual " + fmt(best_worst));
    return o;
}

Outcome vector_sector(std::uint64_t seed) {
    Outcome o;
    auto rs = suite::vector_claims(suite::random_states(20, seed + 1), seed);
    identity(o, rs, "vector.maxwell", kExactTol);
    auto fe = merged(rs, "vector.field_equation");
    std::string conv = fe.conventions.empty() ? "" : *fe.conventions.begin();
    o.require(fe.found && fe.verdict && fe.min_vanishing == 1 && fe.max_vanishing == 1 && fe.conventions.size() == 1,
              "Proca field equation vanishes under exactly one convention [" + conv + "], residual " + fmt(fe.worst));
    identity(o, rs, "vector.proca_scalar", kIdentityTol);
    return o;
}

Outcome fermion_sector(std::uint64_t seed) {
    Outcome o;
    auto states = suite::random_states(kStates, seed + 1);
    bool p3 = std::all_of(states.begin(), states.end(), [](const auto& s) { return s.p[3] != 0.0; });
    o.require(p3, "all states have p3 != 0");
    auto rs = concat(suite::fermion_claims(states, seed), suite::coupling_claims(states, seed));
    identity(o, rs, "fermion.divergence", kIdentityTol);
    identity(o, rs, "fermion.dirac_component", kIdentityTol);
    identity(o, rs, "fermion.rest_frame_cancellation", kExactTol);
    identity(o, rs, "coupling.fermion_divergence", kIdentityTol);
    identity(o, rs, "coupling.dirac_component", kIdentityTol);
    return o;
}

Outcome quantization() {
    Outcome o;
    const tritime::expr::Expr n = tritime::expr::Expr::parameter("n");
    const tritime::expr::Expr r5 = tritime::expr::Expr::parameter("R5");
    const auto target = -(n * n * tritime::expr::pow(r5, tritime::expr::Rational(-2)));
    struct Case { int n; double R4, R5, kappa, hbar; };
    for (Case c : {Case{1, 1.0, 1.0, 1.0, 1.0}, Case{2, 0.5, 4.0, 3.0, 1.0}, Case{3, 1.25, 0.5, 0.7, 0.6}}) {
        auto q = tritime::fieldcheck::quantize(c.n, c.R4, c.R5, c.kappa, c.hbar);
        std::string tag = "n = " + std::to_string(c.n);
        o.require(q.m0 == c.n * c.hbar / c.R5, tag + ": m0 = " + fmt(q.m0));
        o.require(q.e == c.kappa * c.n / c.R4, tag + ": e = " + fmt(q.e));
        o.require(tritime::expr::structurally_zero(tritime::expr::simplify(q.eigen_expr - target)),
                  tag + ": d_5 d_5 psi / psi = -n^2/R5^2 symbolically");
        identity(o, q.reports, "quantize.mass", kExactTol);
        identity(o, q.reports, "quantize.charge", kExactTol);
    }
    return o;
}

Outcome worldlines(std::uint64_t seed) {
    Outcome o;
    auto rs = suite::worldline_claims(suite::random_states(5, seed + 1), seed);
    identity(o, rs, "worldline.null", kExactTol);
    identity(o, rs, "worldline.orthogonal", kExactTol);
    identity(o, rs, "worldline.reality", kExactTol);
    auto w = merged(rs, "worldline.wave_equation");
    o.require(w.found && w.verdict && w.worst == 0.0, "worldline.wave_equation residual " + fmt(w.worst));
    return o;
}

Outcome measurement(std::uint64_t seed) {
    Outcome o;
    kin::Box box;
    box.bins = kBins;
    auto profile = kin::Profile::named("gaussian");
    auto a = kin::measure(profile, box, kMeasureN, seed);
    auto b = kin::measure(profile, box, kMeasureN, seed, 3);
    double f = a.within_bound_fraction();
    o.require(a.counts.size() == static_cast<std::size_t>(kBins) && a.N == kMeasureN,
              std::to_string(a.N) + " samples in " + std::to_string(a.counts.size()) + " bins");
    o.require(f >= kBinFraction, "bins within 4 sigma: " + fmt(100 * f) + "%");
    o.require(a.counts == b.counts, "identical counts for a fixed seed across thread counts");
    return o;
}

Outcome double_slit(std::uint64_t seed) {
    Outcome o;
    tritime::io::Substream rng(seed, 0xacce97ULL);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
    double worst = 0.0;
    for (int k = 0; k < kSlitConfigs; ++k) {
        kin::DoubleSlitConfig c;
        c.d = uniform(0.5, 2.0);
        c.L = c.d * uniform(500.0, 2000.0);
        c.lambda = c.d * uniform(0.005, 0.03);
        c.seed = seed * 7919 + static_cast<std::uint64_t>(k);
        worst = std::max(worst, kin::fringe_deviation(kin::double_slit(c)));
    }
    o.require(worst <= kFringeTol, std::to_string(kSlitConfigs) + " configurations, worst maximum offset " +
                                       fmt(100 * worst) + "% of the spacing");
    kin::DoubleSlitConfig one;
    one.open = {false, true};
    one.seed = seed;
    double v = kin::visibility(kin::double_slit(one));
    o.require(v < kVisibilityMax, "single slit visibility " + fmt(v));
    return o;
}

Outcome spin(std::uint64_t seed) {
    Outcome o;
    auto c = sp::check_su2(kSpinSamples, seed);
    o.require(c.max_unitarity <= kSpinTol, "unitarity " + fmt(c.max_unitarity));
    o.require(c.max_det <= kSpinTol, "det S - 1 " + fmt(c.max_det));
    o.require(c.max_sn_column <= kSpinTol, "S.n = 2zz^dagger - 1 at " + std::to_string(kSpinSamples) +
                                               " angles, max " + fmt(c.max_sn_column));
    auto rs = suite::spin_claims(seed);
    identity(o, rs, "spin.two_to_one", kSpinTol);
    auto g = sp::g_factor(1.0, 0.5);
    auto disk = sp::g_factor(1.0, 0.5, sp::Area::Disk);
    o.require(g.exact && g.g.number() == tritime::expr::Number(2), "g = " + g.g.str());
    o.require(disk.exact && disk.g.number() == tritime::expr::Number(1), "disk control g = " + disk.g.str());
    auto r = sp::rotation_eigenvalue(0.5, 0.5, -0.5, seed);
    o.require(std::abs(r.magnitude - 0.5) <= kSpinTol && r.max_deviation <= kSpinTol,
              "rotation eigenvalue magnitude " + fmt(r.magnitude));
    return o;
}

Outcome causality(std::uint64_t seed) {
    Outcome o;
    suite::VerifyOptions v;
    v.seed = seed;
    v.causality_pairs = kCausalityPairs;
    v.measure_samples = 1000;
    v.slit_configs = 1;
    auto rs = suite::simulation_claims(v);
    auto m = merged(rs, "causality.order");
    o.require(m.found && m.verdict && m.worst == 0.0,
              std::to_string(kCausalityPairs) + " pairs, counterexamples " + fmt(m.worst));
    return o;
}

Outcome full_verify(const std::string& cli, std::uint64_t seed) {
    Outcome o;
    if (cli.empty()) {
        o.require(false, "no CLI path given (--cli)");
        return o;
    }
    std::string cmd = "\"" + cli + "\" verify --seed " + std::to_string(seed) + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        o.require(false, "cannot run " + cli);
        return o;
    }
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.require(code == 0, "verify exit code " + std::to_string(code));
    try {
        auto report = tritime::report::from_json(out);
        std::size_t failed = 0;
        for (const auto& c : report.claims) failed += c.verdict ? 0 : 1;
        o.require(failed == 0 && !report.claims.empty(),
                  std::to_string(report.claims.size()) + " claims, " + std::to_string(failed) + " failed");
    } catch (const std::exception& e) {
        o.require(false, std::string("report does not parse: ") + e.what());
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    std::string cli;
    std::uint64_t seed = 7;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) only = std::stoi(argv[++i]);
        else if (a == "--cli" && i + 1 < argc) cli = argv[++i];
        else if (a == "--seed" && i + 1 < argc) seed = std::stoull(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--criterion N] [--cli PATH] [--seed S]\n";
            return 1;
        }
    }

    std::vector<Criterion> all{
        {1, "quantum potential identity", 10, [&] { return quantum_potential(seed); }},
        {2, "Klein-Gordon reduction", 10, [&] { return klein_gordon(seed); }},
        {3, "energy-momentum identities", 0, [&] { return energy_momentum(seed); }},
        {4, "vector sector", 10, [&] { return vector_sector(seed); }},
        {5, "fermion sector", 0, [&] { return fermion_sector(seed); }},
        {6, "quantization", 0, [&] { return quantization(); }},
        {7, "worldlines", 0, [&] { return worldlines(seed); }},
        {8, "measurement statistics", 60, [&] { return measurement(seed); }},
        {9, "double slit", 30, [&] { return double_slit(seed); }},
        {10, "spin", 0, [&] { return spin(seed); }},
        {11, "causality ordering", 0, [&] { return causality(seed); }},
        {12, "full verify suite", 300, [&] { return full_verify(cli, seed); }},
    };

    int failed = 0, ran = 0;
    for (const auto& c : all) {
        if (only && c.number != only) continue;
        ++ran;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit > 0) o.require(secs < c.time_limit, "runtime " + fmt(secs) + " s (limit " + fmt(c.time_limit) + " s)");
        std::printf("criterion %2d %-28s %s  (%.2f s)\n", c.number, c.title.c_str(), o.pass ? "PASS" : "FAIL", secs);
        for (const auto& d : o.detail) std::printf("    %s\n", d.c_str());
        failed += o.pass ? 0 : 1;
    }
    if (!ran) {
        std::cerr << "no criterion " << only << "\n";
        return 1;
    }
    std::printf("%d/%d criteria pass\n", ran - failed, ran);
    return failed ? 1 : 0;
}

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "tritime/errors.hpp"
#include "tritime/io.hpp"
#include "tritime/kinematics.hpp"

namespace cat = tritime::catalog;
namespace kin = tritime::kinematics;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

const tritime::fieldcheck::ResidualReport& find(const std::vector<tritime::fieldcheck::ResidualReport>& rs,
                                                const std::string& id) {
    for (const auto& r : rs)
        if (r.id == id) return r;
    FAIL("missing report " << id);
    return rs.front();
}

// x_sigma by hand: alpha (|p|/m0 e, p0/m0 n e, 0, i e) with e = exp(-i m0 (tau + sigma)), unit radii.
std::array<Complex, 6> sigma_oracle(const cat::ParticleState& s, Complex alpha, double tau, double sigma) {
    double pm = std::sqrt(s.p[1] * s.p[1] + s.p[2] * s.p[2] + s.p[3] * s.p[3]);
    Complex e = std::exp(Complex(0, -s.m0 * (tau + sigma)));
    std::array<Complex, 6> v{};
    v[0] = alpha * pm / s.m0 * e;
    for (int i = 0; i < 3; ++i) v[1 + i] = alpha * s.p[0] / s.m0 * (s.p[1 + i] / pm) * e;
    v[5] = alpha * Complex(0, 1) * e;
    return v;
}

Complex eta_dot(const std::array<Complex, 6>& a, const std::array<Complex, 6>& b) {
    Complex acc = a[0] * b[0];
    for (int k = 1; k < 6; ++k) acc -= a[k] * b[k];
    return acc;
}

}  // namespace

TEST_CASE("x_sigma matches the hand-built oscillator and is null") {
    auto s = cat::ParticleState::on_shell(1.3, 0.4, -0.7, 0.2);
    kin::WorldlineOptions o;
    o.alpha = {0.6, 0.2};
    auto ws = kin::build_worldlines(s, o);
    auto b = ws.binding();
    b.set_coord(0, 0.37).set_coord(1, 1.9);
    auto oracle = sigma_oracle(s, o.alpha, 0.37, 1.9);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(tritime::expr::evaluate(ws.x_sigma[k], b) - oracle[k]) < 1e-12);
    CHECK(std::abs(eta_dot(oracle, oracle)) < 1e-12);
}

TEST_CASE("rest frame: x_sigma has no time component") {
    auto s = cat::ParticleState::on_shell(2.0, 0, 0, 0);
    auto ws = kin::build_worldlines(s);
    CHECK(tritime::expr::structurally_zero(ws.x_sigma[0]));
    CHECK(ws.n[2] == 1.0);
    auto reports = kin::check_constraints(ws);
    CHECK(find(reports, "worldline.null").verdict);
}

TEST_CASE("constraint sweep") {
    auto s = cat::ParticleState::on_shell(1.0, 0.3, -0.2, 0.5);
    kin::WorldlineOptions o;
    o.reality = true;
    o.alpha = {0.7, 0.0};
    o.q = {0.1, 0.2, -0.3, 0.4};
    auto reports = kin::check_constraints(kin::build_worldlines(s, o));
    for (const auto& r : reports) CHECK_MESSAGE(r.verdict, r.id << ": " << r.notes);

    const auto& null = find(reports, "worldline.null");
    CHECK_FALSE(null.literal_holds());
    CHECK(null.convention == "x.x = 0 for each worldline, x_phi phase as in the trajectory");

    const auto& norm = find(reports, "worldline.constraint_norm_sigma");
    CHECK(norm.convention.rfind("xdot.xdot + x'.x' = 0", 0) == 0);
    CHECK(norm.candidates[1].max_residual > 1e-3);

    CHECK(find(reports, "worldline.wave_equation").literal_holds());
    CHECK(find(reports, "worldline.reality").max_residual <= 1e-12);
}

TEST_CASE("reality residual: exact with alpha = beta, broken by a 10% mismatch") {
    auto s = cat::ParticleState::on_shell(1.0, 0.5, 0.1, -0.4);
    kin::WorldlineOptions o;
    o.reality = true;
    o.alpha = {0.8, 0.0};
    auto ws = kin::build_worldlines(s, o);
    CHECK(kin::reality_residual(ws, 1000, 3) <= 1e-12);

    o.reality = false;
    o.beta = o.alpha * 1.1;
    auto bad = kin::build_worldlines(s, o);
    CHECK(kin::reality_residual(bad, 1000, 3) > 1e-3);
}

TEST_CASE("worldline construction errors") {
    auto s = cat::ParticleState::on_shell(1.0, 0.2, 0, 0);
    s.p[0] = 5.0;
    s.on_shell_flag = true;
    CHECK_THROWS_AS(kin::build_worldlines(s), tritime::OffShell);
    kin::WorldlineOptions o;
    o.R5 = tritime::expr::Expr(-1);
    CHECK_THROWS_AS(kin::build_worldlines(cat::ParticleState::on_shell(1, 0, 0, 0), o), tritime::DomainError);
}

TEST_CASE("de Broglie relations") {
    auto d = kin::de_broglie(1.0, 2.0, 0.5);
    CHECK(d.wavelength == doctest::Approx(1.0));
    CHECK(d.period == doctest::Approx(0.5));
    CHECK(d.phase_velocity_ratio == doctest::Approx(2.0));
    CHECK(d.phase_velocity == doctest::Approx(1.0));
    CHECK_FALSE(d.readings_agree);
    CHECK(kin::de_broglie(1.0, 1.0, 0.5).readings_agree);

    auto rest = kin::de_broglie(1.0, 1.0, 0.0);
    CHECK(std::isinf(rest.wavelength));
    CHECK_THROWS_AS(kin::de_broglie(1.0, 0.0, 0.5), tritime::DomainError);

    auto s = cat::ParticleState::on_shell(1.0, 0.6, 0.0, 0.8);
    auto obs = kin::de_broglie_observables(s);
    CHECK(obs.wavelength == doctest::Approx(2.0 * kPi));
    auto ws = kin::build_worldlines(s);
    CHECK(kin::worldline_phase_velocity(ws) == doctest::Approx(std::sqrt(2.0)));
    CHECK(kin::worldline_phase_velocity(ws) == doctest::Approx(obs.phase_velocity_ratio));
}

TEST_CASE("density quadrature against closed forms") {
    auto g = kin::Profile::gaussian(0.5, 0.2);
    // R^2 = exp(-(x - c)^2 / w^2)
    auto oracle = [](double a, double b) {
        return 0.5 * std::sqrt(kPi) * 0.5 * (std::erf((b - 0.2) / 0.5) - std::erf((a - 0.2) / 0.5));
    };
    CHECK(kin::integrate_density(g, -2, 2) == doctest::Approx(oracle(-2, 2)).epsilon(1e-12));
    CHECK(kin::integrate_density(g, 0.1, 0.3) == doctest::Approx(oracle(0.1, 0.3)).epsilon(1e-12));
    CHECK(kin::integrate_density(kin::Profile::constant(2.0), 0, 3) == doctest::Approx(12.0));
}

TEST_CASE("measurement frequencies follow R^2") {
    for (const char* name : {"constant", "gaussian", "two-bump"}) {
        auto m = kin::measure(kin::Profile::named(name), kin::Box{}, 200000, 11);
        CHECK_MESSAGE(m.bound_met(), name << " fraction " << m.within_bound_fraction());
        std::uint64_t total = 0;
        for (auto c : m.counts) total += c;
        CHECK(total == 200000);
    }
    auto u = kin::measure(kin::Profile::constant(), kin::Box{}, 1000, 1);
    for (double p : u.target) CHECK(p == doctest::Approx(1.0 / 64));
}

TEST_CASE("measurement is deterministic and independent of thread count") {
    auto p = kin::Profile::two_bump();
    auto a = kin::measure(p, kin::Box{}, 50000, 5, 1);
    auto b = kin::measure(p, kin::Box{}, 50000, 5, 6);
    CHECK(a.counts == b.counts);
    CHECK(a.trials == b.trials);
    auto c = kin::measure(p, kin::Box{}, 50000, 6, 1);
    CHECK(a.counts != c.counts);
}

TEST_CASE("measurement rejects a mismatched target") {
    auto m = kin::measure(kin::Profile::gaussian(), kin::Box{}, 200000, 2);
    auto flat = kin::measure(kin::Profile::constant(), kin::Box{}, 10, 2);
    m.target = flat.target;
    CHECK_FALSE(m.bound_met());
}

TEST_CASE("measurement errors") {
    CHECK_THROWS_AS(kin::measure(kin::Profile::constant(), kin::Box{1.0, 1.0, 10}, 10, 1), tritime::EmptyBox);
    CHECK_THROWS_AS(kin::measure(kin::Profile::constant(), kin::Box{-1, 1, 0}, 10, 1), tritime::EmptyBox);
    CHECK_THROWS_AS(kin::measure(kin::Profile::constant(), kin::Box{}, 0, 1), tritime::DomainError);
    CHECK_THROWS_AS(kin::Profile::named("square"), tritime::ConfigError);
}

TEST_CASE("two-path probability: paraxial and exact first minima") {
    kin::DoubleSlitConfig c;
    c.d = 1.0;
    c.L = 100.0;
    c.lambda = 1.0;
    c.model = kin::PathModel::Paraxial;
    // Half-wavelength path difference: only the unequal 1/l amplitudes survive.
    double l1 = 100.0 + 49.5 * 49.5 / 200.0, l2 = 100.0 + 50.5 * 50.5 / 200.0;
    CHECK(kin::two_path_probability(c, 50.0) == doctest::Approx(std::pow(100.0 / l1 - 100.0 / l2, 2) / 4.0));
    CHECK(kin::two_path_probability(c, 50.0) < 1e-5);
    double l0 = 100.0 + 0.25 / 200.0;
    CHECK(kin::two_path_probability(c, 0.0) == doctest::Approx(std::pow(100.0 / l0, 2)));

    c.model = kin::PathModel::Exact;
    CHECK(kin::two_path_probability(c, 50.0) > 0.01);
    // Exact path difference of half a wavelength by bisection.
    auto diff = [&](double y) { return std::hypot(c.L, y + 0.5) - std::hypot(c.L, y - 0.5) - 0.5; };
    double lo = 40, hi = 80;
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        (diff(mid) < 0 ? lo : hi) = mid;
    }
    CHECK(lo == doctest::Approx(57.7).epsilon(1e-3));
    CHECK(kin::two_path_probability(c, lo) < 1e-4);
}

TEST_CASE("double-slit fringes within 2% over random configurations") {
    tritime::io::Substream rng(2024, 0);
    for (int k = 0; k < 20; ++k) {
        kin::DoubleSlitConfig c;
        c.d = 0.5 + 1.5 * rng.uniform();
        c.L = c.d * (500 + 1500 * rng.uniform());
        c.lambda = c.d * (0.005 + 0.025 * rng.uniform());
        c.seed = 100 + static_cast<std::uint64_t>(k);
        auto r = kin::double_slit(c);
        CHECK_MESSAGE(kin::fringe_deviation(r) <= 0.02, "config " << k);
        CHECK(kin::visibility(r) > 0.9);
    }
}

TEST_CASE("one open slit shows no fringes") {
    kin::DoubleSlitConfig c;
    c.open = {true, false};
    CHECK(kin::visibility(kin::double_slit(c)) < 0.15);
    c.open = {false, false};
    CHECK_THROWS_AS(kin::double_slit(c), tritime::GeometryError);
}

TEST_CASE("double slit determinism and errors") {
    kin::DoubleSlitConfig c;
    c.N = 20000;
    CHECK(kin::double_slit(c, 1).counts == kin::double_slit(c, 5).counts);
    c.L = 0.5;
    CHECK_THROWS_AS(kin::double_slit(c), tritime::GeometryError);
    c.L = 100;
    c.lambda = 0;
    CHECK_THROWS_AS(kin::double_slit(c), tritime::DomainError);
}

TEST_CASE("causality in the oriented reading") {
    auto s = cat::ParticleState::on_shell(1.0, 0.6, 0.0, 0.0);
    kin::WorldlineOptions o;
    o.alpha = {0.5, 0.0};
    auto ws = kin::build_worldlines(s, o);
    // t = (p0/m0) tau + |alpha| (|p|/m0) sigma
    CHECK(kin::universal_time(ws, {2.0, 3.0}) == doctest::Approx(std::sqrt(1.36) * 2.0 + 0.5 * 0.6 * 3.0));

    std::vector<kin::Event> ev{{0, 0}, {1, 1}, {2, 0.5}, {0.5, 2}};
    auto r = kin::causality_order(ws, ev);
    // (0,1) (0,2) (0,3) ordered; (1,2) (1,3) (2,3) mixed
    CHECK(r.pairs_checked == 3);
    CHECK(r.pairs_excluded == 3);
    CHECK(r.verdict());

    auto p = kin::causality_pairs(ws, {{{1, 1}, {0, 0}}, {{0, 1}, {1, 0}}});
    CHECK(p.pairs_checked == 1);
    CHECK(p.pairs_excluded == 1);
    CHECK(p.verdict());
}

TEST_CASE("localization loop slopes") {
    const int N = 10000;
    auto full = kin::localization_loop(1e-3, N);
    CHECK(full.max_abs == doctest::Approx(1.0 / std::tan(kPi / N)).epsilon(1e-6));
    auto quarter = kin::localization_loop(1e-3, N, true);
    CHECK(quarter.max_abs == doctest::Approx(std::tan(kPi / 4 - kPi / (4.0 * N))).epsilon(1e-6));
    CHECK(quarter.max_abs < 1.0);
    CHECK_THROWS_AS(kin::localization_loop(0.0, 10), tritime::DomainError);
}

TEST_CASE("t-x projection of the tau worldline") {
    auto s = cat::ParticleState::on_shell(1.0, 0.0, 0.0, 0.75);
    auto ws = kin::build_worldlines(s);
    auto pts = kin::project_tx(ws, {{0, 0, 0}, {1, 0, 0}});
    // Shift by one unit of tau: t grows by p0/m0 on top of the oscillating parts.
    double dt = pts[1].second - pts[0].second;
    double dx = pts[1].first - pts[0].first;
    auto osc = [&](double tau, int slot) {
        auto b = ws.binding();
        b.set_coord(0, tau);
        return (tritime::expr::evaluate(ws.x_sigma[slot] + ws.x_phi[slot], b)).real();
    };
    CHECK(dt == doctest::Approx(1.25 + osc(1, 0) - osc(0, 0)));
    CHECK(dx == doctest::Approx(0.75 + osc(1, 3) - osc(0, 3)));
}

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "tritime/catalog.hpp"
#include "tritime/errors.hpp"
#include "tritime/fieldcheck.hpp"

using namespace testutil;
namespace cat = tritime::catalog;
namespace fc = tritime::fieldcheck;

namespace {

const fc::ResidualReport& find(const std::vector<fc::ResidualReport>& rs, const std::string& id) {
    for (const auto& r : rs)
        if (r.id == id) return r;
    FAIL("missing report " << id);
    return rs.front();
}

const fc::Candidate& candidate(const fc::ResidualReport& r, const std::string& label) {
    for (const auto& c : r.candidates)
        if (c.label == label) return c;
    FAIL("missing candidate " << label << " in " << r.id);
    return r.candidates.front();
}

cat::ParticleState massive() {
    auto s = cat::ParticleState::on_shell(1.3, 0.3, -0.2, 0.4);
    s.hbar = 0.7;
    s.kappa = 0.4;
    s.n = 2;
    s.R4 = 1.5;
    return s;
}

Expr radius() { return sqrt(x(1) * x(1) + x(2) * x(2) + x(3) * x(3)); }

std::vector<std::array<double, 4>> circle(double cx, double cy, double r, int n, bool ccw = true) {
    std::vector<std::array<double, 4>> p;
    for (int k = 0; k <= n; ++k) {
        double t = 2.0 * M_PI * (k % n) / n * (ccw ? 1.0 : -1.0);
        p.push_back({0.0, cx + r * std::cos(t), cy + r * std::sin(t), 0.0});
    }
    return p;
}

double polygon_area(const std::vector<std::array<double, 4>>& p) {
    double a = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) a += p[i][1] * p[i + 1][2] - p[i + 1][1] * p[i][2];
    return 0.5 * a;
}

}  // namespace

TEST_CASE("sweep_claim picks the first vanishing candidate") {
    Binding b;
    auto s = sampling_with(b);
    auto r = fc::sweep_claim("t", "eq:t", {{"shown", {x(1)}}, {"alt", {x(1) - x(1)}}, {"alt2", {Expr(0)}}}, s);
    CHECK(r.verdict);
    CHECK(r.convention == "alt");
    CHECK(r.vanishing_count() == 2);
    CHECK_FALSE(r.literal_holds());
    auto lit = fc::literal_claim("u", "eq:u", {x(2) * Expr(0)}, s);
    CHECK(lit.verdict);
    CHECK(lit.convention == "as displayed");
    auto none = fc::sweep_claim("v", "eq:v", {{"a", {Expr(1)}}, {"b", {x(0)}}}, s);
    CHECK_FALSE(none.verdict);
    CHECK(none.convention == "none");
    CHECK(none.max_residual == doctest::Approx(1.0));
}

TEST_CASE("scalar sector on a massive plane wave") {
    auto s = massive();
    auto sec = fc::check_scalar_sector(s, cat::plane_wave_scalar(s));
    for (const auto& r : sec.reports) CHECK_MESSAGE(r.verdict, r.id << ": " << r.notes);

    const auto& kg = find(sec.reports, "scalar.klein_gordon");
    CHECK_FALSE(kg.literal_holds());
    CHECK(kg.convention == "d^a d_a psi + m0^2 psi");
    CHECK(find(sec.reports, "scalar.component_ab").literal_holds());
    CHECK(find(sec.reports, "scalar.component_a5").literal_holds());
    const auto& tab = find(sec.reports, "scalar.t_ab");
    CHECK_FALSE(tab.literal_holds());
    CHECK(tab.convention == "kappa = m0/hbar^2");
    const auto& ein = find(sec.reports, "scalar.einstein");
    CHECK(ein.vanishing_count() == 1);
    CHECK(ein.convention == "kappa = m0/hbar^2, p_5 = -m0");

    // Independent oracle: G_55 = m0^2/hbar^2 and G_00 = p0^2/hbar^2 at the origin.
    Binding b = s.binding();
    CHECK(evaluate(sec.curvature.einstein(5, 5), b).real() == doctest::Approx(s.m0 * s.m0 / (s.hbar * s.hbar)));
    CHECK(evaluate(sec.curvature.einstein(0, 0), b).real() == doctest::Approx(s.p[0] * s.p[0] / (s.hbar * s.hbar)));
}

TEST_CASE("scalar sector negative control: off-shell momentum") {
    auto s = massive();
    s.p[0] += 0.25;
    s.on_shell_flag = false;
    auto sec = fc::check_scalar_sector(s, cat::plane_wave_scalar(s));
    const auto& kg = find(sec.reports, "scalar.klein_gordon");
    CHECK_FALSE(kg.verdict);
    CHECK(kg.vanishing_count() == 0);
    CHECK(kg.max_residual > 0.1);
    CHECK_FALSE(find(sec.reports, "scalar.t44").verdict);
    s.on_shell_flag = true;
    CHECK_THROWS_AS(fc::check_scalar_sector(s, cat::plane_wave_scalar(s)), tritime::OffShell);
}

TEST_CASE("charge decoration leaves the scalar claims unchanged") {
    auto r = fc::check_charge_invariance(massive());
    CHECK(r.verdict);
    CHECK(r.max_residual <= 1e-12);
}

TEST_CASE("quantum potential examples") {
    // R = exp(-x1^2): Lap R / R = 4 x1^2 - 2, so Q = 1 at the origin with hbar = m = 1.
    Expr R = exp(-(x(1) * x(1)));
    Binding b;
    b.set_param("m0", 1.0).set_param("hbar", 1.0);
    auto q = fc::quantum_potential(R, b);
    CHECK(evaluate(q.Q, b).real() == doctest::Approx(1.0));
    CHECK(find(q.reports, "quantum.ricci_scalar").literal_holds());
    const auto& pot = find(q.reports, "quantum.potential");
    CHECK(pot.verdict);
    CHECK_FALSE(pot.literal_holds());
    CHECK(q.kappa2 == "kappa^2 = -2 m/hbar^2");

    // Hydrogen ground state R = exp(-r): Q = -(hbar^2/2m)(1 - 2/r).
    Binding hb;
    hb.set_param("m0", 1.7).set_param("hbar", 0.8);
    Expr Rh = exp(-radius());
    auto qh = fc::quantum_potential(Rh, hb);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 16; ++k) {
        Binding at = hb;
        double x1 = u(rng), x2 = u(rng), x3 = 0.3 + std::abs(u(rng));
        at.set_coord(1, x1).set_coord(2, x2).set_coord(3, x3);
        double r = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
        double expect = -(0.8 * 0.8 / (2.0 * 1.7)) * (1.0 - 2.0 / r);
        CHECK(evaluate(qh.Q, at).real() == doctest::Approx(expect).epsilon(1e-12));
        // R-hat = +2 Lap R / R with the Euclidean Laplacian.
        CHECK(evaluate(qh.ricci_scalar, at).real() == doctest::Approx(2.0 * (1.0 - 2.0 / r)).epsilon(1e-10));
    }
}

TEST_CASE("quantum potential errors") {
    CHECK_THROWS_AS(fc::quantum_potential(Expr(0), Binding{}), tritime::DegenerateField);
    CHECK_THROWS_AS(fc::quantum_potential(exp(x(0)), Binding{}), tritime::AnsatzViolation);
    CHECK_THROWS_AS(fc::quantum_potential(x(1), Binding{}), tritime::DegenerateField);
}

TEST_CASE("quantization examples") {
    auto q = fc::quantize(3, 1.0, 2.0, 0.5, 1.0);
    Binding b;
    b.set_param("n", 3.0).set_param("R5", 2.0).set_param("R4", 1.0);
    CHECK(evaluate(q.eigen_expr, b).real() == doctest::Approx(-9.0 / 4.0));
    CHECK(q.m0 == doctest::Approx(1.5));
    CHECK(q.e == doctest::Approx(1.5));
    CHECK(find(q.reports, "quantize.eigenvalue").convention == "d_5 d_5");
    CHECK(find(q.reports, "quantize.mass").verdict);

    auto h = fc::quantize(2, 0.5, 1.5, 0.3, 0.6);
    CHECK(h.m0 == doctest::Approx(2 * 0.6 / 1.5));
    CHECK(h.e == doctest::Approx(0.3 * 2 / 0.5));
    const auto& charge = find(h.reports, "quantize.charge");
    CHECK_FALSE(charge.literal_holds());
    CHECK(charge.convention == "d_4 psi = -i n/R4 psi");
    CHECK_THROWS_AS(fc::quantize(1, 0.0, 1.0, 1.0), tritime::DomainError);
}

TEST_CASE("vector sector: massive plane wave") {
    auto s = massive();
    s.hbar = 1.0;
    auto A = cat::vector_plane_wave(s, cat::transverse_polarization(s, 0));
    auto sec = fc::check_vector_sector(s, A);
    for (const auto& r : sec.reports) CHECK_MESSAGE(r.verdict, r.id << ": " << r.notes);
    CHECK(find(sec.reports, "vector.field_equation").convention == "d^a F_ab + m0^2 A_b");
    CHECK(find(sec.reports, "vector.proca_scalar").convention == "F.F/4 + m0^2 A.A/2");
    const auto& ein = find(sec.reports, "vector.einstein");
    CHECK(ein.vanishing_count() == 1);
    CHECK(ein.convention == "G_AB = -kappa^2 T_AB / 2");
    CHECK(find(sec.reports, "vector.einstein_a4").literal_holds());

    // Independent oracle for F.F on a plane wave: F.F = -2 ((p.p)(e.e) - (p.e)^2) phase^2.
    auto F = fc::field_strength(A);
    Binding b = s.binding().merged(A.params);
    auto eps = cat::transverse_polarization(s, 0);
    Complex pp = 0.0, ee = 0.0, pe = 0.0;
    for (int a = 0; a < 4; ++a) {
        double eta = tritime::geometry::kEta[a];
        double pl = a == 0 ? s.p[0] : -s.p[a];
        pp += eta * pl * pl;
        ee += eta * eps[a] * eps[a];
        pe += eta * pl * eps[a];
    }
    int nz = 0;
    while (std::abs(eps[nz]) < 1e-9) ++nz;
    Complex phase = evaluate(A[nz], b) / eps[nz];
    Complex expect = -2.0 * (pp * ee - pe * pe) * phase * phase;
    CHECK(std::abs(evaluate(fc::invariant4(F), b) - expect) <= 1e-12);
}

TEST_CASE("vector sector: photon limit") {
    auto s = cat::ParticleState::on_shell(0.0, 0.3, -0.2, 0.4);
    auto A = cat::vector_plane_wave(s, cat::transverse_polarization(s, 1));
    auto sec = fc::check_vector_sector(s, A, 1, false);
    CHECK(find(sec.reports, "vector.maxwell").verdict);
    CHECK(find(sec.reports, "vector.photon_invariant").verdict);
}

TEST_CASE("static T44 needs different formulas for E and B") {
    auto rs = fc::check_static_t44(0.7, 0.9);
    const auto& e = find(rs, "vector.t44_static_e");
    const auto& b = find(rs, "vector.t44_static_b");
    CHECK(e.verdict);
    CHECK(b.verdict);
    CHECK(candidate(e, "T_44 = g_44 F.F/4 - F_4^C F_4C").vanishes);
    CHECK_FALSE(candidate(e, "T_44 = F.F/4 - m0^2 A.A/2").vanishes);
    CHECK_FALSE(candidate(b, "T_44 = g_44 F.F/4 - F_4^C F_4C").vanishes);
    CHECK(candidate(b, "T_44 = F.F/4 - m0^2 A.A/2").vanishes);

    // F.F = 2 (B^2 - E^2) for static fields.
    auto E = cat::static_electric(0.7);
    auto B = cat::static_magnetic(0.9);
    CHECK(evaluate(fc::invariant4(fc::field_strength(E)), E.params).real() == doctest::Approx(-2 * 0.49));
    CHECK(evaluate(fc::invariant4(fc::field_strength(B)), B.params).real() == doctest::Approx(2 * 0.81));
}

TEST_CASE("fermion sector") {
    auto s = massive();
    s.hbar = 1.0;
    for (int index = 1; index <= 4; ++index) {
        auto sec = fc::check_fermion_sector(s, cat::dirac_ansatz(s, index), 1, index == 1);
        for (const auto& r : sec.reports) CHECK_MESSAGE(r.verdict, index << " " << r.id << ": " << r.notes);
        CHECK(find(sec.reports, "fermion.divergence").convention == "d^a K_a - i m0 K_5");
        const auto& t = find(sec.reports, "fermion.energy_momentum");
        CHECK_FALSE(t.literal_holds());
        CHECK(t.convention == "p_A p_B K^C K_C, p_5 = -m0");
    }
}

TEST_CASE("dirac component equation in the rest frame is a structural zero") {
    auto phi = fc::dirac_components(cat::fermion_phase());
    Expr res = fc::dirac_component_residual(phi);
    Expr rest = res;
    rest = substitute(rest, "p1", Expr(0));
    rest = substitute(rest, "p2", Expr(0));
    rest = substitute(rest, "p3", Expr(0));
    rest = substitute(rest, "p0", cat::sym::m0());
    CHECK(structurally_zero(rest));
    // Off shell the residual survives.
    Binding b;
    b.set_param("m0", 1.0).set_param("p0", 1.4).set_param("p1", 0.1).set_param("p2", 0.2).set_param("p3", 0.3);
    CHECK_FALSE(vanishes(res, b));
}

TEST_CASE("local inertial frame") {
    auto s = massive();
    s.hbar = 1.0;
    auto A = cat::vector_plane_wave(s, cat::transverse_polarization(s, 0));
    Binding b = s.binding().merged(A.params);
    auto fr = fc::local_inertial_frame(cat::vector_metric(A, cat::sym::kappa(), b));
    CHECK(fr.pullback.verdict);
    CHECK_FALSE(fr.pullback.literal_holds());
    CHECK(fr.differential_sign == 1);
    CHECK(fr.derivative_rule.verdict);
    CHECK(vanishes(fr.a[1] - cat::sym::kappa() * A[1], b));
    CHECK(structurally_zero(fr.jacobian_row4(4) - Expr(1)));

    auto K = cat::dirac_ansatz(s, 2);
    auto ff = fc::local_inertial_frame(cat::fermion_metric(K, s.binding()));
    CHECK(ff.pullback.verdict);
    CHECK(vanishes(ff.a[5] - K[5], s.binding()));

    Expr psi = cat::plane_wave_scalar(s).psi();
    CHECK_THROWS_AS(fc::local_inertial_frame(cat::scalar_metric(psi, s.binding())), tritime::UnsupportedMetric);
}

TEST_CASE("minimal coupling") {
    auto s = massive();
    s.hbar = 1.0;
    auto rs = fc::minimal_coupling(s, {0.3, -0.2, 0.1, 0.25});
    CHECK(rs.size() == 4);
    for (const auto& r : rs) {
        CHECK_MESSAGE(r.verdict, r.id << ": " << r.notes);
        CHECK(r.literal_holds());
        CHECK(r.vanishing_count() == 1);
    }
    // A = 0 reduces to the free equations under either sign.
    auto zero = fc::minimal_coupling(s, {0.0, 0.0, 0.0, 0.0});
    for (const auto& r : zero) CHECK(r.vanishing_count() == 2);
}

TEST_CASE("berry phase") {
    Expr B = par("B");
    Binding b;
    b.set_param("B", 0.8);
    std::array<Expr, 4> sym{Expr(0), -Expr::rational(1, 2) * B * x(2), Expr::rational(1, 2) * B * x(1), Expr(0)};
    auto path = circle(0.0, 0.0, 1.0, 4096);
    double e = 1.3;
    double phase = fc::berry_phase(sym, b, path, e);
    CHECK(phase == doctest::Approx(e * 0.8 * polygon_area(path)).epsilon(1e-12));
    CHECK(phase == doctest::Approx(e * 0.8 * M_PI).epsilon(1e-6));

    std::array<Expr, 4> none{};
    CHECK(std::abs(fc::berry_phase(none, b, path, e)) <= 1e-15);
    std::array<Expr, 4> constant{Expr(1), Expr(2), Expr(-3), Expr(4)};
    CHECK(std::abs(fc::berry_phase(constant, b, path, e)) <= 1e-12);

    // Gauge invariance: A -> A + d chi.
    Expr chi = sin(x(1) * x(2)) + x(1) * x(1) * x(2);
    std::array<Expr, 4> gauged = sym;
    for (int a = 0; a < 4; ++a) gauged[a] = gauged[a] + differentiate(chi, a);
    CHECK(fc::berry_phase(gauged, b, path, e) == doctest::Approx(phase).epsilon(1e-12));

    // Reversal flips the sign.
    CHECK(fc::berry_phase(sym, b, circle(0.0, 0.0, 1.0, 4096, false), e) == doctest::Approx(-phase).epsilon(1e-12));

    // Additivity over two squares sharing an edge.
    std::vector<std::array<double, 4>> left{{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}};
    std::vector<std::array<double, 4>> right{{0, 1, 0, 0}, {0, 2, 0, 0}, {0, 2, 1, 0}, {0, 1, 1, 0}, {0, 1, 0, 0}};
    std::vector<std::array<double, 4>> both{{0, 0, 0, 0}, {0, 2, 0, 0}, {0, 2, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}};
    std::array<Expr, 4> wavy{Expr(0), sin(x(2)) * x(1), exp(x(1)) * x(2), Expr(0)};
    double sum = fc::berry_phase(wavy, b, left, e) + fc::berry_phase(wavy, b, right, e);
    CHECK(fc::berry_phase(wavy, b, both, e) == doctest::Approx(sum).epsilon(1e-12));

    std::vector<std::array<double, 4>> open{{0, 0, 0, 0}, {0, 1, 0, 0}};
    CHECK_THROWS_AS(fc::berry_phase(sym, b, open, e), tritime::OpenPath);
}

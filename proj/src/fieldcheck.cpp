#include "tritime/fieldcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tritime/errors.hpp"

namespace tritime::fieldcheck {

using catalog::sym::charge;
using catalog::sym::hbar;
using catalog::sym::kappa;
using catalog::sym::m0;
using expr::Complex;
using expr::kDim;
using expr::Number;
using expr::Rational;
using geometry::kEta;
using geometry::Metric6;

namespace {

constexpr std::array<int, 5> kNoCharge{0, 1, 2, 3, 5};

Expr x(int i) { return Expr::coordinate(i); }
Expr I() { return Expr::imaginary_unit(); }
Expr eta(int a) { return Expr(kEta[a]); }
Expr inv(const Expr& e) { return pow(e, Rational(-1)); }
Expr d(const Expr& f, int a) { return expr::differentiate(f, a); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

void evaluate_candidate(Candidate& c, const Sampling& s) {
    expr::ResidualStats st = expr::residual_stats(c.residuals, s);
    c.max_residual = st.max_abs;
    c.vanishes = st.zero;
}

std::string candidate_summary(const std::vector<Candidate>& cs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) os << "; ";
        os << cs[i].label << ": " << (cs[i].vanishes ? "vanishes" : "fails") << " (max " << fmt(cs[i].max_residual)
           << ")";
    }
    return os.str();
}

std::string join_notes(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + ". " + b;
}

}  // namespace

int ResidualReport::vanishing_count() const {
    return static_cast<int>(std::count_if(candidates.begin(), candidates.end(), [](const Candidate& c) { return c.vanishes; }));
}

Sampling sampling_for(const Binding& base, std::uint64_t seed) {
    Sampling s;
    s.base = base;
    s.seed = seed;
    return s;
}

ResidualReport literal_claim(std::string id, std::string anchor, std::vector<Expr> residuals, const Sampling& s,
                             std::string notes) {
    ResidualReport r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    Candidate c{"as displayed", std::move(residuals), 0.0, false};
    evaluate_candidate(c, s);
    r.verdict = c.vanishes;
    r.max_residual = c.max_residual;
    r.convention = "as displayed";
    r.notes = std::move(notes);
    r.candidates.push_back(std::move(c));
    r.param_ranges = s.param_ranges;
    return r;
}

ResidualReport sweep_claim(std::string id, std::string anchor, std::vector<Candidate> candidates, const Sampling& s,
                           std::string notes) {
    ResidualReport r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    for (auto& c : candidates) evaluate_candidate(c, s);
    r.candidates = std::move(candidates);
    const Candidate* chosen = nullptr;
    for (const auto& c : r.candidates) {
        if (c.vanishes) {
            chosen = &c;
            break;
        }
    }
    if (chosen) {
        r.verdict = true;
        r.max_residual = chosen->max_residual;
        r.convention = chosen == &r.candidates.front() ? "as displayed" : chosen->label;
    } else {
        r.verdict = false;
        r.max_residual = r.candidates.front().max_residual;
        r.convention = "none";
    }
    r.notes = join_notes(notes, "sweep: " + candidate_summary(r.candidates));
    r.param_ranges = s.param_ranges;
    return r;
}

Expr momentum_lower(int A, const Expr& p5) {
    if (A < 4) return catalog::sym::p_lower(A);
    if (A == 5) return p5;
    return Expr(0);
}

Expr box4(const Expr& f) {
    Expr acc;
    for (int a = 0; a < 4; ++a) acc = acc + eta(a) * d(d(f, a), a);
    return acc;
}

Expr box5(const Expr& f) { return box4(f) + eta(5) * d(d(f, 5), 5); }

Expr laplacian3(const Expr& f) {
    Expr acc;
    for (int a = 1; a <= 3; ++a) acc = acc + d(d(f, a), a);
    return acc;
}

// ---------------------------------------------------------------- scalar sector

ScalarSector check_scalar_sector(const ParticleState& state, const FieldAnsatz& ansatz, std::uint64_t seed) {
    state.validate();
    if (ansatz.kind != catalog::AnsatzKind::Scalar) throw AnsatzViolation("scalar sector needs a scalar ansatz");
    const Binding base = state.binding().merged(ansatz.params);
    const Sampling s = sampling_for(base, seed);
    const Expr psi = ansatz.psi();
    const Expr rpsi = inv(psi);
    Metric6 g = catalog::scalar_metric(psi, base);
    ScalarSector out;
    out.curvature = geometry::curvature(g);
    const auto& G = out.curvature.einstein;
    const Expr mh2 = m0() * m0() * inv(hbar() * hbar());
    const Expr kappa_s = inv(m0() * hbar() * hbar());
    const Expr kappa_alt = m0() * inv(hbar() * hbar());

    const Expr kg = box4(psi) * rpsi;
    out.reports.push_back(sweep_claim("scalar.klein_gordon", "eq:klein-gordon-free",
                                      {{"d^a d_a psi - m0^2 psi", {kg - mh2}},
                                       {"d^a d_a psi + m0^2 psi", {kg + mh2}}},
                                      s, "residuals divided by psi"));

    std::vector<Expr> ab;
    std::vector<Expr> a5;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) ab.push_back(G(a, b) + d(d(psi, a), b) * rpsi);
        a5.push_back(G(a, 5) + I() * m0() * inv(hbar()) * d(psi, a) * rpsi);
    }
    out.reports.push_back(literal_claim("scalar.component_ab", "eq:scalar-einstein-ab", ab, s,
                                        "G_ab = -(1/psi) d_a d_b psi"));
    out.reports.push_back(literal_claim("scalar.component_a5", "eq:scalar-einstein-a5", a5, s,
                                        "G_a5 = -(i m0 / hbar psi) d_a psi"));

    auto t_ab = [&](const Expr& k) {
        std::vector<Expr> r;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                r.push_back(G(a, b) - k * momentum_lower(a, m0()) * momentum_lower(b, m0()) * inv(m0()));
        return r;
    };
    out.reports.push_back(sweep_claim("scalar.t_ab", "eq:scalar-energy-momentum",
                                      {{"kappa_s = 1/(m0 hbar^2)", t_ab(kappa_s)}, {"kappa = m0/hbar^2", t_ab(kappa_alt)}},
                                      s, "T_ab = p_a p_b / m0 tested through G_ab = kappa T_ab"));

    out.reports.push_back(literal_claim("scalar.t55", "eq:scalar-einstein-55", {G(5, 5) - mh2}, s,
                                        "kappa T_55 = m0^2/hbar^2 tested as G_55"));

    std::vector<Expr> four;
    for (int b : kNoCharge) four.push_back(G(4, b));
    out.reports.push_back(literal_claim("scalar.t4b", "eq:scalar-einstein-4b", four, s, "kappa T_4b = G_4b = 0"));

    {
        expr::ResidualStats g44 = expr::residual_stats(G(4, 4), s);
        out.reports.push_back(literal_claim("scalar.t44", "eq:scalar-fifth-t", {box5(psi) * rpsi}, s,
                                            "d^A d_A psi / psi over A in {0,1,2,3,5}; reading T_44 as the G_44 slot gives max " +
                                                fmt(g44.max_abs)));
    }

    auto einstein_with = [&](const Expr& k, const Expr& p5) {
        std::vector<Expr> r;
        for (int a : kNoCharge)
            for (int b : kNoCharge) r.push_back(G(a, b) - k * momentum_lower(a, p5) * momentum_lower(b, p5) * inv(m0()));
        return r;
    };
    out.reports.push_back(sweep_claim("scalar.einstein", "eq:einstein-6d",
                                      {{"kappa_s = 1/(m0 hbar^2), p_5 = +m0", einstein_with(kappa_s, m0())},
                                       {"kappa_s = 1/(m0 hbar^2), p_5 = -m0", einstein_with(kappa_s, -m0())},
                                       {"kappa = m0/hbar^2, p_5 = +m0", einstein_with(kappa_alt, m0())},
                                       {"kappa = m0/hbar^2, p_5 = -m0", einstein_with(kappa_alt, -m0())}},
                                      s, "G_AB - kappa p_A p_B / m0 for A,B != 4"));
    return out;
}

ResidualReport check_charge_invariance(const ParticleState& state, std::uint64_t seed) {
    ScalarSector free = check_scalar_sector(state, catalog::plane_wave_scalar(state, false), seed);
    ScalarSector charged = check_scalar_sector(state, catalog::plane_wave_scalar(state, true), seed);
    std::vector<Expr> diffs;
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < free.reports.size(); ++i) {
        const auto& fr = free.reports[i];
        const auto& cr = charged.reports[i];
        if (fr.verdict != cr.verdict || fr.convention != cr.convention) ++mismatched;
        for (std::size_t c = 0; c < fr.candidates.size(); ++c)
            for (std::size_t k = 0; k < fr.candidates[c].residuals.size(); ++k)
                diffs.push_back(cr.candidates[c].residuals[k] - fr.candidates[c].residuals[k]);
    }
    Binding base = state.binding();
    ResidualReport r = literal_claim("scalar.charge_invariance", "eq:charge-decoration", diffs, sampling_for(base, seed),
                                     "residual differences with and without exp(-i n x4/R4) over " +
                                         std::to_string(free.reports.size()) + " claims");
    if (mismatched > 0) {
        r.verdict = false;
        r.notes = join_notes(r.notes, std::to_string(mismatched) + " claims changed verdict or convention");
    }
    return r;
}

QuantumPotentialResult quantum_potential(const Expr& R, const Binding& given, std::uint64_t seed) {
    if (expr::structurally_zero(R)) throw DegenerateField("R is identically zero");
    for (int a : {0, 4, 5})
        if (!expr::structurally_zero(d(R, a))) throw AnsatzViolation("R must depend on x1, x2, x3 only");
    Binding base = given;
    if (!base.has_param("m0")) base.set_param("m0", 1.0);
    if (!base.has_param("hbar")) base.set_param("hbar", 1.0);
    Sampling s = sampling_for(base, seed);
    s.param_ranges["m0"] = {0.5, 2.0};
    s.param_ranges["hbar"] = {0.5, 1.5};
    bool positive = false;
    bool negative = false;
    for (const auto& b : expr::sample_bindings(s)) {
        Complex v = expr::evaluate(R, b);
        if (std::abs(v) < 1e-12) throw DegenerateField("R vanishes inside the sampling box");
        (v.real() > 0.0 ? positive : negative) = true;
    }
    if (positive && negative) throw DegenerateField("R changes sign inside the sampling box");

    QuantumPotentialResult out;
    Binding reference = base;
    if (std::abs(expr::evaluate(R, reference)) < 1e-12) reference.set_coord(1, 0.5).set_coord(2, 0.5).set_coord(3, 0.5);
    Metric6 g = catalog::scalar_metric(R, reference);
    out.ricci_scalar = geometry::ricci_scalar(g);
    out.laplacian_ratio = laplacian3(R) * inv(R);
    const Expr h2m = hbar() * hbar() * inv(Expr(2) * m0());
    out.Q = expr::simplify(-(h2m * out.laplacian_ratio));
    out.T = Expr::parameter("T");
    out.V = Expr::parameter("V");
    out.H = out.T + out.V + out.Q;

    out.reports.push_back(sweep_claim(
        "quantum.ricci_scalar", "eq:ricci-scalar-amplitude",
        {{"nabla^2 = g^ab d_a d_b", {out.ricci_scalar + Expr(2) * box4(R) * inv(R)}},
         {"nabla^2 = d1^2 + d2^2 + d3^2", {out.ricci_scalar + Expr(2) * out.laplacian_ratio}}},
        s, "R-hat = -2 nabla^2 R / R"));

    // Q = -L_E = R-hat / (2 kappa^2).
    auto from_coupling = [&](const Expr& k2) { return out.ricci_scalar * inv(Expr(2) * k2) - out.Q; };
    const Expr hb2 = hbar() * hbar();
    ResidualReport q = sweep_claim("quantum.potential", "eq:quantum-potential",
                                   {{"kappa^2 = 2 hbar^2/m", {from_coupling(Expr(2) * hb2 * inv(m0()))}},
                                    {"kappa^2 = 2 m/hbar^2", {from_coupling(Expr(2) * m0() * inv(hb2))}},
                                    {"kappa^2 = -2 hbar^2/m", {from_coupling(Expr(-2) * hb2 * inv(m0()))}},
                                    {"kappa^2 = -2 m/hbar^2", {from_coupling(Expr(-2) * m0() * inv(hb2))}}},
                                   s, "Q = -L_E with L_E = -R-hat/(2 kappa^2); Q = -(hbar^2/2m) Lap R / R");
    out.kappa2 = q.verdict ? (q.convention == "as displayed" ? q.candidates.front().label : q.convention) : "none";
    out.reports.push_back(std::move(q));
    return out;
}

Quantization quantize(int n, double R4, double R5, double kappa_value, double hbar_value) {
    if (!(R4 > 0.0) || !(R5 > 0.0)) throw DomainError("compact radii must be positive");
    Quantization out;
    out.m0 = n * hbar_value / R5;
    out.e = kappa_value * n / R4;

    const Expr N = Expr::parameter("n");
    const Expr r4 = Expr::parameter("R4");
    const Expr r5 = Expr::parameter("R5");
    const Expr psi_k = Expr::field("psi_k", expr::coord_mask({0, 1, 2, 3}));
    const Expr psi = psi_k * exp(I() * N * x(5) * inv(r5)) * catalog::charge_decoration();
    out.eigen_expr = expr::simplify(d(d(psi, 5), 5) * inv(psi));

    Binding base;
    base.set_param("n", static_cast<double>(n)).set_param("R4", R4).set_param("R5", R5);
    base.set_param("hbar", hbar_value).set_param("kappa", kappa_value);
    base.set_field("psi_k", expr::TestFunction::gaussian({0, 1, 2, 3}, 0.5, {0.1, 0.0, -0.1, 0.2}, 1.0));
    Sampling s = sampling_for(base);
    const Expr target = -(N * N * pow(r5, Rational(-2)));

    ResidualReport eig = sweep_claim("quantize.eigenvalue", "eq:mass-spectrum",
                                     {{"d^5 d_5 with g^55 = -1", {-(out.eigen_expr) - target}},
                                      {"d_5 d_5", {out.eigen_expr - target}}},
                                     s, "eigenvalue -n^2/R5^2 on psi_k exp(i n x5/R5) exp(-i n x4/R4)");
    eig.notes = join_notes(eig.notes, std::string("structural: ") +
                                          (expr::structurally_zero(out.eigen_expr - target) ? "d_5 d_5 psi / psi = -n^2/R5^2"
                                                                                            : "not structural"));
    out.reports.push_back(std::move(eig));

    const Expr mass = N * hbar() * inv(r5);
    out.reports.push_back(literal_claim("quantize.mass", "eq:mass-spectrum",
                                        {mass * mass * inv(hbar() * hbar()) + target}, s,
                                        "m0 = n hbar / R5 gives -m0^2/hbar^2 = -n^2/R5^2; m0 = " + fmt(out.m0)));

    const Expr d4 = expr::simplify(d(psi, 4) * inv(psi));
    out.reports.push_back(sweep_claim("quantize.charge", "eq:charge-quantization",
                                      {{"d_4 psi = -i n/(hbar R4) psi", {d4 + I() * N * inv(hbar() * r4)}},
                                       {"d_4 psi = -i n/R4 psi", {d4 + I() * N * inv(r4)}}},
                                      s, "e = kappa n / R4 = " + fmt(out.e)));
    return out;
}

// ---------------------------------------------------------------- vector sector

std::array<std::array<Expr, 6>, 6> field_strength(const FieldAnsatz& A) {
    std::array<std::array<Expr, 6>, 6> F;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) F[a][b] = a == b ? Expr(0) : d(A[b], a) - d(A[a], b);
    return F;
}

Expr invariant4(const std::array<std::array<Expr, 6>, 6>& F) {
    Expr acc;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) acc = acc + eta(a) * eta(b) * F[a][b] * F[a][b];
    return acc;
}

namespace {

Expr invariant5(const std::array<std::array<Expr, 6>, 6>& F) {
    Expr acc;
    for (int a : kNoCharge)
        for (int b : kNoCharge)
            if (a != b) acc = acc + eta(a) * eta(b) * F[a][b] * F[a][b];
    return acc;
}

Expr dot4(const FieldAnsatz& A) {
    Expr acc;
    for (int a = 0; a < 4; ++a) acc = acc + eta(a) * A[a] * A[a];
    return acc;
}

}  // namespace

Expr static_t44(const FieldAnsatz& A, T44Formula formula) {
    auto F = field_strength(A);
    if (formula == T44Formula::Display) return Expr::rational(1, 4) * invariant4(F) - Expr::rational(1, 2) * m0() * m0() * dot4(A);
    Expr mixed;
    for (int c : kNoCharge) mixed = mixed + eta(c) * F[4][c] * F[4][c];
    return Expr(-1) * invariant5(F) * Expr::rational(1, 4) - mixed;
}

VectorSector check_vector_sector(const ParticleState& state, const FieldAnsatz& A, std::uint64_t seed, bool with_curvature) {
    state.validate();
    if (A.kind != catalog::AnsatzKind::Vector) throw AnsatzViolation("vector sector needs a vector ansatz");
    Binding base = state.binding().merged(A.params);
    const Sampling s = sampling_for(base, seed);
    VectorSector out;
    auto F = field_strength(A);

    std::vector<Expr> div4(4);
    std::vector<Expr> div5(4);
    for (int b = 0; b < 4; ++b) {
        Expr acc;
        for (int a = 0; a < 4; ++a) acc = acc + eta(a) * d(F[a][b], a);
        div4[b] = acc;
        div5[b] = acc + eta(5) * d(F[5][b], 5);
    }
    const Expr m2 = m0() * m0();
    if (state.m0 > 0.0) {
        std::vector<Expr> minus;
        std::vector<Expr> plus;
        for (int b = 0; b < 4; ++b) {
            minus.push_back(div4[b] - m2 * A[b]);
            plus.push_back(div4[b] + m2 * A[b]);
        }
        expr::ResidualStats five = expr::residual_stats(div5, s);
        ResidualReport r = sweep_claim("vector.field_equation", "eq:proca-field",
                                       {{"d^a F_ab - m0^2 A_b", minus}, {"d^a F_ab + m0^2 A_b", plus}}, s,
                                       "five-index divergence d^C F_Cb max " + fmt(five.max_abs));
        r.notes = join_notes(r.notes, std::to_string(r.vanishing_count()) + " of 2 sign conventions vanish");
        out.reports.push_back(std::move(r));
    } else {
        out.reports.push_back(literal_claim("vector.maxwell", "eq:maxwell-vacuum", div4, s, "d^a F_ab = 0 at m0 = 0"));
    }

    const Expr FF = invariant4(F);
    const Expr AA = dot4(A);
    if (state.m0 > 0.0) {
        ResidualReport r = sweep_claim("vector.proca_scalar", "eq:proca-scalar",
                                       {{"F.F/4 - m0^2 A.A/2", {Expr::rational(1, 4) * FF - Expr::rational(1, 2) * m2 * AA}},
                                        {"F.F/4 + m0^2 A.A/2", {Expr::rational(1, 4) * FF + Expr::rational(1, 2) * m2 * AA}}},
                                       s);
        out.reports.push_back(std::move(r));
    } else {
        out.reports.push_back(literal_claim("vector.photon_invariant", "eq:maxwell-invariant", {Expr::rational(1, 4) * FF}, s,
                                            "F.F/4 = 0 for a free plane wave"));
    }

    if (with_curvature) {
        Metric6 g = catalog::vector_metric(A, kappa(), base);
        geometry::Curvature cv = geometry::curvature(g);
        const auto& G = cv.einstein;
        std::vector<Expr> g4;
        for (int b : kNoCharge) g4.push_back(G(4, b));
        out.reports.push_back(literal_claim("vector.einstein_a4", "eq:vector-einstein-a4", g4, s,
                                            "A4 components of the Einstein tensor"));
        const Expr FF5 = invariant5(F);
        auto T = [&](int a, int b) {
            Expr acc = (a == b ? eta(a) : Expr(0)) * FF5 * Expr::rational(1, 4);
            for (int c : kNoCharge) acc = acc - eta(c) * F[a][c] * F[b][c];
            return acc;
        };
        auto with = [&](const Expr& coupling) {
            std::vector<Expr> r;
            for (int a : kNoCharge)
                for (int b : kNoCharge) r.push_back(G(a, b) - coupling * T(a, b));
            return r;
        };
        const Expr k2 = kappa() * kappa();
        out.reports.push_back(sweep_claim("vector.einstein", "eq:vector-einstein",
                                          {{"G_AB = kappa^2 T_AB", with(k2)},
                                           {"G_AB = -kappa^2 T_AB", with(-k2)},
                                           {"G_AB = kappa^2 T_AB / 2", with(Expr::rational(1, 2) * k2)},
                                           {"G_AB = -kappa^2 T_AB / 2", with(Expr::rational(-1, 2) * k2)}},
                                          s, "T_AB = eta_AB F.F/4 - F_A^C F_BC over A,B,C != 4"));
    }
    return out;
}

std::vector<ResidualReport> check_static_t44(double E, double B, std::uint64_t seed) {
    std::vector<ResidualReport> out;
    auto one = [&](const FieldAnsatz& A, const std::string& id, const std::string& name, double value) {
        Binding base = A.params;
        base.set_param("m0", 0.0);
        Sampling s = sampling_for(base, seed);
        Expr half = Expr::rational(1, 2) * Expr::parameter(name) * Expr::parameter(name);
        out.push_back(sweep_claim(id, "eq:static-fifth-t",
                                  {{"T_44 = g_44 F.F/4 - F_4^C F_4C", {static_t44(A, T44Formula::Definition) - half}},
                                   {"T_44 = F.F/4 - m0^2 A.A/2", {static_t44(A, T44Formula::Display) - half}}},
                                  s, "T_44 = " + name + "^2/2 at " + name + " = " + fmt(value)));
    };
    one(catalog::static_electric(E), "vector.t44_static_e", "E", E);
    one(catalog::static_magnetic(B), "vector.t44_static_b", "B", B);
    return out;
}

// ---------------------------------------------------------------- fermion sector

std::array<Expr, 4> dirac_components(const Expr& phase) {
    auto u = catalog::dirac_spinor(1);
    std::array<Expr, 4> phi;
    for (int k = 0; k < 4; ++k) phi[k] = u[k] * phase;
    return phi;
}

Expr dirac_component_residual(const std::array<Expr, 4>& phi, const Derivative& dd) {
    Derivative D = dd ? dd : Derivative([](const Expr& f, int a) { return expr::differentiate(f, a); });
    return D(phi[0], 0) + D(phi[3], 1) - I() * D(phi[3], 2) + D(phi[2], 3) + I() * m0() * phi[0];
}

namespace {

struct FermionClaims {
    std::vector<Expr> plane_wave;
    std::vector<Expr> div_plus;
    std::vector<Expr> div_minus;
};

FermionClaims fermion_claims(const FieldAnsatz& K, const Derivative& D) {
    FermionClaims c;
    for (int a : kNoCharge) {
        Expr acc;
        for (int b : kNoCharge) acc = acc + eta(b) * D(D(K[a], b), b);
        c.plane_wave.push_back(acc);
    }
    Expr div;
    for (int a = 0; a < 4; ++a) div = div + eta(a) * D(K[a], a);
    c.div_plus.push_back(div + I() * m0() * K[5]);
    c.div_minus.push_back(div - I() * m0() * K[5]);
    return c;
}

}  // namespace

FermionSector check_fermion_sector(const ParticleState& state, const FieldAnsatz& K, std::uint64_t seed,
                                   bool with_curvature) {
    state.validate();
    if (K.kind != catalog::AnsatzKind::Fermion) throw AnsatzViolation("fermion sector needs a fermion ansatz");
    Binding base = state.binding().merged(K.params);
    const Sampling s = sampling_for(base, seed);
    FermionSector out;
    Derivative D = [](const Expr& f, int a) { return expr::differentiate(f, a); };
    FermionClaims c = fermion_claims(K, D);
    out.reports.push_back(literal_claim("fermion.plane_wave", "eq:fermion-plane-wave", c.plane_wave, s,
                                        "d^C d_C K_A over C in {0,1,2,3,5}"));
    out.reports.push_back(sweep_claim("fermion.divergence", "eq:fermion-divergence",
                                      {{"d^a K_a + i m0 K_5", c.div_plus}, {"d^a K_a - i m0 K_5", c.div_minus}}, s,
                                      "d^C K_C over C in {0,1,2,3,5} equals the second form"));
    if (K.label == "Dirac ansatz 1") {
        auto phi = dirac_components(catalog::fermion_phase());
        out.reports.push_back(literal_claim("fermion.dirac_component", "eq:dirac-component",
                                            {dirac_component_residual(phi)}, s,
                                            "d0 phi0 + d1 phi3 - i d2 phi3 + d3 phi2 + i m0 phi0"));
    }

    std::array<std::array<Expr, 6>, 6> E;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) E[a][b] = a == b ? Expr(0) : d(K[b], a) - d(K[a], b);
    Expr EE;
    for (int a : kNoCharge)
        for (int b : kNoCharge)
            if (a != b) EE = EE + eta(a) * eta(b) * E[a][b] * E[a][b];
    out.reports.push_back(literal_claim("fermion.e_squared", "eq:fermion-e-squared", {EE}, s, "E_AB E^AB over A,B != 4"));

    Expr KK;
    for (int a : kNoCharge) KK = KK + eta(a) * K[a] * K[a];
    auto T = [&](int a, int b) {
        Expr acc = (a == b ? eta(a) : Expr(0)) * EE * Expr::rational(1, 4);
        for (int c2 : kNoCharge) acc = acc - eta(c2) * E[a][c2] * E[b][c2];
        return acc;
    };
    auto with = [&](const Expr& p5, bool contracted, bool over_mass) {
        std::vector<Expr> r;
        for (int a : kNoCharge) {
            for (int b : kNoCharge) {
                Expr pp = momentum_lower(a, p5) * momentum_lower(b, p5);
                if (over_mass) pp = pp * inv(m0());
                r.push_back(T(a, b) - pp * (contracted ? KK : K[a] * K[b]));
            }
        }
        return r;
    };
    out.reports.push_back(sweep_claim("fermion.energy_momentum", "eq:fermion-energy-momentum",
                                      {{"(p_A p_B / m0) K_A K_B, p_5 = +m0", with(m0(), false, true)},
                                       {"(p_A p_B / m0) K_A K_B, p_5 = -m0", with(-m0(), false, true)},
                                       {"(p_A p_B / m0) K^C K_C, p_5 = +m0", with(m0(), true, true)},
                                       {"(p_A p_B / m0) K^C K_C, p_5 = -m0", with(-m0(), true, true)},
                                       {"p_A p_B K^C K_C, p_5 = +m0", with(m0(), true, false)},
                                       {"p_A p_B K^C K_C, p_5 = -m0", with(-m0(), true, false)}},
                                      s, "T_AB = eta_AB E.E/4 - E_A^C E_BC"));

    if (with_curvature) {
        Metric6 g = catalog::fermion_metric(K, base);
        geometry::Curvature cv = geometry::curvature(g);
        std::vector<Expr> g4;
        for (int b : kNoCharge) g4.push_back(cv.einstein(4, b));
        out.reports.push_back(literal_claim("fermion.einstein_a4", "eq:fermion-einstein-a4", g4, s,
                                            "A4 components of the Einstein tensor"));
    }
    return out;
}

// ---------------------------------------------------------------- frames and coupling

Expr LocalFrame::derivative(const Expr& f, int A) const {
    if (A == 4) return d(f, 4);
    return d(f, A) - a[A] * d(f, 4);
}

Expr LocalFrame::jacobian_row4(int A) const {
    if (A == 4) return Expr(1);
    return Expr(differential_sign) * a[A];
}

LocalFrame local_inertial_frame(const Metric6& metric, std::uint64_t seed) {
    if (!expr::structurally_zero(metric(4, 4) + Expr(1))) throw UnsupportedMetric("g_44 must be -1");
    LocalFrame fr;
    for (int A = 0; A < kDim; ++A) fr.a[A] = A == 4 ? Expr(0) : expr::simplify(-metric(A, 4));
    for (int A : kNoCharge)
        for (int B : kNoCharge)
            if (!expr::structurally_zero(metric(A, B) - (A == B ? eta(A) : Expr(0)) + fr.a[A] * fr.a[B]))
                throw UnsupportedMetric("g_AB is not eta_AB - a_A a_B");

    const Sampling s = sampling_for(metric.reference(), seed);
    // Pullback of the flat interval under dx4' = dx4 + sign a_A dx^A.
    auto pullback = [&](int sign) {
        std::vector<Expr> r;
        auto L = [&](int c, int A) {
            Expr delta = Expr(c == A ? 1 : 0);
            return c == 4 && A != 4 ? delta + Expr(sign) * fr.a[A] : delta;
        };
        for (int A = 0; A < kDim; ++A) {
            for (int B = A; B < kDim; ++B) {
                Expr acc;
                for (int c = 0; c < kDim; ++c) acc = acc + eta(c) * L(c, A) * L(c, B);
                r.push_back(metric(A, B) - acc);
            }
        }
        return r;
    };
    fr.pullback = sweep_claim("frame.pullback", "eq:local-inertial-frame",
                              {{"dx4' = dx4 - a_A dx^A", pullback(-1)}, {"dx4' = dx4 + a_A dx^A", pullback(1)}}, s,
                              "a_A = -g_A4; flat interval after the transform");
    fr.differential_sign = fr.pullback.verdict && fr.pullback.convention != "as displayed" ? 1 : -1;

    // d'_A = sum_B (L^-1)_BA d_B with L^-1 = I - sign e4 a^T.
    Binding probe = metric.reference();
    probe.set_field("f", expr::TestFunction::product_of_sinusoids({0, 1, 2, 3, 4, 5}, {0.7, 1.1, 0.9, 1.3, 0.6, 0.8},
                                                                  {0.2, 0.4, 0.1, 0.3, 0.5, 0.6}));
    const Expr f = Expr::field("f", expr::coord_mask({0, 1, 2, 3, 4, 5}));
    std::vector<Expr> rule;
    for (int A = 0; A < kDim; ++A) {
        Expr chain = d(f, A);
        if (A != 4) chain = chain - Expr(fr.differential_sign) * fr.a[A] * d(f, 4);
        rule.push_back(fr.derivative(f, A) - chain);
    }
    fr.derivative_rule = literal_claim("frame.derivative_rule", "eq:local-inertial-derivative", rule,
                                       sampling_for(probe, seed),
                                       "d'_A = d_A - a_A d_4 against the chain rule of the chosen differential");
    return fr;
}

std::vector<ResidualReport> minimal_coupling(const ParticleState& state, const std::array<double, 4>& a_lower,
                                             std::uint64_t seed) {
    state.validate();
    FieldAnsatz pot = catalog::constant_potential(a_lower);
    Binding base = state.binding().merged(pot.params);
    Metric6 g = catalog::vector_metric(pot, kappa(), base);
    LocalFrame fr = local_inertial_frame(g, seed);
    const Sampling s = sampling_for(base, seed);

    // Canonical momentum p + e A in the phase.
    Expr shift;
    for (int a = 0; a < 4; ++a) shift = shift + charge() * pot[a] * x(a);
    const Expr shift_phase = exp(-I() * shift);

    Derivative framed = [&](const Expr& f, int a) { return fr.derivative(f, a); };
    Derivative opposite = [&](const Expr& f, int a) { return a == 4 ? d(f, 4) : d(f, a) + fr.a[a] * d(f, 4); };

    std::vector<ResidualReport> out;
    {
        FieldAnsatz psi = catalog::plane_wave_scalar(state, true);
        Expr phi = psi.psi() * shift_phase;
        auto kg = [&](const Derivative& D) {
            Expr acc;
            for (int a = 0; a < 4; ++a) acc = acc + eta(a) * D(D(phi, a), a);
            return (acc + m0() * m0() * inv(hbar() * hbar()) * phi) * inv(phi);
        };
        out.push_back(sweep_claim("coupling.klein_gordon", "eq:charged-klein-gordon",
                                  {{"(d^a + i e A^a)(d_a + i e A_a) psi + m0^2 psi", {kg(framed)}},
                                   {"(d^a - i e A^a)(d_a - i e A_a) psi + m0^2 psi", {kg(opposite)}}},
                                  s, "d_a replaced by d'_a = d_a - kappa A_a d_4 on psi carrying exp(-i n x4/R4)"));
    }
    if (state.p[3] != 0.0) {
        FieldAnsatz K = catalog::dirac_ansatz(state, 1, true);
        for (auto& c : K.components) c = c * shift_phase;
        FermionClaims fc = fermion_claims(K, framed);
        FermionClaims fo = fermion_claims(K, opposite);
        out.push_back(sweep_claim("coupling.fermion_plane_wave", "eq:charged-fermion-plane-wave",
                                  {{"d -> d + i e A", fc.plane_wave}, {"d -> d - i e A", fo.plane_wave}}, s));
        out.push_back(sweep_claim("coupling.fermion_divergence", "eq:charged-fermion-divergence",
                                  {{"d -> d + i e A, d^a K_a - i m0 K_5", fc.div_minus},
                                   {"d -> d - i e A, d^a K_a - i m0 K_5", fo.div_minus}},
                                  s));
    }
    {
        Expr phase = catalog::fermion_phase() * catalog::charge_decoration() * shift_phase;
        auto phi = dirac_components(phase);
        out.push_back(sweep_claim("coupling.dirac_component", "eq:charged-dirac-component",
                                  {{"d -> d + i e A", {dirac_component_residual(phi, framed)}},
                                   {"d -> d - i e A", {dirac_component_residual(phi, opposite)}}},
                                  s));
    }
    for (auto& r : out)
        r.notes = join_notes(r.notes, "frame differential " +
                                          std::string(fr.differential_sign > 0 ? "dx4' = dx4 + a dx" : "dx4' = dx4 - a dx"));
    return out;
}

double berry_phase(const std::array<Expr, 4>& A_lower, const Binding& params,
                   const std::vector<std::array<double, 4>>& path, double e) {
    if (path.size() < 2) throw OpenPath("a closed path needs at least two vertices");
    const auto& first = path.front();
    const auto& last = path.back();
    double gap = 0.0;
    for (int k = 0; k < 4; ++k) gap = std::max(gap, std::abs(first[k] - last[k]));
    if (gap > 1e-12) throw OpenPath("path does not return to its start");

    // Five-point Gauss-Legendre nodes and weights on [-1, 1].
    static const double nodes[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static const double weights[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                                      0.2369268850561891};

    Binding b = params;
    auto integrand = [&](const std::array<double, 4>& p, const std::array<double, 4>& dir) {
        for (int k = 0; k < 4; ++k) b.set_coord(k, p[k]);
        Complex acc = 0.0;
        for (int k = 0; k < 4; ++k)
            if (dir[k] != 0.0) acc += expr::evaluate(A_lower[k], b) * dir[k];
        return acc.real();
    };
    auto segment = [&](const std::array<double, 4>& p0, const std::array<double, 4>& p1, int panels) {
        std::array<double, 4> dir;
        for (int k = 0; k < 4; ++k) dir[k] = p1[k] - p0[k];
        double total = 0.0;
        for (int j = 0; j < panels; ++j) {
            double lo = static_cast<double>(j) / panels;
            double hi = static_cast<double>(j + 1) / panels;
            double mid = 0.5 * (lo + hi);
            double half = 0.5 * (hi - lo);
            for (int q = 0; q < 5; ++q) {
                double t = mid + half * nodes[q];
                std::array<double, 4> p;
                for (int k = 0; k < 4; ++k) p[k] = p0[k] + t * dir[k];
                total += weights[q] * half * integrand(p, dir);
            }
        }
        return total;
    };

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        double coarse = segment(path[i], path[i + 1], 1);
        double value = coarse;
        for (int panels = 2; panels <= 1 << 12; panels *= 2) {
            double fine = segment(path[i], path[i + 1], panels);
            // Richardson step for the order-10 rule.
            value = fine + (fine - coarse) / 1023.0;
            if (std::abs(fine - coarse) <= 1e-12 * (1.0 + std::abs(fine))) break;
            coarse = fine;
        }
        sum += value;
    }
    return e * sum;
}

}  // namespace tritime::fieldcheck

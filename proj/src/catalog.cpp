#include "tritime/catalog.hpp"

#include <cmath>

#include "tritime/errors.hpp"

namespace tritime::catalog {

using expr::Complex;
using expr::kDim;
using expr::Number;
using expr::Rational;

namespace {

Expr x(int i) { return Expr::coordinate(i); }
const Expr& I() {
    static const Expr i = Expr::imaginary_unit();
    return i;
}

Expr par(const std::string& name) { return Expr::parameter(name); }

void require_ansatz(bool ok, const std::string& what) {
    if (!ok) throw AnsatzViolation(what);
}

}  // namespace

namespace sym {
Expr m0() { return par("m0"); }
Expr hbar() { return par("hbar"); }
Expr kappa() { return par("kappa"); }
Expr charge() { return par("e"); }
Expr mode() { return par("n"); }
Expr R4() { return par("R4"); }
Expr R5() { return par("R5"); }
Expr p(int alpha) { return par("p" + std::to_string(alpha)); }
Expr p_lower(int alpha) { return alpha == 0 ? p(0) : -p(alpha); }
Expr p_dot_x() {
    Expr acc = p(0) * x(0);
    for (int a = 1; a < 4; ++a) acc = acc - p(a) * x(a);
    return acc;
}
}  // namespace sym

ParticleState ParticleState::on_shell(double m0, double p1, double p2, double p3) {
    ParticleState s;
    s.m0 = m0;
    s.p = {std::sqrt(m0 * m0 + p1 * p1 + p2 * p2 + p3 * p3), p1, p2, p3};
    return s;
}

double ParticleState::mass_shell_residual() const {
    return p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3] - m0 * m0;
}

bool ParticleState::is_on_shell(double tol) const {
    return std::abs(mass_shell_residual()) <= tol * std::max(1.0, p[0] * p[0]);
}

void ParticleState::validate() const {
    if (!(m0 >= 0.0)) throw DomainError("rest mass must be non-negative");
    if (!(R4 > 0.0) || !(R5 > 0.0)) throw DomainError("compact radii must be positive");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    if (on_shell_flag && !is_on_shell()) throw OffShell("p.p - m0^2 = " + std::to_string(mass_shell_residual()));
}

Binding ParticleState::binding() const {
    Binding b;
    b.set_param("m0", m0)
        .set_param("hbar", hbar)
        .set_param("kappa", kappa)
        .set_param("n", static_cast<double>(n))
        .set_param("R4", R4)
        .set_param("R5", R5)
        .set_param("e", kappa * n / R4);
    for (int a = 0; a < 4; ++a) b.set_param("p" + std::to_string(a), p[static_cast<std::size_t>(a)]);
    return b;
}

Expr charge_decoration() { return exp(-I() * sym::mode() * x(4) / sym::R4()); }

Binding reference_binding(const ParticleState& s, const Binding& extra) { return s.binding().merged(extra); }

Metric6 scalar_metric(const Expr& psi, const Binding& reference) {
    if (expr::structurally_zero(psi)) throw DegenerateField("psi is identically zero");
    Matrix6 g = geometry::flat_components();
    g[4][4] = -(psi * psi);
    return Metric6(g, reference);
}

std::array<std::array<Expr, 5>, 5> kaluza5_metric(const std::array<Expr, 4>& A, const Expr& psi) {
    std::array<std::array<Expr, 5>, 5> g;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) g[a][b] = Expr(a == b ? geometry::kEta[a] : 0) - psi * A[a] * A[b];
        g[a][4] = -(psi * A[a]);
        g[4][a] = -(psi * A[a]);
    }
    g[4][4] = -psi;
    return g;
}

Metric6 vector_metric(const FieldAnsatz& A, const Expr& kappa, const Binding& reference) {
    require_ansatz(A.kind == AnsatzKind::Vector, "vector_metric needs a vector ansatz");
    require_ansatz(expr::structurally_zero(A[5]), "A_5 must vanish");
    require_ansatz(expr::structurally_zero(A[4]), "A_4 must vanish");
    for (int a = 0; a < 4; ++a)
        require_ansatz(expr::structurally_zero(expr::differentiate(A[a], 4)), "d_4 A_alpha must vanish");
    Matrix6 g = geometry::flat_components();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) g[a][b] = g[a][b] - kappa * kappa * A[a] * A[b];
        g[a][4] = -(kappa * A[a]);
        g[4][a] = -(kappa * A[a]);
    }
    return Metric6(g, reference.merged(A.params));
}

Metric6 fermion_metric(const FieldAnsatz& K, const Binding& reference) {
    require_ansatz(K.kind == AnsatzKind::Fermion, "fermion_metric needs a fermion ansatz");
    require_ansatz(expr::structurally_zero(K[4]), "K_4 must vanish");
    Matrix6 g = geometry::flat_components();
    bool vacuum = true;
    for (const auto& c : K.components) vacuum = vacuum && expr::structurally_zero(c);
    if (vacuum) return Metric6(g, reference.merged(K.params));
    require_ansatz(!expr::structurally_zero(K[5]), "K_5 must not vanish");
    for (int a = 0; a < kDim; ++a) {
        if (a == 4) continue;
        for (int b = 0; b < kDim; ++b) {
            if (b == 4) continue;
            g[a][b] = g[a][b] - K[a] * K[b];
        }
        g[a][4] = -K[a];
        g[4][a] = -K[a];
    }
    return Metric6(g, reference.merged(K.params));
}

FieldAnsatz plane_wave_scalar(const ParticleState& s, bool charged) {
    s.validate();
    FieldAnsatz f;
    f.kind = AnsatzKind::Scalar;
    f.charged = charged;
    f.label = charged ? "charged plane-wave scalar" : "plane-wave scalar";
    Expr psi = exp(-I() * (sym::p_dot_x() - sym::m0() * x(5)) / sym::hbar());
    if (charged) psi = charge_decoration() * psi;
    f.components[0] = psi;
    return f;
}

Expr amplitude_field(const std::string& name) { return Expr::field(name, expr::coord_mask({1, 2, 3})); }

FieldAnsatz vector_plane_wave(const ParticleState& s, const std::array<Complex, 4>& polarization_lower) {
    s.validate();
    FieldAnsatz f;
    f.kind = AnsatzKind::Vector;
    f.label = "vector plane wave";
    Expr phase = exp(-I() * (sym::p_dot_x() - sym::m0() * x(5)));
    for (int a = 0; a < 4; ++a) {
        std::string name = "eps" + std::to_string(a);
        f.components[static_cast<std::size_t>(a)] = par(name) * phase;
        f.params.set_param(name, polarization_lower[static_cast<std::size_t>(a)]);
    }
    return f;
}

std::array<Complex, 4> transverse_polarization(const ParticleState& s, int which) {
    double px = s.p[1], py = s.p[2], pz = s.p[3];
    double pn = std::sqrt(px * px + py * py + pz * pz);
    std::array<double, 3> k = pn > 0 ? std::array<double, 3>{px / pn, py / pn, pz / pn} : std::array<double, 3>{0, 0, 1};
    // Two unit vectors orthogonal to k.
    std::array<double, 3> ref = std::abs(k[2]) < 0.9 ? std::array<double, 3>{0, 0, 1} : std::array<double, 3>{1, 0, 0};
    std::array<double, 3> e1{k[1] * ref[2] - k[2] * ref[1], k[2] * ref[0] - k[0] * ref[2], k[0] * ref[1] - k[1] * ref[0]};
    double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (auto& v : e1) v /= n1;
    std::array<double, 3> e2{k[1] * e1[2] - k[2] * e1[1], k[2] * e1[0] - k[0] * e1[2], k[0] * e1[1] - k[1] * e1[0]};
    std::array<Complex, 4> eps{};
    if (which == 2) {
        // Longitudinal: eps^mu = (|p|, E k) / m0, lowered.
        if (!(s.m0 > 0.0)) throw DomainError("longitudinal polarization needs m0 > 0");
        eps[0] = pn / s.m0;
        for (int i = 0; i < 3; ++i) eps[static_cast<std::size_t>(i + 1)] = -s.p[0] * k[static_cast<std::size_t>(i)] / s.m0;
        return eps;
    }
    const auto& e = which == 0 ? e1 : e2;
    for (int i = 0; i < 3; ++i) eps[static_cast<std::size_t>(i + 1)] = -e[static_cast<std::size_t>(i)];
    return eps;
}

FieldAnsatz static_electric(double E) {
    FieldAnsatz f;
    f.kind = AnsatzKind::Vector;
    f.label = "static electric field";
    f.components[0] = -(par("E") * x(1));
    f.params.set_param("E", E);
    return f;
}

FieldAnsatz static_magnetic(double B) {
    FieldAnsatz f;
    f.kind = AnsatzKind::Vector;
    f.label = "static magnetic field";
    f.components[1] = Expr::rational(1, 2) * par("B") * x(2);
    f.components[2] = Expr::rational(-1, 2) * par("B") * x(1);
    f.params.set_param("B", B);
    return f;
}

FieldAnsatz constant_potential(const std::array<double, 4>& a_lower) {
    FieldAnsatz f;
    f.kind = AnsatzKind::Vector;
    f.label = "constant potential";
    for (int a = 0; a < 4; ++a) {
        std::string name = "a" + std::to_string(a);
        f.components[static_cast<std::size_t>(a)] = par(name);
        f.params.set_param(name, a_lower[static_cast<std::size_t>(a)]);
    }
    return f;
}

std::array<Expr, 4> dirac_spinor(int index) {
    using sym::m0;
    using sym::p;
    Expr inv = pow(m0() + p(0), Rational(-1));
    Expr norm = sqrt(m0() + p(0)) * pow(Expr(2) * m0(), Rational(-1, 2));
    Expr plus = (p(1) + I() * p(2)) * inv;
    Expr minus = (p(1) - I() * p(2)) * inv;
    Expr z = p(3) * inv;
    std::array<Expr, 4> s;
    switch (index) {
        case 1: s = {Expr(1), Expr(0), z, plus}; break;
        case 2: s = {Expr(0), Expr(1), minus, -z}; break;
        case 3: s = {z, plus, Expr(1), Expr(0)}; break;
        case 4: s = {minus, -z, Expr(0), Expr(1)}; break;
        default: throw DomainError("spinor index must be 1..4");
    }
    for (auto& c : s) c = norm * c;
    return s;
}

Number gamma_entry(int alpha, int mu, int nu) {
    if (alpha == 0) return (mu == nu) ? Number(mu < 2 ? 1 : -1) : Number(0);
    // Off-diagonal blocks: +sigma upper right, -sigma lower left.
    bool upper = mu < 2 && nu >= 2;
    bool lower = mu >= 2 && nu < 2;
    if (!upper && !lower) return Number(0);
    int r = mu % 2;
    int c = nu % 2;
    Number v(0);
    switch (alpha) {
        case 1: v = (r != c) ? Number(1) : Number(0); break;
        case 2: v = (r == c) ? Number(0) : (r == 0 ? Number(Rational(0), Rational(-1)) : Number(Rational(0), Rational(1))); break;
        case 3: v = (r == c) ? Number(r == 0 ? 1 : -1) : Number(0); break;
        default: throw DomainError("gamma index must be 0..3");
    }
    return upper ? v : -v;
}

Expr fermion_phase() { return exp(-I() * (sym::p_dot_x() - sym::m0() * x(5))); }

Expr fermion_constant() { return sqrt(Expr(2) * (sym::m0() + sym::p(0))) * pow(sym::p(3), Rational(-1)); }

FieldAnsatz dirac_ansatz(const ParticleState& s, int index, bool charged) {
    s.validate();
    if (s.p[3] == 0.0) throw DegenerateMomentum("p3 = 0 leaves C = sqrt(2(m0+p0))/p3 undefined");
    if (index < 1 || index > 4) throw DomainError("solution index must be 1..4");
    std::array<Expr, 4> spinor = dirac_spinor(index);
    // Row k of I = diag(1,-1,-1,-1).
    const int k = index - 1;
    const int row_sign = k == 0 ? 1 : -1;
    Expr phase = fermion_phase();
    if (charged) phase = charge_decoration() * phase;
    Expr C = fermion_constant();
    FieldAnsatz f;
    f.kind = AnsatzKind::Fermion;
    f.charged = charged;
    f.label = "Dirac ansatz " + std::to_string(index);
    for (int a = 0; a < 4; ++a) {
        Expr acc;
        for (int nu = 0; nu < 4; ++nu) {
            Number gm = gamma_entry(a, k, nu);
            if (gm.is_zero()) continue;
            acc = acc + Expr(gm) * spinor[static_cast<std::size_t>(nu)];
        }
        f.components[static_cast<std::size_t>(a)] =
            expr::simplify(Expr(geometry::kEta[a] * row_sign) * C * acc * phase);
    }
    f.components[4] = Expr(0);
    f.components[5] = expr::simplify(Expr(geometry::kEta[5]) * f.components[0]);
    return f;
}

}  // namespace tritime::catalog

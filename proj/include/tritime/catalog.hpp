#pragma once

#include <array>
#include <string>

#include "tritime/binding.hpp"
#include "tritime/expr.hpp"
#include "tritime/geometry.hpp"

namespace tritime::catalog {

using expr::Binding;
using expr::Expr;
using geometry::Matrix6;
using geometry::Metric6;

/// Named parameters shared by every catalog expression.
namespace sym {
Expr m0();
Expr hbar();
Expr kappa();
Expr charge();   // e
Expr mode();     // n
Expr R4();
Expr R5();
/// Contravariant momentum p^alpha.
Expr p(int alpha);
/// Covariant momentum p_alpha = eta_{alpha alpha} p^alpha.
Expr p_lower(int alpha);
/// p_alpha x^alpha.
Expr p_dot_x();
}  // namespace sym

/// Rest mass, 4-momentum (contravariant), charge/mass mode and compact radii.
struct ParticleState {
    double m0 = 1.0;
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};
    int n = 1;
    double R4 = 1.0;
    double R5 = 1.0;
    double kappa = 1.0;
    double hbar = 1.0;
    bool on_shell_flag = true;

    /// State with p^0 fixed by the mass shell.
    static ParticleState on_shell(double m0, double p1, double p2, double p3);

    double mass_shell_residual() const;  // p.p - m0^2
    bool is_on_shell(double tol = 1e-9) const;
    double kappa_s() const { return 1.0 / (m0 * hbar * hbar); }
    double p_lower(int alpha) const { return alpha == 0 ? p[0] : -p[static_cast<std::size_t>(alpha)]; }

    /// Throws OffShell or DomainError when the state violates its invariants.
    void validate() const;

    /// Values for every symbol in `sym`; e = kappa n / R4.
    Binding binding() const;
};

enum class AnsatzKind { Scalar, Vector, Fermion };

/// Field components indexed by the six coordinates (scalar uses slot 0).
struct FieldAnsatz {
    AnsatzKind kind = AnsatzKind::Scalar;
    std::array<Expr, expr::kDim> components{};
    bool charged = false;
    std::string label;
    Binding params;  // additional parameter values (polarizations, field strengths)

    const Expr& psi() const { return components[0]; }
    const Expr& operator[](int a) const { return components[static_cast<std::size_t>(a)]; }
};

/// exp(-i n x4 / R4)
Expr charge_decoration();

/// Reference binding: origin, state parameters, plus the given extras.
Binding reference_binding(const ParticleState& s, const Binding& extra = {});

/// diag(1,-1,-1,-1,-psi^2,-1).
Metric6 scalar_metric(const Expr& psi, const Binding& reference);

/// The five-dimensional Kaluza block: (g - psi A A, -psi A; -psi A, -psi).
std::array<std::array<Expr, 5>, 5> kaluza5_metric(const std::array<Expr, 4>& A, const Expr& psi);

/// g_ab - kappa^2 A_a A_b, g_a4 = -kappa A_a, g_44 = -1, g_55 = -1.
Metric6 vector_metric(const FieldAnsatz& A, const Expr& kappa, const Binding& reference);

/// g_AB - K_A K_B (A,B != 4), g_A4 = -K_A, g_44 = -1.
Metric6 fermion_metric(const FieldAnsatz& K, const Binding& reference);

/// psi = exp(-i (p_alpha x^alpha - m0 x5) / hbar), optionally charge-decorated.
FieldAnsatz plane_wave_scalar(const ParticleState& s, bool charged = false);

/// Formal time-independent amplitude R(x1, x2, x3).
Expr amplitude_field(const std::string& name = "R");

/// A_alpha = eps_alpha exp(-i (p.x - m0 x5)) with parameters eps0..eps3 (lower index).
FieldAnsatz vector_plane_wave(const ParticleState& s, const std::array<expr::Complex, 4>& polarization_lower);

/// A transverse unit polarization for the state's momentum.
std::array<expr::Complex, 4> transverse_polarization(const ParticleState& s, int which = 0);

/// Static potentials: A_0 = -E x1 (electric); A_1 = B x2 / 2, A_2 = -B x1 / 2 (magnetic along x3).
FieldAnsatz static_electric(double E);
FieldAnsatz static_magnetic(double B);

/// Constant potential A_alpha = a_alpha (lower index).
FieldAnsatz constant_potential(const std::array<double, 4>& a_lower);

/// Dirac spinors in the Dirac-Pauli representation: u1, u2, v1, v2 (index 1..4).
std::array<Expr, 4> dirac_spinor(int index);

/// Gamma matrix entries gamma^alpha_{mu nu} (Dirac-Pauli).
expr::Number gamma_entry(int alpha, int mu, int nu);

/// K_alpha = C g_aa I_{k mu} gamma^alpha_{mu nu} s_nu Phi, K_5 = g_55 K_0, K_4 = 0.
FieldAnsatz dirac_ansatz(const ParticleState& s, int index, bool charged = false);

/// Phi = exp(-i (p_alpha x^alpha - m0 x5)) in natural units.
Expr fermion_phase();

/// C = sqrt(2 (m0 + p0)) / p3
Expr fermion_constant();

}  // namespace tritime::catalog

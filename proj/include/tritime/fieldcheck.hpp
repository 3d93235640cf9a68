#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tritime/catalog.hpp"
#include "tritime/geometry.hpp"
#include "tritime/sampling.hpp"

namespace tritime::fieldcheck {

using catalog::FieldAnsatz;
using catalog::ParticleState;
using expr::Binding;
using expr::Expr;
using expr::Sampling;

/// One convention tried for a claim and how far its residual is from zero.
struct Candidate {
    std::string label;
    std::vector<Expr> residuals;
    double max_residual = 0.0;
    bool vanishes = false;
};

/// Outcome of one verified claim.
struct ResidualReport {
    std::string id;
    std::string anchor;
    bool verdict = false;
    double max_residual = 0.0;
    std::string convention;  // "as displayed" or the label of the convention that vanished
    std::string notes;
    std::vector<Candidate> candidates;
    std::map<std::string, std::pair<double, double>> param_ranges;

    /// Number of candidates whose residual vanished.
    int vanishing_count() const;
    bool literal_holds() const { return !candidates.empty() && candidates.front().vanishes; }
};

/// Evaluate a single convention (verdict = it vanishes).
ResidualReport literal_claim(std::string id, std::string anchor, std::vector<Expr> residuals, const Sampling& s,
                             std::string notes = {});

/// Evaluate every candidate; the first is the displayed form. The verdict is true
/// when some candidate vanishes, and `convention` names the first one that does.
ResidualReport sweep_claim(std::string id, std::string anchor, std::vector<Candidate> candidates, const Sampling& s,
                           std::string notes = {});

/// Sampling over the coordinate box with the given parameters fixed.
Sampling sampling_for(const Binding& base, std::uint64_t seed = 1);

/// Lower-index momentum p_A for A != 4, with p_5 supplied.
Expr momentum_lower(int A, const Expr& p5);

/// d^C d_C over C in {0,1,2,3,5} (flat signature).
Expr box5(const Expr& f);
/// d^a d_a over the four spacetime coordinates.
Expr box4(const Expr& f);
/// d1^2 + d2^2 + d3^2.
Expr laplacian3(const Expr& f);

// ---------------------------------------------------------------- scalar sector

struct ScalarSector {
    std::vector<ResidualReport> reports;
    geometry::Curvature curvature;
};

/// Klein-Gordon, component and energy-momentum claims for a plane-wave scalar.
ScalarSector check_scalar_sector(const ParticleState& state, const FieldAnsatz& psi, std::uint64_t seed = 1);

/// Residual equality of every scalar claim with and without the charge decoration.
ResidualReport check_charge_invariance(const ParticleState& state, std::uint64_t seed = 1);

struct QuantumPotentialResult {
    Expr ricci_scalar;
    Expr laplacian_ratio;  // Lap R / R
    Expr Q;                // -(hbar^2 / 2m) Lap R / R
    Expr T;
    Expr V;
    Expr H;                // T + V + Q
    std::string kappa2;    // coupling under which -R/(2 kappa^2) reproduces Q
    std::vector<ResidualReport> reports;
};

/// Ricci scalar of diag(1,-1,-1,-1,-R^2,-1) and the quantum potential built from it.
/// `R` may be a field symbol (bound in `base`) or an explicit expression of x1..x3.
QuantumPotentialResult quantum_potential(const Expr& R, const Binding& base, std::uint64_t seed = 1);

struct Quantization {
    double m0 = 0.0;
    double e = 0.0;
    Expr eigen_expr;  // d5 d5 psi / psi, simplified
    std::vector<ResidualReport> reports;
};

Quantization quantize(int n, double R4, double R5, double kappa, double hbar = 1.0);

// ---------------------------------------------------------------- vector sector

/// F_AB = d_A A_B - d_B A_A over all six coordinates.
std::array<std::array<Expr, 6>, 6> field_strength(const FieldAnsatz& A);

/// F_ab F^ab over a, b in {0,1,2,3} with the flat metric.
Expr invariant4(const std::array<std::array<Expr, 6>, 6>& F);

enum class T44Formula { Definition, Display };

/// T_44 for a static potential: the definition g44 F.F/4 - F_4^C F_4C, or the display F.F/4 - m0^2 A.A/2.
Expr static_t44(const FieldAnsatz& A, T44Formula formula);

struct VectorSector {
    std::vector<ResidualReport> reports;
};

/// Field equation, Proca scalar, Maxwell limit and Einstein components for a plane wave.
VectorSector check_vector_sector(const ParticleState& state, const FieldAnsatz& A, std::uint64_t seed = 1,
                                 bool with_curvature = true);

/// T_44 = E^2/2 and T_44 = B^2/2 for static fields; each claim sweeps both T_44 formulas.
std::vector<ResidualReport> check_static_t44(double E, double B, std::uint64_t seed = 1);

// ---------------------------------------------------------------- fermion sector

struct FermionSector {
    std::vector<ResidualReport> reports;
};

FermionSector check_fermion_sector(const ParticleState& state, const FieldAnsatz& K, std::uint64_t seed = 1,
                                   bool with_curvature = false);

/// phi_nu = u1_nu exp(-i (p.x - m0 x5)) and the x3-representation component residual
/// d0 phi0 + d1 phi3 - i d2 phi3 + d3 phi2 + i m0 phi0.
std::array<Expr, 4> dirac_components(const Expr& phase);
using Derivative = std::function<Expr(const Expr&, int)>;
Expr dirac_component_residual(const std::array<Expr, 4>& phi, const Derivative& d = {});

// ---------------------------------------------------------------- frames and coupling

/// Coordinates in which a vector or fermion metric is flat.
struct LocalFrame {
    std::array<Expr, 6> a;       // a_A = -g_A4 (a_4 = 0)
    int differential_sign = 1;   // dx4' = dx4 + sign * a_A dx^A
    ResidualReport pullback;     // sweep over the sign of the differential
    ResidualReport derivative_rule;

    /// d'_A f = d_A f - a_A d_4 f
    Expr derivative(const Expr& f, int A) const;
    /// Row of the Jacobian d x'^4 / d x^A.
    Expr jacobian_row4(int A) const;
};

/// Throws UnsupportedMetric unless g44 = -1 and g_AB = eta_AB - a_A a_B.
LocalFrame local_inertial_frame(const geometry::Metric6& metric, std::uint64_t seed = 1);

/// Charged-sector residuals from the free equations with d replaced by the frame derivative.
/// `a_lower` is a constant external potential A_alpha.
std::vector<ResidualReport> minimal_coupling(const ParticleState& state, const std::array<double, 4>& a_lower,
                                             std::uint64_t seed = 1);

/// e * closed line integral of A_alpha dx^alpha along a polyline of 4-positions.
double berry_phase(const std::array<Expr, 4>& A_lower, const Binding& params,
                   const std::vector<std::array<double, 4>>& path, double e);

}  // namespace tritime::fieldcheck

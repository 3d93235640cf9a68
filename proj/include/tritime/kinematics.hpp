#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tritime/catalog.hpp"
#include "tritime/fieldcheck.hpp"

namespace tritime::kinematics {

using catalog::ParticleState;
using expr::Complex;
using expr::Expr;
using fieldcheck::ResidualReport;

/// Worldline parameters; in worldline expressions they are coordinates 0, 1, 2.
struct ThreeTimePoint {
    double tau = 0.0;
    double sigma = 0.0;
    double phi = 0.0;

    /// sigma and phi reduced to [0, 2 pi).
    ThreeTimePoint normalized() const;
};

Expr tau();
Expr sigma();
Expr phi();

/// Sign of the exponent in the spatial slot of x_phi.
enum class PhiSpatialPhase {
    AsDisplayed,  // exp(-i m0 (tau + phi)), as in the x_phi display
    Matched,      // exp(+i m0 (tau + phi)), as in the total trajectory display
};

struct WorldlineOptions {
    std::array<double, 4> q{};                // initial position
    std::array<double, 3> direction{};        // n; zero picks p/|p| (or e3 at rest)
    Expr R0 = Expr(1);                        // R(x_0)
    Expr Ri = Expr(1);                        // R(x_i)
    Expr R5 = Expr(1);                        // R(x_5)
    Complex alpha{1.0, 0.0};                  // amplitude of x_sigma
    Complex beta{1.0, 0.0};                   // amplitude of x_phi
    bool reality = false;                     // impose alpha = beta and sigma = phi
    PhiSpatialPhase phi_phase = PhiSpatialPhase::Matched;
    expr::Binding extra;                      // values for parameters used in R0, Ri, R5
};

using Vector6 = std::array<Expr, 6>;

/// The three worldlines of a free particle as expressions in (tau, sigma, phi).
struct WorldlineSet {
    ParticleState state;
    WorldlineOptions options;
    std::array<double, 3> n{};
    Vector6 x_tau;
    Vector6 x_sigma;
    Vector6 x_phi;          // with options.phi_phase
    Vector6 x_phi_other;    // with the opposite spatial phase

    /// q + x_tau + x_sigma + x_phi.
    Vector6 total(bool other_phase = false) const;
    /// State parameters, q0..q3 and options.extra.
    expr::Binding binding() const;
    /// Numeric position at a parameter point (phi replaced by sigma under the reality flag).
    std::array<Complex, 6> position(const ThreeTimePoint& t, bool other_phase = false) const;
};

/// Throws OffShell, or DomainError when an R function is not positive.
WorldlineSet build_worldlines(const ParticleState& state, const WorldlineOptions& options = {});

/// 6-D bilinear product with signature (+,-,-,-,-,-).
Expr dot6(const Vector6& a, const Vector6& b);
Vector6 d_param(const Vector6& v, int index);

/// Nullness, orthogonality, the constraint set, the wave equation and (when
/// the reality flag is set) reality of the total trajectory.
std::vector<ResidualReport> check_constraints(const WorldlineSet& ws, std::uint64_t seed = 1);

/// Largest |Im x^mu| over mu = 0..4 at `samples` random (tau, sigma) with phi = sigma.
double reality_residual(const WorldlineSet& ws, int samples = 1000, std::uint64_t seed = 1, bool other_phase = false);

struct DeBroglie {
    double wavelength = 0.0;          // h / (m u); infinite at rest
    double period = 0.0;              // h / (m c^2)
    double phase_velocity = 0.0;      // m0 c / p as displayed
    double phase_velocity_ratio = 0.0;  // c^2 / u
    bool readings_agree = false;
};

/// From rest mass, relativistic mass m and speed u.
DeBroglie de_broglie(double m0, double m, double u, double h = 1.0, double c = 1.0);
/// Natural units: m = p^0, u = |p| / p^0, h = 2 pi hbar.
DeBroglie de_broglie_observables(const ParticleState& state);

/// Ratio |x_sigma^i| / x_sigma^0 of the sigma worldline amplitudes.
double worldline_phase_velocity(const WorldlineSet& ws);

// ---------------------------------------------------------------- measurement

/// Positive amplitude profile R(x) on a one-dimensional box.
struct Profile {
    std::string name;
    std::function<double(double)> R;

    static Profile constant(double value = 1.0);
    static Profile gaussian(double width = 0.5, double center = 0.0);
    static Profile two_bump(double separation = 1.0, double width = 0.35);
    /// constant | gaussian | two-bump
    static Profile named(const std::string& name);
};

struct Box {
    double lo = -2.0;
    double hi = 2.0;
    int bins = 64;
};

struct MeasurementResult {
    std::vector<double> bin_centers;
    std::vector<std::uint64_t> counts;
    std::vector<double> empirical;
    std::vector<double> target;
    std::uint64_t N = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;  // candidate positions drawn, detected or not

    /// Fraction of bins with |f - p| <= 4 sqrt(p (1 - p) / N).
    double within_bound_fraction() const;
    bool bound_met(double fraction = 0.95) const { return within_bound_fraction() >= fraction; }
};

/// Integral of R^2 over [a, b] by adaptive Gauss-Kronrod quadrature.
double integrate_density(const Profile& p, double a, double b);

/// Detection coincidences in sigma and phi along the worldline set.
/// Throws EmptyBox when the box has no extent or no bins, DomainError for N < 1.
MeasurementResult measure(const Profile& profile, const Box& box, std::uint64_t N, std::uint64_t seed, int threads = 0);

// ---------------------------------------------------------------- double slit

enum class PathModel {
    Exact,     // straight-line path lengths
    Paraxial,  // L + (y - y_slit)^2 / (2 L)
};

struct DoubleSlitConfig {
    double d = 1.0;        // slit separation
    double L = 100.0;      // screen distance
    double lambda = 0.05;  // de Broglie wavelength
    std::uint64_t N = 200000;
    std::uint64_t seed = 1;
    int bins = 700;
    double half_width = 0.0;  // screen half-width; 0 picks 3.5 fringe spacings
    std::array<bool, 2> open{true, true};
    PathModel model = PathModel::Exact;
};

struct InterferenceResult {
    DoubleSlitConfig config;
    std::vector<double> y;            // bin centers
    std::vector<std::uint64_t> counts;
    std::vector<double> intensity;    // counts normalized to unit peak
    std::vector<double> expected;     // |sum of path amplitudes|^2 / 4 at bin centers
    double spacing = 0.0;             // lambda L / d
};

/// Detection probability for one electron at screen position y.
double two_path_probability(const DoubleSlitConfig& c, double y);

/// Per-electron Monte Carlo. Throws GeometryError unless L > d, DomainError unless lambda > 0.
InterferenceResult double_slit(const DoubleSlitConfig& config, int threads = 0);

/// Fringe maxima located by iterated centroids around n lambda L / d, n = -nmax..nmax.
std::vector<std::pair<int, double>> fringe_maxima(const InterferenceResult& r, int nmax = 3);

/// Max relative deviation of the located maxima from n lambda L / d (|n| >= 1),
/// with the central maximum measured in units of the spacing.
double fringe_deviation(const InterferenceResult& r, int nmax = 3);

/// (max - min) / (max + min) of the smoothed intensity over the central region.
double visibility(const InterferenceResult& r);

// ---------------------------------------------------------------- causality

enum class TimeReading {
    Oriented,    // straight oriented worldlines of the t-x diagram
    Trajectory,  // real part of x^0 of the total trajectory with phi = sigma
};

struct Event {
    double tau = 0.0;
    double sigma = 0.0;
};

/// Universal time of an event on the worldline set.
double universal_time(const WorldlineSet& ws, const Event& e, TimeReading reading = TimeReading::Oriented);

struct CausalityResult {
    std::size_t pairs_checked = 0;   // pairs with tau and sigma both increasing
    std::size_t pairs_excluded = 0;  // mixed pairs outside the rule
    std::vector<std::pair<std::size_t, std::size_t>> counterexamples;
    bool verdict() const { return counterexamples.empty(); }
};

/// Every ordered pair of `events`.
CausalityResult causality_order(const WorldlineSet& ws, const std::vector<Event>& events,
                                TimeReading reading = TimeReading::Oriented);
/// Explicit pairs (first, second); indices in counterexamples refer to the pair list.
CausalityResult causality_pairs(const WorldlineSet& ws, const std::vector<std::pair<Event, Event>>& pairs,
                                TimeReading reading = TimeReading::Oriented);

// ---------------------------------------------------------------- localization

struct SlopeRange {
    double min_slope = 0.0;
    double max_slope = 0.0;
    double max_abs = 0.0;
};

/// Slopes u/c of tau directions Minkowski-perpendicular to a sigma loop of radius eps,
/// at evenly spaced loop angles. A quarter loop covers angles in [-pi/4, pi/4].
SlopeRange localization_loop(double eps, int samples, bool quarter = false);

// ---------------------------------------------------------------- plotting

/// Worldline projections onto the t-x plane along the direction of motion.
std::vector<std::pair<double, double>> project_tx(const WorldlineSet& ws, const std::vector<ThreeTimePoint>& points);

}  // namespace tritime::kinematics

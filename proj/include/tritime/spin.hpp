#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "tritime/expr.hpp"

namespace tritime::spin {

using Complex = std::complex<double>;
using SpinMatrix = Eigen::Matrix2cd;
using expr::Expr;

/// Point of the time sphere with its Hopf pair.
struct HopfPoint {
    double tau = 0.0;
    double sigma = 0.0;
    double phi = 0.0;
    Complex z1;                // cos(sigma/2) e^{-i tau}
    Complex z2;                // sin(sigma/2) e^{-i (phi - tau)}
    std::array<double, 3> n{};  // (sin sigma cos phi, sin sigma sin phi, cos sigma)

    /// x0..x3 with z1 = x0 + i x3, z2 = x1 + i x2.
    std::array<double, 4> x() const;
};

HopfPoint hopf(double tau, double sigma, double phi);

/// [[cos(s/2) e^{-i t}, -sin(s/2) e^{-i (f - t)}], [sin(s/2) e^{i (f - t)}, cos(s/2) e^{i t}]]
SpinMatrix su2(double tau, double sigma, double phi);

/// Pauli matrix sigma_k, k = 1, 2, 3.
SpinMatrix pauli(int k);

/// sigma . v
SpinMatrix pauli_dot(const std::array<double, 3>& v);

/// z^dagger sigma z
std::array<double, 3> hopf_vector(Complex z1, Complex z2);

/// Which unit pair enters 2 z z^dagger - 1.
enum class PairReading {
    Displayed,   // the pair (z1, z2) exactly as listed
    FirstColumn, // first column of S: (cos(s/2) e^{-i t}, sin(s/2) e^{i (f - t)})
};

/// Frobenius norm of sigma.n - (2 z z^dagger - 1).
double sn_identity(const HopfPoint& p, PairReading reading = PairReading::FirstColumn);

struct SpinCheck {
    std::size_t samples = 0;
    double max_unitarity = 0.0;    // max ||S S^dagger - 1||_F
    double max_det = 0.0;          // max |det S - 1|
    double max_norm = 0.0;         // max ||z|^2 - 1|
    double max_sn_displayed = 0.0;
    double max_sn_column = 0.0;
    double max_tau_zero_column = 0.0;  // first column at tau = 0 vs (cos(s/2), e^{i f} sin(s/2))
};

/// Unitarity, determinant, |z| and the S.n identity at random angles.
SpinCheck check_su2(std::size_t samples = 1000, std::uint64_t seed = 1);

struct TwoToOne {
    double antipodal = 0.0;        // max |n(z) - n(-z)|
    double rotation = 0.0;         // ||R(S) - R(-S)||
    double tau_shift = 0.0;        // |n| difference between S(tau) and S(tau + pi) at sigma = 0
    double tau_shift_matrix = 0.0; // ||S(tau + pi) + S(tau)||, the two elements are antipodal
    double control = 0.0;          // |n| difference for a pair differing in sigma
    bool holds(double tol = 1e-12) const {
        return antipodal <= tol && rotation <= tol && tau_shift <= tol && tau_shift_matrix <= tol && control > 1e-3;
    }
};

/// SO(3) image R_jk = tr(sigma_j S sigma_k S^dagger) / 2.
Eigen::Matrix3d rotation_of(const SpinMatrix& s);

TwoToOne two_to_one(double tau, double sigma, double phi);

/// Area bounded by the loop on the time sphere.
enum class Area {
    Hemisphere,  // 2 pi r^2
    Disk,        // pi r^2
};

struct GFactor {
    Expr mu;     // -(e/c) (v / (2 pi r)) S
    Expr g;      // -mu / (mu_B m_e v r), mu_B = e / (2 m_e c)
    double mu_at_half = 0.0;  // mu with v r = 1/2 and e = m_e = c = 1
    double r = 0.0;
    double v = 0.0;
    double mu_value = 0.0;    // mu at (r, v) with e = m_e = c = 1
    bool exact = false;       // g simplified to a rational constant
    double g_value = 0.0;
};

/// Throws DomainError unless r > 0 and v > 0.
GFactor g_factor(double r, double v, Area area = Area::Hemisphere);

/// Entry D^{1/2}_{m'm} of S as an expression in (tau, sigma, phi) = coordinates 0, 1, 2.
Expr d_half(double m_prime, double m);

struct RotationEigen {
    double m_prime = 0.0;
    double m = 0.0;
    bool phi_dependent = false;     // the entry depends on phi at fixed tau
    Complex literal;                // d_phi D / D at fixed tau
    Complex euler;                  // d_alpha D / D with alpha = phi, gamma = 2 tau - phi held fixed
    double magnitude = 0.0;         // |euler|
    Complex phase;                  // euler / |euler|
    double max_deviation = 0.0;     // spread of the ratios over sample points
};

/// Throws UnsupportedJ for j != 1/2, DomainError for m, m' outside {-1/2, 1/2}.
RotationEigen rotation_eigenvalue(double j, double m_prime, double m, std::uint64_t seed = 1);

}  // namespace tritime::spin

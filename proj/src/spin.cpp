#include "tritime/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tritime/binding.hpp"
#include "tritime/errors.hpp"
#include "tritime/io.hpp"

namespace tritime::spin {

using expr::Binding;
using expr::Rational;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

SpinMatrix projector(Complex z1, Complex z2) {
    Eigen::Vector2cd z(z1, z2);
    return 2.0 * z * z.adjoint() - SpinMatrix::Identity();
}

double norm3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

}  // namespace

std::array<double, 4> HopfPoint::x() const { return {z1.real(), z2.real(), z2.imag(), z1.imag()}; }

HopfPoint hopf(double tau, double sigma, double phi) {
    HopfPoint p;
    p.tau = tau;
    p.sigma = sigma;
    p.phi = phi;
    p.z1 = std::cos(sigma / 2) * std::exp(-kI * tau);
    p.z2 = std::sin(sigma / 2) * std::exp(-kI * (phi - tau));
    p.n = {std::sin(sigma) * std::cos(phi), std::sin(sigma) * std::sin(phi), std::cos(sigma)};
    return p;
}

SpinMatrix su2(double tau, double sigma, double phi) {
    const double c = std::cos(sigma / 2), s = std::sin(sigma / 2);
    SpinMatrix m;
    m << c * std::exp(-kI * tau), -s * std::exp(-kI * (phi - tau)),
         s * std::exp(kI * (phi - tau)), c * std::exp(kI * tau);
    return m;
}

SpinMatrix pauli(int k) {
    SpinMatrix m;
    switch (k) {
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -kI, kI, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw DomainError("Pauli index must be 1, 2 or 3");
    }
    return m;
}

SpinMatrix pauli_dot(const std::array<double, 3>& v) {
    return v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3);
}

std::array<double, 3> hopf_vector(Complex z1, Complex z2) {
    Eigen::Vector2cd z(z1, z2);
    std::array<double, 3> n{};
    for (int k = 0; k < 3; ++k) n[k] = (z.adjoint() * pauli(k + 1) * z)(0, 0).real();
    return n;
}

double sn_identity(const HopfPoint& p, PairReading reading) {
    Complex z2 = reading == PairReading::Displayed ? p.z2 : std::sin(p.sigma / 2) * std::exp(kI * (p.phi - p.tau));
    return (pauli_dot(p.n) - projector(p.z1, z2)).norm();
}

SpinCheck check_su2(std::size_t samples, std::uint64_t seed) {
    SpinCheck out;
    out.samples = samples;
    for (std::size_t k = 0; k < samples; ++k) {
        io::Substream rng(seed, k);
        double t = 2 * kPi * rng.uniform(), s = 2 * kPi * rng.uniform(), f = 2 * kPi * rng.uniform();
        SpinMatrix S = su2(t, s, f);
        out.max_unitarity = std::max(out.max_unitarity, (S * S.adjoint() - SpinMatrix::Identity()).norm());
        out.max_det = std::max(out.max_det, std::abs(S.determinant() - 1.0));
        HopfPoint p = hopf(t, s, f);
        out.max_norm = std::max(out.max_norm, std::abs(std::norm(p.z1) + std::norm(p.z2) - 1.0));
        out.max_sn_displayed = std::max(out.max_sn_displayed, sn_identity(p, PairReading::Displayed));
        out.max_sn_column = std::max(out.max_sn_column, sn_identity(p, PairReading::FirstColumn));
        SpinMatrix S0 = su2(0.0, s, f);
        Eigen::Vector2cd expect(std::cos(s / 2), std::exp(kI * f) * std::sin(s / 2));
        out.max_tau_zero_column = std::max(out.max_tau_zero_column, (S0.col(0) - expect).norm());
    }
    return out;
}

Eigen::Matrix3d rotation_of(const SpinMatrix& s) {
    Eigen::Matrix3d r;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r(j, k) = 0.5 * (pauli(j + 1) * s * pauli(k + 1) * s.adjoint()).trace().real();
    return r;
}

TwoToOne two_to_one(double tau, double sigma, double phi) {
    TwoToOne out;
    SpinMatrix S = su2(tau, sigma, phi);
    Complex z1 = S(0, 0), z2 = S(1, 0);
    out.antipodal = norm3(hopf_vector(z1, z2), hopf_vector(-z1, -z2));
    out.rotation = (rotation_of(S) - rotation_of(-S)).norm();

    SpinMatrix A = su2(tau, 0.0, phi);
    SpinMatrix B = su2(tau + kPi, 0.0, phi);
    out.tau_shift = norm3(hopf_vector(A(0, 0), A(1, 0)), hopf_vector(B(0, 0), B(1, 0)));
    out.tau_shift_matrix = (A + B).norm();

    SpinMatrix C = su2(tau, sigma + 1.0, phi);
    out.control = norm3(hopf_vector(z1, z2), hopf_vector(C(0, 0), C(1, 0)));
    return out;
}

GFactor g_factor(double r, double v, Area area) {
    if (!(r > 0.0) || !(v > 0.0)) throw DomainError("g_factor needs r > 0 and v > 0");
    Expr e = Expr::parameter("e"), c = Expr::parameter("c"), me = Expr::parameter("m_e");
    Expr R = Expr::parameter("r"), V = Expr::parameter("v"), pi = Expr::parameter("pi");
    Expr S = area == Area::Hemisphere ? Expr(2) * pi * R * R : pi * R * R;
    GFactor out;
    out.r = r;
    out.v = v;
    out.mu = expr::simplify(-(e / c) * (V / (Expr(2) * pi * R)) * S);
    Expr mu_B = e / (Expr(2) * me * c);
    out.g = expr::simplify(-out.mu / (mu_B * me * V * R));
    out.exact = out.g.is_constant() && out.g.number().is_real_rational();
    Binding b;
    b.set_param("e", 1.0).set_param("c", 1.0).set_param("m_e", 1.0).set_param("pi", kPi);
    out.g_value = expr::evaluate(out.g, Binding(b).set_param("r", r).set_param("v", v)).real();
    out.mu_value = expr::evaluate(out.mu, Binding(b).set_param("r", r).set_param("v", v)).real();
    out.mu_at_half = expr::evaluate(out.mu, Binding(b).set_param("r", 1.0).set_param("v", 0.5)).real();
    return out;
}

Expr d_half(double m_prime, double m) {
    Expr t = Expr::coordinate(0), s = Expr::coordinate(1), f = Expr::coordinate(2);
    Expr I = Expr::imaginary_unit();
    Expr half_s = Expr::rational(1, 2) * s;
    bool up_row = m_prime > 0, up_col = m > 0;
    if (up_row && up_col) return expr::cos(half_s) * expr::exp(-(I * t));
    if (up_row) return -(expr::sin(half_s) * expr::exp(-(I * (f - t))));
    if (up_col) return expr::sin(half_s) * expr::exp(I * (f - t));
    return expr::cos(half_s) * expr::exp(I * t);
}

RotationEigen rotation_eigenvalue(double j, double m_prime, double m, std::uint64_t seed) {
    if (j != 0.5) throw UnsupportedJ("rotation functions are implemented for j = 1/2 only");
    auto valid = [](double q) { return q == 0.5 || q == -0.5; };
    if (!valid(m_prime) || !valid(m)) throw DomainError("m and m' must be +1/2 or -1/2");
    RotationEigen out;
    out.m_prime = m_prime;
    out.m = m;
    Expr D = d_half(m_prime, m);
    Expr dphi = expr::differentiate(D, 2);
    Expr dalpha = dphi + Expr::rational(1, 2) * expr::differentiate(D, 0);
    out.phi_dependent = !expr::structurally_zero(dphi);

    Complex first_lit, first_eul;
    bool have = false;
    for (int k = 0; k < 64; ++k) {
        io::Substream rng(seed, static_cast<std::uint64_t>(k));
        Binding b;
        b.set_coord(0, 2 * kPi * rng.uniform()).set_coord(1, 0.2 + (2 * kPi - 0.4) * rng.uniform());
        b.set_coord(2, 2 * kPi * rng.uniform());
        if (std::abs(std::sin(b.coord(1).real() / 2)) < 0.05 || std::abs(std::cos(b.coord(1).real() / 2)) < 0.05) continue;
        Complex d = expr::evaluate(D, b);
        Complex lit = expr::evaluate(dphi, b) / d;
        Complex eul = expr::evaluate(dalpha, b) / d;
        if (!have) {
            first_lit = lit;
            first_eul = eul;
            have = true;
        }
        out.max_deviation = std::max({out.max_deviation, std::abs(lit - first_lit), std::abs(eul - first_eul)});
    }
    out.literal = first_lit;
    out.euler = first_eul;
    out.magnitude = std::abs(first_eul);
    out.phase = out.magnitude > 0 ? first_eul / out.magnitude : Complex{};
    return out;
}

}  // namespace tritime::spin

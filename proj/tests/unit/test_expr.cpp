#include <cmath>
#include <random>

#include "doctest.h"

#include "tritime/binding.hpp"
#include "tritime/errors.hpp"
#include "tritime/expr.hpp"
#include "tritime/normal_form.hpp"
#include "tritime/sampling.hpp"

using namespace tritime::expr;

namespace {

Expr x(int i) { return Expr::coordinate(i); }
Expr par(const char* n) { return Expr::parameter(n); }
const Expr I = Expr::imaginary_unit();

Expr random_tree(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    int k = depth <= 0 ? pick(rng) % 4 : pick(rng);
    switch (k) {
        case 0: return x(std::uniform_int_distribution<int>(0, 5)(rng));
        case 1: return par(std::uniform_int_distribution<int>(0, 1)(rng) ? "a" : "b");
        case 2: return Expr::rational(std::uniform_int_distribution<int>(-3, 3)(rng), 2);
        case 3: return Expr::field("R", coord_mask({1, 2, 3}));
        case 4:
        case 5: return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
        case 6:
        case 7: return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
        case 8: {
            static const Rational qs[] = {Rational(2), Rational(-1), Rational(1, 2), Rational(-3, 2)};
            Rational q = qs[std::uniform_int_distribution<int>(0, 3)(rng)];
            Expr base = random_tree(rng, std::min(depth - 1, 2));
            // Fractional powers only of positive bases, where the principal branch distributes.
            if (!q.is_integer()) base = base * base + Expr::rational(1, 2);
            return pow(base, q);
        }
        default: return exp(Expr::rational(1, 3) * random_tree(rng, std::min(depth - 1, 2)));
    }
}

Binding smooth_binding(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.5, 1.5);
    Binding b;
    for (int i = 0; i < kDim; ++i) b.set_coord(i, u(rng));
    b.set_param("a", u(rng));
    b.set_param("b", u(rng));
    b.set_field("R", TestFunction::gaussian({1, 2, 3}, 0.7, {0.1, -0.2, 0.3}, 1.5));
    return b;
}

// Trees whose canonical form divides by an identically zero subexpression are discarded.
bool usable(const Expr& e) {
    try {
        (void)simplify(e);
        for (int a = 0; a < kDim; ++a)
            for (int b = 0; b < kDim; ++b) (void)simplify(differentiate(differentiate(e, a), b));
        return true;
    } catch (const tritime::DomainError&) {
        return false;
    }
}

Expr draw(std::mt19937_64& rng, int depth) {
    for (;;) {
        try {
            Expr e = random_tree(rng, depth);
            if (usable(e)) return e;
        } catch (const tritime::DomainError&) {
        }
    }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

TEST_CASE("differentiate: worked examples") {
    CHECK(structurally_zero(differentiate(Expr(7), 1)));
    Expr m0 = par("m0");
    Expr e = exp(I * m0 * x(5));
    CHECK(simplify(differentiate(e, 5) - I * m0 * e) == Expr(0));

    Expr R = Expr::field("R", coord_mask({1, 2, 3}));
    Expr d = simplify(differentiate(R * R, 1));
    Expr dR = Expr::field("R", coord_mask({1, 2, 3}), DerivIndex{0, 1, 0, 0, 0, 0});
    CHECK(d == simplify(Expr(2) * R * dR));

    // Finite-difference oracle on a Gaussian binding.
    Binding b;
    b.set_field("R", TestFunction::gaussian({1, 2, 3}, 1.0, {0.0, 0.0, 0.0}));
    b.set_point({0.0, 0.3, -0.2, 0.5, 0.0, 0.0});
    const double h = 1e-5;
    Binding bp = b;
    Binding bm = b;
    bp.set_coord(1, 0.3 + h);
    bm.set_coord(1, 0.3 - h);
    Complex fd = (evaluate(R * R, bp) - evaluate(R * R, bm)) / (2 * h);
    Complex exact = evaluate(d, b);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::abs(exact));
}

TEST_CASE("simplify: worked examples") {
    Expr a = par("a");
    CHECK(simplify(a + Expr(-1) * a) == Expr(0));
    Expr u = par("u") * x(1);
    Expr v = par("v") * x(2);
    CHECK(simplify(exp(u) * exp(v)) == simplify(exp(u + v)));
    Expr lhs = simplify((Expr(2) * x(1)) * (Expr(3) * x(1)));
    CHECK(lhs == simplify(Expr(6) * pow(x(1), Rational(2))));
    CHECK(lhs.str() == "6*x1^2");
    CHECK(simplify(pow(x(2), Rational(0))) == Expr(1));
    CHECK(simplify(exp(Expr(0))) == Expr(1));
}

TEST_CASE("simplify: radicals and reciprocals") {
    Expr s = x(1) + x(2);
    CHECK(structurally_zero(sqrt(s) * sqrt(s) - s));
    CHECK(structurally_zero(pow(s, Rational(-1)) * s - Expr(1)));
    CHECK(structurally_zero(sqrt(Expr(2)) * sqrt(Expr(2)) - Expr(2)));
    CHECK(structurally_zero(sqrt(Expr(2) * s) * sqrt(Expr(2) * s) - Expr(2) * s));
    CHECK(structurally_zero(sqrt(Expr(-4)) - Expr(2) * I));
    CHECK(structurally_zero(pow(Expr(2) * x(1) + Expr(2) * x(2), Rational(-1)) * Expr(2) -
                            pow(s, Rational(-1))));
}

TEST_CASE("evaluate: worked examples") {
    Binding b;
    b.set_coord(1, 3.0);
    CHECK(evaluate(x(1), b) == Complex(3.0, 0.0));
    Expr pi = Expr(Number::real(3.14159265358979323846));
    Complex e = evaluate(exp(I * pi), b);
    CHECK(std::abs(e - Complex(-1.0, 0.0)) <= 1e-12);

    Binding g;
    g.set_field("R", TestFunction::gaussian({1}, 1.0, {0.0}));
    Expr R = Expr::field("R", coord_mask({1, 2, 3}));
    Expr d2 = differentiate(differentiate(R, 1), 1);
    CHECK(std::abs(evaluate(d2, g) - Complex(-2.0, 0.0)) <= 1e-12);

    CHECK_THROWS_AS(evaluate(par("m0"), Binding{}), tritime::UnboundSymbol);
}

TEST_CASE("is_zero: worked examples") {
    Sampling s;
    CHECK(is_zero(Expr(0), s));
    CHECK(is_zero(simplify(x(1) - x(1)), s));
    // p.p - m0^2 at an off-shell momentum.
    Sampling off;
    off.base.set_param("p0", 2.0).set_param("p1", 0.3).set_param("p2", 0.1).set_param("p3", 0.2);
    off.base.set_param("m0", 1.0);
    Expr pp = par("p0") * par("p0") - par("p1") * par("p1") - par("p2") * par("p2") - par("p3") * par("p3");
    CHECK_FALSE(is_zero(pp - par("m0") * par("m0"), off));
    Sampling few;
    few.count = 8;
    CHECK_THROWS_AS(is_zero(Expr(0), few), tritime::DomainError);
}

TEST_CASE("test functions: exact derivatives") {
    Factor1D g;
    g.shape = Factor1D::Shape::Gaussian;
    g.width = 0.8;
    g.center = 0.2;
    const double h = 1e-4;
    for (int n = 0; n < 4; ++n) {
        double x0 = 0.37;
        Complex fd = (g.derivative(n, x0 + h) - g.derivative(n, x0 - h)) / (2 * h);
        CHECK(std::abs(fd - g.derivative(n + 1, x0)) <= 1e-6);
    }
    Factor1D s;
    s.shape = Factor1D::Shape::Sinusoid;
    s.wavenumber = 1.3;
    s.phase = 0.4;
    CHECK(std::abs(s.derivative(2, 0.5) + 1.69 * s.derivative(0, 0.5)) <= 1e-12);
}

TEST_CASE("property: mixed partial derivatives commute structurally") {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> coord(0, 5);
    int checked = 0;
    for (int n = 0; n < 1000; ++n) {
        Expr e = draw(rng, 6);
        int a = coord(rng);
        int b = coord(rng);
        Expr ab = simplify(differentiate(differentiate(e, a), b));
        Expr ba = simplify(differentiate(differentiate(e, b), a));
        CHECK(ab == ba);
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("property: derivative matches central finite difference") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> coord(0, 5);
    const double h = 1e-5;
    for (int n = 0; n < 300; ++n) {
        Expr e = draw(rng, 5);
        int a = coord(rng);
        Binding b = smooth_binding(rng);
        Complex exact = evaluate(differentiate(e, a), b);
        Complex f0 = evaluate(e, b);
        if (!finite(exact) || !finite(f0)) continue;
        Binding bp = b;
        Binding bm = b;
        bp.set_coord(a, b.coord(a) + h);
        bm.set_coord(a, b.coord(a) - h);
        Complex fd = (evaluate(e, bp) - evaluate(e, bm)) / (2 * h);
        double scale = std::max({1.0, std::abs(exact), std::abs(f0)});
        CHECK(std::abs(fd - exact) <= 1e-6 * scale);
    }
}

TEST_CASE("property: simplify preserves value and is idempotent") {
    std::mt19937_64 rng(4242);
    for (int n = 0; n < 500; ++n) {
        Expr e = draw(rng, 6);
        Expr s = simplify(e);
        CHECK(simplify(s) == s);
        Binding b = smooth_binding(rng);
        Complex v0 = evaluate(e, b);
        Complex v1 = evaluate(s, b);
        if (!finite(v0)) continue;
        // Relative to the term-wise magnitude, so cancelling sums are judged fairly.
        double scale = 0.0;
        for (const auto& t : additive_terms(e)) scale += std::abs(evaluate(t, b));
        INFO(e.str());
        CHECK(std::abs(v0 - v1) <= 1e-12 * std::max(1.0, scale) * 16);
    }
}

TEST_CASE("normal form derivative agrees with tree derivative") {
    std::mt19937_64 rng(99);
    for (int n = 0; n < 200; ++n) {
        Expr e = draw(rng, 5);
        int a = static_cast<int>(rng() % 6);
        NormalForm viaTree = NormalForm::from_expr(differentiate(e, a));
        NormalForm viaForm = NormalForm::from_expr(e).diff(a);
        Binding b = smooth_binding(rng);
        Complex u = viaTree.evaluate(b);
        Complex v = viaForm.evaluate(b);
        if (!finite(u)) continue;
        INFO(e.str());
        CHECK(std::abs(u - v) <= 1e-10 * std::max(1.0, std::abs(u)));
    }
}

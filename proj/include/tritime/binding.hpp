#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "tritime/expr.hpp"

namespace tritime::expr {

/// One-dimensional factor with closed-form derivatives of every order.
struct Factor1D {
    enum class Shape { Monomial, Gaussian, Sinusoid, Exponential };
    Shape shape = Shape::Monomial;
    int coord = 0;
    int power = 0;          // Monomial: x^power
    double width = 1.0;     // Gaussian: exp(-width (x - center)^2)
    double center = 0.0;
    double wavenumber = 1.0;  // Sinusoid: sin(wavenumber x + phase)
    double phase = 0.0;
    Complex rate{0.0, 0.0};   // Exponential: exp(rate x)

    Complex derivative(int order, Complex x) const;
};

/// Sum of products of one-dimensional factors times a coefficient.
class TestFunction {
public:
    struct Term {
        Complex coefficient{1.0, 0.0};
        std::vector<Factor1D> factors;
    };

    TestFunction() = default;
    explicit TestFunction(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static TestFunction constant(Complex c);
    static TestFunction monomial(Complex c, const std::array<int, kDim>& powers);
    static TestFunction gaussian(const std::vector<int>& coords, double width, const std::vector<double>& centers,
                                 Complex amplitude = 1.0);
    static TestFunction two_bump(const std::vector<int>& coords, double width, double separation);
    static TestFunction product_of_sinusoids(const std::vector<int>& coords, const std::vector<double>& wavenumbers,
                                             const std::vector<double>& phases);
    /// exp(sum_k rates[k] x_k) over all six coordinates.
    static TestFunction exponential(const std::array<Complex, kDim>& rates, Complex amplitude = 1.0);

    TestFunction operator+(const TestFunction& o) const;

    Complex value(const Point& x) const { return derivative(DerivIndex{}, x); }
    Complex derivative(const DerivIndex& orders, const Point& x) const;

    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
};

/// Numeric values for coordinates, parameters and fields.
class Binding {
public:
    Binding() { coords_.fill(Complex(0.0, 0.0)); }

    Binding& set_coord(int index, Complex value);
    Binding& set_point(const Point& x);
    Binding& set_param(const std::string& name, Complex value);
    Binding& set_field(const std::string& name, TestFunction fn);

    const Point& point() const { return coords_; }
    Complex coord(int index) const { return coords_.at(static_cast<std::size_t>(index)); }
    Complex param(const std::string& name) const;
    bool has_param(const std::string& name) const { return params_.count(name) > 0; }
    const TestFunction& field(const std::string& name) const;
    bool has_field(const std::string& name) const { return fields_.count(name) > 0; }

    const std::map<std::string, Complex>& params() const { return params_; }

    /// Copy with all parameters and fields of `other` added (other wins).
    Binding merged(const Binding& other) const;

private:
    Point coords_;
    std::map<std::string, Complex> params_;
    std::map<std::string, TestFunction> fields_;
};

Complex evaluate(const Expr& e, const Binding& b);

}  // namespace tritime::expr

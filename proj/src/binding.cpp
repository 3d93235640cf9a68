#include "tritime/binding.hpp"

#include <cmath>

#include "tritime/errors.hpp"
#include "tritime/normal_form.hpp"

namespace tritime::expr {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

/// Physicists' Hermite polynomial H_n(t).
double hermite(int n, double t) {
    if (n == 0) return 1.0;
    double h0 = 1.0;
    double h1 = 2.0 * t;
    for (int k = 1; k < n; ++k) {
        double h2 = 2.0 * t * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

Complex complex_hermite(int n, Complex t) {
    if (n == 0) return 1.0;
    Complex h0 = 1.0;
    Complex h1 = 2.0 * t;
    for (int k = 1; k < n; ++k) {
        Complex h2 = 2.0 * t * h1 - 2.0 * static_cast<double>(k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

}  // namespace

Complex Factor1D::derivative(int order, Complex x) const {
    switch (shape) {
        case Shape::Monomial: {
            if (order > power) return 0.0;
            double c = 1.0;
            for (int k = 0; k < order; ++k) c *= static_cast<double>(power - k);
            Complex r = c;
            for (int k = 0; k < power - order; ++k) r *= x;
            return r;
        }
        case Shape::Gaussian: {
            double s = std::sqrt(width);
            Complex t = s * (x - center);
            Complex g = std::exp(-t * t);
            Complex h = (x.imag() == 0.0) ? Complex(hermite(order, t.real())) : complex_hermite(order, t);
            return std::pow(-s, order) * h * g;
        }
        case Shape::Sinusoid:
            return std::pow(wavenumber, order) * std::sin(wavenumber * x + phase + kHalfPi * order);
        case Shape::Exponential: return std::pow(rate, order) * std::exp(rate * x);
    }
    return 0.0;
}

TestFunction TestFunction::constant(Complex c) { return TestFunction({Term{c, {}}}); }

TestFunction TestFunction::monomial(Complex c, const std::array<int, kDim>& powers) {
    Term t{c, {}};
    for (int i = 0; i < kDim; ++i) {
        if (powers[static_cast<std::size_t>(i)] == 0) continue;
        Factor1D f;
        f.shape = Factor1D::Shape::Monomial;
        f.coord = i;
        f.power = powers[static_cast<std::size_t>(i)];
        t.factors.push_back(f);
    }
    return TestFunction({t});
}

TestFunction TestFunction::gaussian(const std::vector<int>& coords, double width, const std::vector<double>& centers,
                                    Complex amplitude) {
    if (centers.size() != coords.size()) throw DomainError("gaussian: centers and coordinates differ in length");
    Term t{amplitude, {}};
    for (std::size_t k = 0; k < coords.size(); ++k) {
        Factor1D f;
        f.shape = Factor1D::Shape::Gaussian;
        f.coord = coords[k];
        f.width = width;
        f.center = centers[k];
        t.factors.push_back(f);
    }
    return TestFunction({t});
}

TestFunction TestFunction::two_bump(const std::vector<int>& coords, double width, double separation) {
    std::vector<double> left(coords.size(), 0.0);
    std::vector<double> right(coords.size(), 0.0);
    if (!coords.empty()) {
        left[0] = -separation / 2.0;
        right[0] = separation / 2.0;
    }
    return gaussian(coords, width, left) + gaussian(coords, width, right);
}

TestFunction TestFunction::product_of_sinusoids(const std::vector<int>& coords, const std::vector<double>& wavenumbers,
                                                const std::vector<double>& phases) {
    if (wavenumbers.size() != coords.size() || phases.size() != coords.size())
        throw DomainError("product_of_sinusoids: argument lengths differ");
    Term t{1.0, {}};
    for (std::size_t k = 0; k < coords.size(); ++k) {
        Factor1D f;
        f.shape = Factor1D::Shape::Sinusoid;
        f.coord = coords[k];
        f.wavenumber = wavenumbers[k];
        f.phase = phases[k];
        t.factors.push_back(f);
    }
    return TestFunction({t});
}

TestFunction TestFunction::exponential(const std::array<Complex, kDim>& rates, Complex amplitude) {
    Term t{amplitude, {}};
    for (int i = 0; i < kDim; ++i) {
        if (rates[static_cast<std::size_t>(i)] == Complex(0.0, 0.0)) continue;
        Factor1D f;
        f.shape = Factor1D::Shape::Exponential;
        f.coord = i;
        f.rate = rates[static_cast<std::size_t>(i)];
        t.factors.push_back(f);
    }
    return TestFunction({t});
}

TestFunction TestFunction::operator+(const TestFunction& o) const {
    std::vector<Term> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return TestFunction(std::move(ts));
}

Complex TestFunction::derivative(const DerivIndex& orders, const Point& x) const {
    Complex total(0.0, 0.0);
    for (const auto& t : terms_) {
        DerivIndex remaining = orders;
        Complex v = t.coefficient;
        for (const auto& f : t.factors) {
            auto& r = remaining[static_cast<std::size_t>(f.coord)];
            v *= f.derivative(r, x[static_cast<std::size_t>(f.coord)]);
            r = 0;
        }
        // A derivative along a coordinate the term does not depend on annihilates it.
        bool killed = false;
        for (auto r : remaining) killed = killed || r > 0;
        if (!killed) total += v;
    }
    return total;
}

Binding& Binding::set_coord(int index, Complex value) {
    coords_.at(static_cast<std::size_t>(index)) = value;
    return *this;
}

Binding& Binding::set_point(const Point& x) {
    coords_ = x;
    return *this;
}

Binding& Binding::set_param(const std::string& name, Complex value) {
    params_[name] = value;
    return *this;
}

Binding& Binding::set_field(const std::string& name, TestFunction fn) {
    fields_[name] = std::move(fn);
    return *this;
}

Complex Binding::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw UnboundSymbol(name);
    return it->second;
}

const TestFunction& Binding::field(const std::string& name) const {
    auto it = fields_.find(name);
    if (it == fields_.end()) throw UnboundSymbol(name);
    return it->second;
}

Binding Binding::merged(const Binding& other) const {
    Binding b = *this;
    for (const auto& [k, v] : other.params_) b.params_[k] = v;
    for (const auto& [k, v] : other.fields_) b.fields_[k] = v;
    return b;
}

namespace {

Complex power_of(Complex z, const Rational& q) {
    if (q.is_integer() && q.num() >= -64 && q.num() <= 64) {
        Complex r(1.0, 0.0);
        std::int64_t n = q.num() < 0 ? -q.num() : q.num();
        for (std::int64_t i = 0; i < n; ++i) r *= z;
        return q.num() < 0 ? Complex(1.0, 0.0) / r : r;
    }
    return std::pow(z, q.to_double());
}

}  // namespace

Complex evaluate(const Expr& e, const Binding& b) {
    switch (e.kind()) {
        case Kind::Constant: return e.number().value();
        case Kind::Coordinate: return b.coord(e.index());
        case Kind::Parameter: return b.param(e.name());
        case Kind::Field: return b.field(e.name()).derivative(e.field_spec().derivs, b.point());
        case Kind::Sum: {
            Complex s(0.0, 0.0);
            for (const auto& c : e.children()) s += evaluate(c, b);
            return s;
        }
        case Kind::Product: {
            Complex p(1.0, 0.0);
            for (const auto& c : e.children()) p *= evaluate(c, b);
            return p;
        }
        case Kind::Power: return power_of(evaluate(e.children()[0], b), e.exponent());
        case Kind::Exponential: return std::exp(evaluate(e.children()[0], b));
    }
    return 0.0;
}

}  // namespace tritime::expr

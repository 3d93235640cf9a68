#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace tritime::expr {

/// Exact rational with 64-bit numerator and positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT implicit
    Rational(std::int64_t n, std::int64_t d);
    /// Trusted constructor: `d > 0` and gcd(n, d) = 1 already hold.
    static Rational from_reduced(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_positive_integer() const { return den_ == 1 && num_ > 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Checked arithmetic: std::nullopt on 64-bit overflow.
    static std::optional<Rational> add(const Rational& a, const Rational& b);
    static std::optional<Rational> mul(const Rational& a, const Rational& b);
    static std::optional<Rational> div(const Rational& a, const Rational& b);

    // Throwing convenience wrappers for exponent arithmetic.
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }

    int compare(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return compare(o) < 0; }

    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Complex coefficient, exact (rational real and imaginary parts) when possible,
/// otherwise a complex double.
class Number {
public:
    Number() = default;
    Number(std::int64_t n) : re_(n) {}  // NOLINT implicit
    Number(int n) : re_(n) {}           // NOLINT implicit
    Number(Rational re, Rational im = Rational(0)) : re_(re), im_(im) {}
    static Number approx(std::complex<double> v);
    static Number real(double v) { return approx({v, 0.0}); }
    static Number imag_unit() { return Number(Rational(0), Rational(1)); }

    bool exact() const { return exact_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_minus_one() const;
    bool is_positive_rational() const;
    bool is_real_rational() const { return exact_ && im_.is_zero(); }
    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    std::complex<double> value() const;

    Number operator+(const Number& o) const;
    Number operator-(const Number& o) const;
    Number operator*(const Number& o) const;
    Number operator/(const Number& o) const;
    Number operator-() const;

    /// Principal-branch power.
    Number pow(const Rational& q) const;
    Number exp() const;

    int compare(const Number& o) const;
    bool operator==(const Number& o) const { return compare(o) == 0; }
    bool operator!=(const Number& o) const { return compare(o) != 0; }

    std::size_t hash() const;
    std::string str() const;

private:
    bool exact_ = true;
    Rational re_{0};
    Rational im_{0};
    std::complex<double> approx_{0.0, 0.0};
};

}  // namespace tritime::expr

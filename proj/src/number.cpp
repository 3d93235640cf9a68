#include "tritime/number.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "tritime/errors.hpp"

namespace tritime::expr {

namespace {

using i128 = __int128;

constexpr i128 kMax = static_cast<i128>(INT64_MAX);
constexpr i128 kMin = static_cast<i128>(INT64_MIN) + 1;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::optional<Rational> make_checked(i128 n, i128 d) {
    if (d == 0) return std::nullopt;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > kMax || n < kMin || d > kMax) return std::nullopt;
    return Rational::from_reduced(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

std::optional<std::int64_t> exact_root(std::int64_t v, std::int64_t k) {
    if (v < 0) return std::nullopt;
    if (v == 0 || v == 1) return v;
    double guess = std::round(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(k)));
    for (double g = guess - 1; g <= guess + 1; g += 1) {
        if (g < 0) continue;
        i128 p = 1;
        bool overflow = false;
        for (std::int64_t i = 0; i < k; ++i) {
            p *= static_cast<i128>(g);
            if (p > kMax) {
                overflow = true;
                break;
            }
        }
        if (!overflow && p == v) return static_cast<std::int64_t>(g);
    }
    return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    auto r = make_checked(n, d);
    if (!r) throw DomainError("invalid rational " + std::to_string(n) + "/" + std::to_string(d));
    num_ = r->num_;
    den_ = r->den_;
}

std::optional<Rational> Rational::add(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return make_checked(static_cast<i128>(a.num_) + b.num_, a.den_);
    return make_checked(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                        static_cast<i128>(a.den_) * b.den_);
}

std::optional<Rational> Rational::mul(const Rational& a, const Rational& b) {
    return make_checked(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

std::optional<Rational> Rational::div(const Rational& a, const Rational& b) {
    if (b.num_ == 0) return std::nullopt;
    return make_checked(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

Rational Rational::operator+(const Rational& o) const {
    auto r = add(*this, o);
    if (!r) throw DomainError("rational overflow");
    return *r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    auto r = mul(*this, o);
    if (!r) throw DomainError("rational overflow");
    return *r;
}

int Rational::compare(const Rational& o) const {
    i128 l = static_cast<i128>(num_) * o.den_;
    i128 r = static_cast<i128>(o.num_) * den_;
    return l < r ? -1 : (l > r ? 1 : 0);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Number Number::approx(std::complex<double> v) {
    Number n;
    n.exact_ = false;
    n.approx_ = v;
    return n;
}

bool Number::is_zero() const {
    if (exact_) return re_.is_zero() && im_.is_zero();
    return approx_ == std::complex<double>(0.0, 0.0);
}

bool Number::is_one() const { return exact_ && im_.is_zero() && re_ == Rational(1); }

bool Number::is_minus_one() const { return exact_ && im_.is_zero() && re_ == Rational(-1); }

bool Number::is_positive_rational() const { return exact_ && im_.is_zero() && re_.num() > 0; }

std::complex<double> Number::value() const {
    if (exact_) return {re_.to_double(), im_.to_double()};
    return approx_;
}

Number Number::operator+(const Number& o) const {
    if (exact_ && o.exact_) {
        auto r = Rational::add(re_, o.re_);
        auto i = Rational::add(im_, o.im_);
        if (r && i) return Number(*r, *i);
    }
    return approx(value() + o.value());
}

Number Number::operator-() const {
    if (exact_) return Number(-re_, -im_);
    return approx(-approx_);
}

Number Number::operator-(const Number& o) const { return *this + (-o); }

Number Number::operator*(const Number& o) const {
    if (exact_ && o.exact_) {
        if (im_.is_zero() && o.im_.is_zero()) {
            auto r = Rational::mul(re_, o.re_);
            if (r) return Number(*r);
        } else {
            auto ac = Rational::mul(re_, o.re_);
            auto bd = Rational::mul(im_, o.im_);
            auto ad = Rational::mul(re_, o.im_);
            auto bc = Rational::mul(im_, o.re_);
            if (ac && bd && ad && bc) {
                auto r = Rational::add(*ac, -*bd);
                auto i = Rational::add(*ad, *bc);
                if (r && i) return Number(*r, *i);
            }
        }
    }
    return approx(value() * o.value());
}

Number Number::operator/(const Number& o) const {
    if (o.is_zero()) throw DomainError("division by zero");
    if (exact_ && o.exact_) {
        if (o.im_.is_zero()) {
            auto r = Rational::div(re_, o.re_);
            auto i = Rational::div(im_, o.re_);
            if (r && i) return Number(*r, *i);
        } else {
            auto cc = Rational::mul(o.re_, o.re_);
            auto dd = Rational::mul(o.im_, o.im_);
            if (cc && dd) {
                auto den = Rational::add(*cc, *dd);
                if (den) {
                    Number conj(o.re_, -o.im_);
                    Number num = *this * conj;
                    if (num.exact_) {
                        auto r = Rational::div(num.re_, *den);
                        auto i = Rational::div(num.im_, *den);
                        if (r && i) return Number(*r, *i);
                    }
                }
            }
        }
    }
    return approx(value() / o.value());
}

Number Number::pow(const Rational& q) const {
    if (q.is_zero()) return Number(1);
    if (is_zero()) {
        if (q.num() < 0) throw DomainError("zero raised to a negative power");
        return Number(0);
    }
    if (q.is_integer()) {
        std::int64_t n = q.num();
        Number base = n < 0 ? Number(1) / *this : *this;
        std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
        Number result(1);
        while (e > 0) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e > 0) base = base * base;
        }
        return result;
    }
    if (is_positive_rational()) {
        auto rn = exact_root(re_.num(), q.den());
        auto rd = exact_root(re_.den(), q.den());
        if (rn && rd) return Number(Rational(*rn, *rd)).pow(Rational(q.num()));
    }
    return approx(std::pow(value(), q.to_double()));
}

Number Number::exp() const {
    if (is_zero()) return Number(1);
    return approx(std::exp(value()));
}

int Number::compare(const Number& o) const {
    if (exact_ != o.exact_) return exact_ ? -1 : 1;
    if (exact_) {
        int c = re_.compare(o.re_);
        if (c != 0) return c;
        return im_.compare(o.im_);
    }
    if (approx_.real() != o.approx_.real()) return approx_.real() < o.approx_.real() ? -1 : 1;
    if (approx_.imag() != o.approx_.imag()) return approx_.imag() < o.approx_.imag() ? -1 : 1;
    return 0;
}

std::size_t Number::hash() const {
    std::size_t h = exact_ ? 0x9e3779b97f4a7c15ULL : 0x7f4a7c159e3779b9ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    if (exact_) {
        mix(std::hash<std::int64_t>{}(re_.num()));
        mix(std::hash<std::int64_t>{}(re_.den()));
        mix(std::hash<std::int64_t>{}(im_.num()));
        mix(std::hash<std::int64_t>{}(im_.den()));
    } else {
        mix(std::hash<double>{}(approx_.real()));
        mix(std::hash<double>{}(approx_.imag()));
    }
    return h;
}

std::string Number::str() const {
    std::ostringstream os;
    if (exact_) {
        if (im_.is_zero()) return re_.str();
        if (re_.is_zero()) {
            if (im_ == Rational(1)) return "I";
            if (im_ == Rational(-1)) return "-I";
            return im_.str() + "*I";
        }
        os << "(" << re_.str() << (im_.num() < 0 ? "-" : "+");
        Rational ai(im_.num() < 0 ? -im_.num() : im_.num(), im_.den());
        if (ai == Rational(1))
            os << "I)";
        else
            os << ai.str() << "*I)";
        return os.str();
    }
    os.precision(17);
    if (approx_.imag() == 0.0) {
        os << approx_.real();
    } else {
        os << "(" << approx_.real() << (approx_.imag() < 0 ? "-" : "+") << std::abs(approx_.imag()) << "*I)";
    }
    return os.str();
}

}  // namespace tritime::expr

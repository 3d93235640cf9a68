#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "tritime/number.hpp"

namespace tritime::expr {

/// Number of coordinates: x0 (time), x1..x3 (space), x4 (charge dimension), x5 (mass dimension).
inline constexpr int kDim = 6;

using Complex = std::complex<double>;
using Point = std::array<Complex, kDim>;
using DerivIndex = std::array<std::uint8_t, kDim>;

enum class Kind : std::uint8_t { Constant, Coordinate, Parameter, Field, Sum, Product, Power, Exponential };

/// Opaque field symbol: a function of the coordinates in `deps` (bit mask),
/// carrying the multi-index of derivatives applied to it.
struct FieldSpec {
    std::string name;
    std::uint8_t deps = 0;
    DerivIndex derivs{};

    bool depends_on(int coord) const { return (deps >> coord) & 1U; }
    bool operator==(const FieldSpec& o) const {
        return name == o.name && deps == o.deps && derivs == o.derivs;
    }
};

std::uint8_t coord_mask(std::initializer_list<int> coords);

struct Node;

/// Immutable expression tree handle. Copies share structure.
class Expr {
public:
    Expr();  // the constant 0
    Expr(Number n);                                // NOLINT implicit
    Expr(int n) : Expr(Number(n)) {}                // NOLINT implicit
    Expr(std::int64_t n) : Expr(Number(n)) {}       // NOLINT implicit

    static Expr coordinate(int index);
    static Expr parameter(const std::string& name);
    static Expr field(const std::string& name, std::uint8_t deps, const DerivIndex& derivs = {});
    static Expr field(const FieldSpec& spec);
    static Expr imaginary_unit();
    static Expr rational(std::int64_t num, std::int64_t den);

    Kind kind() const;
    const Number& number() const;           // Constant
    int index() const;                      // Coordinate
    const std::string& name() const;        // Parameter or Field
    const FieldSpec& field_spec() const;    // Field
    const std::vector<Expr>& children() const;  // Sum, Product, Power (base), Exponential (argument)
    const Rational& exponent() const;       // Power

    bool is_constant() const { return kind() == Kind::Constant; }
    bool is_zero_constant() const;
    bool is_one_constant() const;

    std::size_t hash() const;
    int compare(const Expr& o) const;
    bool operator==(const Expr& o) const;
    bool operator!=(const Expr& o) const { return !(*this == o); }

    std::string str() const;
    std::size_t node_count() const;

    const std::shared_ptr<const Node>& node() const { return node_; }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend Expr make_node(Kind, Number, int, std::string, FieldSpec, std::vector<Expr>, Rational);
};

struct Node {
    Kind kind = Kind::Constant;
    Number number;
    int index = -1;
    std::string name;
    FieldSpec field;
    std::vector<Expr> children;
    Rational exponent{1};
    std::size_t hash = 0;
};

Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr pow(const Expr& base, const Rational& q);
Expr sqrt(const Expr& base);
Expr exp(const Expr& argument);
Expr cos(const Expr& argument);
Expr sin(const Expr& argument);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Exact symbolic partial derivative with respect to coordinate `index` (0..5).
Expr differentiate(const Expr& e, int index);

/// Canonical normal form: fully expanded sum of monomials with like terms combined.
Expr simplify(const Expr& e);

/// True when the canonical form of `e` is the constant zero.
bool structurally_zero(const Expr& e);

/// Replace every parameter named `name` by `value`.
Expr substitute(const Expr& e, const std::string& name, const Expr& value);

/// Top-level additive terms (nested sums flattened, no simplification).
std::vector<Expr> additive_terms(const Expr& e);

}  // namespace tritime::expr

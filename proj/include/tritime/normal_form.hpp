#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tritime/binding.hpp"
#include "tritime/expr.hpp"
#include "tritime/number.hpp"

namespace tritime::expr {

class NormalForm;
using NormalFormPtr = std::shared_ptr<const NormalForm>;

enum class AtomKind : std::uint8_t { Coordinate, Parameter, Field, Radical };

/// Indivisible factor of a monomial. A radical is a multi-term sum, or a positive
/// rational constant, carried with a non-integer or negative exponent.
struct AtomNode {
    AtomKind kind = AtomKind::Coordinate;
    int index = -1;
    std::string name;
    FieldSpec field;
    NormalFormPtr base;
    std::size_t hash = 0;
};
using Atom = std::shared_ptr<const AtomNode>;

int compare_atoms(const Atom& a, const Atom& b);

struct Factor {
    Atom atom;
    Rational power{1};
};

/// Product of atom powers, optionally times exp(exponent) with no constant part.
struct Monomial {
    std::vector<Factor> factors;
    NormalFormPtr exponent;
    std::size_t hash = 0;

    void rehash();
};

int compare_monomials(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    Number coeff;
};

/// Canonical expanded form used for simplification and as the working
/// representation of the curvature pipeline.
class NormalForm {
public:
    NormalForm() = default;

    static NormalForm constant(const Number& c);
    static NormalForm coordinate(int index);
    static NormalForm parameter(const std::string& name);
    static NormalForm field(const FieldSpec& spec);
    static NormalForm from_expr(const Expr& e);

    Expr to_expr() const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Number constant_value() const;  // requires is_constant()
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    NormalForm operator+(const NormalForm& o) const;
    NormalForm operator-(const NormalForm& o) const;
    NormalForm operator*(const NormalForm& o) const;
    NormalForm operator-() const;
    NormalForm scaled(const Number& c) const;
    NormalForm pow(const Rational& q) const;
    NormalForm exp() const;
    NormalForm diff(int index) const;

    Complex evaluate(const Binding& b) const;

    int compare(const NormalForm& o) const;
    bool operator==(const NormalForm& o) const { return compare(o) == 0; }
    std::size_t hash() const { return hash_; }

private:
    std::vector<Term> terms_;
    std::size_t hash_ = 0;

    static NormalForm from_terms(std::vector<Term> terms);  // sorts and merges
    static NormalForm from_sorted(std::vector<Term> terms);
    void rehash();

    friend NormalForm monomial_nf(const Monomial& m, const Number& c);
    friend class NormalFormBuilder;
};

}  // namespace tritime::expr

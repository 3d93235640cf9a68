#include "tritime/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tritime/errors.hpp"
#include "tritime/normal_form.hpp"

namespace tritime::expr {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t compute_hash(const Node& n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL + 17;
    switch (n.kind) {
        case Kind::Constant: h = mix(h, n.number.hash()); break;
        case Kind::Coordinate: h = mix(h, static_cast<std::size_t>(n.index)); break;
        case Kind::Parameter: h = mix(h, std::hash<std::string>{}(n.name)); break;
        case Kind::Field:
            h = mix(h, std::hash<std::string>{}(n.name));
            h = mix(h, n.field.deps);
            for (auto d : n.field.derivs) h = mix(h, d);
            break;
        case Kind::Power:
            h = mix(h, std::hash<std::int64_t>{}(n.exponent.num()));
            h = mix(h, std::hash<std::int64_t>{}(n.exponent.den()));
            break;
        default: break;
    }
    for (const auto& c : n.children) h = mix(h, c.hash());
    return h;
}

}  // namespace

Expr make_node(Kind kind, Number number, int index, std::string name, FieldSpec field, std::vector<Expr> children,
               Rational exponent) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->number = std::move(number);
    n->index = index;
    n->name = std::move(name);
    n->field = std::move(field);
    n->children = std::move(children);
    n->exponent = exponent;
    n->hash = compute_hash(*n);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

std::uint8_t coord_mask(std::initializer_list<int> coords) {
    std::uint8_t m = 0;
    for (int c : coords) {
        if (c < 0 || c >= kDim) throw DomainError("coordinate index out of range");
        m = static_cast<std::uint8_t>(m | (1U << c));
    }
    return m;
}

Expr::Expr() : Expr(Number(0)) {}

Expr::Expr(Number n) : Expr(make_node(Kind::Constant, std::move(n), -1, {}, {}, {}, Rational(1))) {}

Expr Expr::coordinate(int index) {
    if (index < 0 || index >= kDim) throw DomainError("coordinate index out of range");
    return make_node(Kind::Coordinate, Number(0), index, {}, {}, {}, Rational(1));
}

Expr Expr::parameter(const std::string& name) {
    return make_node(Kind::Parameter, Number(0), -1, name, {}, {}, Rational(1));
}

Expr Expr::field(const std::string& name, std::uint8_t deps, const DerivIndex& derivs) {
    FieldSpec spec{name, deps, derivs};
    return field(spec);
}

Expr Expr::field(const FieldSpec& spec) {
    for (int i = 0; i < kDim; ++i) {
        if (spec.derivs[static_cast<std::size_t>(i)] > 0 && !spec.depends_on(i)) return Expr(0);
    }
    return make_node(Kind::Field, Number(0), -1, spec.name, spec, {}, Rational(1));
}

Expr Expr::imaginary_unit() { return Expr(Number::imag_unit()); }

Expr Expr::rational(std::int64_t num, std::int64_t den) { return Expr(Number(Rational(num, den))); }

Kind Expr::kind() const { return node_->kind; }
const Number& Expr::number() const { return node_->number; }
int Expr::index() const { return node_->index; }
const std::string& Expr::name() const { return node_->name; }
const FieldSpec& Expr::field_spec() const { return node_->field; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
const Rational& Expr::exponent() const { return node_->exponent; }

bool Expr::is_zero_constant() const { return kind() == Kind::Constant && number().is_zero(); }
bool Expr::is_one_constant() const { return kind() == Kind::Constant && number().is_one(); }

std::size_t Expr::hash() const { return node_->hash; }

int Expr::compare(const Expr& o) const {
    if (node_ == o.node_) return 0;
    if (kind() != o.kind()) return kind() < o.kind() ? -1 : 1;
    switch (kind()) {
        case Kind::Constant: return number().compare(o.number());
        case Kind::Coordinate: return index() < o.index() ? -1 : (index() > o.index() ? 1 : 0);
        case Kind::Parameter: return name().compare(o.name());
        case Kind::Field: {
            int c = name().compare(o.name());
            if (c != 0) return c;
            if (field_spec().deps != o.field_spec().deps) return field_spec().deps < o.field_spec().deps ? -1 : 1;
            if (field_spec().derivs != o.field_spec().derivs)
                return field_spec().derivs < o.field_spec().derivs ? -1 : 1;
            return 0;
        }
        default: break;
    }
    if (kind() == Kind::Power) {
        int c = exponent().compare(o.exponent());
        if (c != 0) return c;
    }
    const auto& a = children();
    const auto& b = o.children();
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool Expr::operator==(const Expr& o) const {
    if (node_ == o.node_) return true;
    if (hash() != o.hash()) return false;
    return compare(o) == 0;
}

std::size_t Expr::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.node_count();
    return n;
}

namespace {

int precedence(const Expr& e) {
    switch (e.kind()) {
        case Kind::Sum: return 1;
        case Kind::Product: return 2;
        case Kind::Power: return 3;
        case Kind::Constant: {
            const Number& n = e.number();
            if (n.exact() && n.im().is_zero() && n.re().is_integer() && n.re().num() >= 0) return 4;
            return 2;
        }
        default: return 4;
    }
}

void print(std::ostream& os, const Expr& e);

void print_wrapped(std::ostream& os, const Expr& e, int min_prec) {
    if (precedence(e) < min_prec) {
        os << "(";
        print(os, e);
        os << ")";
    } else {
        print(os, e);
    }
}

void print(std::ostream& os, const Expr& e) {
    switch (e.kind()) {
        case Kind::Constant: os << e.number().str(); break;
        case Kind::Coordinate: os << "x" << e.index(); break;
        case Kind::Parameter: os << e.name(); break;
        case Kind::Field: {
            const auto& f = e.field_spec();
            bool any = false;
            for (auto d : f.derivs) any = any || d > 0;
            if (any) {
                os << "D[";
                bool first = true;
                for (int i = 0; i < kDim; ++i) {
                    for (int k = 0; k < f.derivs[static_cast<std::size_t>(i)]; ++k) {
                        if (!first) os << ",";
                        os << i;
                        first = false;
                    }
                }
                os << "](" << f.name << ")";
            } else {
                os << f.name;
            }
            break;
        }
        case Kind::Sum: {
            bool first = true;
            for (const auto& c : e.children()) {
                if (!first) os << " + ";
                print_wrapped(os, c, 2);
                first = false;
            }
            break;
        }
        case Kind::Product: {
            bool first = true;
            for (const auto& c : e.children()) {
                if (!first) os << "*";
                print_wrapped(os, c, 3);
                first = false;
            }
            break;
        }
        case Kind::Power:
            print_wrapped(os, e.children()[0], 4);
            os << "^";
            if (e.exponent().is_integer() && e.exponent().num() >= 0)
                os << e.exponent().str();
            else
                os << "(" << e.exponent().str() << ")";
            break;
        case Kind::Exponential:
            os << "exp(";
            print(os, e.children()[0]);
            os << ")";
            break;
    }
}

}  // namespace

std::string Expr::str() const {
    std::ostringstream os;
    print(os, *this);
    return os.str();
}

Expr sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    flat.reserve(terms.size());
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& c : t.children()) flat.push_back(c);
        } else if (!t.is_zero_constant()) {
            flat.push_back(std::move(t));
        }
    }
    if (flat.empty()) return Expr(0);
    if (flat.size() == 1) return flat[0];
    return make_node(Kind::Sum, Number(0), -1, {}, {}, std::move(flat), Rational(1));
}

Expr product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    flat.reserve(factors.size());
    for (auto& f : factors) {
        if (f.is_zero_constant()) return Expr(0);
        if (f.kind() == Kind::Product) {
            for (const auto& c : f.children()) flat.push_back(c);
        } else if (!f.is_one_constant()) {
            flat.push_back(std::move(f));
        }
    }
    if (flat.empty()) return Expr(1);
    if (flat.size() == 1) return flat[0];
    return make_node(Kind::Product, Number(0), -1, {}, {}, std::move(flat), Rational(1));
}

Expr pow(const Expr& base, const Rational& q) {
    if (q.is_zero()) return Expr(1);
    if (q == Rational(1)) return base;
    if (base.is_one_constant()) return Expr(1);
    if (base.is_zero_constant()) {
        if (q.num() < 0) throw DomainError("zero raised to a negative power");
        return Expr(0);
    }
    if (base.is_constant() && q.is_integer()) return Expr(base.number().pow(q));
    return make_node(Kind::Power, Number(0), -1, {}, {}, {base}, q);
}

Expr sqrt(const Expr& base) { return pow(base, Rational(1, 2)); }

Expr exp(const Expr& argument) {
    if (argument.is_zero_constant()) return Expr(1);
    return make_node(Kind::Exponential, Number(0), -1, {}, {}, {argument}, Rational(1));
}

Expr cos(const Expr& argument) {
    Expr i = Expr::imaginary_unit();
    return Expr::rational(1, 2) * (exp(i * argument) + exp(-(i * argument)));
}

Expr sin(const Expr& argument) {
    Expr i = Expr::imaginary_unit();
    return Expr(Number(Rational(0), Rational(-1, 2))) * (exp(i * argument) - exp(-(i * argument)));
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }

Expr operator-(const Expr& a) {
    if (a.is_constant()) return Expr(-a.number());
    return product({Expr(-1), a});
}

Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr(a.number() * b.number());
    return product({a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero_constant()) throw DomainError("division by zero");
    if (b.is_constant()) {
        if (a.is_constant()) return Expr(a.number() / b.number());
        return product({Expr(Number(1) / b.number()), a});
    }
    return product({a, pow(b, Rational(-1))});
}

Expr differentiate(const Expr& e, int index) {
    if (index < 0 || index >= kDim) throw DomainError("coordinate index out of range");
    switch (e.kind()) {
        case Kind::Constant:
        case Kind::Parameter: return Expr(0);
        case Kind::Coordinate: return Expr(e.index() == index ? 1 : 0);
        case Kind::Field: {
            FieldSpec f = e.field_spec();
            if (!f.depends_on(index)) return Expr(0);
            f.derivs[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(f.derivs[static_cast<std::size_t>(index)] + 1);
            return Expr::field(f);
        }
        case Kind::Sum: {
            std::vector<Expr> parts;
            for (const auto& c : e.children()) parts.push_back(differentiate(c, index));
            return sum(std::move(parts));
        }
        case Kind::Product: {
            const auto& cs = e.children();
            std::vector<Expr> parts;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                Expr d = differentiate(cs[i], index);
                if (d.is_zero_constant()) continue;
                std::vector<Expr> fs;
                fs.reserve(cs.size());
                for (std::size_t j = 0; j < cs.size(); ++j) fs.push_back(j == i ? d : cs[j]);
                parts.push_back(product(std::move(fs)));
            }
            return sum(std::move(parts));
        }
        case Kind::Power: {
            const Expr& b = e.children()[0];
            Expr db = differentiate(b, index);
            if (db.is_zero_constant()) return Expr(0);
            const Rational& q = e.exponent();
            return product({Expr(Number(q)), pow(b, q - Rational(1)), db});
        }
        case Kind::Exponential: {
            Expr du = differentiate(e.children()[0], index);
            if (du.is_zero_constant()) return Expr(0);
            return product({e, du});
        }
    }
    return Expr(0);
}

Expr simplify(const Expr& e) { return NormalForm::from_expr(e).to_expr(); }

bool structurally_zero(const Expr& e) { return NormalForm::from_expr(e).is_zero(); }

Expr substitute(const Expr& e, const std::string& name, const Expr& value) {
    switch (e.kind()) {
        case Kind::Parameter: return e.name() == name ? value : e;
        case Kind::Constant:
        case Kind::Coordinate:
        case Kind::Field: return e;
        case Kind::Sum: {
            std::vector<Expr> cs;
            for (const auto& c : e.children()) cs.push_back(substitute(c, name, value));
            return sum(std::move(cs));
        }
        case Kind::Product: {
            std::vector<Expr> cs;
            for (const auto& c : e.children()) cs.push_back(substitute(c, name, value));
            return product(std::move(cs));
        }
        case Kind::Power: return pow(substitute(e.children()[0], name, value), e.exponent());
        case Kind::Exponential: return exp(substitute(e.children()[0], name, value));
    }
    return e;
}

std::vector<Expr> additive_terms(const Expr& e) {
    if (e.kind() != Kind::Sum) return {e};
    std::vector<Expr> out;
    for (const auto& c : e.children()) {
        auto sub = additive_terms(c);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

}  // namespace tritime::expr

#include "tritime/normal_form.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "tritime/errors.hpp"

namespace tritime::expr {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t rational_hash(const Rational& r) {
    return mix(std::hash<std::int64_t>{}(r.num()), std::hash<std::int64_t>{}(r.den()));
}

Atom make_atom(AtomNode n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 1099511628211ULL + 7;
    switch (n.kind) {
        case AtomKind::Coordinate: h = mix(h, static_cast<std::size_t>(n.index)); break;
        case AtomKind::Parameter: h = mix(h, std::hash<std::string>{}(n.name)); break;
        case AtomKind::Field:
            h = mix(h, std::hash<std::string>{}(n.field.name));
            h = mix(h, n.field.deps);
            for (auto d : n.field.derivs) h = mix(h, d);
            break;
        case AtomKind::Radical: h = mix(h, n.base->hash()); break;
    }
    n.hash = h;
    return std::make_shared<const AtomNode>(std::move(n));
}

const Atom& coordinate_atom(int index) {
    static const std::array<Atom, kDim> atoms = [] {
        std::array<Atom, kDim> a;
        for (int i = 0; i < kDim; ++i) {
            AtomNode n;
            n.kind = AtomKind::Coordinate;
            n.index = i;
            a[static_cast<std::size_t>(i)] = make_atom(std::move(n));
        }
        return a;
    }();
    return atoms.at(static_cast<std::size_t>(index));
}

/// floor of a rational
std::int64_t floor_of(const Rational& q) {
    std::int64_t f = q.num() / q.den();
    if (q.num() < 0 && f * q.den() != q.num()) --f;
    return f;
}

}  // namespace

int compare_atoms(const Atom& a, const Atom& b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case AtomKind::Coordinate: return a->index < b->index ? -1 : (a->index > b->index ? 1 : 0);
        case AtomKind::Parameter: return a->name.compare(b->name);
        case AtomKind::Field: {
            int c = a->field.name.compare(b->field.name);
            if (c != 0) return c;
            if (a->field.deps != b->field.deps) return a->field.deps < b->field.deps ? -1 : 1;
            if (a->field.derivs != b->field.derivs) return a->field.derivs < b->field.derivs ? -1 : 1;
            return 0;
        }
        case AtomKind::Radical: {
            if (a->hash != b->hash) return a->hash < b->hash ? -1 : 1;
            return a->base->compare(*b->base);
        }
    }
    return 0;
}

void Monomial::rehash() {
    std::size_t h = 0x51ed27ULL;
    for (const auto& f : factors) {
        h = mix(h, f.atom->hash);
        h = mix(h, rational_hash(f.power));
    }
    if (exponent) h = mix(h, exponent->hash() ^ 0xe7037ed1a0b428dbULL);
    hash = h;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        int c = compare_atoms(a.factors[i].atom, b.factors[i].atom);
        if (c != 0) return c;
        c = a.factors[i].power.compare(b.factors[i].power);
        if (c != 0) return c;
    }
    if (static_cast<bool>(a.exponent) != static_cast<bool>(b.exponent)) return a.exponent ? 1 : -1;
    if (a.exponent) {
        if (a.exponent == b.exponent) return 0;
        return a.exponent->compare(*b.exponent);
    }
    return 0;
}

namespace {

struct MonoLess {
    bool operator()(const Term& a, const Term& b) const { return compare_monomials(a.mono, b.mono) < 0; }
};

}  // namespace

void NormalForm::rehash() {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& t : terms_) {
        h = mix(h, t.mono.hash);
        h = mix(h, t.coeff.hash());
    }
    hash_ = h;
}

NormalForm NormalForm::from_sorted(std::vector<Term> terms) {
    NormalForm nf;
    nf.terms_ = std::move(terms);
    nf.rehash();
    return nf;
}

NormalForm NormalForm::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), MonoLess{});
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && compare_monomials(out.back().mono, t.mono) == 0) {
            out.back().coeff = out.back().coeff + t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff.is_zero(); }), out.end());
    return from_sorted(std::move(out));
}

NormalForm NormalForm::constant(const Number& c) {
    if (c.is_zero()) return NormalForm();
    Term t;
    t.coeff = c;
    t.mono.rehash();
    return from_sorted({std::move(t)});
}

NormalForm monomial_nf(const Monomial& m, const Number& c) {
    if (c.is_zero()) return NormalForm();
    Term t{m, c};
    return NormalForm::from_sorted({std::move(t)});
}

NormalForm NormalForm::coordinate(int index) {
    Monomial m;
    m.factors.push_back({coordinate_atom(index), Rational(1)});
    m.rehash();
    return monomial_nf(m, Number(1));
}

NormalForm NormalForm::parameter(const std::string& name) {
    AtomNode n;
    n.kind = AtomKind::Parameter;
    n.name = name;
    Monomial m;
    m.factors.push_back({make_atom(std::move(n)), Rational(1)});
    m.rehash();
    return monomial_nf(m, Number(1));
}

NormalForm NormalForm::field(const FieldSpec& spec) {
    for (int i = 0; i < kDim; ++i) {
        if (spec.derivs[static_cast<std::size_t>(i)] > 0 && !spec.depends_on(i)) return NormalForm();
    }
    AtomNode n;
    n.kind = AtomKind::Field;
    n.field = spec;
    Monomial m;
    m.factors.push_back({make_atom(std::move(n)), Rational(1)});
    m.rehash();
    return monomial_nf(m, Number(1));
}

bool NormalForm::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_[0].mono.factors.empty() && !terms_[0].mono.exponent;
}

Number NormalForm::constant_value() const {
    if (terms_.empty()) return Number(0);
    if (!is_constant()) throw DomainError("normal form is not constant");
    return terms_[0].coeff;
}

NormalForm NormalForm::operator+(const NormalForm& o) const {
    if (terms_.empty()) return o;
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = compare_monomials(terms_[i].mono, o.terms_[j].mono);
        if (c < 0) {
            out.push_back(terms_[i++]);
        } else if (c > 0) {
            out.push_back(o.terms_[j++]);
        } else {
            Number s = terms_[i].coeff + o.terms_[j].coeff;
            if (!s.is_zero()) out.push_back(Term{terms_[i].mono, s});
            ++i;
            ++j;
        }
    }
    while (i < terms_.size()) out.push_back(terms_[i++]);
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    return from_sorted(std::move(out));
}

NormalForm NormalForm::operator-() const { return scaled(Number(-1)); }

NormalForm NormalForm::operator-(const NormalForm& o) const { return *this + (-o); }

NormalForm NormalForm::scaled(const Number& c) const {
    if (c.is_zero()) return NormalForm();
    if (c.is_one()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Number v = t.coeff * c;
        if (!v.is_zero()) out.push_back(Term{t.mono, v});
    }
    return from_sorted(std::move(out));
}

namespace {

/// Result of multiplying two monomials: a monomial, a coefficient, and
/// radicals whose exponent became a positive integer and must be expanded.
struct MonoProduct {
    Monomial mono;
    Number coeff{1};
    std::vector<std::pair<NormalFormPtr, std::int64_t>> expansions;
};

/// Bring a factor into canonical shape; returns false when it disappears.
bool settle_factor(Factor& f, MonoProduct& out) {
    if (f.power.is_zero()) return false;
    if (f.atom->kind != AtomKind::Radical) return true;
    if (f.atom->base->is_constant()) {
        // Constant radical: keep the fractional part of the exponent in [0, 1).
        std::int64_t whole = floor_of(f.power);
        if (whole != 0) {
            out.coeff = out.coeff * f.atom->base->constant_value().pow(Rational(whole));
            f.power = f.power - Rational(whole);
        }
        return !f.power.is_zero();
    }
    if (f.power.is_integer() && f.power.num() > 0) {
        out.expansions.emplace_back(f.atom->base, f.power.num());
        return false;
    }
    if (!f.power.is_integer() && f.power.compare(Rational(1)) > 0) {
        std::int64_t whole = floor_of(f.power);
        out.expansions.emplace_back(f.atom->base, whole);
        f.power = f.power - Rational(whole);
    }
    return true;
}

MonoProduct multiply_monomials(const Monomial& a, const Monomial& b) {
    MonoProduct out;
    auto& fs = out.mono.factors;
    fs.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        Factor f;
        if (j >= b.factors.size()) {
            f = a.factors[i++];
        } else if (i >= a.factors.size()) {
            f = b.factors[j++];
        } else {
            int c = compare_atoms(a.factors[i].atom, b.factors[j].atom);
            if (c < 0) {
                f = a.factors[i++];
            } else if (c > 0) {
                f = b.factors[j++];
            } else {
                f = a.factors[i];
                f.power = a.factors[i].power + b.factors[j].power;
                ++i;
                ++j;
                if (!settle_factor(f, out)) continue;
            }
        }
        fs.push_back(std::move(f));
    }
    if (a.exponent && b.exponent) {
        NormalForm s = *a.exponent + *b.exponent;
        if (!s.is_zero()) {
            if (s.is_constant()) {
                out.coeff = out.coeff * s.constant_value().exp();
            } else {
                out.mono.exponent = std::make_shared<const NormalForm>(std::move(s));
            }
        }
    } else {
        out.mono.exponent = a.exponent ? a.exponent : b.exponent;
    }
    out.mono.rehash();
    return out;
}

NormalForm integer_power(const NormalForm& base, std::int64_t n) {
    NormalForm result = NormalForm::constant(Number(1));
    NormalForm b = base;
    while (n > 0) {
        if (n & 1) result = result * b;
        n >>= 1;
        if (n > 0) b = b * b;
    }
    return result;
}

}  // namespace

namespace {

/// If `sum` is a constant multiple of the base of a radical atom occurring in
/// `nf`, return that atom and the multiple.
std::optional<std::pair<Atom, Number>> matching_radical(const NormalForm& nf, const NormalForm& sum) {
    if (sum.size() < 2 || nf.is_zero()) return std::nullopt;
    const Number lead = sum.terms()[0].coeff;
    std::optional<NormalForm> normalized;
    auto negative_power_in = [](const Term& t, const Atom& a) {
        for (const auto& f : t.mono.factors)
            if (compare_atoms(f.atom, a) == 0) return f.power.num() < 0;
        return false;
    };
    for (const auto& f : nf.terms()[0].mono.factors) {
        if (f.atom->kind != AtomKind::Radical || f.power.num() >= 0 || f.atom->base->size() != sum.size()) continue;
        if (!normalized) normalized = sum.scaled(Number(1) / lead);
        const Number base_lead = f.atom->base->terms()[0].coeff;
        std::optional<Number> multiple;
        if (*f.atom->base == sum)
            multiple = Number(1);
        else if (f.atom->base->scaled(Number(1) / base_lead) == *normalized)
            multiple = lead / base_lead;
        if (!multiple) continue;
        bool everywhere = true;
        for (const auto& t : nf.terms()) everywhere = everywhere && negative_power_in(t, f.atom);
        if (everywhere) return std::make_pair(f.atom, *multiple);
    }
    return std::nullopt;
}

}  // namespace

NormalForm NormalForm::operator*(const NormalForm& o) const {
    if (terms_.empty() || o.terms_.empty()) return NormalForm();
    if (is_constant()) return o.scaled(terms_[0].coeff);
    if (o.is_constant()) return scaled(o.terms_[0].coeff);
    // Multiplying by the base of one of our own radicals raises that radical's exponent.
    for (int side = 0; side < 2; ++side) {
        const NormalForm& a = side == 0 ? *this : o;
        const NormalForm& b = side == 0 ? o : *this;
        if (b.size() < 2) continue;
        if (auto m = matching_radical(a, b)) {
            Monomial mono;
            mono.factors.push_back({m->first, Rational(1)});
            mono.rehash();
            Term t{mono, m->second};
            std::vector<Term> out;
            for (const auto& at : a.terms_) {
                MonoProduct p = multiply_monomials(at.mono, t.mono);
                NormalForm piece = monomial_nf(p.mono, at.coeff * t.coeff * p.coeff);
                for (const auto& [base, n] : p.expansions) piece = piece * integer_power(*base, n);
                for (const auto& pt : piece.terms_) out.push_back(pt);
            }
            return from_terms(std::move(out));
        }
    }
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    std::vector<NormalForm> extra;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            MonoProduct p = multiply_monomials(a.mono, b.mono);
            Number c = a.coeff * b.coeff * p.coeff;
            if (c.is_zero()) continue;
            if (p.expansions.empty()) {
                out.push_back(Term{std::move(p.mono), c});
            } else {
                NormalForm acc = monomial_nf(p.mono, c);
                for (const auto& [base, n] : p.expansions) acc = acc * integer_power(*base, n);
                extra.push_back(std::move(acc));
            }
        }
    }
    NormalForm r = from_terms(std::move(out));
    for (const auto& e : extra) r = r + e;
    return r;
}

namespace {

/// Raise a single term c*m to a rational power, distributing over factors.
NormalForm term_power(const Term& t, const Rational& q) {
    MonoProduct acc;
    Number c = t.coeff;
    NormalForm prefactor = NormalForm::constant(Number(1));
    if (q.is_integer()) {
        acc.coeff = c.pow(q);
    } else if (c.is_positive_rational()) {
        Number exact = c.pow(q);
        if (exact.exact()) {
            acc.coeff = exact;
        } else {
            AtomNode n;
            n.kind = AtomKind::Radical;
            n.base = std::make_shared<const NormalForm>(NormalForm::constant(c));
            Monomial m;
            Factor f{make_atom(std::move(n)), q};
            MonoProduct tmp;
            if (settle_factor(f, tmp)) m.factors.push_back(f);
            m.rehash();
            prefactor = monomial_nf(m, tmp.coeff);
        }
    } else if (c.is_real_rational() && q.den() == 2) {
        // (-a)^(k/2) = (i)^k a^(k/2) on the principal branch.
        Number i_pow = Number::imag_unit().pow(Rational(q.num()));
        prefactor = term_power(Term{Monomial{}, -c}, q).scaled(i_pow);
        acc.coeff = Number(1);
    } else {
        acc.coeff = c.pow(q);
    }
    for (const auto& f : t.mono.factors) {
        Factor g{f.atom, f.power * q};
        if (settle_factor(g, acc)) acc.mono.factors.push_back(std::move(g));
    }
    if (t.mono.exponent) {
        NormalForm e = t.mono.exponent->scaled(Number(q));
        if (!e.is_zero()) acc.mono.exponent = std::make_shared<const NormalForm>(std::move(e));
    }
    acc.mono.rehash();
    NormalForm r = monomial_nf(acc.mono, acc.coeff) * prefactor;
    for (const auto& [base, n] : acc.expansions) r = r * integer_power(*base, n);
    return r;
}

}  // namespace

NormalForm NormalForm::pow(const Rational& q) const {
    if (q.is_zero()) return constant(Number(1));
    if (terms_.empty()) {
        if (q.num() < 0) throw DomainError("zero raised to a negative power");
        return NormalForm();
    }
    if (q == Rational(1)) return *this;
    if (terms_.size() == 1) return term_power(terms_[0], q);
    if (q.is_positive_integer()) return integer_power(*this, q.num());
    // Multi-term base: factor out the leading coefficient when that is branch-safe.
    Number lead = terms_[0].coeff;
    NormalForm base = *this;
    NormalForm prefactor = constant(Number(1));
    if (q.is_integer() || lead.is_positive_rational()) {
        base = scaled(Number(1) / lead);
        prefactor = term_power(Term{Monomial{}, lead}, q);
    }
    AtomNode n;
    n.kind = AtomKind::Radical;
    n.base = std::make_shared<const NormalForm>(std::move(base));
    Factor f{make_atom(std::move(n)), q};
    MonoProduct acc;
    if (settle_factor(f, acc)) acc.mono.factors.push_back(f);
    acc.mono.rehash();
    NormalForm r = monomial_nf(acc.mono, acc.coeff) * prefactor;
    for (const auto& [b, k] : acc.expansions) r = r * integer_power(*b, k);
    return r;
}

NormalForm NormalForm::exp() const {
    Number c(0);
    std::vector<Term> rest;
    for (const auto& t : terms_) {
        if (t.mono.factors.empty() && !t.mono.exponent)
            c = t.coeff;
        else
            rest.push_back(t);
    }
    Monomial m;
    if (!rest.empty()) m.exponent = std::make_shared<const NormalForm>(from_sorted(std::move(rest)));
    m.rehash();
    return monomial_nf(m, c.exp());
}

NormalForm NormalForm::diff(int index) const {
    std::vector<NormalForm> parts;
    for (const auto& t : terms_) {
        const auto& fs = t.mono.factors;
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const Atom& a = fs[k].atom;
            NormalForm da;
            switch (a->kind) {
                case AtomKind::Coordinate:
                    if (a->index != index) continue;
                    da = constant(Number(1));
                    break;
                case AtomKind::Parameter: continue;
                case AtomKind::Field: {
                    if (!a->field.depends_on(index)) continue;
                    FieldSpec g = a->field;
                    g.derivs[static_cast<std::size_t>(index)] =
                        static_cast<std::uint8_t>(g.derivs[static_cast<std::size_t>(index)] + 1);
                    da = field(g);
                    break;
                }
                case AtomKind::Radical:
                    if (a->base->is_constant()) continue;
                    da = a->base->diff(index);
                    break;
            }
            if (da.is_zero()) continue;
            Monomial m;
            m.exponent = t.mono.exponent;
            MonoProduct acc;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                if (j != k) {
                    m.factors.push_back(fs[j]);
                    continue;
                }
                Factor g{fs[j].atom, fs[j].power - Rational(1)};
                if (settle_factor(g, acc)) m.factors.push_back(std::move(g));
            }
            m.rehash();
            NormalForm piece = monomial_nf(m, t.coeff * Number(fs[k].power) * acc.coeff) * da;
            for (const auto& [b, n] : acc.expansions) piece = piece * integer_power(*b, n);
            parts.push_back(std::move(piece));
        }
        if (t.mono.exponent) {
            NormalForm de = t.mono.exponent->diff(index);
            if (!de.is_zero()) parts.push_back(monomial_nf(t.mono, t.coeff) * de);
        }
    }
    NormalForm r;
    for (const auto& p : parts) r = r + p;
    return r;
}

namespace {

Complex atom_value(const Atom& a, const Binding& b) {
    switch (a->kind) {
        case AtomKind::Coordinate: return b.coord(a->index);
        case AtomKind::Parameter: return b.param(a->name);
        case AtomKind::Field: return b.field(a->field.name).derivative(a->field.derivs, b.point());
        case AtomKind::Radical: return a->base->evaluate(b);
    }
    return {};
}

Complex rational_power(Complex z, const Rational& q) {
    if (q.is_integer()) {
        std::int64_t n = q.num();
        if (n >= 0 && n <= 64) {
            Complex r(1.0, 0.0);
            for (std::int64_t i = 0; i < n; ++i) r *= z;
            return r;
        }
        if (n < 0 && n >= -64) {
            Complex r(1.0, 0.0);
            for (std::int64_t i = 0; i < -n; ++i) r *= z;
            return Complex(1.0, 0.0) / r;
        }
    }
    return std::pow(z, q.to_double());
}

}  // namespace

Complex NormalForm::evaluate(const Binding& b) const {
    Complex total(0.0, 0.0);
    for (const auto& t : terms_) {
        Complex v = t.coeff.value();
        for (const auto& f : t.mono.factors) v *= rational_power(atom_value(f.atom, b), f.power);
        if (t.mono.exponent) v *= std::exp(t.mono.exponent->evaluate(b));
        total += v;
    }
    return total;
}

int NormalForm::compare(const NormalForm& o) const {
    if (this == &o) return 0;
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        int c = compare_monomials(terms_[i].mono, o.terms_[i].mono);
        if (c != 0) return c;
        c = terms_[i].coeff.compare(o.terms_[i].coeff);
        if (c != 0) return c;
    }
    return 0;
}

NormalForm NormalForm::from_expr(const Expr& e) {
    switch (e.kind()) {
        case Kind::Constant: return constant(e.number());
        case Kind::Coordinate: return coordinate(e.index());
        case Kind::Parameter: return parameter(e.name());
        case Kind::Field: return field(e.field_spec());
        case Kind::Sum: {
            std::vector<Term> all;
            for (const auto& c : e.children()) {
                NormalForm p = from_expr(c);
                for (const auto& t : p.terms_) all.push_back(t);
            }
            return from_terms(std::move(all));
        }
        case Kind::Product: {
            NormalForm r = constant(Number(1));
            for (const auto& c : e.children()) {
                r = r * from_expr(c);
                if (r.is_zero()) break;
            }
            return r;
        }
        case Kind::Power: return from_expr(e.children()[0]).pow(e.exponent());
        case Kind::Exponential: return from_expr(e.children()[0]).exp();
    }
    return NormalForm();
}

namespace {

Expr atom_expr(const Atom& a) {
    switch (a->kind) {
        case AtomKind::Coordinate: return Expr::coordinate(a->index);
        case AtomKind::Parameter: return Expr::parameter(a->name);
        case AtomKind::Field: return Expr::field(a->field);
        case AtomKind::Radical: return a->base->to_expr();
    }
    return Expr(0);
}

Expr monomial_expr(const Monomial& m, const Number& c) {
    std::vector<Expr> fs;
    fs.reserve(m.factors.size() + 2);
    if (!c.is_one()) fs.emplace_back(c);
    for (const auto& f : m.factors) {
        Expr a = atom_expr(f.atom);
        fs.push_back(f.power == Rational(1) ? a : pow(a, f.power));
    }
    if (m.exponent) fs.push_back(exp(m.exponent->to_expr()));
    return product(std::move(fs));
}

}  // namespace

Expr NormalForm::to_expr() const {
    if (terms_.empty()) return Expr(0);
    std::vector<Expr> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back(monomial_expr(t.mono, t.coeff));
    return sum(std::move(ts));
}

}  // namespace tritime::expr

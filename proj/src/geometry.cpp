#include "tritime/geometry.hpp"

#include <map>

#include "parallel.hpp"
#include "tritime/errors.hpp"

namespace tritime::geometry {

using expr::Number;
using expr::Rational;

Matrix6 flat_components() {
    Matrix6 m;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) m[a][b] = Expr(a == b ? kEta[a] : 0);
    return m;
}

Metric6::Metric6(Matrix6 components, Binding reference) : g_(std::move(components)), reference_(std::move(reference)) {
    for (int a = 0; a < kDim; ++a)
        for (int b = a + 1; b < kDim; ++b)
            if (!expr::structurally_zero(g_[a][b] - g_[b][a]))
                throw InvalidMetric("metric is not symmetric in (" + std::to_string(a) + "," + std::to_string(b) + ")");
    ComplexMatrix6 g = at(reference_);
    if (std::abs(g.determinant()) <= 1e-12) throw SingularMetric("metric is singular at the reference binding");
    // Complex-valued metrics are classified by the real parts of their eigenvalues.
    Eigen::ComplexEigenSolver<ComplexMatrix6> es(g, false);
    int positive = 0;
    int negative = 0;
    for (int i = 0; i < kDim; ++i) {
        double v = es.eigenvalues()(i).real();
        if (v > 1e-9)
            ++positive;
        else if (v < -1e-9)
            ++negative;
    }
    if (positive != 1 || negative != 5) throw InvalidMetric("metric signature is not (+,-,-,-,-,-) at the reference binding");
}

Metric6 Metric6::flat() { return Metric6(flat_components(), Binding{}); }

ComplexMatrix6 Metric6::at(const Binding& b) const {
    ComplexMatrix6 m;
    for (int a = 0; a < kDim; ++a)
        for (int c = 0; c < kDim; ++c) m(a, c) = expr::evaluate(g_[a][c], b);
    return m;
}

FormMatrix6 to_forms(const Matrix6& m) {
    FormMatrix6 f;
    detail::parallel_for(kDim * kDim, [&](std::size_t k) {
        int a = static_cast<int>(k / kDim);
        int b = static_cast<int>(k % kDim);
        f[a][b] = NormalForm::from_expr(m[a][b]);
    });
    return f;
}

Matrix6 to_exprs(const FormMatrix6& m) {
    Matrix6 e;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) e[a][b] = m[a][b].to_expr();
    return e;
}

namespace {

/// Determinants of square submatrices by first-row expansion, memoized by
/// (row mask, column mask); structurally zero entries are skipped.
class MinorTable {
public:
    explicit MinorTable(const FormMatrix6& g) : g_(g) {}

    const NormalForm& det(unsigned rows, unsigned cols) {
        unsigned key = (rows << kDim) | cols;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        NormalForm result;
        if (rows == 0) {
            result = NormalForm::constant(Number(1));
        } else {
            int r = __builtin_ctz(rows);
            unsigned rest = rows & ~(1U << r);
            int position = 0;
            for (int c = 0; c < kDim; ++c) {
                if (!((cols >> c) & 1U)) continue;
                const NormalForm& entry = g_[r][c];
                if (!entry.is_zero()) {
                    const NormalForm& sub = det(rest, cols & ~(1U << c));
                    if (!sub.is_zero()) {
                        NormalForm term = entry * sub;
                        result = (position % 2 == 0) ? result + term : result - term;
                    }
                }
                ++position;
            }
        }
        return memo_.emplace(key, std::move(result)).first->second;
    }

private:
    const FormMatrix6& g_;
    std::map<unsigned, NormalForm> memo_;
};

struct FormCurvature {
    FormMatrix6 inverse;
    std::array<FormMatrix6, kDim> gamma;
    FormMatrix6 ricci;
    NormalForm scalar;
    FormMatrix6 einstein;
};

std::array<FormMatrix6, kDim> christoffel_forms(const FormMatrix6& g, const FormMatrix6& ginv) {
    // dg[x][a][b] = d_x g_ab
    std::array<FormMatrix6, kDim> dg;
    detail::parallel_for(kDim * kDim * kDim, [&](std::size_t k) {
        int x = static_cast<int>(k / (kDim * kDim));
        int a = static_cast<int>((k / kDim) % kDim);
        int b = static_cast<int>(k % kDim);
        if (a <= b) dg[x][a][b] = g[a][b].diff(x);
    });
    for (int x = 0; x < kDim; ++x)
        for (int a = 0; a < kDim; ++a)
            for (int b = 0; b < a; ++b) dg[x][a][b] = dg[x][b][a];

    std::array<FormMatrix6, kDim> gamma;
    detail::parallel_for(kDim * kDim * kDim, [&](std::size_t k) {
        int c = static_cast<int>(k / (kDim * kDim));
        int a = static_cast<int>((k / kDim) % kDim);
        int b = static_cast<int>(k % kDim);
        if (a > b) return;
        NormalForm acc;
        for (int d = 0; d < kDim; ++d) {
            if (ginv[c][d].is_zero()) continue;
            NormalForm bracket = dg[a][d][b] + dg[b][d][a] - dg[d][a][b];
            if (bracket.is_zero()) continue;
            acc = acc + ginv[c][d] * bracket;
        }
        gamma[c][a][b] = acc.scaled(Number(Rational(1, 2)));
    });
    for (int c = 0; c < kDim; ++c)
        for (int a = 0; a < kDim; ++a)
            for (int b = 0; b < a; ++b) gamma[c][a][b] = gamma[c][b][a];
    return gamma;
}

FormMatrix6 ricci_forms(const std::array<FormMatrix6, kDim>& gamma) {
    // Contracted connection Gamma_a = Gamma^c_ac.
    std::array<NormalForm, kDim> contracted;
    for (int a = 0; a < kDim; ++a) {
        NormalForm acc;
        for (int c = 0; c < kDim; ++c) acc = acc + gamma[c][a][c];
        contracted[a] = acc;
    }
    FormMatrix6 r;
    detail::parallel_for(kDim * kDim, [&](std::size_t k) {
        int a = static_cast<int>(k / kDim);
        int b = static_cast<int>(k % kDim);
        if (a > b) return;
        NormalForm acc;
        for (int c = 0; c < kDim; ++c) {
            if (!gamma[c][a][b].is_zero()) {
                acc = acc + gamma[c][a][b].diff(c);
                acc = acc + gamma[c][a][b] * contracted[c];
            }
        }
        acc = acc - contracted[a].diff(b);
        for (int c = 0; c < kDim; ++c) {
            for (int d = 0; d < kDim; ++d) {
                const NormalForm& x = gamma[c][a][d];
                const NormalForm& y = gamma[d][b][c];
                if (x.is_zero() || y.is_zero()) continue;
                acc = acc - x * y;
            }
        }
        r[a][b] = std::move(acc);
    });
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < a; ++b) r[a][b] = r[b][a];
    return r;
}

FormCurvature curvature_forms(const FormMatrix6& g) {
    FormCurvature out;
    out.inverse = invert_forms(g);
    out.gamma = christoffel_forms(g, out.inverse);
    out.ricci = ricci_forms(out.gamma);
    NormalForm s;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b)
            if (!out.inverse[a][b].is_zero() && !out.ricci[a][b].is_zero()) s = s + out.inverse[a][b] * out.ricci[a][b];
    out.scalar = s;
    NormalForm half_s = s.scaled(Number(Rational(1, 2)));
    detail::parallel_for(kDim * kDim, [&](std::size_t k) {
        int a = static_cast<int>(k / kDim);
        int b = static_cast<int>(k % kDim);
        out.einstein[a][b] = out.ricci[a][b] - half_s * g[a][b];
    });
    return out;
}

Rank2Tensor wrap(const FormMatrix6& m, Role role) {
    Rank2Tensor t;
    t.c = to_exprs(m);
    t.role = role;
    return t;
}

}  // namespace

FormMatrix6 invert_forms(const FormMatrix6& g) {
    MinorTable table(g);
    const unsigned all = (1U << kDim) - 1;
    NormalForm det = table.det(all, all);
    if (det.is_zero()) throw SingularMetric("metric determinant is identically zero");
    NormalForm inv_det = det.is_constant() ? NormalForm::constant(Number(1) / det.constant_value()) : det.pow(Rational(-1));
    FormMatrix6 inv;
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            const NormalForm& minor = table.det(all & ~(1U << i), all & ~(1U << j));
            NormalForm cof = ((i + j) % 2 == 0) ? minor : -minor;
            inv[j][i] = cof * inv_det;
        }
    }
    return inv;
}

Rank2Tensor invert(const Metric6& metric) { return wrap(invert_forms(to_forms(metric.components())), Role::InverseMetric); }

Christoffel christoffel(const Metric6& metric) {
    FormMatrix6 g = to_forms(metric.components());
    auto gamma = christoffel_forms(g, invert_forms(g));
    Christoffel out;
    for (int c = 0; c < kDim; ++c) out.c[c] = to_exprs(gamma[c]);
    return out;
}

Curvature curvature(const Metric6& metric) {
    FormCurvature f = curvature_forms(to_forms(metric.components()));
    Curvature out;
    out.inverse = wrap(f.inverse, Role::InverseMetric);
    for (int c = 0; c < kDim; ++c) out.christoffel.c[c] = to_exprs(f.gamma[c]);
    out.ricci = wrap(f.ricci, Role::Ricci);
    out.scalar = f.scalar.to_expr();
    out.einstein = wrap(f.einstein, Role::Einstein);
    return out;
}

Rank2Tensor ricci(const Metric6& metric) { return curvature(metric).ricci; }

Expr ricci_scalar(const Metric6& metric) { return curvature(metric).scalar; }

Rank2Tensor einstein(const Metric6& metric) { return curvature(metric).einstein; }

namespace {

using Grid = std::array<ComplexMatrix6, kDim>;

template <typename F>
auto central(F&& f, const Binding& at, int dir, double h) {
    auto shifted = [&](double s) {
        Binding b = at;
        b.set_coord(dir, at.coord(dir) + s);
        return f(b);
    };
    return (shifted(-2 * h) - 8.0 * shifted(-h) + 8.0 * shifted(h) - shifted(2 * h)) / (12.0 * h);
}

Grid christoffel_at(const Metric6& metric, const Binding& at, double h) {
    ComplexMatrix6 inv = metric.at(at).inverse();
    Grid dg;
    for (int x = 0; x < kDim; ++x) {
        dg[x] = central([&](const Binding& b) { return metric.at(b); }, at, x, h);
    }
    Grid gamma;
    for (int c = 0; c < kDim; ++c) {
        gamma[c].setZero();
        for (int a = 0; a < kDim; ++a)
            for (int b = 0; b < kDim; ++b)
                for (int d = 0; d < kDim; ++d)
                    gamma[c](a, b) += 0.5 * inv(c, d) * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));
    }
    return gamma;
}

}  // namespace

NumericCurvature numeric_curvature(const Metric6& metric, const Binding& at, double h) {
    NumericCurvature out;
    out.metric = metric.at(at);
    out.inverse = out.metric.inverse();
    out.christoffel = christoffel_at(metric, at, h);
    // dgamma[x][c](a,b) = d_x Gamma^c_ab
    std::array<Grid, kDim> dgamma;
    for (int x = 0; x < kDim; ++x) {
        auto shifted = [&](double s) {
            Binding b = at;
            b.set_coord(x, at.coord(x) + s);
            return christoffel_at(metric, b, h);
        };
        Grid m2 = shifted(-2 * h), m1 = shifted(-h), p1 = shifted(h), p2 = shifted(2 * h);
        for (int c = 0; c < kDim; ++c) dgamma[x][c] = (m2[c] - 8.0 * m1[c] + 8.0 * p1[c] - p2[c]) / (12.0 * h);
    }
    const Grid& g = out.christoffel;
    out.ricci.setZero();
    for (int a = 0; a < kDim; ++a) {
        for (int b = 0; b < kDim; ++b) {
            Complex acc = 0.0;
            for (int c = 0; c < kDim; ++c) {
                acc += dgamma[c][c](a, b) - dgamma[b][c](a, c);
                for (int d = 0; d < kDim; ++d) acc += g[c](a, b) * g[d](c, d) - g[c](a, d) * g[d](b, c);
            }
            out.ricci(a, b) = acc;
        }
    }
    out.scalar = 0.0;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) out.scalar += out.inverse(a, b) * out.ricci(a, b);
    out.einstein = out.ricci - 0.5 * out.scalar * out.metric;
    return out;
}

}  // namespace tritime::geometry

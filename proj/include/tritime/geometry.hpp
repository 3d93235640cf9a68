#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "tritime/binding.hpp"
#include "tritime/expr.hpp"
#include "tritime/normal_form.hpp"

namespace tritime::geometry {

using expr::Binding;
using expr::Complex;
using expr::Expr;
using expr::kDim;
using expr::NormalForm;

using Matrix6 = std::array<std::array<Expr, kDim>, kDim>;
using FormMatrix6 = std::array<std::array<NormalForm, kDim>, kDim>;
using ComplexMatrix6 = Eigen::Matrix<Complex, kDim, kDim>;

/// Flat signature (+,-,-,-,-,-).
inline constexpr std::array<int, kDim> kEta{1, -1, -1, -1, -1, -1};

Matrix6 flat_components();

/// Symmetric 6x6 metric with signature (+,-,-,-,-,-) at a reference binding.
class Metric6 {
public:
    /// Validates symmetry, signature and invertibility at `reference`.
    Metric6(Matrix6 components, Binding reference);
    static Metric6 flat();

    const Expr& operator()(int a, int b) const { return g_[a][b]; }
    const Matrix6& components() const { return g_; }
    const Binding& reference() const { return reference_; }

    /// Numeric components at a binding.
    ComplexMatrix6 at(const Binding& b) const;

private:
    Matrix6 g_;
    Binding reference_;
};

enum class Role { Ricci, Einstein, EnergyMomentum, InverseMetric };

struct Rank2Tensor {
    Matrix6 c;
    Role role = Role::Ricci;
    const Expr& operator()(int a, int b) const { return c[a][b]; }
};

/// Gamma^C_AB stored as c[C][A][B].
struct Christoffel {
    std::array<Matrix6, kDim> c;
    const Expr& operator()(int up, int a, int b) const { return c[up][a][b]; }
};

struct Curvature {
    Rank2Tensor inverse;
    Christoffel christoffel;
    Rank2Tensor ricci;
    Expr scalar;
    Rank2Tensor einstein;
};

Rank2Tensor invert(const Metric6& metric);
Christoffel christoffel(const Metric6& metric);
Rank2Tensor ricci(const Metric6& metric);
Expr ricci_scalar(const Metric6& metric);
Rank2Tensor einstein(const Metric6& metric);
Curvature curvature(const Metric6& metric);

/// Normal-form entry points shared with the field checks.
FormMatrix6 to_forms(const Matrix6& m);
Matrix6 to_exprs(const FormMatrix6& m);
FormMatrix6 invert_forms(const FormMatrix6& g);

/// Finite-difference curvature at one point, independent of the symbolic path.
struct NumericCurvature {
    ComplexMatrix6 metric;
    ComplexMatrix6 inverse;
    std::array<ComplexMatrix6, kDim> christoffel;  // [C](A,B)
    ComplexMatrix6 ricci;
    Complex scalar;
    ComplexMatrix6 einstein;
};

NumericCurvature numeric_curvature(const Metric6& metric, const Binding& at, double h = 1e-3);

}  // namespace tritime::geometry

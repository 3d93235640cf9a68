#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tritime/binding.hpp"
#include "tritime/expr.hpp"
#include "tritime/geometry.hpp"
#include "tritime/sampling.hpp"

namespace testutil {

using namespace tritime::expr;

inline Expr x(int i) { return Expr::coordinate(i); }
inline Expr par(const std::string& n) { return Expr::parameter(n); }
inline Expr I() { return Expr::imaginary_unit(); }

inline Sampling sampling_with(const Binding& base, std::uint64_t seed = 7) {
    Sampling s;
    s.base = base;
    s.seed = seed;
    return s;
}

inline bool vanishes(const Expr& e, const Binding& base, std::uint64_t seed = 7) {
    return is_zero(e, sampling_with(base, seed));
}

inline double max_residual(const Expr& e, const Binding& base, std::uint64_t seed = 7) {
    return residual_stats(e, sampling_with(base, seed)).max_abs;
}

/// Laplacian d1^2 + d2^2 + d3^2.
inline Expr spatial_laplacian(const Expr& f) {
    Expr acc;
    for (int a = 1; a <= 3; ++a) acc = acc + differentiate(differentiate(f, a), a);
    return acc;
}

/// g^{ab} d_a d_b over the four spacetime coordinates.
inline Expr box4(const Expr& f) {
    Expr acc = differentiate(differentiate(f, 0), 0);
    return acc - spatial_laplacian(f);
}

inline double relative_gap(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testutil

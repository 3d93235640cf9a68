#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tritime/binding.hpp"
#include "tritime/expr.hpp"

namespace tritime::expr {

/// Where and how often an expression is sampled when tested for zero.
struct Sampling {
    std::size_t count = 64;
    std::uint64_t seed = 1;
    std::array<std::pair<double, double>, kDim> box{
        {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
    std::map<std::string, std::pair<double, double>> param_ranges;
    Binding base;
    double tolerance = 1e-9;

    static constexpr std::size_t kMinimumCount = 32;
};

struct ResidualStats {
    double max_abs = 0.0;    // largest |value| over the samples
    double scale = 0.0;      // largest term-wise absolute sum over the samples
    std::size_t samples = 0;
    bool zero = false;       // max_abs <= tolerance * (1 + scale)
};

/// Sample points drawn for `s`, with parameters drawn from their ranges.
std::vector<Binding> sample_bindings(const Sampling& s);

/// Residual statistics for one expression, or for the component-wise maximum
/// over several expressions evaluated at the same sample points.
ResidualStats residual_stats(const Expr& e, const Sampling& s);
ResidualStats residual_stats(const std::vector<Expr>& es, const Sampling& s);

bool is_zero(const Expr& e, const Sampling& s);

}  // namespace tritime::expr

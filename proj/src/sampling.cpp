#include "tritime/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tritime/errors.hpp"

namespace tritime::expr {

std::vector<Binding> sample_bindings(const Sampling& s) {
    if (s.count < Sampling::kMinimumCount)
        throw DomainError("sampling needs at least " + std::to_string(Sampling::kMinimumCount) + " points");
    std::mt19937_64 rng(s.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Binding> out;
    out.reserve(s.count);
    for (std::size_t n = 0; n < s.count; ++n) {
        Binding b = s.base;
        for (int i = 0; i < kDim; ++i) {
            const auto& [lo, hi] = s.box[static_cast<std::size_t>(i)];
            b.set_coord(i, lo + (hi - lo) * unit(rng));
        }
        for (const auto& [name, range] : s.param_ranges) {
            b.set_param(name, range.first + (range.second - range.first) * unit(rng));
        }
        out.push_back(std::move(b));
    }
    return out;
}

ResidualStats residual_stats(const std::vector<Expr>& es, const Sampling& s) {
    ResidualStats st;
    std::vector<std::vector<Expr>> terms;
    terms.reserve(es.size());
    for (const auto& e : es) terms.push_back(additive_terms(e));
    for (const auto& b : sample_bindings(s)) {
        for (const auto& ts : terms) {
            Complex v(0.0, 0.0);
            double scale = 0.0;
            for (const auto& t : ts) {
                Complex tv = evaluate(t, b);
                v += tv;
                scale += std::abs(tv);
            }
            double a = std::abs(v);
            if (!std::isfinite(a) || !std::isfinite(scale)) {
                st.max_abs = std::numeric_limits<double>::infinity();
            } else {
                st.max_abs = std::max(st.max_abs, a);
            }
            st.scale = std::max(st.scale, scale);
        }
        ++st.samples;
    }
    st.zero = std::isfinite(st.max_abs) && st.max_abs <= s.tolerance * (1.0 + st.scale);
    return st;
}

ResidualStats residual_stats(const Expr& e, const Sampling& s) { return residual_stats(std::vector<Expr>{e}, s); }

bool is_zero(const Expr& e, const Sampling& s) { return residual_stats(e, s).zero; }

}  // namespace tritime::expr

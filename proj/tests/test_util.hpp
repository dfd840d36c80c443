#pragma once

#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "goldfish/expr.hpp"

namespace goldfish::testing {

// random rational expression over the given variables, built from a small
// grammar; depth-bounded so denominators stay tame
inline expr random_rational_expr(std::mt19937& rng, const context_ptr& ctx,
                                 const std::vector<std::string>& vars, int depth = 3) {
    std::uniform_int_distribution<int> coin(0, 5);
    std::uniform_int_distribution<int> small(-9, 9);
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    if (depth == 0 || coin(rng) < 2) {
        if (coin(rng) % 2 == 0) return expr::integer(ctx, small(rng));
        return expr::variable(ctx, ctx->index_of(vars[pick(rng)]));
    }
    const expr a = random_rational_expr(rng, ctx, vars, depth - 1);
    const expr b = random_rational_expr(rng, ctx, vars, depth - 1);
    switch (coin(rng)) {
        case 0: return a + b;
        case 1: return a - b;
        case 2: return a * b;
        case 3: return b.is_zero() ? a + b : a / b;
        case 4: return a.pow(static_cast<long>(coin(rng)) % 3 + 1);
        default: return a * b + expr::integer(ctx, small(rng));
    }
}

// real random point avoiding small denominators of the given expressions
inline std::map<std::string, std::complex<double>> random_regular_point(
    std::mt19937& rng, const context_ptr& ctx, const std::vector<std::string>& vars,
    const std::vector<expr>& exprs) {
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::map<std::string, std::complex<double>> point;
        for (const auto& v : vars) point.emplace(v, std::complex<double>(dist(rng), 0.0));
        bool ok = true;
        for (const auto& e : exprs) {
            try {
                (void)e.eval(point, 1e-3);
            } catch (const goldfish::error&) {
                ok = false;
                break;
            }
        }
        if (ok) return point;
    }
    throw goldfish::error("no regular test point found");
}

// complex-step directional derivative of a real-coefficient expression:
// d/ds f(z + s w) at s = 0, exact to machine precision
inline double complex_step_directional(
    const expr& f, const std::map<std::string, std::complex<double>>& point,
    const std::map<std::string, double>& direction) {
    const double h = 1e-20;
    std::map<std::string, std::complex<double>> shifted = point;
    for (const auto& [name, w] : direction) {
        auto it = shifted.find(name);
        if (it == shifted.end()) continue;
        it->second += std::complex<double>(0.0, h * w);
    }
    return f.eval(shifted).imag() / h;
}

}  // namespace goldfish::testing

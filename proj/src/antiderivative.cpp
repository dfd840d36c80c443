#include "goldfish/antiderivative.hpp"

namespace goldfish {

namespace {

// dense univariate view with expr coefficients (constants w.r.t. var)
using upoly = std::vector<expr>;

long deg(const upoly& p) {
    for (long k = static_cast<long>(p.size()) - 1; k >= 0; --k)
        if (!p[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
}

upoly from_poly(const polynomial& p, int var, const context_ptr& ctx) {
    upoly out;
    for (const auto& c : p.collect(var)) out.push_back(expr::from_rational(rational_fn(c)));
    if (out.empty()) out.push_back(expr::integer(ctx, 0));
    return out;
}

expr to_expr(const upoly& p, int var, const context_ptr& ctx) {
    expr acc = expr::integer(ctx, 0);
    const expr x = expr::variable(ctx, var);
    for (std::size_t k = 0; k < p.size(); ++k)
        acc = acc + p[k] * x.pow(static_cast<long>(k));
    return acc;
}

upoly mul(const upoly& a, const upoly& b, const context_ptr& ctx) {
    upoly out(a.size() + b.size(), expr::integer(ctx, 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
    }
    return out;
}

upoly sub(upoly a, const upoly& b, const context_ptr& ctx) {
    if (a.size() < b.size()) a.resize(b.size(), expr::integer(ctx, 0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = a[k] - b[k];
    return a;
}

upoly deriv(const upoly& p, const context_ptr& ctx) {
    if (p.size() <= 1) return {expr::integer(ctx, 0)};
    upoly out(p.size() - 1, expr::integer(ctx, 0));
    for (std::size_t k = 1; k < p.size(); ++k)
        out[k - 1] = expr::integer(ctx, static_cast<long>(k)) * p[k];
    return out;
}

// division with remainder over the coefficient field
void divmod(const upoly& a, const upoly& b, upoly& q, upoly& r, const context_ptr& ctx) {
    const long db = deg(b);
    if (db < 0) throw zero_division_error();
    r = a;
    q.assign(a.size(), expr::integer(ctx, 0));
    const expr lead_inv = expr::integer(ctx, 1) / b[static_cast<std::size_t>(db)];
    long dr = deg(r);
    while (dr >= db) {
        const expr coeff = r[static_cast<std::size_t>(dr)] * lead_inv;
        const long shift = dr - db;
        q[static_cast<std::size_t>(shift)] = q[static_cast<std::size_t>(shift)] + coeff;
        for (long k = 0; k <= db; ++k) {
            auto idx = static_cast<std::size_t>(k + shift);
            r[idx] = r[idx] - coeff * b[static_cast<std::size_t>(k)];
        }
        r[static_cast<std::size_t>(dr)] = expr::integer(ctx, 0);
        dr = deg(r);
    }
}

upoly ugcd(upoly a, upoly b, const context_ptr& ctx) {
    while (deg(b) >= 0) {
        upoly q, r;
        divmod(a, b, q, r, ctx);
        a = std::move(b);
        b = std::move(r);
        // keep coefficients small: make b monic
        const long dbn = deg(b);
        if (dbn >= 0) {
            const expr inv = expr::integer(ctx, 1) / b[static_cast<std::size_t>(dbn)];
            for (auto& c : b) c = c * inv;
        }
    }
    const long da = deg(a);
    if (da < 0) return a;
    const expr inv = expr::integer(ctx, 1) / a[static_cast<std::size_t>(da)];
    for (auto& c : a) c = c * inv;
    a.resize(static_cast<std::size_t>(da) + 1);
    return a;
}

}  // namespace

std::optional<expr> antiderivative(const expr& e, int var) {
    if (!e.is_rational()) throw error("antiderivative: expression must be rational");
    const context_ptr ctx = e.ctx();
    const rational_fn& r = e.rational();

    upoly num = from_poly(r.num(), var, ctx);
    upoly den = from_poly(r.den(), var, ctx);

    // split off the polynomial part
    upoly quot, rem;
    divmod(num, den, quot, rem, ctx);
    expr result = expr::integer(ctx, 0);
    {
        const expr x = expr::variable(ctx, var);
        for (std::size_t k = 0; k < quot.size(); ++k) {
            if (quot[k].is_zero()) continue;
            result = result + quot[k] * x.pow(static_cast<long>(k) + 1) /
                                  expr::integer(ctx, static_cast<long>(k) + 1);
        }
    }
    if (deg(rem) < 0) return result;

    // proper part rem/den: Horowitz reduction with q = d*f, d = gcd(q, q')
    const upoly d = ugcd(den, deriv(den, ctx), ctx);
    if (deg(d) == 0) {
        // squarefree denominator: the whole proper part is logarithmic
        return std::nullopt;
    }
    upoly f, dummy;
    divmod(den, d, f, dummy, ctx);
    if (deg(dummy) >= 0) throw error("antiderivative: inexact squarefree split");

    const long nd = deg(d), nf = deg(f);
    // unknowns: c_0..c_{nd-1} (numerator of the rational part over d) and
    // e_0..e_{nf-1} (log-part numerator over f); match rem = C'f - C*(d'f/d) + E*d
    upoly g, gr;
    divmod(mul(deriv(d, ctx), f, ctx), d, g, gr, ctx);
    if (deg(gr) >= 0) throw error("antiderivative: d'f/d not polynomial");

    const int unknowns = static_cast<int>(nd + nf);
    const int equations = static_cast<int>(nd + nf);
    sym_matrix m(equations, unknowns, expr::integer(ctx, 0));
    std::vector<expr> rhs(static_cast<std::size_t>(equations), expr::integer(ctx, 0));
    for (long row = 0; row < equations; ++row)
        rhs[static_cast<std::size_t>(row)] =
            row < static_cast<long>(rem.size()) ? rem[static_cast<std::size_t>(row)]
                                                : expr::integer(ctx, 0);

    // column j < nd: contribution of c_j, i.e. (x^j)' f - x^j g
    for (long j = 0; j < nd; ++j) {
        upoly basis(static_cast<std::size_t>(j) + 1, expr::integer(ctx, 0));
        basis[static_cast<std::size_t>(j)] = expr::integer(ctx, 1);
        upoly contrib = sub(mul(deriv(basis, ctx), f, ctx), mul(basis, g, ctx), ctx);
        for (long rowk = 0; rowk < equations; ++rowk)
            if (rowk < static_cast<long>(contrib.size()))
                m.at(static_cast<int>(rowk), static_cast<int>(j)) =
                    contrib[static_cast<std::size_t>(rowk)];
    }
    // column nd + j: contribution of e_j, i.e. x^j d
    for (long j = 0; j < nf; ++j) {
        upoly basis(static_cast<std::size_t>(j) + 1, expr::integer(ctx, 0));
        basis[static_cast<std::size_t>(j)] = expr::integer(ctx, 1);
        upoly contrib = mul(basis, d, ctx);
        for (long rowk = 0; rowk < equations; ++rowk)
            if (rowk < static_cast<long>(contrib.size()))
                m.at(static_cast<int>(rowk), static_cast<int>(nd + j)) =
                    contrib[static_cast<std::size_t>(rowk)];
    }

    const std::vector<expr> sol = solve_linear(m, rhs);

    for (long j = 0; j < nf; ++j)
        if (!sol[static_cast<std::size_t>(nd + j)].is_zero()) return std::nullopt;

    upoly c(static_cast<std::size_t>(nd), expr::integer(ctx, 0));
    for (long j = 0; j < nd; ++j) c[static_cast<std::size_t>(j)] = sol[static_cast<std::size_t>(j)];
    result = result + to_expr(c, var, ctx) / to_expr(d, var, ctx);
    return result;
}

}  // namespace goldfish

#include "goldfish/variational.hpp"

#include "goldfish/antiderivative.hpp"
#include "goldfish/sym_matrix.hpp"

namespace goldfish {

namespace {

// total time derivative restricted to functions of (t, x): d_t + sum v_m d_{x_m}
expr point_total_derivative(const expr& e, const variable_set& vars) {
    expr acc = e.derivative(vars.time());
    for (int k = 0; k < vars.particle_count(); ++k)
        acc = acc + expr::variable(vars.ctx(), vars.velocity(k)) * e.derivative(vars.position(k));
    return acc;
}

expr effective_lagrangian(const lagrangian& lag) {
    if (lag.gauge.is_zero()) return lag.value;
    return lag.value + point_total_derivative(lag.gauge, lag.vars);
}

int velocity_degree(const expr& e, const variable_set& vars) {
    // exact total degree in the velocity block of the (v-free-denominator) form
    const rational_fn& r = e.rational();
    int deg = 0;
    for (const auto& [m, c] : r.num().terms()) {
        int d = 0;
        for (int k = 0; k < vars.particle_count(); ++k)
            d += static_cast<int>(m.exponent(vars.velocity(k)));
        deg = std::max(deg, d);
    }
    return deg;
}

sym_matrix velocity_hessian(const expr& lag_value, const variable_set& vars) {
    const int n = vars.particle_count();
    sym_matrix m(n, n, expr());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            m.at(j, k) = lag_value.derivative(vars.velocity(j)).derivative(vars.velocity(k));
    return m;
}

}  // namespace

lagrangian goldfish_lagrangian() {
    variable_set vars = variable_set::classical(2);
    expr value = parse_expr("((v1 + v2)^2 + (x2*v1 + x1*v2)^2)/2", vars.ctx());
    expr gauge = expr::integer(vars.ctx(), 0);
    return {std::move(vars), std::move(value), std::move(gauge)};
}

ode_system euler_lagrange(const lagrangian& lag) {
    const variable_set& vars = lag.vars;
    const int n = vars.particle_count();
    const expr leff = effective_lagrangian(lag);

    const sym_matrix hess = velocity_hessian(leff, vars);
    const expr det = hess.determinant();
    if (det.is_zero()) throw singular_hessian_error(det.str());

    // d/dt(dL/dv_k) = dL/dx_k with d/dt expanded: the a-free part moves right
    std::vector<expr> rhs_vec;
    for (int k = 0; k < n; ++k) {
        const expr pk = leff.derivative(vars.velocity(k));
        rhs_vec.push_back(leff.derivative(vars.position(k)) -
                          point_total_derivative(pk, vars));
    }
    std::vector<expr> accel = solve_linear(hess, rhs_vec);
    return {vars, std::move(accel)};
}

noether_result noether_condition(const vector_field& v, const lagrangian& lag) {
    const variable_set& vars = lag.vars;
    const context_ptr& ctx = vars.ctx();
    const int n = vars.particle_count();
    const expr leff = effective_lagrangian(lag);
    if (velocity_degree(leff, vars) > 2)
        throw error("noether_condition: Lagrangian degree in velocities exceeds 2");

    // first prolongation applied to L, plus L * d_t(xi)
    const expr dxi = point_total_derivative(v.xi, vars);
    expr e = v.xi * leff.derivative(vars.time()) + leff * dxi;
    for (int k = 0; k < n; ++k) {
        const expr eta1 = point_total_derivative(v.etas[static_cast<std::size_t>(k)], vars) -
                          expr::variable(ctx, vars.velocity(k)) * dxi;
        e = e + v.etas[static_cast<std::size_t>(k)] * leff.derivative(vars.position(k)) +
            eta1 * leff.derivative(vars.velocity(k));
    }

    noether_result result;
    result.obstruction = expr::integer(ctx, 0);

    // split E = A(t,x) + sum B_k(t,x) v_k + (degree >= 2 part)
    const rational_fn& er = e.rational();
    for (int k = 0; k < n; ++k)
        if (er.den().depends_on(vars.velocity(k)))
            throw error("noether_condition: velocity-dependent denominator");
    polynomial a_num(ctx), higher(ctx);
    std::vector<polynomial> b_num(static_cast<std::size_t>(n), polynomial(ctx));
    for (const auto& [m, c] : er.num().terms()) {
        int vdeg = 0, which = -1;
        for (int k = 0; k < n; ++k) {
            const int d = static_cast<int>(m.exponent(vars.velocity(k)));
            vdeg += d;
            if (d > 0) which = k;
        }
        if (vdeg == 0)
            a_num.add_term(m, c);
        else if (vdeg == 1)
            b_num[static_cast<std::size_t>(which)].add_term(
                m / monomial::var(vars.velocity(which)), c);
        else
            higher.add_term(m, c);
    }
    const expr den = expr::from_rational(rational_fn(er.den()));
    if (!higher.is_zero()) {
        result.obstruction = expr::from_rational(rational_fn(higher)) / den;
        return result;
    }
    const expr a = expr::from_rational(rational_fn(a_num)) / den;
    std::vector<expr> b;
    for (int k = 0; k < n; ++k)
        b.push_back(expr::from_rational(rational_fn(b_num[static_cast<std::size_t>(k)])) / den);

    // integrability: the 1-form (A dt + sum B_k dx_k) must be closed
    for (int k = 0; k < n; ++k) {
        const expr cond = b[static_cast<std::size_t>(k)].derivative(vars.time()) -
                          a.derivative(vars.position(k));
        if (!cond.is_zero()) {
            result.obstruction = cond;
            return result;
        }
        for (int j = k + 1; j < n; ++j) {
            const expr cross = b[static_cast<std::size_t>(k)].derivative(vars.position(j)) -
                               b[static_cast<std::size_t>(j)].derivative(vars.position(k));
            if (!cross.is_zero()) {
                result.obstruction = cross;
                return result;
            }
        }
    }
    result.is_noether = true;

    // gauge by line integration along coordinate segments from (0, base_x),
    // ordered t then x1 .. xN; the base is shifted off singularities
    for (int shift = 0; shift < 8; ++shift) {
        std::vector<expr> base;
        for (int k = 0; k < n; ++k)
            base.push_back(expr::integer(ctx, n - k + 1 + shift));
        try {
            expr g = expr::integer(ctx, 0);
            // t-leg at x = base
            {
                std::map<int, expr> at_base;
                for (int k = 0; k < n; ++k)
                    at_base.emplace(vars.position(k), base[static_cast<std::size_t>(k)]);
                const expr integrand = a.substitute(at_base);
                auto anti = antiderivative(integrand, vars.time());
                if (!anti) return result;  // non-rational gauge; leave it absent
                g = g + *anti - anti->substitute({{vars.time(), expr::integer(ctx, 0)}});
            }
            // x_k-legs: later coordinates still at base
            for (int k = 0; k < n; ++k) {
                std::map<int, expr> later;
                for (int j = k + 1; j < n; ++j)
                    later.emplace(vars.position(j), base[static_cast<std::size_t>(j)]);
                const expr integrand = b[static_cast<std::size_t>(k)].substitute(later);
                auto anti = antiderivative(integrand, vars.position(k));
                if (!anti) return result;
                g = g + *anti -
                    anti->substitute({{vars.position(k), base[static_cast<std::size_t>(k)]}});
            }
            if (!(point_total_derivative(g, vars) - e).is_zero())
                throw error("noether_condition: reconstructed gauge fails d_t g = E");
            result.gauge = g;
            return result;
        } catch (const zero_division_error&) {
            continue;  // base hit a singularity; shift and retry
        }
    }
    throw error("noether_condition: no regular base point found for gauge reconstruction");
}

expr first_integral(const vector_field& v, const lagrangian& lag, const expr& gauge) {
    const variable_set& vars = lag.vars;
    const int n = vars.particle_count();
    const expr leff = effective_lagrangian(lag);

    expr integral = v.xi * leff;
    for (int k = 0; k < n; ++k) {
        const expr vk = expr::variable(vars.ctx(), vars.velocity(k));
        integral = integral + (v.etas[static_cast<std::size_t>(k)] - v.xi * vk) *
                                  leff.derivative(vars.velocity(k));
    }
    integral = integral - gauge;

    // conservation check on solutions
    const ode_system sys = euler_lagrange(lag);
    std::map<int, expr> on_solutions;
    for (int k = 0; k < n; ++k)
        on_solutions.emplace(vars.accel(k), sys.rhs[static_cast<std::size_t>(k)]);
    const expr drift = total_time_derivative(integral, vars).substitute(on_solutions);
    if (!drift.is_zero())
        throw error("first_integral: candidate is not conserved (internal inconsistency)");
    return integral;
}

std::vector<vector_field> noether_listed_fields(const variable_set& vars) {
    const auto catalog = generator_catalog(vars);
    auto by_index = [&](int k) { return catalog[static_cast<std::size_t>(k - 1)]; };

    vector_field combo = add(by_index(5), scale(expr::integer(vars.ctx(), 3), by_index(14)));
    combo.name = "G5+3*G14";
    std::vector<vector_field> out{combo};
    for (int k : {6, 7, 8, 9, 10, 11, 12}) out.push_back(by_index(k));
    return out;
}

std::vector<vector_field> noether_complement_fields(const variable_set& vars) {
    const auto catalog = generator_catalog(vars);
    std::vector<vector_field> out;
    for (int k : {1, 2, 3, 4, 5, 13, 15}) out.push_back(catalog[static_cast<std::size_t>(k - 1)]);
    return out;
}

expr legendre_transform(const lagrangian& lag, variable_set& hamiltonian_vars) {
    const int n = lag.vars.particle_count();
    hamiltonian_vars = variable_set::with_momenta(n);
    const context_ptr& hctx = hamiltonian_vars.ctx();

    // move L into the context carrying the momenta (same names, wider order)
    const expr leff = parse_expr(effective_lagrangian(lag).str(), hctx);

    const sym_matrix hess = velocity_hessian(leff, hamiltonian_vars);
    const expr det = hess.determinant();
    if (det.is_zero()) throw singular_hessian_error(det.str());

    // p = M v + c with c = dL/dv at v = 0; solve for v
    std::map<int, expr> v_zero;
    for (int k = 0; k < n; ++k)
        v_zero.emplace(hamiltonian_vars.velocity(k), expr::integer(hctx, 0));
    std::vector<expr> rhs;
    for (int k = 0; k < n; ++k) {
        const expr pk = expr::variable(hctx, hamiltonian_vars.momentum(k));
        rhs.push_back(pk - leff.derivative(hamiltonian_vars.velocity(k)).substitute(v_zero));
    }
    const std::vector<expr> v_sol = solve_linear(hess, rhs);

    std::map<int, expr> eliminate;
    for (int k = 0; k < n; ++k)
        eliminate.emplace(hamiltonian_vars.velocity(k), v_sol[static_cast<std::size_t>(k)]);

    expr h = -leff;
    for (int k = 0; k < n; ++k)
        h = h + expr::variable(hctx, hamiltonian_vars.momentum(k)) *
                    expr::variable(hctx, hamiltonian_vars.velocity(k));
    return h.substitute(eliminate);
}

}  // namespace goldfish

#include "goldfish/quantize.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace goldfish {

using nlohmann::json;

point_transformation elementary_symmetric_map(int n) {
    return elementary_symmetric_map(n, variable_set::classical(n));
}

point_transformation elementary_symmetric_map(int n, const variable_set& vars) {
    if (n < 1) throw error("elementary_symmetric_map: n must be >= 1");
    const context_ptr& ctx = vars.ctx();

    // e_0..e_N by the product recurrence over (lambda + x_i)
    std::vector<expr> e(static_cast<std::size_t>(n) + 1, expr::integer(ctx, 0));
    e[0] = expr::integer(ctx, 1);
    for (int i = 0; i < n; ++i) {
        const expr xi = expr::variable(ctx, vars.position(i));
        for (int k = std::min(i + 1, n); k >= 1; --k)
            e[static_cast<std::size_t>(k)] =
                e[static_cast<std::size_t>(k)] + e[static_cast<std::size_t>(k - 1)] * xi;
    }

    point_transformation map;
    map.vars = vars;
    map.forward.assign(e.begin() + 1, e.end());

    map.jacobian = sym_matrix(n, n, expr());
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j)
            map.jacobian.at(a, j) = map.forward[static_cast<std::size_t>(a)].derivative(
                vars.position(j));
    map.jacobian_det = map.jacobian.determinant();
    if (map.jacobian_det.is_zero()) throw singular_matrix_error("0");
    map.inverse_jacobian = map.jacobian.inverse();

    if (n == 1) map.inverse = std::vector<expr>{expr::variable(ctx, vars.position(0))};
    return map;
}

ode_system push_ode(const ode_system& sys, const point_transformation& map) {
    const variable_set& vars = sys.vars;
    const context_ptr& ctx = vars.ctx();
    const int n = sys.size();
    if (map.size() != n) throw error("push_ode: dimension mismatch");
    if (map.vars.ctx() != ctx && map.vars.ctx()->names() != ctx->names())
        throw error("push_ode: transformation uses an incompatible variable set");

    // ydotdot_a = sum_jk d2y_a/dx_j dx_k v_j v_k + sum_j J_aj rhs_j
    std::vector<expr> acc;
    for (int a = 0; a < n; ++a) {
        expr out = expr::integer(ctx, 0);
        for (int j = 0; j < n; ++j) {
            const expr dj = map.forward[static_cast<std::size_t>(a)].derivative(vars.position(j));
            for (int k = 0; k < n; ++k)
                out = out + dj.derivative(vars.position(k)) *
                                expr::variable(ctx, vars.velocity(j)) *
                                expr::variable(ctx, vars.velocity(k));
            out = out + map.jacobian.at(a, j) * sys.rhs[static_cast<std::size_t>(j)];
        }
        acc.push_back(out);
    }

    variable_set target = variable_set::classical(n);
    bool all_constant = true;
    for (const auto& e : acc) {
        for (int j = 0; j < n; ++j)
            if (e.depends_on(vars.position(j)) || e.depends_on(vars.velocity(j)))
                all_constant = false;
        if (e.depends_on(vars.time())) all_constant = false;
    }

    std::vector<expr> target_rhs;
    if (all_constant) {
        for (const auto& e : acc) target_rhs.push_back(parse_expr(e.str(), target.ctx()));
        return {std::move(target), std::move(target_rhs)};
    }

    if (!map.inverse)
        throw error("push_ode: transformed system is not expressible in the target variables");

    // substitute x_j -> x_j(y) and v_j -> sum_a d x_j/d y_a * v_a, written in
    // the shared positional names
    std::map<int, expr> subs;
    for (int j = 0; j < n; ++j) {
        const expr& xj = (*map.inverse)[static_cast<std::size_t>(j)];
        subs.emplace(vars.position(j), xj);
        expr vj = expr::integer(ctx, 0);
        for (int a = 0; a < n; ++a)
            vj = vj + xj.derivative(vars.position(a)) * expr::variable(ctx, vars.velocity(a));
        subs.emplace(vars.velocity(j), vj);
    }
    for (const auto& e : acc)
        target_rhs.push_back(parse_expr(e.substitute(subs).str(), target.ctx()));
    return {std::move(target), std::move(target_rhs)};
}

evolution_pde quantize(int n) {
    if (n < 1) throw error("quantize: n must be >= 1");
    variable_set vars = variable_set::jet(n);
    const context_ptr& ctx = vars.ctx();
    const point_transformation map = elementary_symmetric_map(n, vars);
    const sym_matrix& b = map.inverse_jacobian;  // B_{j a}

    evolution_pde pde;
    pde.n = n;
    pde.vars = vars;
    pde.f = sym_matrix(n, n, expr::integer(ctx, 0));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j <= k; ++j) {
            expr acc = expr::integer(ctx, 0);
            for (int a = 0; a < n; ++a) acc = acc + b.at(j, a) * b.at(k, a);
            pde.f.at(j, k) = acc;
            pde.f.at(k, j) = acc;
        }
    for (int j = 0; j < n; ++j) {
        expr acc = expr::integer(ctx, 0);
        for (int a = 0; a < n; ++a)
            for (int m = 0; m < n; ++m)
                acc = acc + b.at(m, a) * b.at(j, a).derivative(vars.position(m));
        pde.h.push_back(acc);
    }
    const expr e0 = expr::variable(ctx, vars.energy_constant());
    pde.h0 = -(e0 * e0);
    return pde;
}

std::string pde_to_json(const evolution_pde& pde) {
    json jf = json::array();
    for (int j = 0; j < pde.n; ++j) {
        json row = json::array();
        for (int k = 0; k < pde.n; ++k) row.push_back(pde.f.at(j, k).str());
        jf.push_back(row);
    }
    json jh = json::array();
    for (const auto& e : pde.h) jh.push_back(e.str());
    return json{{"N", pde.n}, {"f", jf}, {"h", jh}, {"h0", pde.h0.str()}}.dump(2);
}

evolution_pde pde_from_json(const std::string& text) {
    const json j = json::parse(text);
    evolution_pde pde;
    pde.n = j.at("N").get<int>();
    if (pde.n < 1) throw error("pde JSON: invalid N");
    pde.vars = variable_set::jet(pde.n);
    const context_ptr& ctx = pde.vars.ctx();
    pde.f = sym_matrix(pde.n, pde.n, expr::integer(ctx, 0));
    const auto& jf = j.at("f");
    for (int r = 0; r < pde.n; ++r)
        for (int c = 0; c < pde.n; ++c)
            pde.f.at(r, c) = parse_expr(jf.at(r).at(c).get<std::string>(), ctx);
    for (const auto& e : j.at("h")) pde.h.push_back(parse_expr(e.get<std::string>(), ctx));
    if (static_cast<int>(pde.h.size()) != pde.n) throw error("pde JSON: wrong h count");
    pde.h0 = parse_expr(j.at("h0").get<std::string>(), ctx);
    return pde;
}

namespace {

// the equation as an expression over the jet variables
expr pde_expression(const evolution_pde& pde) {
    const variable_set& vars = pde.vars;
    const context_ptr& ctx = vars.ctx();
    expr e = expr::integer(ctx, 2) * expr::imaginary_unit(ctx) *
             expr::variable(ctx, vars.jet_ut());
    for (int j = 0; j < pde.n; ++j)
        for (int k = j; k < pde.n; ++k) {
            const expr coeff = j == k ? pde.f.at(j, j)
                                      : expr::integer(ctx, 2) * pde.f.at(j, k);
            e = e + coeff * expr::variable(ctx, vars.jet_uxx(j, k));
        }
    for (int k = 0; k < pde.n; ++k)
        e = e + pde.h[static_cast<std::size_t>(k)] * expr::variable(ctx, vars.jet_ux(k));
    return e + pde.h0 * expr::variable(ctx, vars.wave());
}

// spatial total derivative D_k on expressions of (t, x, u, ut, ux, uxx)
expr jet_dx(const expr& e, int k, const evolution_pde& pde) {
    const variable_set& vars = pde.vars;
    const context_ptr& ctx = vars.ctx();
    expr acc = e.derivative(vars.position(k));
    acc = acc + expr::variable(ctx, vars.jet_ux(k)) * e.derivative(vars.wave());
    acc = acc + expr::variable(ctx, vars.jet_utx(k)) * e.derivative(vars.jet_ut());
    for (int j = 0; j < pde.n; ++j)
        acc = acc + expr::variable(ctx, vars.jet_uxx(j, k)) * e.derivative(vars.jet_ux(j));
    for (int j = 0; j < pde.n; ++j)
        for (int m = j; m < pde.n; ++m)
            acc = acc + expr::variable(ctx, vars.jet_uxxx(j, m, k)) *
                            e.derivative(vars.jet_uxx(j, m));
    return acc;
}

}  // namespace

symmetry_report verify_pde_symmetry(const pde_symmetry& s, const evolution_pde& pde) {
    const variable_set& vars = pde.vars;
    const context_ptr& ctx = vars.ctx();
    const int n = pde.n;
    const expr u = expr::variable(ctx, vars.wave());
    const expr ut = expr::variable(ctx, vars.jet_ut());
    const expr phi = s.mu * u;

    // first-order prolongation coefficients
    const expr phi_t = s.mu.derivative(vars.time()) * u + s.mu * ut -
                       ut * s.xi.derivative(vars.time()) -
                       [&] {
                           expr acc = expr::integer(ctx, 0);
                           for (int m = 0; m < n; ++m)
                               acc = acc + expr::variable(ctx, vars.jet_ux(m)) *
                                               s.etas[static_cast<std::size_t>(m)].derivative(
                                                   vars.time());
                           return acc;
                       }();
    std::vector<expr> phi_x;
    for (int j = 0; j < n; ++j) {
        expr acc = s.mu.derivative(vars.position(j)) * u +
                   s.mu * expr::variable(ctx, vars.jet_ux(j)) -
                   ut * s.xi.derivative(vars.position(j));
        for (int m = 0; m < n; ++m)
            acc = acc - expr::variable(ctx, vars.jet_ux(m)) *
                            s.etas[static_cast<std::size_t>(m)].derivative(vars.position(j));
        phi_x.push_back(acc);
    }

    // second-order coefficients phi^{jk} = D_k(phi^j) - u_{jt} xi_{x_k}
    //                                      - sum_m u_{jm} eta_{m,x_k}
    auto phi_xx = [&](int j, int k) {
        expr acc = jet_dx(phi_x[static_cast<std::size_t>(j)], k, pde);
        acc = acc - expr::variable(ctx, vars.jet_utx(j)) * s.xi.derivative(vars.position(k));
        for (int m = 0; m < n; ++m)
            acc = acc - expr::variable(ctx, vars.jet_uxx(j, m)) *
                            s.etas[static_cast<std::size_t>(m)].derivative(vars.position(k));
        return acc;
    };

    const expr equation = pde_expression(pde);
    expr applied = s.xi * equation.derivative(vars.time()) + phi * equation.derivative(vars.wave()) +
                   phi_t * equation.derivative(vars.jet_ut());
    for (int l = 0; l < n; ++l)
        applied = applied + s.etas[static_cast<std::size_t>(l)] *
                                equation.derivative(vars.position(l));
    for (int k = 0; k < n; ++k)
        applied = applied + phi_x[static_cast<std::size_t>(k)] *
                                equation.derivative(vars.jet_ux(k));
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
            applied = applied + phi_xx(j, k) * equation.derivative(vars.jet_uxx(j, k));

    // evolution elimination: u_t first, then u_{t x_k} from the x_k-derivative
    // of the solved equation
    const expr minus_two_i_ut = equation - expr::integer(ctx, 2) * expr::imaginary_unit(ctx) * ut;
    const expr ut_solved =
        minus_two_i_ut / (expr::integer(ctx, -2) * expr::imaginary_unit(ctx));
    expr residual = applied.substitute({{vars.jet_ut(), ut_solved}});
    for (int k = 0; k < n; ++k) {
        if (!residual.depends_on(vars.jet_utx(k))) continue;
        const expr utx_solved = jet_dx(ut_solved, k, pde);
        residual = residual.substitute({{vars.jet_utx(k), utx_solved}});
    }

    symmetry_report report;
    report.name = s.name;
    report.residuals.push_back(residual);
    report.pass = residual.is_zero();
    return report;
}

std::vector<pde_symmetry> omega_catalog(const evolution_pde& pde) {
    if (pde.n != 2) throw error("omega catalog is specific to the two-body equation");
    const context_ptr& ctx = pde.vars.ctx();
    struct entry {
        const char* name;
        const char* xi;
        const char* eta1;
        const char* eta2;
        const char* mu;
    };
    static const entry table[] = {
        {"O1", "0", "-(x1^2*x2 + 2*x1 + x2)/(x1 - x2)", "(x1*x2^2 + x1 + 2*x2)/(x1 - x2)", "0"},
        {"O2", "t", "x1^2/(2*(x1 - x2))", "-x2^2/(2*(x1 - x2))", "-i*E0^2*t/2"},
        {"O3", "1", "0", "0", "0"},
        {"O4", "0", "-t*x1/(x1 - x2)", "t*x2/(x1 - x2)", "-i*(x1 + x2)"},
        {"O5", "0", "-x1/(x1 - x2)", "x2/(x1 - x2)", "0"},
        {"O6", "0", "-t/(x1 - x2)", "t/(x1 - x2)", "i*x1*x2"},
        {"O7", "0", "-1/(x1 - x2)", "1/(x1 - x2)", "0"},
        {"O8", "t^2", "t*x1^2/(x1 - x2)", "-t*x2^2/(x1 - x2)",
         "(i*x1*x2 - t) + (i/2)*(x1^2*x2^2 + x1^2 + x2^2 - t^2*E0^2)"},
    };
    std::vector<pde_symmetry> out;
    for (const entry& e : table) {
        pde_symmetry s;
        s.name = e.name;
        s.xi = parse_expr(e.xi, ctx);
        s.etas = {parse_expr(e.eta1, ctx), parse_expr(e.eta2, ctx)};
        s.mu = parse_expr(e.mu, ctx);
        out.push_back(std::move(s));
    }
    return out;
}

pde_symmetry trivial_scaling_symmetry(const evolution_pde& pde) {
    const context_ptr& ctx = pde.vars.ctx();
    pde_symmetry s;
    s.name = "u*du";
    s.xi = expr::integer(ctx, 0);
    s.etas.assign(static_cast<std::size_t>(pde.n), expr::integer(ctx, 0));
    s.mu = expr::integer(ctx, 1);
    return s;
}

namespace {

// exact rational from a double (every finite double is m * 2^e)
expr rationalize(double value, const context_ptr& ctx) {
    if (!std::isfinite(value)) throw error("cannot rationalize a non-finite value");
    if (value == 0.0) return expr::integer(ctx, 0);
    int exp2 = 0;
    double mant = std::frexp(value, &exp2);  // value = mant * 2^exp2, |mant| in [0.5,1)
    bigint num = 0;
    for (int k = 0; k < 64 && mant != 0.0; ++k) {
        mant *= 2.0;
        const double digit = std::trunc(mant);
        num = num * 2 + bigint(static_cast<long>(digit));
        mant -= digit;
        --exp2;
    }
    polynomial p(ctx, gint(num));
    if (exp2 >= 0)
        return expr::from_rational(rational_fn(p * polynomial(ctx, gint(bigint(1) << exp2))));
    return expr::from_rational(
        rational_fn(p, polynomial(ctx, gint(bigint(1) << -exp2))));
}

}  // namespace

expr plane_wave(const std::vector<double>& wave_numbers, double e0,
                const point_transformation& map) {
    const variable_set& vars = map.vars;
    const context_ptr& ctx = vars.ctx();
    const int n = map.size();
    if (static_cast<int>(wave_numbers.size()) != n)
        throw error("plane_wave: wave vector dimension mismatch");

    expr phase = expr::integer(ctx, 0);
    expr ksq = expr::integer(ctx, 0);
    for (int a = 0; a < n; ++a) {
        const expr ka = rationalize(wave_numbers[static_cast<std::size_t>(a)], ctx);
        phase = phase + ka * map.forward[static_cast<std::size_t>(a)];
        ksq = ksq + ka * ka;
    }
    const expr e0r = rationalize(e0, ctx);
    const expr i = expr::imaginary_unit(ctx);
    const expr t = expr::variable(ctx, vars.time());
    const expr arg = i * phase - i * (ksq + e0r * e0r) * t / expr::integer(ctx, 2);
    return expr::exponential(arg);
}

double pde_residual(const evolution_pde& pde, const expr& u,
                    const std::vector<sample_point>& points, double e0) {
    const context_ptr& uctx = u.ctx();
    const int n = pde.n;

    // move the coefficients into u's context (they involve x and E0 only)
    std::vector<std::vector<expr>> f(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            f[static_cast<std::size_t>(j)].push_back(parse_expr(pde.f.at(j, k).str(), uctx));
    std::vector<expr> h;
    for (const auto& e : pde.h) h.push_back(parse_expr(e.str(), uctx));
    const expr h0 = parse_expr(pde.h0.str(), uctx);

    std::vector<std::string> xnames;
    for (int k = 1; k <= n; ++k) xnames.push_back("x" + std::to_string(k));

    expr residual = expr::integer(uctx, 2) * expr::imaginary_unit(uctx) * u.derivative("t");
    for (int j = 0; j < n; ++j) {
        const expr uj = u.derivative(xnames[static_cast<std::size_t>(j)]);
        residual = residual + h[static_cast<std::size_t>(j)] * uj;
        for (int k = 0; k < n; ++k)
            residual = residual + f[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                                      uj.derivative(xnames[static_cast<std::size_t>(k)]);
    }
    residual = residual + h0 * u;

    double worst = 0.0;
    for (const auto& p : points) {
        if (static_cast<int>(p.x.size()) != n) throw error("pde_residual: bad sample point");
        std::map<std::string, std::complex<double>> point;
        point.emplace("t", std::complex<double>(p.t, 0.0));
        for (int k = 0; k < n; ++k)
            point.emplace(xnames[static_cast<std::size_t>(k)],
                          std::complex<double>(p.x[static_cast<std::size_t>(k)], 0.0));
        point.emplace(variable_set::kEnergyConstant, std::complex<double>(e0, 0.0));
        worst = std::max(worst, std::abs(residual.eval(point)));
    }
    return worst;
}

}  // namespace goldfish

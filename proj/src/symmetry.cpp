#include "goldfish/symmetry.hpp"

#include <nlohmann/json.hpp>

namespace goldfish {

using nlohmann::json;

ode_system goldfish_system(int n) {
    variable_set vars = variable_set::classical(n);
    const context_ptr& ctx = vars.ctx();
    std::vector<expr> rhs;
    rhs.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        expr acc = expr::integer(ctx, 0);
        for (int m = 0; m < n; ++m) {
            if (m == k) continue;
            const expr num = expr::integer(ctx, 2) * expr::variable(ctx, vars.velocity(k)) *
                             expr::variable(ctx, vars.velocity(m));
            const expr den = expr::variable(ctx, vars.position(k)) -
                             expr::variable(ctx, vars.position(m));
            acc = acc + num / den;
        }
        rhs.push_back(acc);
    }
    return {std::move(vars), std::move(rhs)};
}

vector_field add(const vector_field& a, const vector_field& b) {
    vector_field out;
    out.name = a.name + "+" + b.name;
    out.xi = a.xi + b.xi;
    for (std::size_t k = 0; k < a.etas.size(); ++k) out.etas.push_back(a.etas[k] + b.etas[k]);
    return out;
}

vector_field scale(const expr& c, const vector_field& v) {
    vector_field out;
    out.name = v.name;
    out.xi = c * v.xi;
    for (const auto& e : v.etas) out.etas.push_back(c * e);
    return out;
}

std::vector<vector_field> generator_catalog(const variable_set& vars) {
    if (vars.particle_count() != 2)
        throw error("generator catalog is specific to the two-body system");
    const context_ptr& ctx = vars.ctx();
    struct entry {
        const char* name;
        const char* xi;
        const char* eta1;
        const char* eta2;
    };
    // G1..G15 in catalog order
    static const entry table[] = {
        {"G1", "t*x1*x2", "x1^3*x2/(x1 - x2)", "-x1*x2^3/(x1 - x2)"},
        {"G2", "x1*x2", "0", "0"},
        {"G3", "t*(x1 + x2)", "x1^2", "x2^2"},
        {"G4", "x1 + x2", "0", "0"},
        {"G5", "0", "-x1^2*x2/(x1 - x2)", "x1*x2^2/(x1 - x2)"},
        {"G6", "t", "x1^2/(2*(x1 - x2))", "-x2^2/(2*(x1 - x2))"},
        {"G7", "1", "0", "0"},
        {"G8", "0", "-t*x1/(x1 - x2)", "t*x2/(x1 - x2)"},
        {"G9", "0", "-x1/(x1 - x2)", "x2/(x1 - x2)"},
        {"G10", "0", "-t/(x1 - x2)", "t/(x1 - x2)"},
        {"G11", "0", "-1/(x1 - x2)", "1/(x1 - x2)"},
        {"G12", "t^2", "t*x1^2/(x1 - x2)", "-t*x2^2/(x1 - x2)"},
        {"G13", "0", "-x1/3", "-x2/3"},
        {"G14", "0", "-(2*x1 + x2)/(3*(x1 - x2))", "(x1 + 2*x2)/(3*(x1 - x2))"},
        {"G15", "0", "-(x1^2 + 2*x1*x2)/(3*(x1 - x2))", "(x2^2 + 2*x1*x2)/(3*(x1 - x2))"},
    };
    std::vector<vector_field> out;
    for (const entry& e : table) {
        vector_field f;
        f.name = e.name;
        f.xi = parse_expr(e.xi, ctx);
        f.etas = {parse_expr(e.eta1, ctx), parse_expr(e.eta2, ctx)};
        out.push_back(std::move(f));
    }
    return out;
}

std::string catalog_to_json(const std::vector<vector_field>& fields) {
    json arr = json::array();
    for (const auto& f : fields) {
        json etas = json::array();
        for (const auto& e : f.etas) etas.push_back(e.str());
        arr.push_back({{"name", f.name}, {"xi", f.xi.str()}, {"etas", etas}});
    }
    return arr.dump(2);
}

std::vector<vector_field> catalog_from_json(const std::string& text, const variable_set& vars) {
    json arr = json::parse(text);
    if (!arr.is_array()) throw error("catalog JSON must be an array");
    std::vector<vector_field> out;
    for (const auto& item : arr) {
        vector_field f;
        f.name = item.at("name").get<std::string>();
        f.xi = parse_expr(item.at("xi").get<std::string>(), vars.ctx());
        for (const auto& e : item.at("etas"))
            f.etas.push_back(parse_expr(e.get<std::string>(), vars.ctx()));
        if (static_cast<int>(f.etas.size()) != vars.particle_count())
            throw error("catalog field " + f.name + " has wrong eta count");
        out.push_back(std::move(f));
    }
    return out;
}

expr total_time_derivative(const expr& e, const variable_set& vars) {
    expr acc = e.derivative(vars.time());
    for (int k = 0; k < vars.particle_count(); ++k) {
        acc = acc + expr::variable(vars.ctx(), vars.velocity(k)) * e.derivative(vars.position(k));
        acc = acc + expr::variable(vars.ctx(), vars.accel(k)) * e.derivative(vars.velocity(k));
    }
    return acc;
}

expr apply_field(const vector_field& v, const expr& f, const variable_set& vars) {
    expr acc = v.xi * f.derivative(vars.time());
    for (int k = 0; k < vars.particle_count(); ++k)
        acc = acc + v.etas[static_cast<std::size_t>(k)] * f.derivative(vars.position(k));
    return acc;
}

prolonged_field prolong(const vector_field& v, const ode_system& sys) {
    const variable_set& vars = sys.vars;
    const int n = sys.size();

    std::map<int, expr> on_solutions;
    for (int k = 0; k < n; ++k)
        on_solutions.emplace(vars.accel(k), sys.rhs[static_cast<std::size_t>(k)]);

    prolonged_field out;
    out.base = v;
    const expr dxi = total_time_derivative(v.xi, vars);  // a-free since xi is a point coefficient
    for (int k = 0; k < n; ++k) {
        const expr e1 = total_time_derivative(v.etas[static_cast<std::size_t>(k)], vars) -
                        expr::variable(vars.ctx(), vars.velocity(k)) * dxi;
        out.eta1.push_back(e1);
    }
    for (int k = 0; k < n; ++k) {
        const expr e2 = total_time_derivative(out.eta1[static_cast<std::size_t>(k)], vars) -
                        expr::variable(vars.ctx(), vars.accel(k)) * dxi;
        out.eta2.push_back(e2.substitute(on_solutions));
    }
    return out;
}

symmetry_report verify_point_symmetry(const vector_field& v, const ode_system& sys) {
    const variable_set& vars = sys.vars;
    const int n = sys.size();
    const prolonged_field pr = prolong(v, sys);

    symmetry_report report;
    report.name = v.name;
    report.pass = true;
    for (int k = 0; k < n; ++k) {
        // X(rhs_k) with the first prolongation acting on (t, x, v)
        expr applied = apply_field(v, sys.rhs[static_cast<std::size_t>(k)], vars);
        for (int m = 0; m < n; ++m)
            applied = applied + pr.eta1[static_cast<std::size_t>(m)] *
                                    sys.rhs[static_cast<std::size_t>(k)].derivative(vars.velocity(m));
        const expr residual = pr.eta2[static_cast<std::size_t>(k)] - applied;
        if (!residual.is_zero()) report.pass = false;
        report.residuals.push_back(residual);
    }
    return report;
}

vector_field commutator(const vector_field& v, const vector_field& w, const variable_set& vars) {
    vector_field out;
    out.name = "[" + v.name + "," + w.name + "]";
    out.xi = apply_field(v, w.xi, vars) - apply_field(w, v.xi, vars);
    for (std::size_t k = 0; k < v.etas.size(); ++k)
        out.etas.push_back(apply_field(v, w.etas[k], vars) - apply_field(w, v.etas[k], vars));
    return out;
}

}  // namespace goldfish

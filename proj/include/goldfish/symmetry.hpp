#pragma once

#include <string>
#include <vector>

#include "goldfish/context.hpp"
#include "goldfish/expr.hpp"

namespace goldfish {

// Second-order ODE system in normal form, xdotdot_n = rhs_n(t, x, v).
struct ode_system {
    variable_set vars;
    std::vector<expr> rhs;

    int size() const { return static_cast<int>(rhs.size()); }
};

// The Calogero goldfish system: xdotdot_n = 2 sum_{m != n} v_n v_m / (x_n - x_m).
ode_system goldfish_system(int n);

// Point-symmetry generator xi(t,x) d_t + sum_k eta_k(t,x) d_{x_k}.
struct vector_field {
    std::string name;
    expr xi;
    std::vector<expr> etas;
};

vector_field add(const vector_field& a, const vector_field& b);
vector_field scale(const expr& c, const vector_field& v);

// The fifteen point-symmetry generators of the two-body goldfish system,
// indexed G1..G15 in catalog order.
std::vector<vector_field> generator_catalog(const variable_set& vars);

// catalog JSON round-trip: [{"name":..., "xi":..., "etas":[...]}, ...]
std::string catalog_to_json(const std::vector<vector_field>& fields);
std::vector<vector_field> catalog_from_json(const std::string& text, const variable_set& vars);

// First and second prolongation coefficients of a point field, with the
// accelerations already restricted to solutions of the given system.
struct prolonged_field {
    vector_field base;
    std::vector<expr> eta1;  // functions of (t, x, v)
    std::vector<expr> eta2;  // functions of (t, x, v) after a_m -> rhs_m
};

prolonged_field prolong(const vector_field& v, const ode_system& sys);

struct symmetry_report {
    std::string name;
    bool pass = false;
    std::vector<expr> residuals;  // one per equation
};

// Checks eta2_n = X(rhs_n) on solutions for every equation n.
symmetry_report verify_point_symmetry(const vector_field& v, const ode_system& sys);

// Lie bracket [v, w], coefficient-wise v(w) - w(v).
vector_field commutator(const vector_field& v, const vector_field& w,
                        const variable_set& vars);

// total time derivative d_t + sum v_m d_{x_m} + sum a_m d_{v_m}
expr total_time_derivative(const expr& e, const variable_set& vars);

// directional derivative of f along the field (xi d_t + sum eta_k d_{x_k})
expr apply_field(const vector_field& v, const expr& f, const variable_set& vars);

}  // namespace goldfish

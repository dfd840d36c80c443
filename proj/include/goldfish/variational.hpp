#pragma once

#include <optional>

#include "goldfish/symmetry.hpp"

namespace goldfish {

struct singular_hessian_error : error {
    explicit singular_hessian_error(const std::string& det)
        : error("velocity Hessian is singular, determinant " + det) {}
};

// First-order Lagrangian L(t, x, v), at most quadratic in the velocities,
// plus an optional gauge g(t, x) contributing d_t g.
struct lagrangian {
    variable_set vars;
    expr value;
    expr gauge;
};

// L = ((v1 + v2)^2 + (x2 v1 + x1 v2)^2) / 2 for the two-body goldfish system.
lagrangian goldfish_lagrangian();

// Normal-form system from d/dt(dL/dv_k) = dL/dx_k; throws on singular Hessian.
ode_system euler_lagrange(const lagrangian& lag);

struct noether_result {
    bool is_noether = false;
    std::optional<expr> gauge;  // set when is_noether
    expr obstruction;           // nonzero residual when failing
};

// Noether condition X^(1)(L) + L d_t(xi) = d_t g; reconstructs the gauge by
// line integration from a regular base point when the condition holds.
noether_result noether_condition(const vector_field& v, const lagrangian& lag);

// First integral xi L + sum_k (eta_k - xi v_k) dL/dv_k - g. The conservation
// law d_t I = 0 on solutions is checked symbolically before returning.
expr first_integral(const vector_field& v, const lagrangian& lag, const expr& gauge);

// Hamiltonian H(t, x, p) = sum p_k v_k - L with v eliminated through
// p_k = dL/dv_k; returned over the with_momenta(N) variable set.
expr legendre_transform(const lagrangian& lag, variable_set& hamiltonian_vars);

// The eight catalogued Noether directions of the two-body Lagrangian
// (G5+3*G14, G6, G7, G8, G9, G10, G11, G12)
std::vector<vector_field> noether_listed_fields(const variable_set& vars);

// A complementary basis of the remaining seven directions, each of which
// fails the Noether condition individually (G1, G2, G3, G4, G5, G13, G15)
std::vector<vector_field> noether_complement_fields(const variable_set& vars);

}  // namespace goldfish

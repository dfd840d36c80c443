#pragma once

#include <optional>

#include "goldfish/sym_matrix.hpp"
#include "goldfish/symmetry.hpp"

namespace goldfish {

// Invertible change of position coordinates y = y(x), with the Jacobian and
// its symbolic inverse. `inverse` is present only when x(y) is rational.
struct point_transformation {
    variable_set vars;
    std::vector<expr> forward;     // y_a(x)
    sym_matrix jacobian;           // J_{a j} = dy_a/dx_j
    sym_matrix inverse_jacobian;   // B_{j a}, J B = identity
    expr jacobian_det;
    std::optional<std::vector<expr>> inverse;  // x_j written in the target names

    int size() const { return static_cast<int>(forward.size()); }
};

// y_a = a-th elementary symmetric polynomial of x1..xN (identity for N = 1).
point_transformation elementary_symmetric_map(int n);
point_transformation elementary_symmetric_map(int n, const variable_set& vars);

// The system rewritten in the target coordinates. Supported cases: the
// transformed accelerations are constant (the linearizing situation), or the
// transformation carries a rational inverse.
ode_system push_ode(const ode_system& sys, const point_transformation& map);

// 2i u_t + sum f_kj u_{x_j x_k} + sum h_k u_{x_k} + h0 u = 0 over the jet
// variable set; coefficients depend on x only and h0 = -E0^2.
struct evolution_pde {
    int n = 0;
    variable_set vars;       // variable_set::jet(n)
    sym_matrix f;            // symmetric N x N
    std::vector<expr> h;
    expr h0;
};

// Pushes the free-particle equation 2i psi_t + Lap_y psi - E0^2 psi = 0
// through the elementary-symmetric map: f_kj = sum_a B_ja B_ka,
// h_j = sum_a sum_m B_ma dB_ja/dx_m, h0 = -E0^2.
evolution_pde quantize(int n);

std::string pde_to_json(const evolution_pde& pde);
evolution_pde pde_from_json(const std::string& text);

// Point symmetry of the evolution equation with u-linear characteristic:
// xi d_t + sum eta_k d_{x_k} + mu(t,x) u d_u.
struct pde_symmetry {
    std::string name;
    expr xi;
    std::vector<expr> etas;
    expr mu;
};

// The eight symmetries carried over from the Noether fields (mu values fixed
// by the construction) plus helpers for the always-present u d_u.
std::vector<pde_symmetry> omega_catalog(const evolution_pde& pde);
pde_symmetry trivial_scaling_symmetry(const evolution_pde& pde);  // u d_u

// Second prolongation applied to the equation, u_t (and u_{t x_k} if present)
// eliminated through the equation, residual zero-tested as a polynomial in
// the remaining jet coordinates.
symmetry_report verify_pde_symmetry(const pde_symmetry& s, const evolution_pde& pde);

// u(t,x) = exp(i k.y(x) - i/2 (|k|^2 + E0^2) t), an exact solution of the
// quantized equation; doubles are converted to exact rationals.
expr plane_wave(const std::vector<double>& wave_numbers, double e0,
                const point_transformation& map);

struct sample_point {
    double t = 0.0;
    std::vector<double> x;
};

// max |2i u_t + sum f u_xx + sum h u_x + h0 u| over the samples, with the
// derivatives of u taken analytically.
double pde_residual(const evolution_pde& pde, const expr& u,
                    const std::vector<sample_point>& points, double e0);

}  // namespace goldfish

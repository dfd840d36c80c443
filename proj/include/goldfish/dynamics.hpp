#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goldfish/expr.hpp"

namespace goldfish {

struct collision_error : error {
    using error::error;
};

struct tracking_error : error {
    using error::error;
};

struct initial_data {
    std::vector<double> positions;
    std::vector<double> velocities;

    int size() const { return static_cast<int>(positions.size()); }
    double min_gap() const;
    void validate() const;  // distinct positions, matching sizes
};

std::string initial_data_to_json(const initial_data& init);
initial_data initial_data_from_json(const std::string& text);

// Positions at time t from the algebraic root formula: the N roots of
// prod_m (x - x_m(0)) - t sum_m v_m(0) prod_{l != m} (x - x_l(0)),
// assigned to particles by continuity along a geometric time ladder from 0.
// Roots are companion-matrix eigenvalues polished by Newton steps.
std::vector<double> solve_algebraic(const initial_data& init, double t);

// Velocities at time t by central differencing of the tracked roots
// (step 1e-5; approximate).
std::vector<double> algebraic_velocities(const initial_data& init, double t,
                                         double step = 1e-5);

struct collision_event {
    double time = 0.0;
    int first = 0, second = 0;  // particle pair
    double gap = 0.0;
};

struct trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> positions;   // one row per time
    std::vector<std::vector<double>> velocities;
    std::vector<collision_event> events;          // near-collision warnings
    std::optional<collision_event> abort;         // set when integration stopped

    int size() const { return static_cast<int>(times.size()); }
    std::string to_csv() const;
    std::string to_json() const;
};

// Adaptive Dormand-Prince 4(5) integration of the goldfish equations with
// per-step relative error <= tol. Near-collision warnings fire below gap
// 1e-4; the integration aborts below 1e-8, keeping the last valid state.
trajectory integrate_rk(const initial_data& init, double t_end, double tol);

// As above but with the listed times hit exactly (for cross-checks).
trajectory integrate_rk_sampled(const initial_data& init, const std::vector<double>& times,
                                double tol);

struct invariant_drift {
    std::string name;
    std::complex<double> initial;
    double max_drift = 0.0;
    int skipped_samples = 0;  // singular evaluation points
};

struct invariant_report {
    std::vector<invariant_drift> entries;
};

// Evaluates each integral (an expression in t, x, v) along the trajectory and
// reports the maximum drift from its initial value.
invariant_report monitor_invariants(const trajectory& traj,
                                    const std::vector<std::pair<std::string, expr>>& integrals);

}  // namespace goldfish

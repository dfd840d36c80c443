#include "goldfish/dynamics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <set>
#include <sstream>

namespace goldfish {

using nlohmann::json;

double initial_data::min_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            gap = std::min(gap, std::abs(positions[i] - positions[j]));
    return gap;
}

void initial_data::validate() const {
    if (positions.empty() || positions.size() != velocities.size())
        throw error("initial data: positions and velocities must be nonempty and match");
    if (positions.size() > 1 && min_gap() == 0.0)
        throw error("initial data: positions must be pairwise distinct");
}

std::string initial_data_to_json(const initial_data& init) {
    return json{{"positions", init.positions}, {"velocities", init.velocities}}.dump(2);
}

initial_data initial_data_from_json(const std::string& text) {
    const json j = json::parse(text);
    initial_data init;
    init.positions = j.at("positions").get<std::vector<double>>();
    init.velocities = j.at("velocities").get<std::vector<double>>();
    init.validate();
    return init;
}

namespace {

// coefficients (ascending powers) of prod_m (x - x_m0) - t sum_m v_m0 prod_{l!=m} (x - x_l0)
std::vector<double> root_equation_coeffs(const initial_data& init, double t) {
    const int n = init.size();
    std::vector<double> full{1.0};  // prod over all particles, ascending
    for (int m = 0; m < n; ++m) {
        std::vector<double> next(full.size() + 1, 0.0);
        for (std::size_t k = 0; k < full.size(); ++k) {
            next[k + 1] += full[k];
            next[k] -= full[k] * init.positions[static_cast<std::size_t>(m)];
        }
        full = std::move(next);
    }
    std::vector<double> coeffs = full;
    for (int m = 0; m < n; ++m) {
        if (init.velocities[static_cast<std::size_t>(m)] == 0.0) continue;
        std::vector<double> part{1.0};
        for (int l = 0; l < n; ++l) {
            if (l == m) continue;
            std::vector<double> next(part.size() + 1, 0.0);
            for (std::size_t k = 0; k < part.size(); ++k) {
                next[k + 1] += part[k];
                next[k] -= part[k] * init.positions[static_cast<std::size_t>(l)];
            }
            part = std::move(next);
        }
        for (std::size_t k = 0; k < part.size(); ++k)
            coeffs[k] -= t * init.velocities[static_cast<std::size_t>(m)] * part[k];
    }
    return coeffs;
}

std::complex<double> horner(const std::vector<double>& coeffs, std::complex<double> x) {
    std::complex<double> acc(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> horner_deriv(const std::vector<double>& coeffs, std::complex<double> x) {
    std::complex<double> acc(0.0);
    for (long k = static_cast<long>(coeffs.size()) - 1; k >= 1; --k)
        acc = acc * x + coeffs[static_cast<std::size_t>(k)] * static_cast<double>(k);
    return acc;
}

// all roots via companion-matrix eigenvalues, Newton-polished
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && coeffs[static_cast<std::size_t>(deg)] == 0.0) --deg;
    if (deg < 1) throw error("root solve: constant polynomial");
    if (deg == 1)
        return {std::complex<double>(-coeffs[0] / coeffs[1], 0.0)};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    companion.diagonal(-1).setOnes();
    const double lead = coeffs[static_cast<std::size_t>(deg)];
    for (int k = 0; k < deg; ++k)
        companion(k, deg - 1) = -coeffs[static_cast<std::size_t>(k)] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw error("root solve: eigenvalue iteration failed");

    std::vector<std::complex<double>> roots;
    for (int k = 0; k < deg; ++k) {
        std::complex<double> r = solver.eigenvalues()(k);
        for (int it = 0; it < 32; ++it) {
            const std::complex<double> p = horner(coeffs, r);
            if (std::abs(p) < 1e-12) break;
            const std::complex<double> dp = horner_deriv(coeffs, r);
            if (std::abs(dp) == 0.0) break;
            r -= p / dp;
        }
        roots.push_back(r);
    }
    return roots;
}

// nearest-distance assignment of roots to previous positions, with an
// ambiguity guard: two candidate roots within half the minimum previous gap
std::vector<double> match_roots(const std::vector<std::complex<double>>& roots,
                                const std::vector<double>& previous, double t) {
    const int n = static_cast<int>(previous.size());
    for (const auto& r : roots)
        if (std::abs(r.imag()) > 1e-9)
            throw collision_error("complex root pair at t = " + std::to_string(t) +
                                  " (imaginary part " + std::to_string(r.imag()) + ")");

    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            min_gap = std::min(min_gap, std::abs(previous[static_cast<std::size_t>(i)] -
                                                 previous[static_cast<std::size_t>(j)]));

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        int best = -1, second = -1;
        double best_d = 0.0, second_d = 0.0;
        for (int j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double d = std::abs(roots[static_cast<std::size_t>(j)].real() -
                                      previous[static_cast<std::size_t>(i)]);
            if (best < 0 || d < best_d) {
                second = best;
                second_d = best_d;
                best = j;
                best_d = d;
            } else if (second < 0 || d < second_d) {
                second = j;
                second_d = d;
            }
        }
        if (n > 1 && second >= 0 && best_d < min_gap * 0.5 && second_d < min_gap * 0.5)
            throw tracking_error("ambiguous root assignment at t = " + std::to_string(t));
        used[static_cast<std::size_t>(best)] = true;
        out[static_cast<std::size_t>(i)] = roots[static_cast<std::size_t>(best)].real();
    }
    return out;
}

}  // namespace

std::vector<double> solve_algebraic(const initial_data& init, double t) {
    init.validate();
    if (t == 0.0) return init.positions;
    const int n = init.size();

    if (n == 1)
        return {init.positions[0] + t * init.velocities[0]};

    // continuity tracking through a geometric ladder from t0 = 1e-3
    const double sign = t > 0 ? 1.0 : -1.0;
    const double target = std::abs(t);
    std::vector<double> current = init.positions;
    double s = std::min(1e-3, target);
    while (true) {
        const auto coeffs = root_equation_coeffs(init, sign * s);
        current = match_roots(poly_roots(coeffs), current, sign * s);
        if (s >= target) break;
        s = std::min(s * 1.25, target);
    }
    return current;
}

std::vector<double> algebraic_velocities(const initial_data& init, double t, double step) {
    const auto ahead = solve_algebraic(init, t + step);
    const auto behind = solve_algebraic(init, t - step);
    std::vector<double> v(ahead.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = (ahead[k] - behind[k]) / (2.0 * step);
    return v;
}

namespace {

// goldfish right side in doubles
void goldfish_accel(const std::vector<double>& x, const std::vector<double>& v,
                    std::vector<double>& a) {
    const std::size_t n = x.size();
    a.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
            if (m == k) continue;
            a[k] += 2.0 * v[k] * v[m] / (x[k] - x[m]);
        }
}

struct dp45_tableau {
    // Dormand-Prince coefficients
    static constexpr double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double b5[7] = {35.0 / 384,     0.0,           500.0 / 1113, 125.0 / 192,
                                     -2187.0 / 6784, 11.0 / 84,     0.0};
    static constexpr double b4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                                     -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
};

void derivative(const std::vector<double>& y, std::vector<double>& dy) {
    const std::size_t n = y.size() / 2;
    const std::vector<double> x(y.begin(), y.begin() + static_cast<long>(n));
    const std::vector<double> v(y.begin() + static_cast<long>(n), y.end());
    std::vector<double> a;
    goldfish_accel(x, v, a);
    dy.resize(y.size());
    for (std::size_t k = 0; k < n; ++k) {
        dy[k] = v[k];
        dy[n + k] = a[k];
    }
}

double state_min_gap(const std::vector<double>& y, int n, int* pi, int* pj) {
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = std::abs(y[static_cast<std::size_t>(i)] -
                                      y[static_cast<std::size_t>(j)]);
            if (d < gap) {
                gap = d;
                if (pi) *pi = i;
                if (pj) *pj = j;
            }
        }
    return gap;
}

trajectory integrate_core(const initial_data& init, double t_end, double tol,
                          const std::vector<double>* sample_times) {
    init.validate();
    if (tol <= 0.0) throw error("integrate_rk: tolerance must be positive");
    const int n = init.size();

    std::vector<double> y;
    y.insert(y.end(), init.positions.begin(), init.positions.end());
    y.insert(y.end(), init.velocities.begin(), init.velocities.end());

    trajectory traj;
    auto record = [&](double t, const std::vector<double>& state) {
        traj.times.push_back(t);
        traj.positions.emplace_back(state.begin(), state.begin() + n);
        traj.velocities.emplace_back(state.begin() + n, state.end());
    };
    const bool sampled = sample_times != nullptr;
    std::size_t next_sample = 0;
    if (!sampled) record(0.0, y);

    double t = 0.0;
    double hdir = t_end >= 0.0 ? 1.0 : -1.0;
    double h = hdir * std::min(1e-2, std::abs(t_end));
    const double atol = tol * 1e-3;
    std::set<std::pair<int, int>> warned_pairs;

    std::vector<double> k[7], ytmp, y5, y4, dy;
    int steps = 0;
    while (hdir * (t_end - t) > 1e-14) {
        if (++steps > 2000000) throw error("integrate_rk: step limit exceeded");
        if (hdir * (t + h) > hdir * t_end) h = t_end - t;
        // clamp to the next requested sample time
        if (sampled && next_sample < sample_times->size()) {
            const double ts = (*sample_times)[next_sample];
            if (hdir * (t + h) >= hdir * ts) h = ts - t;
        }

        for (int stage = 0; stage < 7; ++stage) {
            ytmp = y;
            for (int prev = 0; prev < stage; ++prev) {
                const double w = dp45_tableau::a[stage][prev] * h;
                if (w == 0.0) continue;
                for (std::size_t q = 0; q < y.size(); ++q) ytmp[q] += w * k[prev][q];
            }
            derivative(ytmp, dy);
            k[stage] = dy;
        }
        y5 = y;
        y4 = y;
        for (int stage = 0; stage < 7; ++stage)
            for (std::size_t q = 0; q < y.size(); ++q) {
                y5[q] += h * dp45_tableau::b5[stage] * k[stage][q];
                y4[q] += h * dp45_tableau::b4[stage] * k[stage][q];
            }

        double err = 0.0;
        for (std::size_t q = 0; q < y.size(); ++q) {
            const double scale = atol + tol * std::max(std::abs(y[q]), std::abs(y5[q]));
            err = std::max(err, std::abs(y5[q] - y4[q]) / scale);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;

            int pi = 0, pj = 0;
            const double gap = n > 1 ? state_min_gap(y, n, &pi, &pj)
                                     : std::numeric_limits<double>::infinity();
            if (gap < 1e-4) {
                if (warned_pairs.emplace(pi, pj).second)
                    traj.events.push_back({t, pi, pj, gap});
                if (gap < 1e-8) {
                    traj.abort = collision_event{t, pi, pj, gap};
                    if (!sampled) record(t, y);
                    return traj;
                }
            }
            if (sampled) {
                if (next_sample < sample_times->size() &&
                    std::abs(t - (*sample_times)[next_sample]) < 1e-13) {
                    record(t, y);
                    ++next_sample;
                }
            } else {
                record(t, y);
            }
        }

        const double safety = 0.9;
        const double grow = err > 0.0 ? safety * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
        if (std::abs(h) < 1e-15) {
            // step collapse happens when the flow blows up, i.e. at a collision
            int pi = 0, pj = 0;
            const double gap = n > 1 ? state_min_gap(y, n, &pi, &pj)
                                     : std::numeric_limits<double>::infinity();
            if (gap < 1e-4) {
                traj.abort = collision_event{t, pi, pj, gap};
                if (!sampled) record(t, y);
                return traj;
            }
            throw error("integrate_rk: step size underflow near t = " + std::to_string(t));
        }
    }
    return traj;
}

}  // namespace

trajectory integrate_rk(const initial_data& init, double t_end, double tol) {
    return integrate_core(init, t_end, tol, nullptr);
}

trajectory integrate_rk_sampled(const initial_data& init, const std::vector<double>& times,
                                double tol) {
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1]) throw error("sample times must be strictly increasing");
    if (times.empty()) throw error("sample times must be nonempty");
    return integrate_core(init, times.back(), tol, &times);
}

std::string trajectory::to_csv() const {
    std::ostringstream out;
    const int n = positions.empty() ? 0 : static_cast<int>(positions.front().size());
    out << "t";
    for (int k = 1; k <= n; ++k) out << ",x" << k;
    for (int k = 1; k <= n; ++k) out << ",v" << k;
    out << "\n";
    out.precision(15);
    for (int row = 0; row < size(); ++row) {
        out << times[static_cast<std::size_t>(row)];
        for (double x : positions[static_cast<std::size_t>(row)]) out << "," << x;
        for (double v : velocities[static_cast<std::size_t>(row)]) out << "," << v;
        out << "\n";
    }
    return out.str();
}

std::string trajectory::to_json() const {
    json jevents = json::array();
    for (const auto& e : events)
        jevents.push_back({{"time", e.time}, {"pair", {e.first, e.second}}, {"gap", e.gap}});
    json j{{"times", times}, {"positions", positions}, {"velocities", velocities},
           {"events", jevents}};
    if (abort)
        j["abort"] = {{"time", abort->time}, {"pair", {abort->first, abort->second}},
                      {"gap", abort->gap}};
    return j.dump(2);
}

invariant_report monitor_invariants(
    const trajectory& traj, const std::vector<std::pair<std::string, expr>>& integrals) {
    invariant_report report;
    for (const auto& [name, integral] : integrals) {
        invariant_drift entry;
        entry.name = name;
        bool have_initial = false;
        for (int row = 0; row < traj.size(); ++row) {
            std::map<std::string, std::complex<double>> point;
            point.emplace("t", traj.times[static_cast<std::size_t>(row)]);
            const auto& x = traj.positions[static_cast<std::size_t>(row)];
            const auto& v = traj.velocities[static_cast<std::size_t>(row)];
            for (std::size_t k = 0; k < x.size(); ++k) {
                point.emplace("x" + std::to_string(k + 1), x[k]);
                point.emplace("v" + std::to_string(k + 1), v[k]);
            }
            try {
                const std::complex<double> value = integral.eval(point);
                if (!have_initial) {
                    entry.initial = value;
                    have_initial = true;
                } else {
                    entry.max_drift = std::max(entry.max_drift, std::abs(value - entry.initial));
                }
            } catch (const singular_point_error&) {
                ++entry.skipped_samples;
            }
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace goldfish

#include "goldfish/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "goldfish/dynamics.hpp"
#include "goldfish/quantize.hpp"
#include "goldfish/variational.hpp"

namespace goldfish {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<vector_field> load_catalog(const variable_set& vars, const std::string& path) {
    if (path.empty()) return generator_catalog(vars);
    return catalog_from_json(read_file(path), vars);
}

// --- 1: the fifteen generators verify; perturbed controls fail -------------

criterion_result catalog_symmetry_suite(const acceptance_options& opts) {
    criterion_result r{1, "catalog symmetry suite", false, "", 0.0};
    const ode_system sys = goldfish_system(2);
    const auto catalog = load_catalog(sys.vars, opts.catalog_path);

    int ok = 0;
    for (const auto& field : catalog)
        if (verify_point_symmetry(field, sys).pass) ++ok;

    std::mt19937 rng(opts.seed + 1);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(catalog.size()) - 1);
    std::uniform_int_distribution<int> slot(0, 1);
    const expr bump = parse_expr("1 + x1", sys.vars.ctx());
    int controls_failed = 0;
    for (int c = 0; c < 5; ++c) {
        vector_field perturbed = catalog[static_cast<std::size_t>(pick(rng))];
        auto& eta = perturbed.etas[static_cast<std::size_t>(slot(rng))];
        eta = eta.is_zero() ? bump : eta * bump;
        if (!verify_point_symmetry(perturbed, sys).pass) ++controls_failed;
    }

    r.pass = ok == static_cast<int>(catalog.size()) && static_cast<int>(catalog.size()) == 15 &&
             controls_failed == 5;
    r.detail = std::to_string(ok) + "/" + std::to_string(catalog.size()) +
               " generators verify, " + std::to_string(controls_failed) +
               "/5 perturbed controls fail";
    return r;
}

// --- 2: Noether partition 8 pass / 7 fail ----------------------------------

criterion_result noether_partition(const acceptance_options&) {
    criterion_result r{2, "noether partition", false, "", 0.0};
    const lagrangian lag = goldfish_lagrangian();
    int listed_ok = 0, complement_failed = 0;
    for (const auto& field : noether_listed_fields(lag.vars)) {
        const noether_result nr = noether_condition(field, lag);
        if (nr.is_noether && nr.gauge) ++listed_ok;
    }
    for (const auto& field : noether_complement_fields(lag.vars))
        if (!noether_condition(field, lag).is_noether) ++complement_failed;
    r.pass = listed_ok == 8 && complement_failed == 7;
    r.detail = std::to_string(listed_ok) + "/8 listed fields pass, " +
               std::to_string(complement_failed) + "/7 complementary fields fail";
    return r;
}

// --- 3: pairwise commutators of the catalogued linearizing quadruple -------

criterion_result abelian_quadruple(const acceptance_options&) {
    criterion_result r{3, "abelian subalgebra", false, "", 0.0};
    const variable_set vars = variable_set::classical(2);
    const auto catalog = generator_catalog(vars);
    auto g = [&](int k) { return catalog[static_cast<std::size_t>(k - 1)]; };

    vector_field combo = add(add(g(6), scale(expr::integer(vars.ctx(), -1), g(3))),
                             scale(expr::rational_const(vars.ctx(), -1, 2), g(15)));
    combo.name = "G6-G3-G15/2";
    const std::vector<vector_field> quad{g(7), g(4), g(2), combo};

    int zero_pairs = 0, pairs = 0;
    std::string failing;
    for (std::size_t i = 0; i < quad.size(); ++i)
        for (std::size_t j = i + 1; j < quad.size(); ++j) {
            ++pairs;
            const vector_field bracket = commutator(quad[i], quad[j], vars);
            bool zero = bracket.xi.is_zero();
            for (const auto& e : bracket.etas) zero = zero && e.is_zero();
            if (zero)
                ++zero_pairs;
            else
                failing += (failing.empty() ? "" : ", ") + bracket.name;
        }
    r.pass = zero_pairs == pairs;
    r.detail = std::to_string(zero_pairs) + "/" + std::to_string(pairs) +
               " pairwise brackets vanish";
    if (!failing.empty()) r.detail += " (nonzero: " + failing + ")";
    return r;
}

// --- 4: linearization to the free system -----------------------------------

criterion_result linearization(const acceptance_options&) {
    criterion_result r{4, "linearization", false, "", 0.0};
    bool ok = true;
    for (int n : {2, 3}) {
        const ode_system sys = goldfish_system(n);
        const ode_system pushed = push_ode(sys, elementary_symmetric_map(n, sys.vars));
        for (const auto& rhs : pushed.rhs) ok = ok && rhs.is_zero();
    }
    r.pass = ok;
    r.detail = ok ? "two- and three-body systems map to ydd = 0"
                  : "transformed system is not free";
    return r;
}

// --- 5: two-body coefficients match the published closed forms -------------

criterion_result quantization_exactness(const acceptance_options&) {
    criterion_result r{5, "quantization exactness", false, "", 0.0};
    const evolution_pde pde = quantize(2);
    const context_ptr& ctx = pde.vars.ctx();

    const expr f11 = parse_expr("(x1^2 + 1)/(x1 - x2)^2", ctx);
    const expr f12 = parse_expr("-(x1*x2 + 1)/(x1 - x2)^2", ctx);
    const expr f22 = parse_expr("(x2^2 + 1)/(x1 - x2)^2", ctx);
    const expr h1 = f11.derivative("x1");
    const expr h2 = f22.derivative("x2");
    const expr h0 = parse_expr("-E0^2", ctx);

    int ok = 0;
    ok += pde.f.at(0, 0) == f11;
    ok += pde.f.at(0, 1) == f12;
    ok += pde.f.at(1, 0) == f12;
    ok += pde.f.at(1, 1) == f22;
    ok += pde.h[0] == h1;
    ok += pde.h[1] == h2;
    ok += pde.h0 == h0;
    r.pass = ok == 7;
    r.detail = std::to_string(ok) + "/7 coefficients are canonical-form identities";
    return r;
}

// --- 6: the eight carried-over symmetries (plus u du) hold ------------------

criterion_result pde_symmetry_suite(const acceptance_options&) {
    criterion_result r{6, "pde symmetry suite", false, "", 0.0};
    const evolution_pde pde = quantize(2);
    int ok = 0, total = 0;
    std::string failing;
    auto run = [&](const pde_symmetry& s) {
        ++total;
        if (verify_pde_symmetry(s, pde).pass)
            ++ok;
        else
            failing += (failing.empty() ? "" : ", ") + s.name;
    };
    for (const auto& s : omega_catalog(pde)) run(s);
    run(trivial_scaling_symmetry(pde));
    r.pass = ok == total;
    r.detail = std::to_string(ok) + "/" + std::to_string(total) + " symmetries verify";
    if (!failing.empty()) r.detail += " (failing: " + failing + ")";
    return r;
}

// --- 7: substitution u = psi(t, y1, y2) reduces to the free equation --------

criterion_result reduction_identity(const acceptance_options&) {
    criterion_result r{7, "reduction identity", false, "", 0.0};
    const evolution_pde pde = quantize(2);

    auto ctx = std::make_shared<context>(std::vector<std::string>{
        "t", "x1", "x2", "psi", "psit", "psi1", "psi2", "psi11", "psi12", "psi22", "E0"});

    const expr y1 = parse_expr("x1 + x2", ctx);
    const expr y2 = parse_expr("x1*x2", ctx);
    const std::vector<expr> y{y1, y2};

    // first derivatives of psi by target slot, second derivatives symmetric
    const expr psi_a[2] = {parse_expr("psi1", ctx), parse_expr("psi2", ctx)};
    const expr psi_ab[2][2] = {
        {parse_expr("psi11", ctx), parse_expr("psi12", ctx)},
        {parse_expr("psi12", ctx), parse_expr("psi22", ctx)}};

    const std::string xs[2] = {"x1", "x2"};
    expr u_x[2], u_xx[2][2];
    for (int j = 0; j < 2; ++j) {
        u_x[j] = expr::integer(ctx, 0);
        for (int a = 0; a < 2; ++a) u_x[j] = u_x[j] + psi_a[a] * y[a].derivative(xs[j]);
    }
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            expr acc = expr::integer(ctx, 0);
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b)
                    acc = acc + psi_ab[a][b] * y[a].derivative(xs[j]) * y[b].derivative(xs[k]);
                acc = acc + psi_a[a] * y[a].derivative(xs[j]).derivative(xs[k]);
            }
            u_xx[j][k] = acc;
        }

    expr lhs = expr::integer(ctx, 2) * expr::imaginary_unit(ctx) * parse_expr("psit", ctx);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            lhs = lhs + parse_expr(pde.f.at(j, k).str(), ctx) * u_xx[j][k];
    for (int j = 0; j < 2; ++j) lhs = lhs + parse_expr(pde.h[j].str(), ctx) * u_x[j];
    lhs = lhs + parse_expr(pde.h0.str(), ctx) * parse_expr("psi", ctx);

    const expr target = parse_expr("2*i*psit + psi11 + psi22 - E0^2*psi", ctx);
    r.pass = (lhs - target).is_zero();
    r.detail = r.pass ? "chain rule collapses the equation to the free form"
                      : "residual " + (lhs - target).str();
    return r;
}

// --- 8: transformed plane waves solve the three- and four-body equations ---

struct wave_closure {
    expr u;
    std::vector<std::string> xnames;

    std::complex<double> value(double t, const std::vector<double>& x, double e0) const {
        std::map<std::string, std::complex<double>> point;
        point.emplace("t", t);
        for (std::size_t k = 0; k < x.size(); ++k) point.emplace(xnames[k], x[k]);
        point.emplace(variable_set::kEnergyConstant, e0);
        return u.eval(point);
    }
};

criterion_result plane_wave_residuals(const acceptance_options& opts) {
    criterion_result r{8, "general-N residuals", false, "", 0.0};
    std::mt19937 rng(opts.seed + 8);
    std::uniform_real_distribution<double> kdist(-1.5, 1.5);
    std::uniform_real_distribution<double> xdist(-3.0, 3.0);
    std::uniform_real_distribution<double> tdist(0.0, 1.0);

    double worst_residual = 0.0, worst_oracle = 0.0;
    for (int n : {3, 4}) {
        const evolution_pde pde = quantize(n);
        const point_transformation map = elementary_symmetric_map(n);
        std::vector<double> k(static_cast<std::size_t>(n));
        for (auto& v : k) v = kdist(rng);
        const expr u = plane_wave(k, 1.0, map);
        const wave_closure closure{u, [&] {
                                       std::vector<std::string> names;
                                       for (int q = 1; q <= n; ++q)
                                           names.push_back("x" + std::to_string(q));
                                       return names;
                                   }()};

        std::vector<sample_point> points;
        while (static_cast<int>(points.size()) < 20) {
            sample_point p;
            p.t = tdist(rng);
            p.x.resize(static_cast<std::size_t>(n));
            for (auto& xv : p.x) xv = xdist(rng);
            double gap = 1e9;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    gap = std::min(gap, std::abs(p.x[static_cast<std::size_t>(a)] -
                                                 p.x[static_cast<std::size_t>(b)]));
            if (gap > 0.5) points.push_back(std::move(p));
        }

        worst_residual = std::max(worst_residual, pde_residual(pde, u, points, 1.0));

        // finite-difference derivative oracle against the analytic derivatives
        const double h = 1e-4;
        for (int sample = 0; sample < 5; ++sample) {
            const sample_point& p = points[static_cast<std::size_t>(sample)];
            std::map<std::string, std::complex<double>> at;
            at.emplace("t", p.t);
            for (int q = 0; q < n; ++q)
                at.emplace(closure.xnames[static_cast<std::size_t>(q)],
                           p.x[static_cast<std::size_t>(q)]);
            at.emplace(variable_set::kEnergyConstant, 1.0);

            auto shifted = [&](int var, double dh) {
                std::vector<double> x = p.x;
                double t = p.t;
                if (var < 0)
                    t += dh;
                else
                    x[static_cast<std::size_t>(var)] += dh;
                return closure.value(t, x, 1.0);
            };
            auto shifted2 = [&](int va, double da, int vb, double db) {
                std::vector<double> x = p.x;
                x[static_cast<std::size_t>(va)] += da;
                x[static_cast<std::size_t>(vb)] += db;
                return closure.value(p.t, x, 1.0);
            };
            const std::complex<double> fd_t = (shifted(-1, h) - shifted(-1, -h)) / (2 * h);
            worst_oracle = std::max(worst_oracle,
                                    std::abs(fd_t - u.derivative("t").eval(at)));
            const std::complex<double> u0 = closure.value(p.t, p.x, 1.0);
            for (int j = 0; j < n; ++j) {
                const std::string& xj = closure.xnames[static_cast<std::size_t>(j)];
                const std::complex<double> fd_x = (shifted(j, h) - shifted(j, -h)) / (2 * h);
                worst_oracle =
                    std::max(worst_oracle, std::abs(fd_x - u.derivative(xj).eval(at)));
                for (int m = j; m < n; ++m) {
                    const std::string& xm = closure.xnames[static_cast<std::size_t>(m)];
                    const std::complex<double> fd_xx =
                        j == m ? (shifted(j, h) - 2.0 * u0 + shifted(j, -h)) / (h * h)
                               : (shifted2(j, h, m, h) - shifted2(j, h, m, -h) -
                                  shifted2(j, -h, m, h) + shifted2(j, -h, m, -h)) /
                                     (4 * h * h);
                    worst_oracle = std::max(
                        worst_oracle,
                        std::abs(fd_xx - u.derivative(xj).derivative(xm).eval(at)));
                }
            }
        }
    }
    r.pass = worst_residual < 1e-8 && worst_oracle < 1e-6;
    std::ostringstream d;
    d.precision(3);
    d << "max residual " << worst_residual << " (< 1e-8), derivative oracle gap "
      << worst_oracle << " (< 1e-6)";
    r.detail = d.str();
    return r;
}

// --- 9: algebraic formula against the integrator ----------------------------

criterion_result dynamics_cross_check(const acceptance_options& opts) {
    criterion_result r{9, "dynamics cross-check", false, "", 0.0};
    std::mt19937 rng(opts.seed + 9);
    std::uniform_real_distribution<double> jitter(0.0, 0.5);
    std::uniform_real_distribution<double> vdist(-0.5, 0.5);

    std::vector<double> grid;
    for (int k = 1; k <= 10; ++k) grid.push_back(0.1 * k);

    double worst = 0.0;
    int runs = 0;
    for (int n : {2, 3})
        for (int rep = 0; rep < 10; ++rep) {
            initial_data init;
            double base = jitter(rng);
            for (int q = 0; q < n; ++q) {
                init.positions.push_back(base);
                init.velocities.push_back(vdist(rng));
                base += 1.5 + jitter(rng);
            }
            const trajectory traj = integrate_rk_sampled(init, grid, 1e-9);
            if (traj.abort || traj.size() != static_cast<int>(grid.size()))
                throw error("cross-check trajectory failed unexpectedly");
            for (std::size_t gi = 0; gi < grid.size(); ++gi) {
                const auto alg = solve_algebraic(init, grid[gi]);
                for (int q = 0; q < n; ++q)
                    worst = std::max(worst,
                                     std::abs(alg[static_cast<std::size_t>(q)] -
                                              traj.positions[gi][static_cast<std::size_t>(q)]));
            }
            ++runs;
        }
    r.pass = worst < 1e-6 && runs == 20;
    std::ostringstream d;
    d.precision(3);
    d << runs << " initial conditions, max |algebraic - rk| = " << worst << " (< 1e-6)";
    r.detail = d.str();
    return r;
}

// --- 10: the eight first integrals are conserved along a trajectory --------

criterion_result conservation(const acceptance_options&) {
    criterion_result r{10, "conservation", false, "", 0.0};
    const lagrangian lag = goldfish_lagrangian();

    std::vector<std::pair<std::string, expr>> integrals;
    expr gamma7_integral;
    for (const auto& field : noether_listed_fields(lag.vars)) {
        const noether_result nr = noether_condition(field, lag);
        if (!nr.is_noether || !nr.gauge) {
            r.detail = field.name + " unexpectedly fails the Noether condition";
            return r;
        }
        const expr integral = first_integral(field, lag, *nr.gauge);
        if (field.name == "G7") gamma7_integral = integral;
        integrals.emplace_back(field.name, integral);
    }

    const bool gamma7_is_minus_l = (gamma7_integral + lag.value).is_zero();

    initial_data init;
    init.positions = {0.0, 3.0};
    init.velocities = {0.3, -0.2};
    const trajectory traj = integrate_rk(init, 1.0, 1e-9);
    const invariant_report rep = monitor_invariants(traj, integrals);

    double worst = 0.0;
    for (const auto& e : rep.entries) worst = std::max(worst, e.max_drift);
    r.pass = worst < 1e-6 && gamma7_is_minus_l;
    std::ostringstream d;
    d.precision(3);
    d << "8 integrals, max drift " << worst << " (< 1e-6), G7 integral "
      << (gamma7_is_minus_l ? "equals -L" : "does not equal -L");
    r.detail = d.str();
    return r;
}

// --- 11: the Hamiltonian picture is consistent ------------------------------

criterion_result hamiltonian_consistency(const acceptance_options&) {
    criterion_result r{11, "hamiltonian consistency", false, "", 0.0};
    const lagrangian lag = goldfish_lagrangian();
    variable_set hv;
    const expr h = legendre_transform(lag, hv);
    const context_ptr& ctx = hv.ctx();

    const expr expected =
        parse_expr("((p1*x1 - p2*x2)^2 + (p1 - p2)^2)/(2*(x1 - x2)^2)", ctx);
    const bool matches = h == expected;

    // Hamilton's equations, momenta eliminated through p_k = dL/dv_k
    const int n = hv.particle_count();
    const expr l_in_h = parse_expr(lag.value.str(), ctx);
    std::map<int, expr> p_of_v;
    for (int k = 0; k < n; ++k)
        p_of_v.emplace(hv.momentum(k), l_in_h.derivative(hv.velocity(k)));

    const ode_system sys = goldfish_system(n);
    bool velocities_ok = true, accelerations_ok = true;
    for (int k = 0; k < n; ++k) {
        const expr xdot = h.derivative(hv.momentum(k));
        velocities_ok =
            velocities_ok &&
            (xdot.substitute(p_of_v) - expr::variable(ctx, hv.velocity(k))).is_zero();

        expr xdd = expr::integer(ctx, 0);
        for (int j = 0; j < n; ++j) {
            xdd = xdd + xdot.derivative(hv.position(j)) * h.derivative(hv.momentum(j));
            xdd = xdd - xdot.derivative(hv.momentum(j)) * h.derivative(hv.position(j));
        }
        const expr residual =
            xdd.substitute(p_of_v) - parse_expr(sys.rhs[static_cast<std::size_t>(k)].str(), ctx);
        accelerations_ok = accelerations_ok && residual.is_zero();
    }

    r.pass = matches && velocities_ok && accelerations_ok;
    r.detail = std::string(matches ? "H matches the closed form" : "H mismatch") +
               (velocities_ok && accelerations_ok
                    ? "; Hamilton's equations reproduce the system"
                    : "; Hamilton's equations do not reproduce the system");
    return r;
}

// --- optional four-body symbolic extras -------------------------------------

criterion_result four_body_symbolic(const acceptance_options&) {
    criterion_result r{12, "four-body symbolic extras", false, "", 0.0};
    const ode_system sys = goldfish_system(4);
    const point_transformation map = elementary_symmetric_map(4, sys.vars);

    const sym_matrix product = map.jacobian * map.inverse_jacobian;
    const bool jb_identity =
        (product - sym_matrix::identity(sys.vars.ctx(), 4)).is_zero();

    bool pushed_free = true;
    for (const auto& rhs : push_ode(sys, map).rhs) pushed_free = pushed_free && rhs.is_zero();

    r.pass = jb_identity && pushed_free;
    r.detail = std::string("J*B ") + (jb_identity ? "=" : "!=") + " identity, pushforward " +
               (pushed_free ? "is" : "is not") + " free";
    return r;
}

criterion_result timed(criterion_result (*fn)(const acceptance_options&),
                       const acceptance_options& opts) {
    const auto start = std::chrono::steady_clock::now();
    criterion_result r = fn(opts);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

criterion_result run_criterion(int index, const acceptance_options& opts) {
    switch (index) {
        case 1: return timed(catalog_symmetry_suite, opts);
        case 2: return timed(noether_partition, opts);
        case 3: return timed(abelian_quadruple, opts);
        case 4: return timed(linearization, opts);
        case 5: return timed(quantization_exactness, opts);
        case 6: return timed(pde_symmetry_suite, opts);
        case 7: return timed(reduction_identity, opts);
        case 8: return timed(plane_wave_residuals, opts);
        case 9: return timed(dynamics_cross_check, opts);
        case 10: return timed(conservation, opts);
        case 11: return timed(hamiltonian_consistency, opts);
        case 12: return timed(four_body_symbolic, opts);
        default: throw error("unknown criterion index " + std::to_string(index));
    }
}

std::vector<criterion_result> run_acceptance(const acceptance_options& opts) {
    std::vector<criterion_result> out;
    for (int k = 1; k <= kCriterionCount; ++k) out.push_back(run_criterion(k, opts));
    if (opts.full) out.push_back(run_criterion(12, opts));
    return out;
}

}  // namespace goldfish

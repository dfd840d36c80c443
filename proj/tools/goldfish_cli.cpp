// Command-line workbench for the goldfish many-body system: point-symmetry
// verification, the Noether layer, the quantized evolution equation and the
// numeric solvers, with plain-text or JSON reports.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "goldfish/acceptance.hpp"
#include "goldfish/dynamics.hpp"
#include "goldfish/quantize.hpp"
#include "goldfish/variational.hpp"

namespace {

using nlohmann::json;
using namespace goldfish;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct report {
    std::string command;
    json checks = json::array();
    bool failed = false;

    void add(const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"status", pass ? "pass" : "fail"},
                          {"detail", detail}});
        if (!pass) failed = true;
    }

    void add_info(const std::string& name, const std::string& detail) {
        checks.push_back({{"name", name}, {"status", "info"}, {"detail", detail}});
    }

    int finish(bool as_json, double seconds) const {
        if (as_json) {
            json out{{"command", command}, {"checks", checks},
                     {"status", failed ? "fail" : "pass"}, {"seconds", seconds}};
            std::cout << out.dump(2) << "\n";
        } else {
            for (const auto& c : checks)
                std::cout << "[" << c.at("status").get<std::string>() << "] "
                          << c.at("name").get<std::string>() << ": "
                          << c.at("detail").get<std::string>() << "\n";
            std::cout << (failed ? "FAIL" : "OK") << " (" << seconds << " s)\n";
        }
        return failed ? kExitCheckFailed : kExitOk;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw error("cannot write file: " + path);
    out << text;
}

int cmd_symmetries(int n, bool catalog, const std::string& field_json, bool as_json) {
    const auto start = std::chrono::steady_clock::now();
    report rep;
    rep.command = "symmetries";
    const ode_system sys = goldfish_system(n);

    std::vector<vector_field> fields;
    if (catalog) {
        if (n != 2) throw CLI::ValidationError("--catalog requires --n 2");
        fields = generator_catalog(sys.vars);
    }
    if (!field_json.empty()) {
        const json j = json::parse(field_json);
        vector_field f;
        f.name = j.value("name", "user-field");
        f.xi = parse_expr(j.at("xi").get<std::string>(), sys.vars.ctx());
        for (const auto& e : j.at("etas"))
            f.etas.push_back(parse_expr(e.get<std::string>(), sys.vars.ctx()));
        if (static_cast<int>(f.etas.size()) != n)
            throw error("field JSON must provide exactly " + std::to_string(n) + " etas");
        fields.push_back(std::move(f));
    }
    if (fields.empty()) throw CLI::ValidationError("nothing to verify: pass --catalog or --field");

    for (const auto& f : fields) {
        const symmetry_report sr = verify_point_symmetry(f, sys);
        std::string residuals;
        if (!sr.pass)
            for (const auto& e : sr.residuals)
                residuals += (residuals.empty() ? "residuals: " : ", ") + e.str();
        rep.add(f.name, sr.pass, sr.pass ? "point symmetry verified" : residuals);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep.finish(as_json, secs);
}

int cmd_noether(bool all, int index, bool as_json) {
    const auto start = std::chrono::steady_clock::now();
    report rep;
    rep.command = "noether";
    const lagrangian lag = goldfish_lagrangian();

    if (all) {
        int pass = 0, fail = 0;
        for (const auto& f : noether_listed_fields(lag.vars)) {
            const noether_result nr = noether_condition(f, lag);
            if (nr.is_noether && nr.gauge) {
                ++pass;
                const expr integral = first_integral(f, lag, *nr.gauge);
                rep.add_info(f.name, "noether; gauge = " + nr.gauge->str() +
                                         "; first integral = " + integral.str());
            } else {
                rep.add(f.name, false, "expected noether field failed");
            }
        }
        for (const auto& f : noether_complement_fields(lag.vars)) {
            const noether_result nr = noether_condition(f, lag);
            if (!nr.is_noether) {
                ++fail;
                rep.add_info(f.name, "not noether; obstruction = " + nr.obstruction.str());
            } else {
                rep.add(f.name, false, "expected non-noether field passed");
            }
        }
        rep.add("partition", pass == 8 && fail == 7,
                std::to_string(pass) + " pass / " + std::to_string(fail) + " fail");
    } else {
        if (index < 1 || index > 15) throw CLI::ValidationError("--index must be 1..15");
        const auto catalog = generator_catalog(lag.vars);
        const vector_field& f = catalog[static_cast<std::size_t>(index - 1)];
        const noether_result nr = noether_condition(f, lag);
        if (nr.is_noether && nr.gauge) {
            const expr integral = first_integral(f, lag, *nr.gauge);
            rep.add(f.name, true, "noether; gauge = " + nr.gauge->str() +
                                      "; first integral = " + integral.str());
        } else {
            rep.add(f.name, false, "not noether; obstruction = " + nr.obstruction.str());
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep.finish(as_json, secs);
}

int cmd_quantize(int n, const std::string& e0_text, bool verify_symmetries,
                 const std::string& out_path, const std::string& in_path, bool as_json,
                 unsigned seed, double tol) {
    const auto start = std::chrono::steady_clock::now();
    report rep;
    rep.command = "quantize";

    const evolution_pde pde = in_path.empty() ? quantize(n) : pde_from_json(read_file(in_path));
    if (!in_path.empty()) n = pde.n;

    const std::string pde_json = pde_to_json(pde);
    if (!out_path.empty()) {
        write_file(out_path, pde_json);
        rep.add_info("output", "equation written to " + out_path);
    } else if (!verify_symmetries) {
        rep.add_info("equation", pde_json);
    }

    if (verify_symmetries) {
        if (n != 2) throw CLI::ValidationError("--verify-symmetries requires n = 2");
        for (const auto& s : omega_catalog(pde))
            rep.add(s.name, verify_pde_symmetry(s, pde).pass, "pde symmetry check");
        rep.add("u*du", verify_pde_symmetry(trivial_scaling_symmetry(pde), pde).pass,
                "trivial scaling symmetry");
    }

    // plane-wave residual sampling always runs
    double e0 = 1.0;
    if (!e0_text.empty() && e0_text != "symbolic") e0 = std::stod(e0_text);
    std::mt19937 rng(seed + 40);
    std::uniform_real_distribution<double> kdist(-1.5, 1.5);
    std::uniform_real_distribution<double> xdist(-3.0, 3.0);
    std::uniform_real_distribution<double> tdist(0.0, 1.0);
    const point_transformation map = elementary_symmetric_map(n);
    std::vector<double> k(static_cast<std::size_t>(n));
    for (auto& v : k) v = kdist(rng);
    const expr wave = plane_wave(k, e0, map);
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
        if (n == 1 || gap > 0.5) points.push_back(std::move(p));
    }
    const double residual = pde_residual(pde, wave, points, e0);
    const double threshold = tol > 0 ? tol : 1e-8;
    std::ostringstream d;
    d.precision(3);
    d << "max plane-wave residual " << residual << " over 20 points (threshold " << threshold
      << ")";
    rep.add("plane-wave residual", residual < threshold, d.str());

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep.finish(as_json, secs);
}

int cmd_solve(const std::string& init_path, double t, const std::string& grid,
              const std::string& method, const std::string& out_path, bool as_json,
              double tol) {
    const auto start = std::chrono::steady_clock::now();
    report rep;
    rep.command = "solve";
    const initial_data init = initial_data_from_json(read_file(init_path));
    const double rk_tol = tol > 0 ? tol : 1e-9;

    std::vector<double> times;
    if (!grid.empty()) {
        double a = 0, b = 0;
        int count = 0;
        if (std::sscanf(grid.c_str(), "%lf:%lf:%d", &a, &b, &count) != 3 || count < 1 ||
            b <= a)
            throw CLI::ValidationError("--grid expects start:end:count");
        for (int q = 0; q < count; ++q)
            times.push_back(a + (b - a) * q / std::max(1, count - 1));
    } else {
        if (t == 0.0) throw CLI::ValidationError("pass --t (nonzero) or --grid");
        times.push_back(t);
    }

    const bool want_alg = method == "algebraic" || method == "both";
    const bool want_rk = method == "rk" || method == "both";
    if (!want_alg && !want_rk)
        throw CLI::ValidationError("--method must be algebraic, rk or both");

    std::vector<std::vector<double>> alg_rows;
    if (want_alg) {
        try {
            for (double ts : times) alg_rows.push_back(solve_algebraic(init, ts));
        } catch (const collision_error& e) {
            rep.add("algebraic", false, e.what());
            return rep.finish(as_json, 0.0);
        }
    }

    trajectory traj;
    if (want_rk) {
        traj = integrate_rk_sampled(init, times, rk_tol);
        if (traj.abort) {
            std::ostringstream d;
            d << "collision abort at t = " << traj.abort->time << ", pair ("
              << traj.abort->first + 1 << "," << traj.abort->second + 1 << "), gap "
              << traj.abort->gap;
            rep.add("rk", false, d.str());
            return rep.finish(as_json,
                              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                            start)
                                  .count());
        }
        for (const auto& e : traj.events) {
            std::ostringstream d;
            d << "near-collision at t = " << e.time << ", pair (" << e.first + 1 << ","
              << e.second + 1 << "), gap " << e.gap;
            rep.add_info("rk event", d.str());
        }
        if (!out_path.empty()) {
            write_file(out_path, traj.to_csv());
            rep.add_info("output", "trajectory written to " + out_path);
        }
    }

    for (std::size_t row = 0; row < times.size(); ++row) {
        std::ostringstream line;
        line.precision(12);
        line << "t = " << times[row];
        if (want_alg) {
            line << "  algebraic:";
            for (double x : alg_rows[row]) line << " " << x;
        }
        if (want_rk) {
            line << "  rk:";
            for (double x : traj.positions[row]) line << " " << x;
        }
        rep.add_info("positions", line.str());
    }

    if (want_alg && want_rk) {
        double worst = 0.0;
        for (std::size_t row = 0; row < times.size(); ++row)
            for (std::size_t q = 0; q < alg_rows[row].size(); ++q)
                worst = std::max(worst, std::abs(alg_rows[row][q] - traj.positions[row][q]));
        std::ostringstream d;
        d.precision(3);
        d << "max cross-solver discrepancy " << worst;
        rep.add("cross-check", worst < 1e-6, d.str());
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep.finish(as_json, secs);
}

int cmd_check(bool full, const std::string& catalog_path, bool as_json, unsigned seed) {
    acceptance_options opts;
    opts.seed = seed;
    opts.full = full;
    opts.catalog_path = catalog_path;

    const auto start = std::chrono::steady_clock::now();
    report rep;
    rep.command = "check";
    for (const auto& c : run_acceptance(opts)) {
        std::ostringstream name;
        name << "criterion " << c.index << " (" << c.name << ")";
        std::ostringstream d;
        d.precision(3);
        d << c.detail << " [" << c.seconds << " s]";
        rep.add(name.str(), c.pass, d.str());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep.finish(as_json, secs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-numeric workbench for the goldfish many-body system"};
    app.require_subcommand(1);

    bool as_json = false;
    unsigned seed = 0;
    double tol = 0.0;
    app.add_flag("--json", as_json, "emit machine-readable JSON reports");
    app.add_option("--seed", seed, "seed for randomized sampling (default 0)");
    app.add_option("--tol", tol, "override the default numeric tolerance");

    auto* sym = app.add_subcommand("symmetries", "verify point symmetries of the system");
    int sym_n = 2;
    bool sym_catalog = false;
    std::string sym_field;
    sym->add_option("--n", sym_n, "particle count")->check(CLI::PositiveNumber);
    sym->add_flag("--catalog", sym_catalog, "verify the fifteen catalogued generators (n = 2)");
    sym->add_option("--field", sym_field, "verify one field given as JSON {xi, etas[]}");

    auto* noe = app.add_subcommand("noether", "noether conditions, gauges and first integrals");
    bool noe_all = false;
    int noe_index = 0;
    noe->add_flag("--all", noe_all, "run the full 8/7 partition");
    noe->add_option("--index", noe_index, "test one catalogued generator (1..15)");

    auto* qua = app.add_subcommand("quantize", "construct and verify the evolution equation");
    int qua_n = 2;
    std::string qua_e0 = "symbolic", qua_out, qua_in;
    bool qua_verify = false;
    qua->add_option("--n", qua_n, "particle count")->check(CLI::PositiveNumber);
    qua->add_option("--e0", qua_e0, "numeric value for E0 in residual sampling, or 'symbolic'");
    qua->add_flag("--verify-symmetries", qua_verify, "check the eight carried-over symmetries");
    qua->add_option("--out", qua_out, "write the equation JSON to a file");
    qua->add_option("--in", qua_in, "load an equation JSON instead of constructing it");

    auto* sol = app.add_subcommand("solve", "positions from the algebraic formula and/or rk");
    std::string sol_init, sol_grid, sol_method = "both", sol_out;
    double sol_t = 0.0;
    sol->add_option("--init", sol_init, "initial data JSON file")->required();
    sol->add_option("--t", sol_t, "single evaluation time");
    sol->add_option("--grid", sol_grid, "time grid start:end:count");
    sol->add_option("--method", sol_method, "algebraic | rk | both");
    sol->add_option("--out", sol_out, "write the rk trajectory CSV to a file");

    auto* chk = app.add_subcommand("check", "run the full verification suite");
    bool chk_full = false;
    std::string chk_catalog;
    chk->add_flag("--full", chk_full, "add the slow four-body symbolic checks");
    chk->add_option("--catalog-path", chk_catalog, "verify a catalog JSON file instead of the built-in one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sym->parsed()) return cmd_symmetries(sym_n, sym_catalog, sym_field, as_json);
        if (noe->parsed()) return cmd_noether(noe_all, noe_index, as_json);
        if (qua->parsed())
            return cmd_quantize(qua_n, qua_e0, qua_verify, qua_out, qua_in, as_json, seed, tol);
        if (sol->parsed()) return cmd_solve(sol_init, sol_t, sol_grid, sol_method, sol_out,
                                            as_json, tol);
        if (chk->parsed()) return cmd_check(chk_full, chk_catalog, as_json, seed);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "usage error: malformed JSON input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const goldfish::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

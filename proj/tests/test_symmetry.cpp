#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goldfish/symmetry.hpp"
#include "test_util.hpp"

using namespace goldfish;

TEST_CASE("goldfish system right sides") {
    const ode_system one = goldfish_system(1);
    CHECK(one.rhs[0].is_zero());

    const ode_system two = goldfish_system(2);
    CHECK(two.rhs[0] == parse_expr("2*v1*v2/(x1 - x2)", two.vars.ctx()));
    CHECK(two.rhs[1] == parse_expr("-2*v1*v2/(x1 - x2)", two.vars.ctx()));

    // N = 3: two summands per equation, written out by hand
    const ode_system three = goldfish_system(3);
    CHECK(three.rhs[0] ==
          parse_expr("2*v1*v2/(x1 - x2) + 2*v1*v3/(x1 - x3)", three.vars.ctx()));
    CHECK(three.rhs[2] ==
          parse_expr("2*v3*v1/(x3 - x1) + 2*v3*v2/(x3 - x2)", three.vars.ctx()));
}

TEST_CASE("generator catalog shapes") {
    const variable_set vars = variable_set::classical(2);
    const auto catalog = generator_catalog(vars);
    REQUIRE(catalog.size() == 15);

    const auto& g7 = catalog[6];
    CHECK(g7.xi == expr::integer(vars.ctx(), 1));
    CHECK(g7.etas[0].is_zero());
    CHECK(g7.etas[1].is_zero());

    CHECK(catalog[1].xi == parse_expr("x1*x2", vars.ctx()));

    const auto& g11 = catalog[10];
    CHECK(g11.xi.is_zero());
    CHECK(g11.etas[0] == parse_expr("-1/(x1 - x2)", vars.ctx()));
    CHECK(g11.etas[1] == parse_expr("1/(x1 - x2)", vars.ctx()));

    // every catalogued expression survives a print-parse round trip
    for (const auto& f : catalog) {
        CHECK(parse_expr(f.xi.str(), vars.ctx()) == f.xi);
        for (const auto& e : f.etas) CHECK(parse_expr(e.str(), vars.ctx()) == e);
    }
}

TEST_CASE("prolongation basics") {
    // time translation on an autonomous system has trivial prolongation
    const ode_system sys = goldfish_system(2);
    vector_field dt;
    dt.name = "dt";
    dt.xi = expr::integer(sys.vars.ctx(), 1);
    dt.etas = {expr::integer(sys.vars.ctx(), 0), expr::integer(sys.vars.ctx(), 0)};
    const prolonged_field pr = prolong(dt, sys);
    for (const auto& e : pr.eta1) CHECK(e.is_zero());
    for (const auto& e : pr.eta2) CHECK(e.is_zero());

    // scaling of a single free particle: eta1 = v1, eta2 = 0 on solutions
    variable_set vars1 = variable_set::classical(1);
    ode_system free1{vars1, {expr::integer(vars1.ctx(), 0)}};
    vector_field scaling;
    scaling.name = "x*dx";
    scaling.xi = expr::integer(vars1.ctx(), 0);
    scaling.etas = {expr::variable(vars1.ctx(), "x1")};
    const prolonged_field ps = prolong(scaling, free1);
    CHECK(ps.eta1[0] == expr::variable(vars1.ctx(), "v1"));
    CHECK(ps.eta2[0].is_zero());
}

TEST_CASE("prolongation against a numeric chain-rule oracle") {
    // directional derivatives along the flow, complex-step inside and central
    // differences outside; fully independent of the symbolic prolongation
    const ode_system sys = goldfish_system(2);
    const variable_set& vars = sys.vars;
    const auto catalog = generator_catalog(vars);
    const vector_field& g9 = catalog[8];
    const prolonged_field pr = prolong(g9, sys);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    auto accel = [](const std::vector<double>& s) {
        // s = {t, x1, x2, v1, v2}
        const double gap = s[1] - s[2];
        return std::vector<double>{2.0 * s[3] * s[4] / gap, -2.0 * s[3] * s[4] / gap};
    };
    auto eta1_oracle = [&](int k, const std::vector<double>& s) {
        std::map<std::string, std::complex<double>> point{
            {"t", s[0]}, {"x1", s[1]}, {"x2", s[2]}, {"v1", s[3]}, {"v2", s[4]}};
        const std::map<std::string, double> dir{
            {"t", 1.0}, {"x1", s[3]}, {"x2", s[4]}, {"v1", accel(s)[0]}, {"v2", accel(s)[1]}};
        return testing::complex_step_directional(g9.etas[static_cast<std::size_t>(k)], point,
                                                 dir) -
               s[static_cast<std::size_t>(3 + k)] *
                   testing::complex_step_directional(g9.xi, point, dir);
    };

    int checked = 0;
    while (checked < 5) {
        std::vector<double> s{dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
        if (std::abs(s[1] - s[2]) < 0.5) continue;
        std::map<std::string, std::complex<double>> point{
            {"t", s[0]}, {"x1", s[1]}, {"x2", s[2]}, {"v1", s[3]}, {"v2", s[4]}};
        const auto a = accel(s);

        for (int k = 0; k < 2; ++k) {
            const double sym1 = pr.eta1[static_cast<std::size_t>(k)].eval(point).real();
            CHECK(std::abs(eta1_oracle(k, s) - sym1) <=
                  1e-8 * std::max(1.0, std::abs(sym1)));

            // eta2 = d/ds eta1(flow(s)) - a_k * d/ds xi(flow(s)) by central FD
            const double h = 1e-5;
            auto flow_shift = [&](double eps) {
                return std::vector<double>{s[0] + eps,        s[1] + eps * s[3],
                                           s[2] + eps * s[4], s[3] + eps * a[0],
                                           s[4] + eps * a[1]};
            };
            const double outer =
                (eta1_oracle(k, flow_shift(h)) - eta1_oracle(k, flow_shift(-h))) / (2 * h);
            const double xi_rate = testing::complex_step_directional(
                g9.xi, point,
                {{"t", 1.0}, {"x1", s[3]}, {"x2", s[4]}, {"v1", a[0]}, {"v2", a[1]}});
            const double oracle2 = outer - a[static_cast<std::size_t>(k)] * xi_rate;
            const double sym2 = pr.eta2[static_cast<std::size_t>(k)].eval(point).real();
            CHECK(std::abs(oracle2 - sym2) <= 1e-5 * std::max(1.0, std::abs(sym2)));
        }
        ++checked;
    }
}

TEST_CASE("point symmetry verification") {
    const ode_system two = goldfish_system(2);
    const auto catalog = generator_catalog(two.vars);
    for (const auto& f : catalog) {
        const symmetry_report r = verify_point_symmetry(f, two);
        CHECK_MESSAGE(r.pass, "field ", f.name);
    }

    // time translation on the three-body system
    const ode_system three = goldfish_system(3);
    vector_field dt;
    dt.name = "dt";
    dt.xi = expr::integer(three.vars.ctx(), 1);
    dt.etas.assign(3, expr::integer(three.vars.ctx(), 0));
    CHECK(verify_point_symmetry(dt, three).pass);

    // a bogus field fails with a nonzero residual
    vector_field bogus;
    bogus.name = "t*dx1";
    bogus.xi = expr::integer(two.vars.ctx(), 0);
    bogus.etas = {expr::variable(two.vars.ctx(), "t"), expr::integer(two.vars.ctx(), 0)};
    const symmetry_report r = verify_point_symmetry(bogus, two);
    CHECK_FALSE(r.pass);
    bool some_nonzero = false;
    for (const auto& e : r.residuals) some_nonzero = some_nonzero || !e.is_zero();
    CHECK(some_nonzero);

    // perturbed catalog fields fail
    const expr bump = parse_expr("1 + x1", two.vars.ctx());
    for (int idx : {6, 8}) {
        vector_field perturbed = catalog[static_cast<std::size_t>(idx)];
        auto& eta = perturbed.etas[0];
        eta = eta.is_zero() ? bump : eta * bump;
        CHECK_FALSE(verify_point_symmetry(perturbed, two).pass);
    }
}

TEST_CASE("commutator algebra") {
    const variable_set vars = variable_set::classical(2);
    const auto catalog = generator_catalog(vars);
    auto is_zero_field = [](const vector_field& f) {
        bool z = f.xi.is_zero();
        for (const auto& e : f.etas) z = z && e.is_zero();
        return z;
    };

    CHECK(is_zero_field(commutator(catalog[6], catalog[6], vars)));
    CHECK(is_zero_field(commutator(catalog[6], catalog[3], vars)));

    // antisymmetry and the Jacobi identity on random catalog triples
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
    for (int rep = 0; rep < 4; ++rep) {
        const auto& a = catalog[pick(rng)];
        const auto& b = catalog[pick(rng)];
        const auto& c = catalog[pick(rng)];
        const vector_field ab = commutator(a, b, vars);
        const vector_field ba = commutator(b, a, vars);
        CHECK(is_zero_field(add(ab, ba)));
        const vector_field jacobi = add(
            add(commutator(a, commutator(b, c, vars), vars),
                commutator(b, commutator(c, a, vars), vars)),
            commutator(c, commutator(a, b, vars), vars));
        CHECK(is_zero_field(jacobi));
    }
}

TEST_CASE("prolongation is linear in the field") {
    const ode_system sys = goldfish_system(2);
    const auto catalog = generator_catalog(sys.vars);
    std::mt19937 rng(6);
    std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int rep = 0; rep < 3; ++rep) {
        const auto& v = catalog[pick(rng)];
        const auto& w = catalog[pick(rng)];
        const expr a = expr::integer(sys.vars.ctx(), coeff(rng));
        const expr b = expr::integer(sys.vars.ctx(), coeff(rng));
        const vector_field combo = add(scale(a, v), scale(b, w));
        const prolonged_field pc = prolong(combo, sys);
        const prolonged_field pv = prolong(v, sys);
        const prolonged_field pw = prolong(w, sys);
        for (int k = 0; k < 2; ++k) {
            CHECK((pc.eta1[static_cast<std::size_t>(k)] -
                   (a * pv.eta1[static_cast<std::size_t>(k)] +
                    b * pw.eta1[static_cast<std::size_t>(k)]))
                      .is_zero());
            CHECK((pc.eta2[static_cast<std::size_t>(k)] -
                   (a * pv.eta2[static_cast<std::size_t>(k)] +
                    b * pw.eta2[static_cast<std::size_t>(k)]))
                      .is_zero());
        }
    }
}

TEST_CASE("catalog JSON round trip") {
    const variable_set vars = variable_set::classical(2);
    const auto catalog = generator_catalog(vars);
    const auto loaded = catalog_from_json(catalog_to_json(catalog), vars);
    REQUIRE(loaded.size() == catalog.size());
    for (std::size_t k = 0; k < catalog.size(); ++k) {
        CHECK(loaded[k].name == catalog[k].name);
        CHECK(loaded[k].xi == catalog[k].xi);
        for (std::size_t j = 0; j < catalog[k].etas.size(); ++j)
            CHECK(loaded[k].etas[j] == catalog[k].etas[j]);
    }
    CHECK_THROWS_AS(catalog_from_json("{\"not\": \"an array\"}", vars), error);
}

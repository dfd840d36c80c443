#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goldfish/dynamics.hpp"
#include "goldfish/variational.hpp"
#include "test_util.hpp"

using namespace goldfish;

namespace {

lagrangian one_dof_free() {
    variable_set vars = variable_set::classical(1);
    return {vars, parse_expr("v1^2/2", vars.ctx()), expr::integer(vars.ctx(), 0)};
}

}  // namespace

TEST_CASE("goldfish lagrangian") {
    const lagrangian lag = goldfish_lagrangian();
    CHECK(lag.value.degree(lag.vars.velocity(0)) == 2);
    CHECK(lag.value.degree(lag.vars.velocity(1)) == 2);

    // L at x = (2,1), v = (1,0): ((1)^2 + (1)^2)/2 = 1
    CHECK(lag.value.eval({{"x1", 2.0}, {"x2", 1.0}, {"v1", 1.0}, {"v2", 0.0}}).real() ==
          doctest::Approx(1.0));

    const ode_system sys = euler_lagrange(lag);
    const ode_system expected = goldfish_system(2);
    for (int k = 0; k < 2; ++k)
        CHECK(sys.rhs[static_cast<std::size_t>(k)] ==
              parse_expr(expected.rhs[static_cast<std::size_t>(k)].str(), lag.vars.ctx()));
}

TEST_CASE("euler-lagrange basics") {
    const lagrangian free1 = one_dof_free();
    CHECK(euler_lagrange(free1).rhs[0].is_zero());

    // adding a total time derivative leaves the equations unchanged
    lagrangian shifted = goldfish_lagrangian();
    shifted.gauge = parse_expr("t*x1 + x2^2 - 3*t", shifted.vars.ctx());
    const ode_system sys = euler_lagrange(shifted);
    const ode_system plain = euler_lagrange(goldfish_lagrangian());
    for (int k = 0; k < 2; ++k)
        CHECK(sys.rhs[static_cast<std::size_t>(k)] ==
              parse_expr(plain.rhs[static_cast<std::size_t>(k)].str(), shifted.vars.ctx()));

    // a velocity-degenerate Lagrangian is rejected with its determinant
    variable_set vars2 = variable_set::classical(2);
    lagrangian degenerate{vars2, parse_expr("(v1 + v2)^2/2", vars2.ctx()),
                          expr::integer(vars2.ctx(), 0)};
    CHECK_THROWS_AS(euler_lagrange(degenerate), singular_hessian_error);
}

TEST_CASE("noether condition on the catalog") {
    const lagrangian lag = goldfish_lagrangian();

    // time translation: gauge is a constant (zero by our normalization)
    const auto catalog = generator_catalog(lag.vars);
    const noether_result g7 = noether_condition(catalog[6], lag);
    REQUIRE(g7.is_noether);
    REQUIRE(g7.gauge.has_value());
    CHECK(g7.gauge->is_zero());

    const noether_result g13 = noether_condition(catalog[12], lag);
    CHECK_FALSE(g13.is_noether);
    CHECK_FALSE(g13.obstruction.is_zero());

    for (const auto& f : noether_listed_fields(lag.vars)) {
        const noether_result nr = noether_condition(f, lag);
        CHECK_MESSAGE(nr.is_noether, "field ", f.name);
        REQUIRE(nr.gauge.has_value());
        // the defining identity d_t g = X(L) + L d_t(xi) was verified inside;
        // check the gauge depends only on (t, x)
        for (int k = 0; k < 2; ++k)
            CHECK_FALSE(nr.gauge->depends_on(lag.vars.velocity(k)));
    }
    for (const auto& f : noether_complement_fields(lag.vars))
        CHECK_FALSE(noether_condition(f, lag).is_noether);
}

TEST_CASE("gauge freedom does not change the partition") {
    lagrangian shifted = goldfish_lagrangian();
    shifted.gauge = parse_expr("x1*x2 + 2*t", shifted.vars.ctx());
    const lagrangian plain = goldfish_lagrangian();

    for (const auto& f : noether_listed_fields(plain.vars)) {
        CHECK(noether_condition(f, plain).is_noether ==
              noether_condition(f, shifted).is_noether);
    }
    for (const auto& f : noether_complement_fields(plain.vars))
        CHECK(noether_condition(f, plain).is_noether ==
              noether_condition(f, shifted).is_noether);

    // and a field whose gauge actually changes
    const auto catalog = generator_catalog(plain.vars);
    const noether_result before = noether_condition(catalog[5], plain);
    const noether_result after = noether_condition(catalog[5], shifted);
    REQUIRE(before.is_noether);
    REQUIRE(after.is_noether);
    CHECK_FALSE((*before.gauge - *after.gauge).is_zero());
}

TEST_CASE("first integrals") {
    const lagrangian lag = goldfish_lagrangian();
    const auto catalog = generator_catalog(lag.vars);

    // G7 yields the Lagrangian itself up to sign: I = L - sum v dL/dv = -L
    const noether_result g7 = noether_condition(catalog[6], lag);
    const expr i7 = first_integral(catalog[6], lag, *g7.gauge);
    CHECK((i7 + lag.value).is_zero());

    // free particle, translation: the integral is the momentum
    const lagrangian free1 = one_dof_free();
    vector_field shift;
    shift.name = "dx";
    shift.xi = expr::integer(free1.vars.ctx(), 0);
    shift.etas = {expr::integer(free1.vars.ctx(), 1)};
    const noether_result ns = noether_condition(shift, free1);
    REQUIRE(ns.is_noether);
    CHECK(first_integral(shift, free1, *ns.gauge) ==
          expr::variable(free1.vars.ctx(), "v1"));

    // G11: velocity-linear integral, conserved along an rk trajectory
    const noether_result g11 = noether_condition(catalog[10], lag);
    REQUIRE(g11.is_noether);
    const expr i11 = first_integral(catalog[10], lag, *g11.gauge);
    CHECK(i11.degree(lag.vars.velocity(0)) == 1);

    initial_data init;
    init.positions = {0.0, 2.5};
    init.velocities = {0.4, -0.1};
    const trajectory traj = integrate_rk(init, 1.0, 1e-9);
    const invariant_report rep = monitor_invariants(traj, {{"I11", i11}});
    CHECK(rep.entries[0].max_drift < 1e-6);
}

TEST_CASE("legendre transform") {
    const lagrangian free1 = one_dof_free();
    variable_set hv1;
    CHECK(legendre_transform(free1, hv1) == parse_expr("p1^2/2", hv1.ctx()));

    const lagrangian lag = goldfish_lagrangian();
    variable_set hv;
    const expr h = legendre_transform(lag, hv);
    CHECK(h == parse_expr("((p1*x1 - p2*x2)^2 + (p1 - p2)^2)/(2*(x1 - x2)^2)", hv.ctx()));
}

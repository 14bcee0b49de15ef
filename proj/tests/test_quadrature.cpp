#include "fdoutage/model.hpp"
#include "fdoutage/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fdoutage;

TEST_CASE("smooth integrals")
{
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12, 200);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.error <= 1e-12 * 2.0);

    r = integrate([](double x) { return std::exp(-x); }, 0.0, 30.0, 1e-12, 200);
    CHECK(r.value == doctest::Approx(-std::expm1(-30.0)).epsilon(1e-13));

    CHECK(integrate([](double) { return 1.0; }, 3.0, 3.0, 1e-9, 10).value == 0.0);
}

TEST_CASE("integrable endpoint singularity converges by bisection")
{
    // int_0^1 x^(-1/2) dx = 2
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9, 200);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.subdivisions > 0);
}

TEST_CASE("non-convergence reports the achieved error")
{
    auto oscillating = [](double x) { return std::sin(200.0 * x) / std::sqrt(x); };
    try {
        integrate(oscillating, 0.0, 10.0, 1e-12, 3);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.subdivisions() == 3);
        CHECK(e.achieved_error() > e.requested_error());
    }
}

TEST_CASE("config validation")
{
    QuadratureConfig q;
    CHECK_NOTHROW(q.validate());
    q.rel_tol_inner = 0.0;
    CHECK_THROWS_AS(q.validate(), ConfigError);
    q = {};
    q.tail_cut = 1.0;
    CHECK_THROWS_AS(q.validate(), ConfigError);
    q = {};
    q.max_subdivisions = 0;
    CHECK_THROWS_AS(q.validate(), ConfigError);
}

#include "fdoutage/closed_form.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fdoutage;
using namespace fdoutage::closed_form;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("f_u")
{
    CHECK(f_u(0.0, 1.0, 1e-3) == 1.0);
    CHECK(f_u(100.0, 0.0, 1e-3) == doctest::Approx(std::exp(-pi * 1e-3 * 100.0)));
    // exp(-0.1 pi (1 + pi/4))
    CHECK(f_u(100.0, 1.0, 1e-3) == doctest::Approx(0.5706955634).epsilon(1e-9));
}

TEST_CASE("f_uv")
{
    const double lambda = 1e-3;
    CHECK(f_uv(0.0, 1.0, lambda) == doctest::Approx(1.0 / (pi * lambda)).epsilon(1e-12));
    CHECK(f_uv(100.0, 0.0, lambda) == doctest::Approx(1.0 / (pi * lambda)).epsilon(1e-12));

    SUBCASE("brute-force trapezoid over v")
    {
        const double u = 100.0;
        const double root_t = 1.0;  // R = 1
        auto g = [&](double v) {
            return std::exp(-pi * lambda * (v + u * root_t * arccot(v / (u * root_t))));
        };
        const double v_max = 20.0 / (pi * lambda);
        const int panels = 1000000;
        const double h = v_max / panels;
        double sum = 0.5 * (g(0.0) + g(v_max));
        for (int i = 1; i < panels; ++i) sum += g(i * h);
        const double oracle = sum * h;
        // the oracle drops the tail beyond v_max, below exp(-20) relative
        CHECK(f_uv(u, 1.0, lambda) == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("pi3_closed")
{
    CHECK(pi3_closed(0.0).value == 0.0);
    // 1 - 1/(1 + pi/4 + pi/2) and 1 - 1/(1 + sqrt(3)(pi/3 + pi/2))
    const double at1 = 1.0 - 1.0 / (1.0 + pi / 4.0 + pi / 2.0);
    const double at2 = 1.0 - 1.0 / (1.0 + std::sqrt(3.0) * (pi / 3.0 + pi / 2.0));
    CHECK(pi3_closed(1.0).value == doctest::Approx(at1).epsilon(1e-14));
    CHECK(pi3_closed(2.0).value == doctest::Approx(at2).epsilon(1e-14));
    CHECK(std::abs(pi3_closed(1.0).value - 0.7020434892) < 1e-9);
    CHECK(std::abs(pi3_closed(2.0).value - 0.8193151527) < 1e-9);
    CHECK(pi3_closed(1.0).method == Method::AnalyticClosedForm);
}

TEST_CASE("hd_closed")
{
    CHECK(hd_closed(0.0).value == 0.0);
    // T' = 3: 1 - 1/(1 + sqrt(3) pi/3)
    CHECK(hd_closed(1.0).value == doctest::Approx(1.0 - 1.0 / (1.0 + std::sqrt(3.0) * pi / 3.0)).epsilon(1e-14));
    CHECK(std::abs(hd_closed(1.0).value - 0.6446) < 1e-4);
    CHECK(std::abs(hd_closed(1.7).value - pi3_closed(1.7).value) < 0.01);
}

TEST_CASE("pi2_closed")
{
    CHECK(pi2_closed(0.0, 1e-3, 0.0).value == 0.0);
    CHECK(std::abs(pi2_closed(0.5, 1e-3, 1e-3).value - 0.80) < 0.05);
    // Frozen from an independent scipy evaluation of the same expression.
    CHECK(std::abs(pi2_closed(0.5, 1e-3, 0.0).value - 0.4473132980) < 1e-8);
    CHECK(std::abs(pi2_closed(0.5, 1e-3, 1e-3).value - 0.8341336980) < 1e-8);
}

TEST_CASE("monotone and bounded in rate")
{
    double prev3 = 0.0;
    double prev_hd = 0.0;
    for (double r = 0.05; r <= 8.0; r += 0.05) {
        const double v3 = pi3_closed(r).value;
        const double vhd = hd_closed(r).value;
        CHECK(v3 > prev3);
        CHECK(vhd > prev_hd);
        CHECK(v3 < 1.0);
        CHECK(vhd < 1.0);
        prev3 = v3;
        prev_hd = vhd;
    }
}

TEST_CASE("pi2 without LI is density-free and below pi3")
{
    for (double r : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double ref = pi2_closed(r, 1e-3, 0.0).value;
        CHECK(std::abs(pi2_closed(r, 1e-4, 0.0).value - ref) < 1e-4);
        CHECK(std::abs(pi2_closed(r, 1e-2, 0.0).value - ref) < 1e-4);
        CHECK(ref <= pi3_closed(r).value);
    }
}

TEST_CASE("three-node and half-duplex cross once, near 1.7")
{
    int sign_changes = 0;
    double crossing = 0.0;
    double prev = pi3_closed(0.001).value - hd_closed(0.001).value;
    for (double r = 0.002; r <= 4.0; r += 0.001) {
        const double d = pi3_closed(r).value - hd_closed(r).value;
        if ((d > 0) != (prev > 0)) {
            ++sign_changes;
            crossing = r;
        }
        prev = d;
    }
    CHECK(sign_changes == 1);
    CHECK(crossing > 1.5);
    CHECK(crossing < 1.9);
}

TEST_CASE("dispatch enforces the special-case assumptions")
{
    NetworkParams p;
    CHECK(applicable(p));
    CHECK(outage(Scenario::ThreeNodeFD, p, 1.0).value == pi3_closed(1.0).value);
    p.sigma_n2 = 1.0;
    CHECK_FALSE(applicable(p));
    CHECK_THROWS_AS(outage(Scenario::ThreeNodeFD, p, 1.0), ConfigError);
    p = {};
    p.alpha2 = 3.0;
    CHECK_THROWS_AS(outage(Scenario::HalfDuplex, p, 1.0), ConfigError);
    CHECK_THROWS_AS(pi3_closed(-1.0), ConfigError);
}

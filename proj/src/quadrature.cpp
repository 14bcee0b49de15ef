#include "fdoutage/quadrature.hpp"

#include "fdoutage/model.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace fdoutage {

void QuadratureConfig::validate() const
{
    auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
    if (!in_unit(rel_tol_inner)) throw ConfigError("rel_tol_inner must lie in (0, 1)");
    if (!in_unit(rel_tol_outer)) throw ConfigError("rel_tol_outer must lie in (0, 1)");
    if (!in_unit(tail_cut)) throw ConfigError("tail_cut must lie in (0, 1)");
    if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be >= 1");
}

namespace {

std::string failure_message(double achieved, double requested, int subdivisions)
{
    std::ostringstream os;
    os << "quadrature did not converge after " << subdivisions
       << " subdivisions: error estimate " << achieved << " > requested " << requested;
    return os.str();
}

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_panel(const Integrand& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(centre);
    double k_sum = wk[0] * fc;
    double g_sum = wg[0] * fc;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dx = half * xk[i];
        const double pair = f(centre - dx) + f(centre + dx);
        k_sum += wk[i] * pair;
        // 7-point Gauss nodes sit at the even Kronrod positions.
        if (i % 2 == 0) g_sum += wg[i / 2] * pair;
    }
    const double value = k_sum * half;
    const double error = std::abs((k_sum - g_sum) * half);
    return {a, b, value, error};
}

}  // namespace

QuadratureError::QuadratureError(double achieved_error, double requested_error, int subdivisions)
    : std::runtime_error(failure_message(achieved_error, requested_error, subdivisions)),
      achieved_(achieved_error), requested_(requested_error), subdivisions_(subdivisions)
{
}

QuadratureResult integrate(const Integrand& f, double a, double b, double rel_tol,
                           int max_subdivisions, double abs_floor)
{
    if (a == b) return {};

    std::priority_queue<Panel> panels;
    Panel first = gauss_kronrod_panel(f, a, b);
    double total = first.value;
    double total_error = first.error;
    panels.push(first);

    int subdivisions = 0;
    auto target = [&] { return std::max(rel_tol * std::abs(total), abs_floor); };
    while (total_error > target()) {
        if (subdivisions >= max_subdivisions)
            throw QuadratureError(total_error, target(), subdivisions);

        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        // Interval too narrow to split further in double precision.
        if (!(mid > worst.a && mid < worst.b))
            throw QuadratureError(total_error, target(), subdivisions);

        const Panel left = gauss_kronrod_panel(f, worst.a, mid);
        const Panel right = gauss_kronrod_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++subdivisions;

        // Re-sum periodically so cancellation in the running totals cannot drift.
        if (subdivisions % 32 == 0) {
            auto copy = panels;
            total = 0.0;
            total_error = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, total_error, subdivisions};
}

}  // namespace fdoutage

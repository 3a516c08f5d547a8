#include "irrsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "irrsim/errors.hpp"

namespace irrsim {
namespace {

using Point = std::vector<double>;

double sanitize(double v) {
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

struct Run {
    Point best;
    double value;
    int iterations;
    bool collapsed;
};

Run run_simplex(const std::function<double(const Point&)>& f, const Point& start, double step,
                double ftol, int budget) {
    const std::size_t n = start.size();
    std::vector<Point> verts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) verts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) vals[i] = sanitize(f(verts[i]));

    std::vector<std::size_t> order(n + 1);
    int it = 0;
    bool collapsed = false;
    Point centroid(n), trial(n), trial2(n);

    while (it < budget) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t lo = order.front(), hi = order.back(), next_hi = order[n - 1];

        if (std::isfinite(vals[hi]) && vals[hi] - vals[lo] < ftol) {
            collapsed = true;
            break;
        }
        ++it;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != hi)
                for (std::size_t d = 0; d < n; ++d) centroid[d] += verts[i][d] / static_cast<double>(n);

        auto along = [&](double coef, Point& out) {
            for (std::size_t d = 0; d < n; ++d)
                out[d] = centroid[d] + coef * (verts[hi][d] - centroid[d]);
            return sanitize(f(out));
        };

        const double fr = along(-1.0, trial);
        if (fr < vals[lo]) {
            const double fe = along(-2.0, trial2);
            if (fe < fr) {
                verts[hi] = trial2;
                vals[hi] = fe;
            } else {
                verts[hi] = trial;
                vals[hi] = fr;
            }
            continue;
        }
        if (fr < vals[next_hi]) {
            verts[hi] = trial;
            vals[hi] = fr;
            continue;
        }
        // Contract: outside if the reflection beat the worst vertex, else inside.
        const bool outside = fr < vals[hi];
        const double fc = along(outside ? -0.5 : 0.5, trial2);
        if (fc < (outside ? fr : vals[hi])) {
            verts[hi] = trial2;
            vals[hi] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == lo) continue;
            for (std::size_t d = 0; d < n; ++d) verts[i][d] = verts[lo][d] + 0.5 * (verts[i][d] - verts[lo][d]);
            vals[i] = sanitize(f(verts[i]));
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {verts[best], vals[best], it, collapsed};
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& objective,
                               std::vector<double> start, const SimplexOptions& options) {
    if (start.empty()) throw InvalidArgument("minimize_simplex: empty start point");
    const double f0 = sanitize(objective(start));
    if (!std::isfinite(f0)) throw InvalidArgument("minimize_simplex: infeasible start point");

    SimplexResult result{std::move(start), f0, 0, false};
    double step = options.initial_step;
    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        const int budget = options.max_iterations - result.iterations;
        if (budget <= 0) break;
        const Run run = run_simplex(objective, result.x, step, options.f_tolerance, budget);
        result.iterations += run.iterations;
        const double gain = result.value - run.value;
        if (run.value <= result.value) {
            result.x = run.best;
            result.value = run.value;
        }
        if (!run.collapsed) break;  // budget exhausted
        if (restart > 0 && gain <= options.f_tolerance) {
            result.converged = true;
            break;
        }
        step = std::max(step * 0.5, 1e-3);
    }
    return result;
}

}  // namespace irrsim

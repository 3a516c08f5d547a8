#pragma once

#include <functional>
#include <vector>

namespace irrsim {

struct SimplexOptions {
    int max_iterations = 10000;  // shared across restarts
    double f_tolerance = 1e-9;   // spread of objective values over the simplex
    int max_restarts = 5;
    double initial_step = 0.1;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead minimisation. Infeasible points may be signalled by returning
// +inf or NaN; they are treated as worse than any finite value. After the
// simplex collapses the search restarts from the best vertex and stops once a
// restart no longer improves the objective by more than f_tolerance.
SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& objective,
                               std::vector<double> start, const SimplexOptions& options = {});

}  // namespace irrsim

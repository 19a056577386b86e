#pragma once

#include <functional>
#include <vector>

namespace znlab {

struct QuadratureRule {
    std::vector<double> nodes;    // transformed to the unit-variance measure
    std::vector<double> weights;  // sum to 1
};

/// Gauss-Hermite rule transformed to the standard Gaussian measure
/// Dz = dz exp(-z^2/2)/sqrt(2 pi), so integral f(z) Dz ~= sum_i w_i f(z_i).
QuadratureRule gauss_hermite_unit_variance(int order);

/// Expectation of f under the standard Gaussian measure. Propagates an
/// evaluation error when f is non-finite at a node.
double gaussian_expectation(const std::function<double(double)>& f, int order);

/// Adaptive Simpson integration on [a, b] (test oracle grade).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48);

}  // namespace znlab

#include "znlab/quadrature.hpp"

#include <cmath>

#include "znlab/errors.hpp"

namespace znlab {

namespace {

// Physicists' Gauss-Hermite nodes/weights by Newton iteration on the
// recurrence; nodes of H_n, weights for weight function exp(-x^2).
void gauss_hermite_physicists(int n, std::vector<double>& x, std::vector<double>& w) {
    constexpr double kEps = 1e-15;
    constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
    constexpr int kMaxNewton = 64;
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[i - 2];

        double pp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = kPiQuarterInv, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
}

}  // namespace

QuadratureRule gauss_hermite_unit_variance(int order) {
    if (order < 16) throw DomainError("quadrature order must be >= 16");
    std::vector<double> x, w;
    gauss_hermite_physicists(order, x, w);
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = std::sqrt(2.0) * x[i];
        rule.weights[i] = w[i] * inv_sqrt_pi;
    }
    return rule;
}

double gaussian_expectation(const std::function<double(double)>& f, int order) {
    const QuadratureRule rule = gauss_hermite_unit_variance(order);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        const double v = f(rule.nodes[i]);
        if (!std::isfinite(v))
            throw DomainError("integrand is not finite at quadrature node " + std::to_string(i));
        acc += rule.weights[i] * v;
    }
    return acc;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace znlab

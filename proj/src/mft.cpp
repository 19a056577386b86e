#include "znlab/mft.hpp"

#include <cmath>
#include <functional>

#include "znlab/errors.hpp"

namespace znlab {

void MftParams::validate() const {
    if (d < 2) throw DomainError("dimension d must be >= 2");
    if (beta <= 0.0) throw DomainError("beta must be > 0");
}

double log_2cosh(double x) {
    const double a = std::abs(x);
    if (a > 30.0) return a + std::log1p(std::exp(-2.0 * a));
    return std::log(2.0 * std::cosh(x));
}

double mft_free_energy(const MftParams& p) {
    p.validate();
    const double arg = p.beta * (2.0 * (p.d - 1) * p.u0 * p.u0 * p.u0 + p.h);
    return 3.0 * std::pow(p.u0, 4) - (2.0 / (p.d - 1)) / p.beta * log_2cosh(arg);
}

double mft_magnetization(const MftParams& p) {
    p.validate();
    return std::tanh(p.beta * (2.0 * (p.d - 1) * p.u0 * p.u0 * p.u0 + p.h));
}

namespace {

double golden_refine(const std::function<double(double)>& f, double a, double b) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-14) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

MftMinimizeResult mft_minimize(int d, double beta, double h) {
    MftParams p{d, beta, h, 0.0};
    p.validate();
    auto f = [&p](double u) {
        MftParams q = p;
        q.u0 = u;
        return mft_free_energy(q);
    };
    // Golden-section localizes a minimum only to ~sqrt(eps); polish stable
    // stationary points with the self-consistency iteration m(u) = u.
    auto polish = [d, beta, h](double u) {
        for (int it = 0; it < 500; ++it) {
            const double next = std::tanh(beta * (2.0 * (d - 1) * u * u * u + h));
            if (std::abs(next - u) < 1e-16) return next;
            u = next;
        }
        return u;
    };

    constexpr double kStep = 1e-3;
    constexpr double kHi = 1.2;
    const int steps = static_cast<int>(kHi / kStep);
    std::vector<double> values(steps + 1);
    for (int i = 0; i <= steps; ++i) values[i] = f(i * kStep);

    MftMinimizeResult res;
    for (int i = 0; i <= steps; ++i) {
        const bool left_ok = i == 0 || values[i] <= values[i - 1];
        const bool right_ok = i == steps || values[i] <= values[i + 1];
        if (!(left_ok && right_ok)) continue;
        // Skip plateau duplicates.
        if (i > 0 && values[i] == values[i - 1]) continue;
        const double a = i == 0 ? 0.0 : (i - 1) * kStep;
        const double b = i == steps ? kHi : (i + 1) * kStep;
        double u = i == 0 && values[0] <= values[1] && f(kStep * 0.5) >= values[0]
                       ? 0.0
                       : golden_refine(f, a, b);
        if (u > 0.05) u = polish(u);
        res.local_minima.push_back({u, f(u)});
    }
    // Deduplicate refined minima that collapsed to the same point.
    std::vector<MftMinimum> unique;
    for (const auto& m : res.local_minima) {
        bool dup = false;
        for (const auto& u : unique)
            if (std::abs(u.u0 - m.u0) < 1e-6) dup = true;
        if (!dup) unique.push_back(m);
    }
    res.local_minima = std::move(unique);

    res.u0_star = res.local_minima.front().u0;
    res.f_star = res.local_minima.front().free_energy;
    for (const auto& m : res.local_minima) {
        if (m.free_energy < res.f_star) {
            res.f_star = m.free_energy;
            res.u0_star = m.u0;
        }
    }
    return res;
}

MftFirstOrderPoint mft_first_order_point(int d, double beta_lo, double beta_hi, double h,
                                         double tol) {
    // Sign of F(0) - F(ordered branch): negative while the symmetric minimum
    // is global, positive after the ordered branch takes over. When the
    // ordered branch does not exist yet, the symmetric side wins.
    auto gap = [d, h](double beta) {
        const MftMinimizeResult r = mft_minimize(d, beta, h);
        double f0 = 0.0, f1 = 0.0;
        bool has0 = false, has1 = false;
        for (const auto& m : r.local_minima) {
            if (m.u0 < 0.1 && (!has0 || m.free_energy < f0)) {
                f0 = m.free_energy;
                has0 = true;
            }
            if (m.u0 >= 0.1 && (!has1 || m.free_energy < f1)) {
                f1 = m.free_energy;
                has1 = true;
            }
        }
        if (!has1) return -1.0;
        if (!has0) return 1.0;
        return f0 - f1;
    };

    double lo = beta_lo, hi = beta_hi;
    if (gap(lo) >= 0.0 || gap(hi) <= 0.0)
        throw DomainError("first-order bracket does not straddle the transition");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }

    MftFirstOrderPoint out;
    out.beta_c = 0.5 * (lo + hi);
    const MftMinimizeResult r = mft_minimize(d, out.beta_c, h);
    for (const auto& m : r.local_minima) {
        if (m.u0 < 0.1) {
            out.u0_low = m.u0;
            out.f_low = m.free_energy;
        } else if (m.u0 > out.u0_high) {
            out.u0_high = m.u0;
            out.f_high = m.free_energy;
        }
    }
    return out;
}

}  // namespace znlab

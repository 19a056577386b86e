#include "znlab/rmft.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "znlab/errors.hpp"
#include "znlab/mft.hpp"
#include "znlab/rng.hpp"

namespace znlab {

void RmftParams::validate() const {
    if (d < 2) throw DomainError("dimension d must be >= 2");
    if (beta <= 0.0) throw DomainError("beta must be > 0");
    if (j < 0.0) throw DomainError("disorder width J must be >= 0");
    if (q < 0.0) throw DomainError("glass mean field Q must be >= 0");
    if (quadrature_order < 16) throw DomainError("quadrature order must be >= 16");
}

double RmftParams::field(double z) const {
    const double c = big_c();
    return 2.0 * j * std::sqrt(c * q * q * q) * z + 4.0 * j0 * c * u0 * u0 * u0 + h;
}

double rmft_free_energy(const RmftParams& p) {
    p.validate();
    const double c = p.big_c();
    const QuadratureRule rule = gauss_hermite_unit_variance(p.quadrature_order);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        integral += rule.weights[i] * log_2cosh(p.beta * p.field(rule.nodes[i]));
    const double bj2 = p.beta * p.beta * p.j * p.j;
    const double bracket = 1.5 * bj2 * std::pow(p.q, 4) - 3.0 * p.j0 * p.beta * std::pow(p.u0, 4) +
                           integral / c - 2.0 * bj2 * std::pow(p.q, 3);
    return -bracket / p.beta;
}

double RmftGradient::norm() const { return std::sqrt(du0 * du0 + dq * dq); }

RmftGradient rmft_gradient(const RmftParams& p) {
    p.validate();
    const double c = p.big_c();
    const QuadratureRule rule = gauss_hermite_unit_variance(p.quadrature_order);
    double mean_tanh = 0.0, mean_z_tanh = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = std::tanh(p.beta * p.field(rule.nodes[i]));
        mean_tanh += rule.weights[i] * t;
        mean_z_tanh += rule.weights[i] * rule.nodes[i] * t;
    }
    RmftGradient g;
    g.du0 = 12.0 * p.j0 * p.u0 * p.u0 * (p.u0 - mean_tanh);
    if (p.q > 0.0) {
        const double bj2 = p.beta * p.j * p.j;
        g.dq = -6.0 * bj2 * std::pow(p.q, 3) + 6.0 * bj2 * p.q * p.q -
               3.0 * p.j * std::sqrt(p.q / c) * mean_z_tanh;
    }
    return g;
}

std::string to_string(RmftPhase phase) {
    switch (phase) {
        case RmftPhase::Confinement: return "confinement";
        case RmftPhase::Higgs: return "higgs";
        case RmftPhase::GaugeGlass: return "gauge-glass";
    }
    return "unknown";
}

namespace {

struct FixedPointMaps {
    double next_u0 = 0.0;  // <tanh beta H>
    double next_q = 0.0;   // <tanh^2 beta H>
};

FixedPointMaps fixed_point_maps(const RmftParams& p, const QuadratureRule& rule) {
    FixedPointMaps m;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = std::tanh(p.beta * p.field(rule.nodes[i]));
        m.next_u0 += rule.weights[i] * t;
        m.next_q += rule.weights[i] * t * t;
    }
    return m;
}

constexpr double kSnap = 1e-13;

// Candidate selection. The n -> 0 replica limit inverts the extremization
// direction for the overlap: within each magnetization branch the
// nontrivial-Q solution is the stable one when it exists (its free energy
// lies above the trivial point), while branches compete by lower free
// energy. Every candidate stays in the record.
void select_solution(RmftSolution& sol, const RmftSolveOptions& opts) {
    const RmftCandidate* unmagnetized = nullptr;
    const RmftCandidate* magnetized = nullptr;
    for (const auto& c : sol.candidates) {
        if (!c.converged) continue;
        if (std::abs(c.u0) <= opts.epsilon_order) {
            if (!unmagnetized || c.q > unmagnetized->q + 1e-12) unmagnetized = &c;
        } else {
            if (!magnetized || c.free_energy < magnetized->free_energy) magnetized = &c;
        }
    }
    const RmftCandidate* best = unmagnetized;
    if (magnetized && (!best || magnetized->free_energy < best->free_energy)) best = magnetized;
    if (!best) {
        sol.converged = false;
        return;
    }
    sol.u0 = best->u0;
    sol.q = best->q;
    sol.free_energy = best->free_energy;
    sol.grad_norm = best->grad_norm;
    sol.converged = true;
    if (std::abs(sol.u0) > opts.epsilon_order)
        sol.phase = RmftPhase::Higgs;
    else if (std::abs(sol.q) > opts.epsilon_order)
        sol.phase = RmftPhase::GaugeGlass;
    else
        sol.phase = RmftPhase::Confinement;
}

RmftCandidate run_start(RmftParams p, const RmftSolveOptions& opts, const QuadratureRule& rule) {
    RmftCandidate cand;
    int iterations = 0;

    // Damped fixed-point stage.
    const int fp_budget = opts.max_iterations;
    for (; iterations < fp_budget; ++iterations) {
        const FixedPointMaps m = fixed_point_maps(p, rule);
        const double nu = (1.0 - opts.damping) * p.u0 + opts.damping * m.next_u0;
        const double nq = (1.0 - opts.damping) * p.q + opts.damping * m.next_q;
        const double delta = std::abs(nu - p.u0) + std::abs(nq - p.q);
        p.u0 = std::abs(nu) < kSnap ? 0.0 : nu;
        p.q = nq < kSnap ? 0.0 : std::max(0.0, nq);
        if (delta < 1e-13) break;
    }

    // Newton polish on the gradient (reduced to the free coordinates).
    for (int it = 0; it < 64; ++it) {
        const RmftGradient g = rmft_gradient(p);
        if (g.norm() < opts.tolerance) break;
        const bool u_free = p.u0 != 0.0;
        const bool q_free = p.q != 0.0;
        if (!u_free && !q_free) break;  // origin is exactly stationary
        const double hu = 1e-7 * (1.0 + std::abs(p.u0));
        const double hq = 1e-7 * (1.0 + std::abs(p.q));
        auto grad_at = [&p](double u, double q) {
            RmftParams pp = p;
            pp.u0 = u;
            pp.q = std::max(q, 0.0);
            return rmft_gradient(pp);
        };
        double du = 0.0, dq = 0.0;
        if (u_free && q_free) {
            const RmftGradient gu = grad_at(p.u0 + hu, p.q);
            const RmftGradient gq = grad_at(p.u0, p.q + hq);
            const double j11 = (gu.du0 - g.du0) / hu, j12 = (gq.du0 - g.du0) / hq;
            const double j21 = (gu.dq - g.dq) / hu, j22 = (gq.dq - g.dq) / hq;
            const double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-300) break;
            du = -(j22 * g.du0 - j12 * g.dq) / det;
            dq = -(-j21 * g.du0 + j11 * g.dq) / det;
        } else if (q_free) {
            const double j22 = (grad_at(p.u0, p.q + hq).dq - g.dq) / hq;
            if (std::abs(j22) < 1e-300) break;
            dq = -g.dq / j22;
        } else {
            const double j11 = (grad_at(p.u0 + hu, p.q).du0 - g.du0) / hu;
            if (std::abs(j11) < 1e-300) break;
            du = -g.du0 / j11;
        }
        // Conservative step limit keeps the polish inside the basin.
        const double cap = 0.25;
        du = std::clamp(du, -cap, cap);
        dq = std::clamp(dq, -cap, cap);
        p.u0 += du;
        p.q = std::max(0.0, p.q + dq);
        if (std::abs(p.u0) < kSnap) p.u0 = 0.0;
        if (p.q < kSnap) p.q = 0.0;
        ++iterations;
        if (!std::isfinite(p.u0) || !std::isfinite(p.q)) {
            cand.converged = false;
            cand.iterations = iterations;
            return cand;
        }
    }

    const RmftGradient g = rmft_gradient(p);
    cand.u0 = p.u0;
    cand.q = p.q;
    cand.grad_norm = g.norm();
    cand.free_energy = rmft_free_energy(p);
    cand.iterations = iterations;
    cand.converged = cand.grad_norm < opts.tolerance && std::isfinite(cand.free_energy);
    return cand;
}

}  // namespace

RmftSolution rmft_solve(int d, double beta, double j, double j0, double h,
                        const RmftSolveOptions& opts) {
    if (!(std::isfinite(beta) && std::isfinite(j) && std::isfinite(j0) && std::isfinite(h)))
        throw DomainError("parameters must be finite");
    if (beta <= 0.0 || j <= 0.0) throw DomainError("beta and J must be > 0");

    const QuadratureRule rule = gauss_hermite_unit_variance(opts.quadrature_order);
    std::vector<std::pair<double, double>> starts = {{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}};
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < opts.random_starts; ++i) starts.emplace_back(unit(rng), unit(rng));

    RmftSolution sol;
    for (const auto& [u, q] : starts) {
        RmftParams p;
        p.d = d;
        p.beta = beta;
        p.h = h;
        p.j = j;
        p.j0 = j0;
        p.u0 = u;
        p.q = q;
        p.quadrature_order = opts.quadrature_order;
        sol.candidates.push_back(run_start(p, opts, rule));
        sol.iterations += sol.candidates.back().iterations;
    }

    select_solution(sol, opts);
    if (!sol.converged && opts.throw_on_failure)
        throw SolverError("no start converged", sol.candidates[0].grad_norm);
    return sol;
}

PhaseDiagram phase_diagram_sweep(const SweepOptions& opts) {
    if (opts.nx < 1 || opts.ny < 1) throw DomainError("grid must be at least 1x1");
    PhaseDiagram out;
    out.axes = opts.axes;
    out.xs.resize(opts.nx);
    out.ys.resize(opts.ny);
    for (int i = 0; i < opts.nx; ++i)
        out.xs[i] = opts.nx == 1 ? opts.x_min
                                 : opts.x_min + (opts.x_max - opts.x_min) * i / (opts.nx - 1);
    for (int i = 0; i < opts.ny; ++i)
        out.ys[i] = opts.ny == 1 ? opts.y_min
                                 : opts.y_min + (opts.y_max - opts.y_min) * i / (opts.ny - 1);

    out.grid.assign(opts.ny, std::vector<SweepPoint>(opts.nx));
    for (int iy = 0; iy < opts.ny; ++iy) {
        const RmftSolution* warm = nullptr;
        for (int ix = 0; ix < opts.nx; ++ix) {
            const double x = out.xs[ix], y = out.ys[iy];
            double beta, j, j0;
            if (opts.axes == SweepAxes::TOverJ_J0OverJ) {
                j = 1.0;
                beta = 1.0 / x;
                j0 = y;
            } else {
                j0 = 1.0;
                beta = 1.0 / x;
                j = y;
            }
            if (j <= 0.0) j = 1e-12;  // ratio axis may start at zero

            RmftSolveOptions so = opts.solve;
            so.throw_on_failure = false;
            // Per-point stream derived from (seed, purpose, grid index), so
            // results do not depend on traversal order.
            so.seed = RngFamily(opts.solve.seed)
                          .stream("sweep-point", static_cast<std::uint64_t>(iy) * opts.nx + ix)();
            RmftSolution s = rmft_solve(opts.d, beta, j, j0, opts.h, so);
            if (opts.warm_start && warm && warm->converged) {
                // One extra start from the neighbor's solution.
                RmftParams p;
                p.d = opts.d;
                p.beta = beta;
                p.h = opts.h;
                p.j = j;
                p.j0 = j0;
                p.u0 = warm->u0;
                p.q = warm->q;
                p.quadrature_order = so.quadrature_order;
                const QuadratureRule rule = gauss_hermite_unit_variance(so.quadrature_order);
                s.candidates.push_back(run_start(p, so, rule));
                select_solution(s, so);
            }
            out.grid[iy][ix] = {x, y, std::move(s)};
            warm = &out.grid[iy][ix].solution;
        }
    }

    // Boundary segments between differing neighbors (midline pieces), plus
    // triple-point detection on 2x2 blocks.
    auto label = [&out](int iy, int ix) { return static_cast<int>(out.grid[iy][ix].solution.phase); };
    const double dx = opts.nx > 1 ? (opts.x_max - opts.x_min) / (opts.nx - 1) : 1.0;
    const double dy = opts.ny > 1 ? (opts.y_max - opts.y_min) / (opts.ny - 1) : 1.0;
    for (int iy = 0; iy < opts.ny; ++iy) {
        for (int ix = 0; ix + 1 < opts.nx; ++ix) {
            const int a = label(iy, ix), b = label(iy, ix + 1);
            if (a == b) continue;
            const double xm = 0.5 * (out.xs[ix] + out.xs[ix + 1]);
            out.boundaries.push_back({xm, out.ys[iy] - 0.5 * dy, xm, out.ys[iy] + 0.5 * dy,
                                      std::min(a, b), std::max(a, b)});
        }
    }
    for (int iy = 0; iy + 1 < opts.ny; ++iy) {
        for (int ix = 0; ix < opts.nx; ++ix) {
            const int a = label(iy, ix), b = label(iy + 1, ix);
            if (a == b) continue;
            const double ym = 0.5 * (out.ys[iy] + out.ys[iy + 1]);
            out.boundaries.push_back({out.xs[ix] - 0.5 * dx, ym, out.xs[ix] + 0.5 * dx, ym,
                                      std::min(a, b), std::max(a, b)});
        }
    }
    for (int iy = 0; iy + 1 < opts.ny && !out.has_triple_point; ++iy) {
        for (int ix = 0; ix + 1 < opts.nx; ++ix) {
            bool seen[3] = {false, false, false};
            seen[label(iy, ix)] = seen[label(iy, ix + 1)] = true;
            seen[label(iy + 1, ix)] = seen[label(iy + 1, ix + 1)] = true;
            if (seen[0] && seen[1] && seen[2]) {
                out.has_triple_point = true;
                out.triple_x = 0.5 * (out.xs[ix] + out.xs[ix + 1]);
                out.triple_y = 0.5 * (out.ys[iy] + out.ys[iy + 1]);
                break;
            }
        }
    }
    return out;
}

}  // namespace znlab

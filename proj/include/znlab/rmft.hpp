#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "znlab/quadrature.hpp"

namespace znlab {

/// Replica-symmetric mean-field theory of the d-dimensional Z_2 gauge model
/// with Gaussian plaquette couplings of width J and mean J0. Mean fields:
/// U0 for the link variable, Q >= 0 for the replica overlap. C = (d-1)/2.
struct RmftParams {
    int d = 3;
    double beta = 1.0;
    double h = 0.0;
    double j = 1.0;   // disorder width
    double j0 = 0.0;  // disorder mean
    double u0 = 0.0;
    double q = 0.0;
    int quadrature_order = 64;

    void validate() const;
    double big_c() const { return 0.5 * (d - 1); }
    /// Effective field at Gaussian node z.
    double field(double z) const;
};

/// F_R/N_P = -(1/beta) [ (3/2) beta^2 J^2 Q^4 - 3 J0 beta U0^4
///                       + (1/C) int Dz log 2cosh(beta H(z)) - 2 beta^2 J^2 Q^3 ].
double rmft_free_energy(const RmftParams& p);

struct RmftGradient {
    double du0 = 0.0;
    double dq = 0.0;
    double norm() const;
};

/// Analytic gradient with the quadrature differentiated under the integral.
RmftGradient rmft_gradient(const RmftParams& p);

enum class RmftPhase { Confinement, Higgs, GaugeGlass };
std::string to_string(RmftPhase phase);

struct RmftCandidate {
    double u0 = 0.0, q = 0.0, free_energy = 0.0, grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct RmftSolution {
    double u0 = 0.0;
    double q = 0.0;
    double free_energy = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    RmftPhase phase = RmftPhase::Confinement;
    bool converged = false;
    std::vector<RmftCandidate> candidates;  // every start retained
};

struct RmftSolveOptions {
    double tolerance = 1e-10;      // gradient norm target
    double damping = 0.5;
    int max_iterations = 100000;
    double epsilon_order = 1e-4;   // phase classification threshold
    int quadrature_order = 64;
    std::uint64_t seed = 7;
    int random_starts = 4;
    bool throw_on_failure = true;
};

/// Damped fixed-point iteration from the four corner starts plus seeded
/// random starts, polished by Newton steps on the gradient; the physical
/// solution is the converged candidate of least free energy.
RmftSolution rmft_solve(int d, double beta, double j, double j0, double h,
                        const RmftSolveOptions& opts = {});

enum class SweepAxes { TOverJ_J0OverJ, TOverJ0_JOverJ0 };

struct SweepPoint {
    double x = 0.0;  // first axis value
    double y = 0.0;  // second axis value
    RmftSolution solution;
};

struct BoundarySegment {
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
    int phase_lo = 0, phase_hi = 0;
};

struct PhaseDiagram {
    SweepAxes axes = SweepAxes::TOverJ_J0OverJ;
    std::vector<double> xs, ys;
    std::vector<std::vector<SweepPoint>> grid;  // [iy][ix]
    std::vector<BoundarySegment> boundaries;    // marching squares on labels
    bool has_triple_point = false;
    double triple_x = 0.0, triple_y = 0.0;
};

struct SweepOptions {
    SweepAxes axes = SweepAxes::TOverJ_J0OverJ;
    double x_min = 0.1, x_max = 3.2;  // temperature axis
    double y_min = 0.0, y_max = 2.0;  // ratio axis
    int nx = 30, ny = 30;
    int d = 3;
    double h = 0.0;
    RmftSolveOptions solve;
    bool warm_start = true;
};

/// Row-by-row sweep with warm starts; per-point failures are recorded in the
/// grid rather than raised.
PhaseDiagram phase_diagram_sweep(const SweepOptions& opts);

}  // namespace znlab

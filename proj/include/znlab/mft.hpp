#pragma once

#include <vector>

namespace znlab {

/// Mean-field theory of the d-dimensional Z_2 gauge model with a single
/// link mean field U0. Free energies are per plaquette.
struct MftParams {
    int d = 3;          // spatial-plus-time dimension
    double beta = 1.0;  // inverse temperature
    double h = 0.0;     // external field
    double u0 = 0.0;    // link mean field

    void validate() const;
};

/// log(2 cosh x), evaluated as |x| + log1p(exp(-2|x|)) for |x| > 30.
double log_2cosh(double x);

/// F/N_P = 3 U0^4 - (1/beta) (2/(d-1)) log[2 cosh beta(2(d-1)U0^3 + h)].
double mft_free_energy(const MftParams& p);

/// m = tanh beta(2(d-1)U0^3 + h); equals U0 at stationary points of F.
double mft_magnetization(const MftParams& p);

struct MftMinimum {
    double u0 = 0.0;
    double free_energy = 0.0;
};

struct MftMinimizeResult {
    double u0_star = 0.0;
    double f_star = 0.0;
    std::vector<MftMinimum> local_minima;  // all minima of the scan, refined
};

/// Dense scan of U0 in [0, 1.2] at step 1e-3, each local minimum refined by
/// golden-section search; returns the global minimizer and all local minima.
MftMinimizeResult mft_minimize(int d, double beta, double h);

struct MftFirstOrderPoint {
    double beta_c = 0.0;
    double u0_low = 0.0;   // symmetric minimizer (0)
    double u0_high = 0.0;  // ordered minimizer
    double f_low = 0.0;
    double f_high = 0.0;
};

/// Bisection on F(0) - F(U0_ordered) between beta_lo and beta_hi; both minima
/// must coexist somewhere in the bracket.
MftFirstOrderPoint mft_first_order_point(int d, double beta_lo, double beta_hi, double h = 0.0,
                                         double tol = 1e-12);

}  // namespace znlab

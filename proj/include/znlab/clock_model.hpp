#pragma once

#include <optional>
#include <vector>

#include "znlab/gauge_hamiltonian.hpp"
#include "znlab/sparse_matrix.hpp"
#include "znlab/torus_lattice.hpp"

namespace znlab {

/// Quantum clock model on the dual lattice:
///   H = -lambda1 sum_bonds (V V^dag + h.c.) - lambda2 sum_sites (tau W + h.c.)
/// with W the clock diagonal, V the shift, twisted periodic boundary phases
/// on the bonds dual to the reference cycles, and a fixed total-clock-charge
/// sector (eigenvalue exponent of prod_x W_x).
struct ClockModelSpec {
    int order = 2;
    int l1 = 2, l2 = 2;
    double lambda1 = 0.0;
    double lambda2 = 1.0;
    std::vector<int> tau_exponents;  // per dual site, empty = all zero
    int twist_a = 0, twist_b = 0;
    int charge_sector = 0;  // eigenvalue exponent of prod W; -1 = unrestricted

    void validate() const;
    int tau_exponent(int site) const { return tau_exponents.empty() ? 0 : tau_exponents[site]; }
};

/// Basis of clock configurations with fixed total charge; dual site 0 holds
/// the dependent clock value.
class ClockBasis {
  public:
    explicit ClockBasis(const ClockModelSpec& spec, std::int64_t max_dimension = (1 << 21));
    std::int64_t dimension() const { return dim_; }
    std::vector<int> config_of(std::int64_t index) const;
    std::int64_t index_of(const std::vector<int>& config) const;
    const ClockModelSpec& spec() const { return *spec_; }
    const TorusLattice& lattice() const { return lattice_; }

  private:
    const ClockModelSpec* spec_;
    TorusLattice lattice_;
    std::int64_t dim_;
};

SparseMatrix build_clock_hamiltonian(const ClockBasis& basis);
SpectrumResult clock_spectrum(const ClockModelSpec& spec, int k, double cluster_tol = -1.0,
                              const EigenOptions& base_opts = {});

/// Gauge spectrum versus the union over twist sectors of the charge-neutral
/// clock spectra on the dual lattice of the same extents.
struct DualityReport {
    std::vector<double> gauge_levels;
    std::vector<double> clock_union_levels;
    std::vector<double> level_differences;
    double max_difference = 0.0;
    /// Ground energy per twist sector, indexed [t_a][t_b].
    std::vector<std::vector<double>> sector_ground_energy;
    std::int64_t gauge_dimension = 0;
    std::int64_t clock_sector_dimension_total = 0;
};

DualityReport spectral_compare(const GaugeModelSpec& gauge, int levels);

/// Solve prod_{l in p} zeta_l = tau_p on a deterministic dual spanning tree.
struct AbsorbResult {
    bool absorbable = false;
    int obstruction = 0;      // sum of tau exponents mod N
    LinkPattern zeta;         // defined when absorbable
};

AbsorbResult absorb_static_disorder(const std::vector<int>& tau_exponents,
                                    const TorusLattice& lattice, int order);

/// Conjugate the disordered Hamiltonian by the X-string built from zeta and
/// compare with the clean Hamiltonian, entrywise and by full spectrum.
struct RgcReport {
    int obstruction = 0;
    bool absorbable = false;
    bool entrywise_equal = false;
    double max_entry_difference = 0.0;
    double max_eigenvalue_difference = 0.0;
    std::vector<double> disordered_spectrum;
    std::vector<double> clean_spectrum;
};

RgcReport rgc_isospectrality(const GaugeModelSpec& disordered);

}  // namespace znlab

#pragma once

// Brute-force reference implementations used only by tests: explicit N x N
// link matrices, Kronecker products over small link sets, and the gauge model
// realized in the full link Hilbert space with Gauss-law projection by orbit
// sums. Everything here is built from the operator definitions directly and
// shares no phase bookkeeping with the library code it checks.

#include <Eigen/Dense>
#include <cstdint>
#include <map>

#include "znlab/flux_basis.hpp"
#include "znlab/gauge_hamiltonian.hpp"
#include "znlab/pauli_string.hpp"

namespace znlab::testing {

Eigen::MatrixXcd clock_matrix(int n);                    // Z = diag(1, w, ...)
Eigen::MatrixXcd shift_matrix(int n);                    // X|k> = |k-1>
Eigen::MatrixXcd link_matrix(int n, int z_exp, int x_exp);

/// Multiply two strings via their per-link dense matrices: each per-link
/// product is refactored against the canonical Z^a X^b matrices to extract
/// its phase. Cross-link factors are independent tensor slots.
PauliString matrix_multiply_oracle(const PauliString& a, const PauliString& b);

/// Commutation phase via matrices: the per-link products of a*b and b*a are
/// proportional; returns the exponent of the ratio.
int matrix_commutation_oracle(const PauliString& a, const PauliString& b);

/// Full Kronecker matrix of a string over an explicit link ordering.
Eigen::MatrixXcd kron_matrix(const PauliString& s, const std::vector<int>& links);

/// Star operator (Gauss generator) at a site; oriented plaquette Z-product.
PauliString star_string(const TorusLattice& lattice, int order, int site);
PauliString plaquette_string(const TorusLattice& lattice, int order, int plaq);

/// Sparse state in the full link Hilbert space: config code -> amplitude,
/// config code mixed-radix over link clock values.
using LinkState = std::map<std::int64_t, Complex>;

class LinkSpaceOracle {
  public:
    LinkSpaceOracle(const TorusLattice& lattice, int order);

    std::int64_t config_count() const { return configs_; }
    int clock_value(std::int64_t config, int link) const;

    LinkState apply(const PauliString& s, const LinkState& state) const;
    LinkState apply_to_config(const PauliString& s, std::int64_t config) const;

    /// Gauss-law label of a configuration.
    FluxBasisState label_of(std::int64_t config) const;

    /// Number of distinct labels (brute-force dimension of the neutral sector)
    /// and the orbit size per label.
    std::int64_t label_count();
    std::int64_t orbit_size(const FluxBasisState& label);

    /// Equal-weight normalized orbit sum for a neutral-sector label.
    LinkState physical_vector(const FluxBasisState& label);

    /// Apply the Hamiltonian of `spec` in the link space.
    LinkState apply_hamiltonian(const GaugeModelSpec& spec, const LinkState& state) const;

    /// Dense Hamiltonian in the neutral physical sector, indexed exactly like
    /// PhysicalBasis (charges enter through the canonical charging string).
    Eigen::MatrixXcd physical_hamiltonian(const GaugeModelSpec& spec);

    /// Star operator (Gauss generator) at a site as a string.
    PauliString star_operator(int site) const;
    /// Oriented plaquette Z-product.
    PauliString plaquette_operator(int plaq) const;

    const TorusLattice& lattice() const { return *lat_; }
    int order() const { return n_; }

  private:
    void build_orbits();

    const TorusLattice* lat_;
    int n_;
    std::int64_t configs_;
    bool orbits_built_ = false;
    std::map<std::vector<int>, std::vector<std::int64_t>> orbits_;  // label key -> configs
    std::vector<int> label_key(const FluxBasisState& label) const;
};

Complex inner(const LinkState& a, const LinkState& b);

}  // namespace znlab::testing

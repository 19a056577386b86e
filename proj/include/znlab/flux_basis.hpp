#pragma once

#include <map>
#include <vector>

#include "znlab/pauli_string.hpp"
#include "znlab/torus_lattice.hpp"
#include "znlab/zn_phase.hpp"

namespace znlab {

/// Gauge-invariant basis label: plaquette flux exponents (eigenvalues of the
/// oriented plaquette Z-product), the two holonomy exponents along the
/// reference cycles, and an optional static charge assignment (per-site
/// Gauss-law exponents). Fluxes always sum to zero mod N on the torus;
/// charges sum to zero mod N in any realizable sector.
struct FluxBasisState {
    int order = 2;
    std::vector<int> fluxes;
    int z_a = 0;
    int z_b = 0;
    std::map<int, int> charges;

    friend bool operator==(const FluxBasisState& a, const FluxBasisState& b) {
        return a.order == b.order && a.fluxes == b.fluxes && a.z_a == b.z_a &&
               a.z_b == b.z_b && a.charges == b.charges;
    }
    friend bool operator!=(const FluxBasisState& a, const FluxBasisState& b) {
        return !(a == b);
    }
};

struct ApplyResult {
    FluxBasisState state;
    ZnPhase phase;
};

enum class ApplyMode {
    GaugeInvariant,  // reject strings that change the charge sector
    GaugeCovariant,  // open Z-strings move the state between charge sectors
};

/// Convention for the canonical charge-string paths that define the relative
/// phases of charged-sector basis states. The alternative convention exists to
/// test that spectra are independent of the choice.
enum class ChargingConvention { Dir1First, Dir2First };

/// Exact action of link operators on flux-basis labels.
///
/// The basis is fixed by three conventions: X acting on a link lowers the
/// flux of the plaquette containing it positively oriented (X|k> = |k-1>),
/// X is phase-free on neutral-sector states, and charged states are built by
/// canonical staircase Z-strings from each charged site to site 0.
class FluxAlgebra {
  public:
    FluxAlgebra(const TorusLattice& lattice, int order,
                ChargingConvention convention = ChargingConvention::Dir1First)
        : lat_(&lattice), order_(order), convention_(convention) {
        if (order < 2) throw DomainError("group order must be >= 2");
    }

    const TorusLattice& lattice() const { return *lat_; }
    int order() const { return order_; }

    FluxBasisState vacuum() const;
    void validate(const FluxBasisState& state) const;

    /// Combined Z-string pattern of the canonical charging operator for a
    /// charge assignment (staircase from every charged site to site 0).
    LinkPattern charging_pattern(const std::map<int, int>& charges) const;

    ApplyResult apply(const PauliString& s, const FluxBasisState& state,
                      ApplyMode mode = ApplyMode::GaugeInvariant) const;

  private:
    const TorusLattice* lat_;
    int order_;
    ChargingConvention convention_;
};

}  // namespace znlab

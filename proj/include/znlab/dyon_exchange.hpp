#pragma once

#include "znlab/flux_basis.hpp"
#include "znlab/torus_lattice.hpp"
#include "znlab/zn_phase.hpp"

namespace znlab {

/// Exchange of two dyons (electric exponent Q_E on a site, magnetic exponent
/// R on the adjacent plaquette) by the two-translation swap: each dyon moves
/// through a half loop, counterclockwise taken positive. The gauge phase is
/// accumulated by transporting an explicit flux-basis label through the hop
/// strings; the fermionic minus sign of the swap is reported separately. The
/// reference exponent is the literature value Q_E + R for comparison; the two
/// are reported side by side rather than forced to agree.
struct DyonExchangeReport {
    int computed_exponent = 0;
    int fermion_sign = -1;
    int reference_exponent = 0;  // (Q_E + R) mod N with overall minus sign
    bool matches_reference = false;
};

DyonExchangeReport exchange_phase_dyons(int order, int q_e, int r, const TorusLattice& lattice);

}  // namespace znlab

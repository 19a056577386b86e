#include "znlab/dyon_exchange.hpp"

#include "znlab/pauli_string.hpp"

namespace znlab {

namespace {

// Hop strings move charge q_e between neighboring sites and drag the magnetic
// exponent r on the offset link next to the traversed one: direction-1 hops
// offset onto (x+1,2), direction-2 hops onto (x+2,1). The X exponents are
// oriented so the vortex rides on the northeast plaquette of the charge.
PauliString hop(int n, int q_e, int r, const TorusLattice& lat, int site, int d1, int d2) {
    PauliString s(n);
    if (d1 == 1) {  // right
        s = multiply(s, PauliString::z_on(n, lat.link_index(site, 1), -q_e));
        s = multiply(s, PauliString::x_on(n, lat.link_index(lat.site_shift(site, 1, 0), 2), r));
    } else if (d1 == -1) {  // left = dagger of the right hop from the target
        const int target = lat.site_shift(site, -1, 0);
        s = multiply(s, PauliString::z_on(n, lat.link_index(target, 1), q_e));
        s = multiply(s, PauliString::x_on(n, lat.link_index(site, 2), -r));
    } else if (d2 == 1) {  // up
        s = multiply(s, PauliString::z_on(n, lat.link_index(site, 2), -q_e));
        s = multiply(s, PauliString::x_on(n, lat.link_index(lat.site_shift(site, 0, 1), 1), -r));
    } else {  // down
        const int target = lat.site_shift(site, 0, -1);
        s = multiply(s, PauliString::z_on(n, lat.link_index(target, 2), q_e));
        s = multiply(s, PauliString::x_on(n, lat.link_index(site, 1), r));
    }
    return s;
}

}  // namespace

DyonExchangeReport exchange_phase_dyons(int order, int q_e, int r, const TorusLattice& lat) {
    if (q_e < 0 || q_e >= order || r < 0 || r >= order)
        throw DomainError("dyon exponents must satisfy 0 <= Q_E, R < N");
    if (lat.l1() < 5 || lat.l2() < 6)
        throw GeometryError("lattice too small for non-self-intersecting exchange paths");

    const int n = order;
    FluxAlgebra algebra(lat, n);

    // Two dyons on row 2 at columns 1 and 3, with the compensating anti-dyons
    // parked on the top row, far from every link the exchange touches.
    const int site_a = lat.site_index(1, 2);
    const int site_b = lat.site_index(3, 2);
    const int site_a_bar = lat.site_index(1, lat.l2() - 1);
    const int site_b_bar = lat.site_index(3, lat.l2() - 1);

    FluxBasisState state = algebra.vacuum();
    auto add_charge = [&state, n](int site, int q) {
        if (q % n == 0) return;
        state.charges[site] = ZnPhase::normalize(q, n);
    };
    add_charge(site_a, q_e);
    add_charge(site_b, q_e);
    add_charge(site_a_bar, -q_e);
    add_charge(site_b_bar, -q_e);
    auto add_flux = [&state, &lat, n](int site, int m) {
        state.fluxes[site] = ZnPhase::normalize(state.fluxes[site] + m, n);
    };
    add_flux(site_a, r);  // plaquette index equals its lower-left site
    add_flux(site_b, r);
    add_flux(site_a_bar, -r);
    add_flux(site_b_bar, -r);
    algebra.validate(state);
    const FluxBasisState initial = state;

    // Counterclockwise half loops: A dips under, B arcs over.
    struct Move {
        int site, d1, d2;
    };
    std::vector<Move> moves;
    auto walk = [&moves, &lat](int site, std::initializer_list<std::pair<int, int>> dirs) {
        for (const auto& [d1, d2] : dirs) {
            moves.push_back({site, d1, d2});
            site = lat.site_shift(site, d1, d2);
        }
        return site;
    };
    walk(site_a, {{0, -1}, {1, 0}, {1, 0}, {0, 1}});   // (1,2)->(1,1)->(2,1)->(3,1)->(3,2)
    walk(site_b, {{0, 1}, {-1, 0}, {-1, 0}, {0, -1}});  // (3,2)->(3,3)->(2,3)->(1,3)->(1,2)

    long long phase = 0;
    for (const auto& m : moves) {
        const PauliString h = hop(n, q_e, r, lat, m.site, m.d1, m.d2);
        const auto res = algebra.apply(h, state, ApplyMode::GaugeCovariant);
        state = res.state;
        phase += res.phase.exponent();
    }
    if (state != initial)
        throw GeometryError("exchange trajectory did not return the configuration");

    DyonExchangeReport report;
    report.computed_exponent = ZnPhase::normalize(phase, n);
    report.fermion_sign = -1;
    report.reference_exponent = ZnPhase::normalize(q_e + r, n);
    report.matches_reference = report.computed_exponent == report.reference_exponent;
    return report;
}

}  // namespace znlab

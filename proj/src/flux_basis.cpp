#include "znlab/flux_basis.hpp"

namespace znlab {

FluxBasisState FluxAlgebra::vacuum() const {
    FluxBasisState s;
    s.order = order_;
    s.fluxes.assign(lat_->num_plaquettes(), 0);
    return s;
}

void FluxAlgebra::validate(const FluxBasisState& state) const {
    if (state.order != order_) throw OrderMismatchError("state group order mismatch");
    if (static_cast<int>(state.fluxes.size()) != lat_->num_plaquettes())
        throw DomainError("flux vector size does not match lattice");
    long long flux_sum = 0;
    for (const int f : state.fluxes) {
        if (f < 0 || f >= order_) throw DomainError("flux exponent out of canonical range");
        flux_sum += f;
    }
    if (flux_sum % order_ != 0)
        throw GaugeViolationError("plaquette fluxes must sum to zero mod N on the torus");
    long long charge_sum = 0;
    for (const auto& [site, q] : state.charges) {
        if (site < 0 || site >= lat_->num_sites()) throw DomainError("charge site out of range");
        if (q <= 0 || q >= order_) throw DomainError("charge exponent out of canonical range");
        charge_sum += q;
    }
    if (charge_sum % order_ != 0)
        throw GaugeViolationError("static charges must sum to zero mod N on the torus");
}

LinkPattern FluxAlgebra::charging_pattern(const std::map<int, int>& charges) const {
    LinkPattern t;
    for (const auto& [site, q] : charges) {
        if (site == 0 || q % order_ == 0) continue;
        LatticePath path;
        if (convention_ == ChargingConvention::Dir1First) {
            path = lat_->path_between(site, 0);
        } else {
            // Direction 2 first: reuse the staircase on swapped coordinates.
            const auto [x1, x2] = lat_->site_coords(site);
            auto [c1, c2] = std::pair<int, int>{x1, x2};
            path.kind = LatticePath::Kind::Original;
            path.start = site;
            path.end = 0;
            const int d2 = (lat_->l2() - c2) % lat_->l2();
            const int d1 = (lat_->l1() - c1) % lat_->l1();
            for (int i = 0; i < d2; ++i) {
                path.steps.push_back({lat_->link_index(lat_->site_index(c1, c2), 2), +1});
                c2 = (c2 + 1) % lat_->l2();
            }
            for (int i = 0; i < d1; ++i) {
                path.steps.push_back({lat_->link_index(lat_->site_index(c1, c2), 1), +1});
                c1 = (c1 + 1) % lat_->l1();
            }
        }
        for (const auto& step : path.steps) t[step.link] += q * step.sign;
    }
    for (auto it = t.begin(); it != t.end();) {
        it->second = ZnPhase::normalize(it->second, order_);
        it = it->second == 0 ? t.erase(it) : std::next(it);
    }
    return t;
}

ApplyResult FluxAlgebra::apply(const PauliString& s, const FluxBasisState& state,
                               ApplyMode mode) const {
    if (s.order() != order_ || state.order != order_)
        throw OrderMismatchError("string/state group order mismatch");

    FluxBasisState out = state;
    long long phase = s.phase().exponent();

    // X block acts first (canonical per-link order Z^a X^b). On neutral
    // states X is phase-free; in a charged sector it picks up the exponent
    // of the canonical charging string on that link.
    if (!s.x_powers().empty()) {
        LinkPattern t;
        if (!state.charges.empty()) t = charging_pattern(state.charges);
        for (const auto& [link, b] : s.x_powers()) {
            if (!t.empty()) {
                auto it = t.find(link);
                if (it != t.end()) phase += static_cast<long long>(b) * it->second;
            }
            const int pos = lat_->plaquette_pos(link), neg = lat_->plaquette_neg(link);
            out.fluxes[pos] = ZnPhase::normalize(out.fluxes[pos] - b, order_);
            out.fluxes[neg] = ZnPhase::normalize(out.fluxes[neg] + b, order_);
            const int oa = lat_->cycle_a_orientation(link);
            const int ob = lat_->cycle_b_orientation(link);
            if (oa != 0) out.z_a = ZnPhase::normalize(out.z_a - b * oa, order_);
            if (ob != 0) out.z_b = ZnPhase::normalize(out.z_b - b * ob, order_);
        }
    }

    // Z block: possibly moves between charge sectors, then acts diagonally
    // through the decomposition of the neutral residual pattern.
    if (!s.z_powers().empty()) {
        LinkPattern a(s.z_powers().begin(), s.z_powers().end());
        const auto div = lat_->divergence(a);
        bool charged = false;
        for (const int d : div)
            if (d % order_ != 0) charged = true;
        if (charged && mode == ApplyMode::GaugeInvariant)
            throw GaugeViolationError(
                "open Z-string is not gauge invariant; charge endpoints required");

        std::map<int, int> new_charges = out.charges;
        if (charged) {
            for (int site = 0; site < lat_->num_sites(); ++site) {
                if (div[site] % order_ == 0) continue;
                const int q = ZnPhase::normalize(
                    (new_charges.count(site) ? new_charges[site] : 0) + div[site], order_);
                if (q == 0)
                    new_charges.erase(site);
                else
                    new_charges[site] = q;
            }
        }

        LinkPattern residual = a;
        if (charged || !out.charges.empty()) {
            for (const auto& [link, e] : charging_pattern(out.charges)) residual[link] += e;
            for (const auto& [link, e] : charging_pattern(new_charges)) residual[link] -= e;
        }
        const auto dec = lat_->decompose_closed(residual, order_);
        for (int p = 0; p < lat_->num_plaquettes(); ++p)
            phase += static_cast<long long>(dec.plaquette_coeff[p]) * out.fluxes[p];
        phase += static_cast<long long>(dec.winding_a) * out.z_a;
        phase += static_cast<long long>(dec.winding_b) * out.z_b;
        out.charges = std::move(new_charges);
    }

    return {std::move(out), ZnPhase(order_, ZnPhase::normalize(phase, order_))};
}

}  // namespace znlab

#include "znlab/torus_lattice.hpp"

#include <algorithm>
#include <deque>

#include "znlab/zn_phase.hpp"

namespace znlab {

TorusLattice TorusLattice::build(int l1, int l2) {
    if (l1 < 2 || l2 < 2)
        throw DomainError("lattice extents must be >= 2, got " + std::to_string(l1) + "x" +
                          std::to_string(l2));

    TorusLattice lat;
    lat.l1_ = l1;
    lat.l2_ = l2;
    const int np = l1 * l2;

    lat.plaquette_boundary_.resize(np);
    lat.link_plaq_pos_.assign(2 * np, -1);
    lat.link_plaq_neg_.assign(2 * np, -1);
    for (int p = 0; p < np; ++p) {
        const auto [x1, x2] = lat.site_coords(p);
        const int s = p;
        const int s_right = lat.site_index(x1 + 1, x2);
        const int s_up = lat.site_index(x1, x2 + 1);
        lat.plaquette_boundary_[p] = {
            {lat.link_index(s, 1), +1},        // bottom
            {lat.link_index(s_right, 2), +1},  // right
            {lat.link_index(s_up, 1), -1},     // top
            {lat.link_index(s, 2), -1},        // left
        };
        for (const auto& step : lat.plaquette_boundary_[p]) {
            (step.sign > 0 ? lat.link_plaq_pos_ : lat.link_plaq_neg_)[step.link] = p;
        }
    }

    lat.on_cycle_a_.assign(2 * np, 0);
    lat.on_cycle_b_.assign(2 * np, 0);
    for (int x1 = 0; x1 < l1; ++x1) {
        const int link = lat.link_index(lat.site_index(x1, 0), 1);
        lat.cycle_a_z_.push_back({link, +1});
        lat.on_cycle_a_[link] = +1;
    }
    for (int x2 = 0; x2 < l2; ++x2) {
        const int link = lat.link_index(lat.site_index(0, x2), 2);
        lat.cycle_b_z_.push_back({link, +1});
        lat.on_cycle_b_[link] = +1;
    }

    // Dual loops: the dual a-cycle runs along dual row 0 in +x1 and crosses
    // the direction-2 links of row 0; the dual b-cycle runs along dual
    // column 0 in +x2 and crosses the direction-1 links of column 0.
    for (int x1 = 0; x1 < l1; ++x1) {
        const int link = lat.link_index(lat.site_index(x1, 0), 2);
        lat.cycle_a_x_.push_back({link, crossing_sign(1, 0, 2)});
    }
    for (int x2 = 0; x2 < l2; ++x2) {
        const int link = lat.link_index(lat.site_index(0, x2), 1);
        lat.cycle_b_x_.push_back({link, crossing_sign(0, 1, 1)});
    }

    // Calibrate the crossing signs so the homology pairing of the reference
    // cycles is +1: <cycle_a_z, cycle_b_x> = +1 and <cycle_b_z, cycle_a_x> = +1.
    auto pairing = [&lat](const std::vector<PathStep>& zc, const std::vector<PathStep>& xc) {
        int total = 0;
        for (const auto& zs : zc)
            for (const auto& xs : xc)
                if (zs.link == xs.link) total += zs.sign * xs.sign;
        return total;
    };
    if (pairing(lat.cycle_a_z_, lat.cycle_b_x_) < 0)
        for (auto& s : lat.cycle_b_x_) s.sign = -s.sign;
    if (pairing(lat.cycle_b_z_, lat.cycle_a_x_) < 0)
        for (auto& s : lat.cycle_a_x_) s.sign = -s.sign;

    // Row-major BFS spanning tree of the dual lattice.
    lat.dual_parent_.assign(np, -1);
    lat.dual_parent_link_.assign(np, -1);
    std::vector<char> seen(np, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        const int p = queue.front();
        queue.pop_front();
        lat.dual_order_.push_back(p);
        // Neighbors across the four boundary links, in boundary order.
        for (const auto& step : lat.plaquette_boundary_[p]) {
            const int q = step.sign > 0 ? lat.link_plaq_neg_[step.link]
                                        : lat.link_plaq_pos_[step.link];
            if (!seen[q]) {
                seen[q] = 1;
                lat.dual_parent_[q] = p;
                lat.dual_parent_link_[q] = step.link;
                queue.push_back(q);
            }
        }
    }
    return lat;
}

int TorusLattice::site_shift(int site, int d1, int d2) const {
    const auto [x1, x2] = site_coords(site);
    return site_index(x1 + d1, x2 + d2);
}

int TorusLattice::link_head(int link) const {
    const int s = link_site(link);
    return link_dir(link) == 1 ? site_shift(s, 1, 0) : site_shift(s, 0, 1);
}

int TorusLattice::crossing_sign(int step_d1, int step_d2, int link_dir) {
    // (step x link)_z with link directions x-hat (dir 1) and y-hat (dir 2).
    if (link_dir == 1) return -step_d2;
    return step_d1;
}

LatticePath TorusLattice::path_between(int site_from, int site_to) const {
    LatticePath path;
    path.kind = LatticePath::Kind::Original;
    path.start = site_from;
    path.end = site_to;
    auto [x1, x2] = site_coords(site_from);
    const auto [y1, y2] = site_coords(site_to);
    const int d1 = wrap(y1 - x1, l1_);
    const int d2 = wrap(y2 - x2, l2_);
    for (int i = 0; i < d1; ++i) {
        path.steps.push_back({link_index(site_index(x1, x2), 1), +1});
        x1 = wrap(x1 + 1, l1_);
    }
    for (int i = 0; i < d2; ++i) {
        path.steps.push_back({link_index(site_index(x1, x2), 2), +1});
        x2 = wrap(x2 + 1, l2_);
    }
    return path;
}

LatticePath TorusLattice::dual_path_between(int plaq_from, int plaq_to) const {
    LatticePath path;
    path.kind = LatticePath::Kind::Dual;
    path.start = plaq_from;
    path.end = plaq_to;
    auto [x1, x2] = site_coords(plaq_from);
    const auto [y1, y2] = site_coords(plaq_to);
    const int d1 = wrap(y1 - x1, l1_);
    const int d2 = wrap(y2 - x2, l2_);
    for (int i = 0; i < d1; ++i) {
        // Step +x1 from dual site (x1,x2): crosses the direction-2 link
        // shared by plaquettes (x1,x2) and (x1+1,x2), i.e. the right edge.
        const int link = link_index(site_index(x1 + 1, x2), 2);
        path.steps.push_back({link, crossing_sign(1, 0, 2)});
        x1 = wrap(x1 + 1, l1_);
    }
    for (int i = 0; i < d2; ++i) {
        const int link = link_index(site_index(x1, x2 + 1), 1);
        path.steps.push_back({link, crossing_sign(0, 1, 1)});
        x2 = wrap(x2 + 1, l2_);
    }
    return path;
}

int TorusLattice::crossing_exponent(const LatticePath& z_path, const LatticePath& dual_path) {
    if (z_path.kind != LatticePath::Kind::Original || dual_path.kind != LatticePath::Kind::Dual)
        throw GeometryError("crossing_exponent expects an original path and a dual path");
    std::map<int, int> z_content;
    for (const auto& s : z_path.steps) z_content[s.link] += s.sign;
    int total = 0;
    for (const auto& s : dual_path.steps) {
        auto it = z_content.find(s.link);
        if (it != z_content.end()) total += s.sign * it->second;
    }
    return total;
}

std::vector<int> TorusLattice::flux_of(const LinkPattern& pattern) const {
    std::vector<int> flux(num_plaquettes(), 0);
    for (const auto& [link, e] : pattern) {
        flux[link_plaq_pos_[link]] += e;
        flux[link_plaq_neg_[link]] -= e;
    }
    return flux;
}

std::vector<int> TorusLattice::divergence(const LinkPattern& pattern) const {
    std::vector<int> div(num_sites(), 0);
    for (const auto& [link, e] : pattern) {
        div[link_site(link)] += e;
        div[link_head(link)] -= e;
    }
    return div;
}

std::pair<int, int> TorusLattice::winding(const LinkPattern& pattern) const {
    auto pair_with = [&pattern](const std::vector<PathStep>& xc) {
        int total = 0;
        for (const auto& s : xc) {
            auto it = pattern.find(s.link);
            if (it != pattern.end()) total += s.sign * it->second;
        }
        return total;
    };
    return {pair_with(cycle_b_x_), pair_with(cycle_a_x_)};
}

ClosedPatternDecomposition TorusLattice::decompose_closed(const LinkPattern& pattern,
                                                          int n) const {
    const auto div = divergence(pattern);
    for (int s = 0; s < num_sites(); ++s)
        if (div[s] % n != 0)
            throw GaugeViolationError("pattern has nonzero divergence at site " +
                                      std::to_string(s));

    ClosedPatternDecomposition dec;
    const auto [na, nb] = winding(pattern);
    dec.winding_a = ZnPhase::normalize(na, n);
    dec.winding_b = ZnPhase::normalize(nb, n);

    // Residual after removing the reference-cycle content; it has zero
    // winding and zero divergence, hence is a sum of plaquette boundaries.
    LinkPattern res = pattern;
    for (const auto& s : cycle_a_z_) res[s.link] -= dec.winding_a * s.sign;
    for (const auto& s : cycle_b_z_) res[s.link] -= dec.winding_b * s.sign;

    // residual_link = coeff[plaq_pos] - coeff[plaq_neg]; walk the dual tree.
    dec.plaquette_coeff.assign(num_plaquettes(), 0);
    auto res_at = [&res](int link) {
        auto it = res.find(link);
        return it == res.end() ? 0 : it->second;
    };
    for (const int p : dual_order_) {
        if (dual_parent_[p] < 0) continue;
        const int link = dual_parent_link_[p];
        const int pos = link_plaq_pos_[link], neg = link_plaq_neg_[link];
        const int grad = res_at(link);
        if (p == pos)
            dec.plaquette_coeff[p] =
                ZnPhase::normalize(dec.plaquette_coeff[neg] + grad, n);
        else
            dec.plaquette_coeff[p] =
                ZnPhase::normalize(dec.plaquette_coeff[pos] - grad, n);
    }
    // Consistency across non-tree links; failures indicate a bad pattern.
    for (int link = 0; link < num_links(); ++link) {
        const int diff = dec.plaquette_coeff[link_plaq_pos_[link]] -
                         dec.plaquette_coeff[link_plaq_neg_[link]] - res_at(link);
        if (diff % n != 0)
            throw GaugeViolationError("pattern is not closed on the torus");
    }
    return dec;
}

bool TorusLattice::link_pattern_with_flux(const std::vector<int>& target, int n,
                                          LinkPattern& out, int& obstruction) const {
    long long total = 0;
    for (const int t : target) total += t;
    obstruction = ZnPhase::normalize(total, n);
    out.clear();
    if (obstruction != 0) return false;

    // Process the dual BFS tree leaves-first; each non-root plaquette fixes
    // the exponent on the link shared with its parent.
    std::vector<int> acc(num_plaquettes(), 0);
    for (auto it = dual_order_.rbegin(); it != dual_order_.rend(); ++it) {
        const int p = *it;
        if (dual_parent_[p] < 0) continue;
        const int link = dual_parent_link_[p];
        const int o = (link_plaq_pos_[link] == p) ? +1 : -1;
        const int e = ZnPhase::normalize(o * (target[p] - acc[p]), n);
        if (e == 0) continue;
        out[link] += e;
        acc[link_plaq_pos_[link]] += e;
        acc[link_plaq_neg_[link]] -= e;
    }
    const auto flux = flux_of(out);
    for (int p = 0; p < num_plaquettes(); ++p)
        if (ZnPhase::normalize(flux[p] - target[p], n) != 0)
            throw DomainError("internal: flux solve failed at plaquette " + std::to_string(p));
    return true;
}

}  // namespace znlab

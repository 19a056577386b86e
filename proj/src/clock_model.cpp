#include "znlab/clock_model.hpp"

#include <algorithm>
#include <cmath>

namespace znlab {

void ClockModelSpec::validate() const {
    if (order < 2) throw DomainError("group order must be >= 2");
    if (l1 < 2 || l2 < 2) throw DomainError("dual lattice extents must be >= 2");
    if (lambda1 < 0.0) throw DomainError("lambda1 must be >= 0");
    if (lambda2 < 0.0) throw DomainError("lambda2 must be >= 0");
    if (!tau_exponents.empty() && static_cast<int>(tau_exponents.size()) != l1 * l2)
        throw DomainError("tau size does not match dual site count");
    if (charge_sector < -1 || charge_sector >= order)
        throw DomainError("charge sector out of range");
}

ClockBasis::ClockBasis(const ClockModelSpec& spec, std::int64_t max_dimension)
    : spec_(&spec), lattice_(TorusLattice::build(spec.l1, spec.l2)) {
    spec.validate();
    const int ns = spec.l1 * spec.l2;
    const int free_sites = spec.charge_sector < 0 ? ns : ns - 1;
    std::int64_t dim = 1;
    for (int i = 0; i < free_sites; ++i) {
        dim *= spec.order;
        if (dim > max_dimension)
            throw CapacityError("clock basis exceeds the configured budget",
                                static_cast<std::size_t>(std::pow(spec.order, free_sites)));
    }
    dim_ = dim;
}

std::vector<int> ClockBasis::config_of(std::int64_t index) const {
    const int n = spec_->order;
    const int ns = spec_->l1 * spec_->l2;
    std::vector<int> k(ns, 0);
    const int first = spec_->charge_sector < 0 ? 0 : 1;
    long long sum = 0;
    for (int i = first; i < ns; ++i) {
        k[i] = static_cast<int>(index % n);
        sum += k[i];
        index /= n;
    }
    if (first == 1) k[0] = ZnPhase::normalize(spec_->charge_sector - sum, n);
    return k;
}

std::int64_t ClockBasis::index_of(const std::vector<int>& config) const {
    const int n = spec_->order;
    const int ns = spec_->l1 * spec_->l2;
    const int first = spec_->charge_sector < 0 ? 0 : 1;
    std::int64_t idx = 0;
    for (int i = ns - 1; i >= first; --i) idx = idx * n + config[i];
    return idx;
}

SparseMatrix build_clock_hamiltonian(const ClockBasis& basis) {
    const auto& spec = basis.spec();
    const auto& lat = basis.lattice();
    const int n = spec.order;
    const std::int64_t dim = basis.dimension();

    std::vector<double> site_energy(n);
    for (int k = 0; k < n; ++k) site_energy[k] = -2.0 * spec.lambda2 * std::cos(2.0 * M_PI * k / n);

    std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> triplets;
    triplets.reserve(dim * (1 + (spec.lambda1 != 0.0 ? 2 * lat.num_links() : 0)));

    for (std::int64_t i = 0; i < dim; ++i) {
        std::vector<int> k = basis.config_of(i);
        double diag = 0.0;
        for (int s = 0; s < static_cast<int>(k.size()); ++s)
            diag += site_energy[ZnPhase::normalize(k[s] + spec.tau_exponent(s), n)];
        triplets.emplace_back(i, i, Complex(diag, 0.0));

        if (spec.lambda1 == 0.0) continue;
        // One hopping bond per primal link: V at the positively oriented
        // plaquette, V^dag at the other, with the twist phase on bonds dual
        // to the reference cycles.
        for (int link = 0; link < lat.num_links(); ++link) {
            const int pos = lat.plaquette_pos(link), neg = lat.plaquette_neg(link);
            const int twist = spec.twist_a * lat.cycle_a_orientation(link) +
                              spec.twist_b * lat.cycle_b_orientation(link);
            const Complex amp = -spec.lambda1 * std::polar(1.0, 2.0 * M_PI * twist / n);
            std::vector<int> kk = k;
            kk[pos] = ZnPhase::normalize(kk[pos] - 1, n);
            kk[neg] = ZnPhase::normalize(kk[neg] + 1, n);
            const std::int64_t j = basis.index_of(kk);
            triplets.emplace_back(j, i, amp);
            triplets.emplace_back(i, j, std::conj(amp));
        }
    }
    return SparseMatrix::from_triplets(dim, std::move(triplets));
}

SpectrumResult clock_spectrum(const ClockModelSpec& spec, int k, double cluster_tol,
                              const EigenOptions& base_opts) {
    if (k < 1) throw DomainError("requested level count must be >= 1");
    ClockBasis basis(spec);
    const SparseMatrix h = build_clock_hamiltonian(basis);
    EigenOptions opts = base_opts;
    opts.k = k;
    opts.cluster_tolerance =
        cluster_tol > 0.0 ? cluster_tol : 1e-8 * (spec.lambda2 > 0.0 ? spec.lambda2 : 1.0);
    opts.want_vectors = false;
    const EigenResult eig = solve_lowest(h, opts);
    SpectrumResult out;
    out.eigenvalues = eig.eigenvalues;
    out.clusters = eig.clusters;
    out.method = eig.method;
    out.iterations = eig.iterations;
    out.max_residual = eig.max_residual;
    out.cluster_tolerance = opts.cluster_tolerance;
    return out;
}

DualityReport spectral_compare(const GaugeModelSpec& gauge, int levels) {
    gauge.validate();
    for (int p = 0; p < gauge.lattice.num_plaquettes(); ++p)
        if (gauge.tau_exponent(p) != 0)
            throw DomainError("spectral comparison requires trivial tau on the gauge side");
    const int n = gauge.order;

    DualityReport report;
    {
        PhysicalBasis basis(gauge);
        report.gauge_dimension = basis.dimension();
        const int k = static_cast<int>(std::min<std::int64_t>(levels, basis.dimension()));
        report.gauge_levels = spectrum(gauge, k).eigenvalues;
    }

    std::vector<double> pool;
    report.sector_ground_energy.assign(n, std::vector<double>(n, 0.0));
    for (int ta = 0; ta < n; ++ta) {
        for (int tb = 0; tb < n; ++tb) {
            ClockModelSpec clock;
            clock.order = n;
            clock.l1 = gauge.lattice.l1();
            clock.l2 = gauge.lattice.l2();
            clock.lambda1 = gauge.lambda1;
            clock.lambda2 = gauge.lambda2;
            clock.twist_a = ta;
            clock.twist_b = tb;
            clock.charge_sector = 0;
            ClockBasis basis(clock);
            report.clock_sector_dimension_total += basis.dimension();
            const int k = static_cast<int>(std::min<std::int64_t>(levels, basis.dimension()));
            const auto levels_tb = clock_spectrum(clock, k).eigenvalues;
            report.sector_ground_energy[ta][tb] = levels_tb.front();
            pool.insert(pool.end(), levels_tb.begin(), levels_tb.end());
        }
    }
    std::sort(pool.begin(), pool.end());
    const int m = static_cast<int>(
        std::min<std::size_t>(report.gauge_levels.size(), pool.size()));
    report.clock_union_levels.assign(pool.begin(), pool.begin() + m);
    report.gauge_levels.resize(m);
    report.level_differences.resize(m);
    for (int i = 0; i < m; ++i) {
        report.level_differences[i] = std::abs(report.gauge_levels[i] - report.clock_union_levels[i]);
        report.max_difference = std::max(report.max_difference, report.level_differences[i]);
    }
    return report;
}

AbsorbResult absorb_static_disorder(const std::vector<int>& tau_exponents,
                                    const TorusLattice& lattice, int order) {
    if (static_cast<int>(tau_exponents.size()) != lattice.num_plaquettes())
        throw DomainError("tau size does not match plaquette count");
    AbsorbResult res;
    res.absorbable =
        lattice.link_pattern_with_flux(tau_exponents, order, res.zeta, res.obstruction);
    return res;
}

RgcReport rgc_isospectrality(const GaugeModelSpec& disordered) {
    disordered.validate();
    const int n = disordered.order;
    const auto& lat = disordered.lattice;

    std::vector<int> tau(lat.num_plaquettes(), 0);
    for (int p = 0; p < lat.num_plaquettes(); ++p)
        tau[p] = ZnPhase::normalize(disordered.tau_exponent(p), n);

    RgcReport report;
    const AbsorbResult absorb = absorb_static_disorder(tau, lat, n);
    report.obstruction = absorb.obstruction;
    report.absorbable = absorb.absorbable;

    GaugeModelSpec clean = disordered;
    clean.tau_exponents.clear();

    PhysicalBasis dis_basis(disordered);
    PhysicalBasis clean_basis(clean);
    const SparseMatrix h_dis = build_hamiltonian(dis_basis);
    const SparseMatrix h_clean = build_hamiltonian(clean_basis);

    EigenOptions opts;
    opts.k = static_cast<int>(dis_basis.dimension());
    opts.dense_threshold = dis_basis.dimension();  // full spectra, always dense
    opts.want_vectors = false;
    report.disordered_spectrum = solve_lowest(h_dis, opts).eigenvalues;
    report.clean_spectrum = solve_lowest(h_clean, opts).eigenvalues;
    for (std::size_t i = 0; i < report.clean_spectrum.size(); ++i)
        report.max_eigenvalue_difference =
            std::max(report.max_eigenvalue_difference,
                     std::abs(report.disordered_spectrum[i] - report.clean_spectrum[i]));

    if (!absorb.absorbable) return report;

    // The conjugating string U = prod_l X^{-zeta_l} maps label w to w + tau;
    // compare H_clean[i,j] with H_dis[perm(i), perm(j)].
    PauliString u(n);
    for (const auto& [link, e] : absorb.zeta)
        u = multiply(u, PauliString::x_on(n, link, -e));
    std::vector<std::int64_t> perm(clean_basis.dimension());
    for (std::int64_t i = 0; i < clean_basis.dimension(); ++i) {
        const auto res = clean_basis.algebra().apply(u, clean_basis.state_of(i));
        if (res.phase.exponent() != 0)
            throw DomainError("internal: disorder-absorbing string acquired a phase");
        perm[i] = dis_basis.index_of(res.state);
    }
    report.entrywise_equal = true;
    h_clean.for_each([&](std::int64_t r, std::int64_t c, Complex v) {
        const Complex w = h_dis.coeff(perm[r], perm[c]);
        const double d = std::abs(v - w);
        report.max_entry_difference = std::max(report.max_entry_difference, d);
        if (d != 0.0) report.entrywise_equal = false;
    });
    return report;
}

}  // namespace znlab
